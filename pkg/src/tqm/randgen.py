"""Seeded random test objects (monomials, polynomials, chains, forms)."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache

from .coeff import GaussianRational, HbarPoly
from .forms import Form
from .hochschild import Chain
from .weyl import PhasePoly

__all__ = ["all_monomials", "random_monomial", "random_poly", "random_chain", "random_monomial_chain", "random_form"]


@lru_cache(maxsize=None)
def all_monomials(rank: int, max_degree: int) -> tuple:
    """Every exponent vector of total degree <= max_degree, in a fixed order."""
    out = [e for e in itertools.product(range(max_degree + 1), repeat=2 * rank) if sum(e) <= max_degree]
    return tuple(sorted(out, key=lambda e: (sum(e), e)))


def random_monomial(rng: random.Random, rank: int, max_degree: int) -> PhasePoly:
    return PhasePoly(rank, {rng.choice(all_monomials(rank, max_degree)): 1})


def _small_gaussian(rng: random.Random) -> GaussianRational:
    re = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    im = Fraction(rng.randint(-3, 3), rng.randint(1, 3)) if rng.random() < 0.5 else 0
    g = GaussianRational(re, im)
    return g if g else GaussianRational(1)


def random_poly(rng: random.Random, rank: int, max_degree: int, max_terms: int = 3, hbar: bool = False) -> PhasePoly:
    """Sum of up to ``max_terms`` random monomials with small Q(i) coefficients;
    with ``hbar`` the coefficients may carry a power of hbar up to 1."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        k = rng.randint(0, 1) if hbar else 0
        terms.append((rng.choice(all_monomials(rank, max_degree)), HbarPoly.monomial(k, _small_gaussian(rng))))
    return PhasePoly(rank, terms)


def random_monomial_chain(rng: random.Random, rank: int, m: int, max_degree: int) -> Chain:
    return Chain.tensor([random_monomial(rng, rank, max_degree) for _ in range(m + 1)])


def random_chain(
    rng: random.Random, rank: int, m: int, max_degree: int, max_terms: int = 2, tensors: int = 1
) -> Chain:
    """Sum of ``tensors`` elementary tensors of random polynomials."""
    out = None
    for _ in range(tensors):
        c = Chain.tensor(
            [random_poly(rng, rank, max_degree, max_terms) for _ in range(m + 1)],
            HbarPoly.monomial(rng.randint(0, 1), _small_gaussian(rng)),
        )
        out = c if out is None else out + c
    return out


def random_form(rng: random.Random, rank: int, max_degree: int, degree: int | None = None, max_terms: int = 3) -> Form:
    """Random form; homogeneous of the given form degree when ``degree`` is set."""
    gens_all = range(2 * rank)
    comps = {}
    for _ in range(rng.randint(1, max_terms)):
        k = rng.randint(0, 2 * rank) if degree is None else degree
        gens = tuple(sorted(rng.sample(gens_all, k)))
        comps[gens] = comps.get(gens, PhasePoly.zero(rank)) + random_poly(rng, rank, max_degree, 2)
    return Form(rank, comps)
