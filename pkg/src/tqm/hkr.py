"""The S^1-product, the quantum HKR map, and the chain-map verifier.

The cyclic configuration space is reduced to the simplex
1 = t_0 > t_1 > ... > t_m > 0 by pinning slot 0 (all propagators depend only
on time differences).  Its volume is 1/m!, so at hbar = 0 the quantum map is
(1/m!) times the classical one.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .coeff import I_HBAR
from .correlator import chamber_correlator
from .errors import DomainError
from .forms import Form, bv_delta, total_differential
from .hochschild import Chain, hochschild_b
from .simplex import SimplexPolynomial, simplex_integrate
from .weyl import HBAR_ONE, PhasePoly, _accumulate

__all__ = [
    "HKRResult",
    "ChainMapReport",
    "SimplexPolynomial",
    "simplex_integrate",
    "s1_product",
    "quantum_hkr",
    "chain_map_check",
]


@dataclass(frozen=True)
class HKRResult:
    value: Form
    chain_degree: int

    def __post_init__(self):
        bad = self.value.degrees() - {self.chain_degree}
        if bad:
            raise AssertionError(f"form degrees {sorted(bad)} != chain degree {self.chain_degree}")


@dataclass(frozen=True)
class ChainMapReport:
    lhs: Form
    rhs: Form
    equal: bool


def s1_product(factors) -> PhasePoly:
    """<<f_0 | f_1 | ... | f_m>> = m! * integral over the chamber of the correlator."""
    factors = list(factors)
    if not factors:
        raise DomainError("need at least one factor")
    rank = factors[0].rank
    if any(f.rank != rank for f in factors):
        raise DomainError("all factors must share the same rank")
    m = len(factors) - 1
    if m == 0:
        return factors[0]
    integral = simplex_integrate(chamber_correlator(factors), m, zero=Form.zero(rank))
    return PhasePoly._raw(rank, {mono: c for (_, mono), c in integral.scale(factorial(m))._t.items()})


@lru_cache(maxsize=4096)
def _hkr_elementary(rank: int, key: tuple) -> Form:
    f0 = Form._raw(rank, {((), key[0]): HBAR_ONE})
    vertices = [f0] + [total_differential(PhasePoly._raw(rank, {m: HBAR_ONE})) for m in key[1:]]
    if any(not v for v in vertices):
        return Form.zero(rank)
    return simplex_integrate(chamber_correlator(vertices), len(key) - 1, zero=Form.zero(rank))


def quantum_hkr(c: Chain) -> HKRResult:
    """sigma^hbar(f_0|...|f_m) = integral over the chamber of
    <O_{f_0}(t_0) O_{df_1}(t_1) ... O_{df_m}(t_m)>, extended hbar-linearly."""
    t: dict = {}
    for key, s in c._t.items():
        _accumulate(t, [(k, v * s) for k, v in _hkr_elementary(c.rank, key)._t.items()])
    return HKRResult(Form._raw(c.rank, t), c.degree)


def chain_map_check(c: Chain) -> ChainMapReport:
    """Compare sigma^hbar(b c) with i hbar Delta sigma^hbar(c), b taken with the Moyal product."""
    if c.degree < 1:
        raise DomainError("chain-map check needs a chain of degree >= 1")
    lhs = quantum_hkr(hochschild_b(c, "moyal")).value
    rhs = bv_delta(quantum_hkr(c).value).scale(I_HBAR)
    return ChainMapReport(lhs, rhs, lhs == rhs)
