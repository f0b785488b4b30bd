import random

import pytest
from hypothesis import given, settings, strategies as st

from tqm.errors import DomainError
from tqm.forms import Form, bv_delta, classical_hkr, contract, total_differential, wedge
from tqm.hochschild import Chain, hochschild_b
from tqm.randgen import random_chain, random_form, random_poly
from tqm.weyl import PhasePoly

dx = Form.generator(1, "x", 1)
dp = Form.generator(1, "p", 1)
seeds = st.integers(0, 2**32 - 1)


def f0(poly):
    return Form.from_poly(poly)


def test_wedge_examples():
    assert wedge(dx, dp).component((0, 1)) == PhasePoly.const(1, 1)
    assert wedge(dp, dx) == wedge(dx, dp).scale(-1)
    assert wedge(dx, dx) == Form.zero(1)


def test_wedge_rank_mismatch():
    with pytest.raises(DomainError):
        wedge(dx, Form.generator(2, "x", 1))


def test_total_differential_examples(x1, p1):
    assert total_differential(x1 * p1) == wedge(p1, dx) + wedge(x1, dp)
    assert total_differential(PhasePoly.const(1, 1)) == Form.zero(1)
    assert total_differential(x1**2) == wedge(x1.scale(2), dx)


def test_contract_examples(x1):
    assert contract(wedge(dx, dp), "p", 1) == dx.scale(-1)
    assert contract(wedge(dx, dp), "x", 1) == dp
    assert contract(wedge(x1, dx), "p", 1) == Form.zero(1)
    with pytest.raises(DomainError):
        contract(dx, "x", 2)


def test_delta_examples(x1, p1):
    assert bv_delta(wedge(x1, dp)) == f0(PhasePoly.const(1, 1))
    assert bv_delta(wedge(x1 * p1, wedge(dx, dp))) == wedge(p1, dx).scale(-1) - wedge(x1, dp)
    assert bv_delta(f0(x1 * p1 + p1**3)) == Form.zero(1)


def test_classical_hkr_examples(x1, p1):
    one = PhasePoly.const(1, 1)
    assert classical_hkr(Chain.tensor([x1, p1])) == wedge(x1, dp)
    assert classical_hkr(Chain.tensor([one, x1, p1])) == wedge(dx, dp)
    assert classical_hkr(hochschild_b(Chain.tensor([x1, p1, p1]), "commutative")) == Form.zero(1)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_delta_squares_to_zero(seed):
    rng = random.Random(seed)
    w = random_form(rng, rng.randint(1, 2), 3)
    assert bv_delta(bv_delta(w)) == Form.zero(w.rank)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_wedge_graded_commutative_and_associative(seed):
    rng = random.Random(seed)
    r = rng.randint(1, 2)
    a, b, c = (random_form(rng, r, 2, rng.randint(0, 2 * r)) for _ in range(3))
    p, q = min(a.degrees()), min(b.degrees())
    assert wedge(a, b) == wedge(b, a).scale((-1) ** (p * q))
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_differential_is_a_derivation(seed):
    rng = random.Random(seed)
    r = rng.randint(1, 2)
    f, g = random_poly(rng, r, 3), random_poly(rng, r, 3)
    assert total_differential(f * g) == wedge(total_differential(f), g) + wedge(f, total_differential(g))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_classical_hkr_is_a_chain_map(seed):
    rng = random.Random(seed)
    c = random_chain(rng, rng.randint(1, 2), rng.randint(1, 4), 3)
    assert classical_hkr(hochschild_b(c, "commutative")) == Form.zero(c.rank)
