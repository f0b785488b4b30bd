import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from tqm.coeff import I, HbarPoly
from tqm.errors import DomainError
from tqm.forms import Form, bv_delta, classical_hkr, wedge
from tqm.hkr import HKRResult, chain_map_check, quantum_hkr, s1_product
from tqm.hochschild import Chain
from tqm.randgen import random_chain, random_monomial_chain, random_poly
from tqm.weyl import PhasePoly

IH = HbarPoly.monomial(1, I)
H2 = HbarPoly.monomial(2)
F = Fraction
dx = Form.generator(1, "x", 1)
dp = Form.generator(1, "p", 1)


def c(rank, value):
    return PhasePoly.const(rank, value)


def test_degree_zero_is_identity(x1, p1):
    f = x1 * p1 + p1**2
    res = quantum_hkr(Chain.tensor([f]))
    assert res.chain_degree == 0
    assert res.value == Form.from_poly(f)


def test_worked_values(x1, p1):
    assert quantum_hkr(Chain.tensor([x1, p1])).value == wedge(x1, dp)
    got = quantum_hkr(Chain.tensor([x1, p1, x1 * p1])).value
    assert got == wedge(c(1, IH * F(1, 12)) - (x1 * p1).scale(F(1, 2)), wedge(dx, dp))
    got = quantum_hkr(Chain.tensor([x1**2, x1 * p1**2])).value
    assert got == wedge(x1**2 * p1**2 - c(1, H2 * F(1, 6)), dx) + wedge((x1**3 * p1).scale(2), dp)


def test_chain_map_worked_examples(x1, p1):
    rep = chain_map_check(Chain.tensor([x1, p1]))
    assert rep.equal and rep.lhs == Form.from_poly(c(1, IH))
    rep = chain_map_check(Chain.tensor([x1, x1 * p1]))
    assert rep.equal and rep.lhs == Form.from_poly(x1.scale(IH))
    assert chain_map_check(Chain.tensor([x1, p1, x1 * p1])).equal


def test_chain_map_needs_positive_degree(x1):
    with pytest.raises(DomainError):
        chain_map_check(Chain.tensor([x1]))


def test_wrong_sign_would_be_detected(x1, p1):
    # the check is not vacuous: flipping the sign of hbar on one side breaks it
    chain = Chain.tensor([x1, p1, x1 * p1])
    rep = chain_map_check(chain)
    assert rep.lhs != rep.rhs.scale(-1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_chain_map_random(seed):
    rng = random.Random(seed)
    chain = random_monomial_chain(rng, rng.randint(1, 2), rng.randint(1, 3), 2)
    assert chain_map_check(chain).equal


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_chain_map_random_polynomial_chains(seed):
    rng = random.Random(seed)
    chain = random_chain(rng, rng.randint(1, 2), rng.randint(1, 2), 2, max_terms=2, tensors=2)
    assert chain_map_check(chain).equal


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_classical_limit(seed):
    rng = random.Random(seed)
    chain = random_monomial_chain(rng, rng.randint(1, 2), rng.randint(1, 3), 2)
    m = chain.degree
    want = classical_hkr(chain).scale(F(1, factorial(m))).substitute_hbar(0)
    assert quantum_hkr(chain).value.substitute_hbar(0) == want


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_form_degree_matches_chain_degree(seed):
    rng = random.Random(seed)
    chain = random_chain(rng, 2, rng.randint(0, 3), 2)
    res = quantum_hkr(chain)
    assert res.value.degrees() <= {chain.degree}


def test_result_rejects_wrong_degree(x1):
    with pytest.raises(AssertionError):
        HKRResult(wedge(x1, dp), 2)


def test_s1_product_examples(x1, p1):
    f = x1**2 + p1
    assert s1_product([f]) == f
    assert s1_product([x1, p1]) == x1 * p1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_s1_product_cyclic_invariance(seed):
    rng = random.Random(seed)
    r, m = rng.randint(1, 2), rng.randint(1, 2)
    fs = [random_poly(rng, r, 2, 2) for _ in range(m + 1)]
    base = s1_product(fs)
    for k in range(1, m + 1):
        assert s1_product(fs[k:] + fs[:k]) == base


def test_s1_product_rank_mismatch(x1):
    with pytest.raises(DomainError):
        s1_product([x1, PhasePoly.p(2, 1)])


def test_delta_of_top_degree_example(x1, p1):
    # i h Delta of the m = 2 worked value equals sigma(b c)
    w = quantum_hkr(Chain.tensor([x1, p1, x1 * p1])).value
    assert bv_delta(w).scale(IH) == chain_map_check(Chain.tensor([x1, p1, x1 * p1])).lhs
