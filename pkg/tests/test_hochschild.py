import random

import pytest
from hypothesis import given, settings, strategies as st

from tqm.coeff import I, HbarPoly
from tqm.errors import DomainError
from tqm.hochschild import Chain, ProductChoice, b_squared_check, hochschild_b
from tqm.randgen import random_chain
from tqm.weyl import PhasePoly

IH = HbarPoly.monomial(1, I)
ONE = PhasePoly.const(1, 1)


def zero_chain(degree, rank=1):
    return Chain(rank, degree)


def test_b_examples(x1, p1):
    assert hochschild_b(Chain.tensor([x1, p1]), "moyal") == Chain.tensor([ONE], IH)
    assert hochschild_b(Chain.tensor([x1, p1]), ProductChoice.COMMUTATIVE) == zero_chain(0)
    assert hochschild_b(Chain.tensor([x1, x1 * p1])) == Chain.tensor([x1], IH)


def test_scalars_move_through_tensors(x1, p1):
    assert Chain.tensor([x1.scale(3), p1]) == Chain.tensor([x1, p1.scale(3)]) == Chain.tensor([x1, p1], 3)
    assert Chain.tensor([x1 + p1, p1]) == Chain.tensor([x1, p1]) + Chain.tensor([p1, p1])
    assert Chain.tensor([x1, p1]) - Chain.tensor([x1, p1]) == zero_chain(1)


def test_degree_zero_has_no_differential(x1):
    with pytest.raises(DomainError):
        hochschild_b(Chain.tensor([x1]))


def test_b_squared_examples(x1, p1):
    assert b_squared_check(Chain.tensor([x1, p1, x1]), "moyal")
    assert b_squared_check(Chain.tensor([x1, p1, x1 * p1, p1**2]), "moyal")
    with pytest.raises(DomainError):
        b_squared_check(Chain.tensor([x1, p1]))


def test_last_term_wraps_cyclically(x1, p1):
    # b(a0|a1|a2) = a0a1|a2 - a0|a1a2 + a2a0|a1 for the commutative product
    y = PhasePoly.x(1, 1) ** 2
    c = Chain.tensor([x1, p1, y])
    expected = Chain.tensor([x1 * p1, y]) - Chain.tensor([x1, p1 * y]) + Chain.tensor([y * x1, p1])
    assert hochschild_b(c, "commutative") == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["moyal", "commutative"]))
def test_b_squared_random(seed, product):
    rng = random.Random(seed)
    c = random_chain(rng, rng.randint(1, 2), rng.randint(2, 4), 2, max_terms=2, tensors=2)
    assert b_squared_check(c, product)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_b_is_linear(seed):
    rng = random.Random(seed)
    a = random_chain(rng, 1, 2, 2)
    b = random_chain(rng, 1, 2, 2)
    assert hochschild_b(a + b) == hochschild_b(a) + hochschild_b(b)
    assert hochschild_b(a.scale(IH)) == hochschild_b(a).scale(IH)


def test_rank_mismatch(x1):
    with pytest.raises(DomainError):
        Chain.tensor([x1, PhasePoly.p(2, 1)])
