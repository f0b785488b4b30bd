import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tqm.coeff import I, HbarPoly
from tqm.correlator import (
    TimePoint,
    Vertex,
    chamber_correlator,
    propagator,
    saw,
    wick_correlator,
    wick_correlator_by_pairings,
    wick_pairings_oracle,
)
from tqm.errors import DomainError
from tqm.forms import Form, total_differential, wedge
from tqm.weyl import PhasePoly

IH = HbarPoly.monomial(1, I)
F = Fraction
dx = Form.generator(1, "x", 1)
dp = Form.generator(1, "p", 1)


def test_saw_values():
    assert saw(F(1, 4)) == F(1, 4)
    assert saw(F(1, 2)) == 0
    assert saw(0) == 0
    assert saw(F(3, 4)) == F(-1, 4)
    assert saw(F(-1, 4)) == F(-1, 4)
    assert saw(F(5, 4)) == saw(F(1, 4))


def test_propagator_values():
    assert propagator(F(1, 4), 0) == IH * F(1, 4)
    assert propagator(F(1, 3), F(1, 3)) == HbarPoly({})
    assert propagator(F(3, 4), 0) == IH * F(-1, 4)


def test_propagator_one_sided_limits():
    eps = F(1, 10**6)
    half = IH * F(1, 2)
    above = propagator(F(1, 3) + eps, F(1, 3))
    below = propagator(F(1, 3) - eps, F(1, 3))
    assert above - half == IH * (-eps)
    assert below + half == IH * eps


def test_timepoint_is_mod_one():
    assert TimePoint(F(5, 4)) == TimePoint(F(1, 4))
    assert TimePoint(-F(3, 4)).value == F(1, 4)


def test_wick_examples(x1, p1):
    # PROP(0, 1/4) = i h saw(-1/4) = -i h / 4
    assert wick_correlator([Vertex(0, x1), Vertex(F(1, 4), p1)]) == x1 * p1 - PhasePoly.const(1, IH * F(1, 4))
    assert wick_correlator([Vertex(F(1, 4), x1), Vertex(0, p1)]) == x1 * p1 + PhasePoly.const(1, IH * F(1, 4))
    assert wick_correlator([Vertex(F(1, 5), x1), Vertex(F(2, 3), x1)]) == x1 * x1
    # the two contractions carry saw(-2/3) = 1/6 and saw(-1/3) = -1/6 and cancel
    three = [Vertex(0, x1), Vertex(F(1, 3), x1), Vertex(F(2, 3), p1)]
    assert wick_correlator(three) == x1 * x1 * p1
    assert wick_correlator_by_pairings(three) == x1 * x1 * p1


def test_pairing_oracle_examples():
    t, s = F(1, 8), F(5, 8)
    assert wick_pairings_oracle([(1, t)], [(1, s)]) == propagator(t, s)
    assert wick_pairings_oracle([(1, t)], [(2, s)]) == HbarPoly({})
    t1, t2, s1, s2 = F(0), F(1, 5), F(2, 5), F(7, 10)
    expected = propagator(t1, s1) * propagator(t2, s2) + propagator(t1, s2) * propagator(t2, s1)
    assert wick_pairings_oracle([(1, t1), (1, t2)], [(1, s1), (1, s2)]) == expected


def test_coincident_times_rejected(x1, p1):
    with pytest.raises(DomainError):
        wick_correlator([Vertex(F(1, 3), x1), Vertex(F(4, 3), p1)])


def test_single_vertex_is_the_observable(x1, p1):
    f = x1**3 * p1**2 + p1
    assert wick_correlator([Vertex(F(1, 7), f)]) == f


def test_mismatched_counts_vanish():
    x = PhasePoly.x(2, 1)
    p2 = PhasePoly.p(2, 2)
    assert wick_pairings_oracle([(1, 0)], [(2, F(1, 2))]) == HbarPoly({})
    assert wick_correlator([Vertex(0, x), Vertex(F(1, 4), p2)]) == x * p2


def _random_vertices(rng):
    r = rng.randint(1, 2)
    times = rng.sample([F(k, 12) for k in range(12)], rng.randint(1, 4))
    budget, out = 6, []
    for t in times:
        d = rng.randint(0, min(3, budget))
        budget -= d
        mono = [0] * (2 * r)
        for _ in range(d):
            mono[rng.randrange(2 * r)] += 1
        out.append(Vertex(t, PhasePoly(r, {tuple(mono): 1})))
    return out


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_engine_matches_pairing_oracle(seed):
    vs = _random_vertices(random.Random(seed))
    assert wick_correlator(vs) == wick_correlator_by_pairings(vs)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 11))
def test_only_cyclic_order_matters(seed, shift):
    vs = _random_vertices(random.Random(seed))
    moved = [Vertex(v.time.value + F(shift, 12), v.observable) for v in vs]
    assert wick_correlator(vs) == wick_correlator(moved)


def test_form_valued_correlator(x1, p1):
    vs = [Vertex(0, x1), Vertex(F(1, 3), dp), Vertex(F(2, 3), total_differential(x1 * p1))]
    assert wick_correlator(vs) == wick_correlator_by_pairings(vs)


def test_chamber_examples(x1, p1):
    c = chamber_correlator([x1, dp])
    assert c.nvars == 1 and set(c.terms) == {(0,)}
    assert c.terms[(0,)] == wedge(x1, dp)

    c = chamber_correlator([x1, dp, wedge(p1, dx) + wedge(x1, dp)])
    # (x p + i h (t2 - 1/2)) dp^dx
    dpdx = wedge(dp, dx)
    assert c.terms == {
        (0, 0): wedge(x1 * p1 - PhasePoly.const(1, IH * F(1, 2)), dpdx),
        (0, 1): dpdx.scale(IH),
    }


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_chamber_agrees_with_pointwise_evaluation(seed):
    from tqm.randgen import random_poly

    rng = random.Random(seed)
    r, m = rng.randint(1, 2), rng.randint(1, 3)
    fs = [random_poly(rng, r, 2, 2) for _ in range(m + 1)]
    ts = [F(t, 24) for t in sorted(rng.sample(range(1, 24), m), reverse=True)]
    got = chamber_correlator(fs).evaluate(ts, zero=Form.zero(r))
    want = wick_correlator([Vertex(0, fs[0])] + [Vertex(t, f) for t, f in zip(ts, fs[1:])])
    assert got == Form.from_poly(want)


def test_constant_slot_zero_contributes_nothing(x1, p1):
    one = PhasePoly.const(1, 3)
    c = chamber_correlator([one, p1])
    assert c.terms == {(0,): Form.from_poly(p1.scale(3))}
