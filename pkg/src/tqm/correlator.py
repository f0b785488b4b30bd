"""Sawtooth propagator and exact topological correlators of shifted observables.

Convention: <X^k(t1) P_j(t2)> = i hbar saw(t1 - t2) delta^k_j with
saw(u) = 1/2 - frac(u) on (0, 1) and saw(0) = 0.  As t1 -> t2 from above the
value tends to +i hbar/2, from below to -i hbar/2.

Two evaluation routes are provided.  :func:`wick_correlator` applies the
operator exponential exp(sum_{a != b} PROP(a, b) d/dx^(a) d/dp^(b)) to the
multi-copy product; :func:`wick_correlator_by_pairings` expands every shifted
observable binomially and sums over perfect matchings with
:func:`wick_pairings_oracle`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .coeff import HBAR_ONE, HBAR_ZERO, I, HbarPoly
from .errors import DomainError
from .forms import Form, merge_sign
from .simplex import SimplexPolynomial, linear_product
from .weyl import PhasePoly, _accumulate

__all__ = [
    "TimePoint",
    "Vertex",
    "saw",
    "propagator",
    "wick_correlator",
    "wick_correlator_by_pairings",
    "wick_pairings_oracle",
    "chamber_correlator",
    "chamber_propagator",
]


class TimePoint:
    """A point of R/Z, stored as a rational in [0, 1)."""

    __slots__ = ("value",)

    def __init__(self, value):
        v = Fraction(value)
        self.value = v - math.floor(v)

    def __eq__(self, other) -> bool:
        if isinstance(other, TimePoint):
            return self.value == other.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __sub__(self, other: TimePoint) -> Fraction:
        return self.value - other.value

    def __repr__(self) -> str:
        return f"TimePoint({self.value})"


def _tp(t) -> TimePoint:
    return t if isinstance(t, TimePoint) else TimePoint(t)


@dataclass(frozen=True)
class Vertex:
    time: TimePoint
    observable: PhasePoly | Form

    def __post_init__(self):
        object.__setattr__(self, "time", _tp(self.time))


def saw(u) -> Fraction:
    u = Fraction(u)
    f = u - math.floor(u)
    if f == 0:
        return Fraction(0)
    return Fraction(1, 2) - f


def _i_hbar_power(n: int) -> HbarPoly:
    return HbarPoly._raw({n: I**n}) if n else HBAR_ONE


def propagator(t1, t2) -> HbarPoly:
    """<X(t1) P(t2)> = i hbar saw(t1 - t2)."""
    s = saw(_tp(t1) - _tp(t2))
    return HbarPoly._raw({1: I * s}) if s else HBAR_ZERO


# -- contraction core --------------------------------------------------------


@lru_cache(maxsize=None)
def _pairs(n: int) -> tuple:
    return tuple((a, b) for a in range(n) for b in range(n) if a != b)


def _matrices(a: tuple, b: tuple, pairs: tuple):
    """Non-negative integer fillings n[(i, j)] over ``pairs`` with row sums
    <= a[i] and column sums <= b[j]."""
    rows = list(a)
    cols = list(b)
    counts = [0] * len(pairs)

    def rec(pos):
        if pos == len(pairs):
            yield tuple(counts)
            return
        i, j = pairs[pos]
        for n in range(min(rows[i], cols[j]) + 1):
            counts[pos] = n
            rows[i] -= n
            cols[j] -= n
            yield from rec(pos + 1)
            rows[i] += n
            cols[j] += n
        counts[pos] = 0

    yield from rec(0)


@lru_cache(maxsize=None)
def _expand_copies(copies: tuple) -> tuple:
    """exp(sum_{a != b} g_ab sum_k d/dx^(a)k d/dp^(b)_k) on a product of unit
    monomials, one per copy, followed by identification of the copies.

    Returns ((merged monomial, pair-count vector, number of contractions,
    Fraction weight), ...); the propagators g_ab are left symbolic.
    """
    n = len(copies)
    r = len(copies[0]) // 2
    pairs = _pairs(n)
    per_index = []
    for k in range(r):
        a = tuple(c[k] for c in copies)
        b = tuple(c[r + k] for c in copies)
        opts = []
        for counts in _matrices(a, b, pairs):
            rows = [0] * n
            cols = [0] * n
            w = 1
            den = 1
            for (i, j), c in zip(pairs, counts):
                if c:
                    rows[i] += c
                    cols[j] += c
                    den *= factorial(c)
            for i in range(n):
                w *= math.perm(a[i], rows[i]) * math.perm(b[i], cols[i])
            opts.append((counts, sum(a) - sum(rows), sum(b) - sum(cols), Fraction(w, den)))
        per_index.append(opts)
    out: dict = {}
    for choice in itertools.product(*per_index):
        gm = tuple(map(sum, zip(*(c[0] for c in choice)))) if pairs else ()
        mono = tuple(c[1] for c in choice) + tuple(c[2] for c in choice)
        w = Fraction(1)
        for c in choice:
            w *= c[3]
        key = (mono, gm)
        out[key] = out.get(key, 0) + w
    return tuple((mono, gm, sum(gm), w) for (mono, gm), w in out.items() if w)


def _flat_terms(obs) -> list:
    if isinstance(obs, Form):
        return list(obs._t.items())
    if isinstance(obs, PhasePoly):
        return [(((), m), c) for m, c in obs._t.items()]
    raise TypeError(f"observable must be PhasePoly or Form, not {type(obs).__name__}")


def _contract(observables) -> dict:
    """{(generators, monomial, pair-count vector): HbarPoly} with the factors
    (i hbar)^#contractions already applied."""
    termlists = [_flat_terms(o) for o in observables]
    acc: dict = {}
    for combo in itertools.product(*termlists):
        sign, gens = 1, ()
        coeff = HBAR_ONE
        for (g, _), c in combo:
            s, gens = merge_sign(gens, g)
            if not s:
                break
            sign *= s
            coeff = coeff * c
        else:
            if sign < 0:
                coeff = -coeff
            copies = tuple(m for (_, m), _ in combo)
            for mono, gm, npairs, w in _expand_copies(copies):
                _accumulate(acc, [((gens, mono, gm), coeff * _i_hbar_power(npairs) * w)])
    return acc


def _check_vertices(vertices) -> tuple[int, bool]:
    if not vertices:
        raise DomainError("a correlator needs at least one vertex")
    rank = vertices[0].observable.rank
    if any(v.observable.rank != rank for v in vertices):
        raise DomainError("all vertices must share the same rank")
    times = [v.time for v in vertices]
    if len(set(times)) != len(times):
        raise DomainError("vertex times must be pairwise distinct")
    return rank, any(isinstance(v.observable, Form) for v in vertices)


def _finish(rank: int, as_form: bool, t: dict):
    if as_form:
        return Form._raw(rank, t)
    return PhasePoly._raw(rank, {m: c for (_, m), c in t.items()})


def wick_correlator(vertices):
    """<O_{f_0}(t_0) ... O_{f_n}(t_n)> by the operator exponential."""
    vertices = [v if isinstance(v, Vertex) else Vertex(*v) for v in vertices]
    rank, as_form = _check_vertices(vertices)
    n = len(vertices)
    g = [saw(vertices[a].time - vertices[b].time) for a, b in _pairs(n)]
    out: dict = {}
    for (gens, mono, gm), c in _contract([v.observable for v in vertices]).items():
        w = Fraction(1)
        for gv, e in zip(g, gm):
            if e:
                w *= gv**e
        if w:
            _accumulate(out, [((gens, mono), c * w)])
    return _finish(rank, as_form, out)


def wick_pairings_oracle(x_insertions, p_insertions) -> HbarPoly:
    """<X^{k_1}(t_1)...X^{k_u}(t_u) P_{j_1}(s_1)...P_{j_v}(s_v)> as a sum over
    index-respecting bijections of products of propagators."""
    xs = [(k, _tp(t)) for k, t in x_insertions]
    ps = [(j, _tp(s)) for j, s in p_insertions]
    if len(xs) != len(ps) or sorted(k for k, _ in xs) != sorted(j for j, _ in ps):
        return HBAR_ZERO
    total = HBAR_ZERO
    for perm in itertools.permutations(range(len(ps))):
        term = HBAR_ONE
        for (k, t), pi in zip(xs, perm):
            j, s = ps[pi]
            if j != k:
                term = HBAR_ZERO
                break
            term = term * propagator(t, s)
            if not term:
                break
        total = total + term
    return total


def wick_correlator_by_pairings(vertices):
    """Same value as :func:`wick_correlator`, computed by binomial expansion of
    each O_f(t) = f(x + X(t), p + P(t)) and Wick pairing enumeration."""
    vertices = [v if isinstance(v, Vertex) else Vertex(*v) for v in vertices]
    rank, as_form = _check_vertices(vertices)
    r = rank
    # per vertex: list of (gens, remaining monomial, x-insertions, p-insertions, coeff)
    expanded = []
    for v in vertices:
        opts = []
        for (gens, mono), c in _flat_terms(v.observable):
            splits = [range(e + 1) for e in mono]
            for js in itertools.product(*splits):
                w = 1
                for e, j in zip(mono, js):
                    w *= comb(e, j)
                rest = tuple(e - j for e, j in zip(mono, js))
                xi = [(k + 1, v.time) for k in range(r) for _ in range(js[k])]
                pi = [(k + 1, v.time) for k in range(r) for _ in range(js[r + k])]
                opts.append((gens, rest, xi, pi, c * w))
        expanded.append(opts)
    out: dict = {}
    cache: dict = {}
    for combo in itertools.product(*expanded):
        sign, gens = 1, ()
        for o in combo:
            s, gens = merge_sign(gens, o[0])
            if not s:
                break
            sign *= s
        else:
            xi = [x for o in combo for x in o[2]]
            pi = [p for o in combo for p in o[3]]
            key = (tuple(xi), tuple(pi))
            val = cache.get(key)
            if val is None:
                val = cache[key] = wick_pairings_oracle(xi, pi)
            if not val:
                continue
            coeff = val * sign
            for o in combo:
                coeff = coeff * o[4]
            mono = tuple(map(sum, zip(*(o[1] for o in combo))))
            _accumulate(out, [((gens, mono), coeff)])
    return _finish(rank, as_form, out)


# -- chamber (symbolic-time) correlators ---------------------------------------


def chamber_propagator(a: int, b: int, nslots: int):
    """saw(t_a - t_b) on the chamber 1 = t_0 > t_1 > ... > t_m > 0 as an affine
    form ``(const, {variable: coeff})`` in t_1..t_m (variable v is t_{v+1})."""
    if a == b:
        raise DomainError("no self-propagator")
    lo, hi = min(a, b), max(a, b)
    # t_lo > t_hi, so saw(t_lo - t_hi) = 1/2 - t_lo + t_hi
    const = Fraction(1, 2)
    lin = {hi - 1: Fraction(1)}
    if lo == 0:
        const -= 1
    else:
        lin[lo - 1] = Fraction(-1)
    if a > b:
        const = -const
        lin = {k: -v for k, v in lin.items()}
    return const, lin


@lru_cache(maxsize=None)
def _chamber_monomial(gm: tuple, nslots: int) -> tuple:
    factors = []
    for (a, b), e in zip(_pairs(nslots), gm):
        factors.extend([chamber_propagator(a, b, nslots)] * e)
    return tuple(linear_product(factors, nslots - 1).items())


def chamber_correlator(chain_factors) -> SimplexPolynomial:
    """Correlator of the given observables with slot 0 pinned at t_0 = 1 and
    slots 1..m at symbolic chamber times 1 > t_1 > ... > t_m > 0.

    Returns a :class:`SimplexPolynomial` in t_1..t_m whose coefficients are
    Forms (PhasePoly inputs are promoted to 0-forms).
    """
    factors = list(chain_factors)
    if not factors:
        raise DomainError("need at least one factor")
    rank = factors[0].rank
    if any(f.rank != rank for f in factors):
        raise DomainError("all factors must share the same rank")
    n = len(factors)
    by_time: dict = {}
    for (gens, mono, gm), c in _contract(factors).items():
        for exps, w in _chamber_monomial(gm, n):
            _accumulate(by_time.setdefault(exps, {}), [((gens, mono), c * w)])
    return SimplexPolynomial(n - 1, {e: Form._raw(rank, t) for e, t in by_time.items() if t})
