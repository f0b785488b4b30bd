"""Seeded invariant suite behind ``tqm selftest``.

Each check returns ``(passed, detail)``; :func:`run_all` times them and
collects a JSON-friendly report.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

from .coeff import GaussianRational, HbarPoly
from .correlator import (
    Vertex,
    chamber_correlator,
    propagator,
    wick_correlator,
    wick_correlator_by_pairings,
)
from .forms import Form, bv_delta, classical_hkr, total_differential, wedge
from .hkr import chain_map_check, quantum_hkr, s1_product
from .hochschild import Chain, b_squared_check, hochschild_b
from .randgen import random_chain, random_form, random_monomial_chain, random_poly
from .simplex import SimplexPolynomial, simplex_integrate
from .textio import parse_chain, parse_poly, format_poly
from .weyl import PhasePoly, commutative_product, moyal_star


def _gauss(rng):
    return GaussianRational(Fraction(rng.randint(-9, 9), rng.randint(1, 9)), Fraction(rng.randint(-9, 9), rng.randint(1, 9)))


def _hpoly(rng):
    return HbarPoly({k: _gauss(rng) for k in range(rng.randint(0, 3))})


def check_coeff(rng, n):
    for _ in range(n):
        a, b, c = _hpoly(rng), _hpoly(rng), _hpoly(rng)
        if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c or a * b != b * a:
            return False, "ring axiom"
        v = _gauss(rng)
        if (a * b).substitute(v) != a.substitute(v) * b.substitute(v):
            return False, "substitution is not multiplicative"
    return True, f"{n} triples"


def check_moyal(rng, n):
    for _ in range(n):
        r = rng.randint(1, 2)
        f, g, h = (random_poly(rng, r, 3, 3, hbar=True) for _ in range(3))
        if moyal_star(moyal_star(f, g), h) != moyal_star(f, moyal_star(g, h)):
            return False, f"associativity fails for {f}, {g}, {h}"
        if moyal_star(f, g).substitute_hbar(0) != commutative_product(f, g).substitute_hbar(0):
            return False, "classical limit"
    return True, f"{n} triples"


def check_b_squared(rng, n):
    for _ in range(n):
        r, m = rng.randint(1, 2), rng.randint(2, 4)
        c = random_chain(rng, r, m, 3, max_terms=2, tensors=2)
        for prod in ("moyal", "commutative"):
            if not b_squared_check(c, prod):
                return False, f"b^2 != 0 ({prod}) on {c}"
    return True, f"{n} chains x 2 products"


def check_delta_squared(rng, n):
    for _ in range(n):
        w = random_form(rng, rng.randint(1, 2), 3)
        if bv_delta(bv_delta(w)):
            return False, f"Delta^2 != 0 on {w}"
    return True, f"{n} forms"


def check_classical_hkr(rng, n):
    for _ in range(n):
        c = random_chain(rng, rng.randint(1, 2), rng.randint(1, 4), 3, max_terms=2)
        if classical_hkr(hochschild_b(c, "commutative")):
            return False, f"sigma(b c) != 0 on {c}"
    return True, f"{n} chains"


def check_forms_algebra(rng, n):
    for _ in range(n):
        r = rng.randint(1, 2)
        p, q = rng.randint(0, 2 * r), rng.randint(0, 2 * r)
        a, b = random_form(rng, r, 2, p), random_form(rng, r, 2, q)
        if wedge(a, b) != wedge(b, a).scale((-1) ** (p * q)):
            return False, "graded commutativity"
        f, g = random_poly(rng, r, 3), random_poly(rng, r, 3)
        if total_differential(f * g) != wedge(total_differential(f), g) + wedge(f, total_differential(g)):
            return False, "Leibniz rule"
    return True, f"{n} cases"


def _random_vertices(rng, total_max=6):
    r = rng.randint(1, 2)
    nv = rng.randint(1, 4)
    times = rng.sample([Fraction(k, 12) for k in range(12)], nv)
    budget = total_max
    vs = []
    for t in times:
        d = rng.randint(0, min(3, budget))
        budget -= d
        mono = [0] * (2 * r)
        for _ in range(d):
            mono[rng.randrange(2 * r)] += 1
        vs.append(Vertex(t, PhasePoly(r, {tuple(mono): 1})))
    return vs


def check_wick(rng, n):
    for _ in range(n):
        vs = _random_vertices(rng)
        if wick_correlator(vs) != wick_correlator_by_pairings(vs):
            return False, f"operator exponential and pairing sum differ on {vs}"
    for _ in range(n):
        t1, t2 = Fraction(rng.randint(0, 99), 100), Fraction(rng.randint(0, 99), 100)
        if t1 != t2 and propagator(t1, t2) != -propagator(t2, t1):
            return False, "propagator antisymmetry"
    return True, f"{n} configurations"


def check_chamber_specialisation(rng, n):
    for _ in range(n):
        r, m = rng.randint(1, 2), rng.randint(1, 3)
        fs = [random_poly(rng, r, 2, 2) for _ in range(m + 1)]
        ts = sorted(rng.sample(range(1, 24), m), reverse=True)
        ts = [Fraction(t, 24) for t in ts]
        lhs = chamber_correlator(fs).evaluate(ts, zero=Form.zero(r))
        rhs = wick_correlator([Vertex(0, fs[0])] + [Vertex(t, f) for t, f in zip(ts, fs[1:])])
        if lhs != Form.from_poly(rhs):
            return False, "chamber correlator disagrees with wick_correlator at chamber times"
    return True, f"{n} cases"


def check_simplex(rng, n):
    for _ in range(n):
        m = rng.randint(1, 4)
        a = tuple(rng.randint(0, 4) for _ in range(m))
        expected = Fraction(1)
        for k in range(m):
            expected /= sum(a[k:]) + (m - k)
        if simplex_integrate(SimplexPolynomial(m, {a: Fraction(1)}), m) != expected:
            return False, f"monomial {a}"
    return True, f"{n} monomials"


def check_quantum_hkr(rng, n):
    x, p = PhasePoly.x(1, 1), PhasePoly.p(1, 1)
    worked = [Chain.tensor([x, p]), Chain.tensor([x, x * p]), Chain.tensor([x, p, x * p])]
    for c in worked:
        if not chain_map_check(c).equal:
            return False, f"worked example {c}"
    for _ in range(n):
        c = random_monomial_chain(rng, rng.randint(1, 2), rng.randint(1, 3), 2)
        if not chain_map_check(c).equal:
            return False, f"chain map fails on {c}"
        m = c.degree
        classical = classical_hkr(c).scale(Fraction(1, _fact(m)))
        if quantum_hkr(c).value.substitute_hbar(0) != classical.substitute_hbar(0):
            return False, f"classical limit fails on {c}"
    return True, f"{n} random chains + 3 worked examples"


def check_rotation(rng, n):
    for _ in range(n):
        r, m = rng.randint(1, 2), rng.randint(1, 2)
        fs = [random_poly(rng, r, 2, 2) for _ in range(m + 1)]
        base = s1_product(fs)
        for k in range(1, m + 1):
            if s1_product(fs[k:] + fs[:k]) != base:
                return False, "S^1-product not invariant under cyclic rotation"
    return True, f"{n} cases"


def _fact(m):
    out = 1
    for k in range(2, m + 1):
        out *= k
    return out


def check_parser(rng, n):
    for _ in range(n):
        r = rng.randint(1, 2)
        f = random_poly(rng, r, 3, 4, hbar=True)
        if parse_poly(format_poly(f), r) != f:
            return False, f"round trip fails on {f}"
    bad = ["", "x1 +", "x1 ** 2", "2x1", "(x1", "x1^p1", "x1/h", "y1", "x0", "3/0", "x1)", "^2", "x1 | "]
    for s in bad:
        try:
            parse_chain(s, 1) if "|" in s else parse_poly(s, 1)
        except ValueError as e:
            if getattr(e, "pos", None) is None:
                return False, f"no position for {s!r}"
        else:
            return False, f"accepted invalid input {s!r}"
    return True, f"{n} polynomials, {len(bad)} invalid inputs"


def check_montecarlo(rng, n):
    from .montecarlo import (
        MCConfig,
        estimate_correlator,
        estimate_partition,
        mode_moments,
        mode_moments_quadrature,
        partition_exact,
        partition_limit,
        propagator_oracle,
    )

    if abs(partition_exact(1, 1, 10_000) - partition_limit(1, 1)) > 1e-5:
        return False, "truncated product vs sinh formula"
    samples = 200_000 if n < 50 else 1_000_000
    est = estimate_partition(MCConfig(16, 1.0, 1.0, samples, 42))
    if not est.within(complex(partition_exact(1, 1, 16))):
        return False, f"MC partition {est}"
    for s2 in (1.0, 4.0):
        for m in (1, 2, 5):
            a, b = mode_moments(s2, 1.0, m), mode_moments_quadrature(s2, 1.0, m)
            if any(abs(a[k] - b[k]) > 1e-8 * abs(a[k]) for k in a):
                return False, "closed-form mode moments vs quadrature"
        e = estimate_correlator([("X", 1, 0.0), ("P", 1, 0.25)], MCConfig(16, s2, 1.0, samples, 7))
        if not e.within(propagator_oracle(s2, 1.0, 16, "XP", 0.0, 0.25)):
            return False, f"MC XP at sigma^2={s2}: {e}"
    for u in (0.125, 0.25, 0.375):
        if abs(propagator_oracle(1e4, 1.0, 10**6, "XP", 0.0, u) - 1j * (0.5 - u)) > 0.05:
            return False, f"large-variance limit at u={u}"
    # each diagonal coefficient decreases in sigma^2 only once sigma^2 > 2 pi m hbar,
    # so the decay is checked with hbar small enough for every retained mode
    mags = [abs(propagator_oracle(s2, 0.005, 16, "XX", 0.0, 0.3)) for s2 in (1, 4, 16)]
    if not mags[0] > mags[1] > mags[2]:
        return False, f"XX oracle does not decay with sigma^2: {mags}"
    return True, f"{samples} samples per MC run"


CHECKS = [
    ("coeff ring axioms", check_coeff, 200),
    ("Moyal associativity", check_moyal, 500),
    ("b^2 = 0", check_b_squared, 200),
    ("Delta^2 = 0", check_delta_squared, 200),
    ("classical HKR chain map", check_classical_hkr, 200),
    ("wedge / d identities", check_forms_algebra, 100),
    ("Wick engine vs pairing oracle", check_wick, 200),
    ("chamber correlator specialisation", check_chamber_specialisation, 50),
    ("simplex integral closed form", check_simplex, 100),
    ("quantum HKR chain map", check_quantum_hkr, 50),
    ("S^1-product rotation invariance", check_rotation, 30),
    ("parser round trip", check_parser, 1000),
    ("Monte Carlo vs exact oracles", check_montecarlo, 50),
]


def run_all(seed: int = 0, quick: bool = False, log=None) -> list:
    results = []
    for k, (name, fn, n) in enumerate(CHECKS):
        rng = random.Random(f"{seed}:{k}")
        size = max(1, n // 10) if quick else n
        t0 = time.perf_counter()
        try:
            ok, detail = fn(rng, size)
        except Exception as e:  # a crash is a failed check, reported with its message
            ok, detail = False, f"{type(e).__name__}: {e}"
        dt = time.perf_counter() - t0
        if log is not None:
            print(f"[{'PASS' if ok else 'FAIL'}] {name} ({detail}; {dt:.1f}s)", file=log)
        results.append({"check": name, "passed": bool(ok), "detail": detail, "seconds": round(dt, 3)})
    return results

