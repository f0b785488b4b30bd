import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from tqm.simplex import SimplexPolynomial, linear_product, simplex_integrate

F = Fraction


def closed_form(exps):
    """int over 1 > t_1 > ... > t_m > 0 of prod t_k^a_k = prod_k 1/(sum_{i>=k} a_i + m - k + 1)."""
    m = len(exps)
    out = F(1)
    for k in range(m):
        out /= sum(exps[k:]) + (m - k)
    return out


def sympy_integral(poly: SimplexPolynomial):
    m = poly.nvars
    ts = sympy.symbols(f"t1:{m + 1}")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([t**e for t, e in zip(ts, exps)])
               for exps, c in poly.terms.items())
    for k in range(m - 1, -1, -1):
        upper = ts[k - 1] if k else 1
        expr = sympy.integrate(expr, (ts[k], 0, upper))
    return F(int(sympy.numer(expr)), int(sympy.denom(expr)))


def test_examples():
    assert simplex_integrate(SimplexPolynomial(2, {(0, 0): F(1)}), 2) == F(1, 2)
    assert simplex_integrate(SimplexPolynomial(2, {(0, 1): F(1)}), 2) == F(1, 6)
    assert simplex_integrate(SimplexPolynomial(1, {(1,): F(1), (0,): F(-1, 2)}), 1) == 0


def test_volume_is_one_over_m_factorial():
    for m in range(1, 7):
        assert simplex_integrate(SimplexPolynomial(m, {(0,) * m: F(1)}), m) == F(1, sympy.factorial(m))


def test_zero_polynomial():
    assert simplex_integrate(SimplexPolynomial(2), 2) == 0
    assert simplex_integrate(SimplexPolynomial(2), 2, zero="z") == "z"
    assert SimplexPolynomial(2).evaluate([F(1, 2), F(1, 3)]) == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=5))
def test_monomials_match_closed_form(exps):
    m = len(exps)
    assert simplex_integrate(SimplexPolynomial(m, {tuple(exps): F(1)}), m) == closed_form(exps)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_polynomials_match_sympy(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 3)
    terms = {tuple(rng.randint(0, 3) for _ in range(m)): F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3)}
    p = SimplexPolynomial(m, terms)
    assert simplex_integrate(p, m) == sympy_integral(p)


def test_linear_product():
    # (1/2 - t1)(t1 + t2) over two variables
    got = linear_product([(F(1, 2), {0: F(-1)}), (F(0), {0: F(1), 1: F(1)})], 2)
    assert got == {(1, 0): F(1, 2), (0, 1): F(1, 2), (2, 0): F(-1), (1, 1): F(-1)}


def test_evaluate():
    p = SimplexPolynomial(2, {(1, 0): F(2), (0, 2): F(1)})
    assert p.evaluate([F(1, 2), F(1, 3)]) == 1 + F(1, 9)
    with pytest.raises(ValueError):
        p.evaluate([F(1, 2)])


def test_bad_exponents():
    with pytest.raises(ValueError):
        SimplexPolynomial(2, {(1,): F(1)})
