"""Polynomials in chamber times and exact integration over the ordered simplex
1 = t_0 > t_1 > ... > t_m > 0."""
from __future__ import annotations

from fractions import Fraction

__all__ = ["SimplexPolynomial", "simplex_integrate", "linear_product"]


class SimplexPolynomial:
    """Polynomial in t_1..t_m; coefficients are anything closed under ``+`` and
    multiplication by a Fraction (Fraction, HbarPoly, PhasePoly, Form)."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        t = {}
        for exps, c in (terms.items() if isinstance(terms, dict) else terms or ()):
            exps = tuple(exps)
            if len(exps) != nvars or min(exps, default=0) < 0:
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            if exps in t:
                c = t[exps] + c
            t[exps] = c
        self.terms = {k: v for k, v in t.items() if v}

    def evaluate(self, times, zero=None):
        """Substitute rational values for t_1..t_m; ``zero`` is returned for the
        zero polynomial (defaults to Fraction(0))."""
        times = [Fraction(v) for v in times]
        if len(times) != self.nvars:
            raise ValueError("wrong number of times")
        acc = None
        for exps, c in self.terms.items():
            w = Fraction(1)
            for v, e in zip(times, exps):
                w *= v**e
            term = c * w
            acc = term if acc is None else acc + term
        if acc is None:
            return Fraction(0) if zero is None else zero
        return acc

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplexPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __repr__(self) -> str:
        return f"SimplexPolynomial(nvars={self.nvars}, terms={self.terms!r})"


def simplex_integrate(poly: SimplexPolynomial, m: int | None = None, zero=None):
    """Integrate over 1 > t_1 > ... > t_m > 0 by iterated antiderivatives.

    The innermost variable t_m runs from 0 to t_{m-1}; t_1 runs from 0 to 1.
    ``zero`` is returned for the zero polynomial (defaults to Fraction(0)).
    """
    if m is None:
        m = poly.nvars
    if m != poly.nvars:
        raise ValueError(f"polynomial has {poly.nvars} variables, chamber dimension is {m}")
    cur = dict(poly.terms)
    for var in range(m - 1, -1, -1):
        nxt: dict = {}
        for exps, c in cur.items():
            e = exps[var]
            # int_0^{t_{var-1}} t^e dt = t_{var-1}^(e+1) / (e+1), with t_0 = 1
            head = list(exps[:var])
            if var > 0:
                head[var - 1] += e + 1
            key = tuple(head)
            term = c * Fraction(1, e + 1)
            nxt[key] = term if key not in nxt else nxt[key] + term
        cur = nxt
    acc = cur.get(())
    if acc is None or not acc:
        return Fraction(0) if zero is None else zero
    return acc


def linear_product(factors, nvars: int) -> dict:
    """Expand a product of affine forms ``(const, {var: coeff})`` into
    ``{exponent tuple: Fraction}``."""
    out = {(0,) * nvars: Fraction(1)}
    for const, lin in factors:
        nxt: dict = {}
        for exps, c in out.items():
            if const:
                nxt[exps] = nxt.get(exps, 0) + c * const
            for v, a in lin.items():
                e = list(exps)
                e[v] += 1
                e = tuple(e)
                nxt[e] = nxt.get(e, 0) + c * a
        out = {k: v for k, v in nxt.items() if v}
    return out
