"""Polynomials on phase space C[x^1..x^r, p_1..p_r][hbar] and the Moyal product.

A monomial is a tuple of ``2r`` exponents: x-exponents first, then p-exponents.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .coeff import HBAR_ONE, HBAR_ZERO, I, GaussianRational, HbarPoly, as_hbar
from .errors import DomainError

__all__ = [
    "PhasePoly",
    "partial",
    "commutative_product",
    "moyal_star",
    "star_commutator",
    "mono_key",
]


def mono_key(mono: tuple) -> tuple:
    """Sort key putting monomials in descending graded-lex order."""
    return (-sum(mono), tuple(-e for e in mono))


def _falling(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= n - j
    return out


def _check_var(rank: int, variable: str, index: int) -> int:
    if variable not in ("x", "p"):
        raise DomainError(f"unknown variable kind {variable!r}")
    if not 1 <= index <= rank:
        raise DomainError(f"variable index {index} out of range for rank {rank}")
    return index - 1 if variable == "x" else rank + index - 1


class PhasePoly:
    """Element of the Weyl algebra's underlying vector space, rank ``r``.

    ``f * g`` is the ordinary (commutative) product; use :func:`moyal_star`
    for the star product.
    """

    __slots__ = ("rank", "_t", "_hash")

    def __init__(self, rank: int, terms=None):
        if rank < 1:
            raise DomainError("rank must be positive")
        self.rank = rank
        t: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, c in items:
                mono = tuple(mono)
                if len(mono) != 2 * rank or min(mono) < 0:
                    raise DomainError(f"bad exponent vector {mono} for rank {rank}")
                c = as_hbar(c)
                if c:
                    prev = t.get(mono)
                    c = c if prev is None else prev + c
                    if c:
                        t[mono] = c
                    else:
                        del t[mono]
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, rank: int, t: dict) -> PhasePoly:
        obj = cls.__new__(cls)
        obj.rank = rank
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def const(cls, rank: int, c=1) -> PhasePoly:
        c = as_hbar(c)
        return cls._raw(rank, {(0,) * (2 * rank): c} if c else {})

    @classmethod
    def zero(cls, rank: int) -> PhasePoly:
        return cls._raw(rank, {})

    @classmethod
    def var(cls, rank: int, variable: str, index: int) -> PhasePoly:
        pos = _check_var(rank, variable, index)
        mono = [0] * (2 * rank)
        mono[pos] = 1
        return cls._raw(rank, {tuple(mono): HBAR_ONE})

    @classmethod
    def x(cls, rank: int, index: int) -> PhasePoly:
        return cls.var(rank, "x", index)

    @classmethod
    def p(cls, rank: int, index: int) -> PhasePoly:
        return cls.var(rank, "p", index)

    @classmethod
    def monomial(cls, rank: int, xexp, pexp, coeff=1) -> PhasePoly:
        return cls(rank, {tuple(xexp) + tuple(pexp): coeff})

    # -- inspection -------------------------------------------------------

    def items(self):
        """(monomial, HbarPoly) pairs in descending graded-lex order."""
        return sorted(self._t.items(), key=lambda kv: mono_key(kv[0]))

    def monomials(self):
        return [m for m, _ in self.items()]

    def coefficient(self, mono) -> HbarPoly:
        return self._t.get(tuple(mono), HBAR_ZERO)

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    @property
    def degree(self) -> int:
        """Total degree in x, p; -1 for zero."""
        return max((sum(m) for m in self._t), default=-1)

    @property
    def hbar_degree(self) -> int:
        return max((c.degree for c in self._t.values()), default=-1)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._t)

    def constant_term(self) -> HbarPoly:
        return self._t.get((0,) * (2 * self.rank), HBAR_ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhasePoly):
            return NotImplemented
        return self.rank == other.rank and self._t == other._t

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._t.items())))
        return self._hash

    def _same_rank(self, other: PhasePoly) -> None:
        if self.rank != other.rank:
            raise DomainError(f"rank mismatch: {self.rank} vs {other.rank}")

    # -- linear structure -------------------------------------------------

    def __neg__(self) -> PhasePoly:
        return PhasePoly._raw(self.rank, {m: -c for m, c in self._t.items()})

    def __add__(self, other) -> PhasePoly:
        if not isinstance(other, PhasePoly):
            if isinstance(other, (int, Fraction, GaussianRational, HbarPoly)):
                return self + PhasePoly.const(self.rank, other)
            return NotImplemented
        self._same_rank(other)
        t = dict(self._t)
        _accumulate(t, other._t.items())
        return PhasePoly._raw(self.rank, t)

    __radd__ = __add__

    def __sub__(self, other) -> PhasePoly:
        if isinstance(other, (int, Fraction, GaussianRational, HbarPoly)):
            return self + PhasePoly.const(self.rank, -as_hbar(other))
        if not isinstance(other, PhasePoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> PhasePoly:
        return (-self) + other

    def scale(self, c) -> PhasePoly:
        c = as_hbar(c)
        if not c:
            return PhasePoly.zero(self.rank)
        return PhasePoly._raw(self.rank, {m: v * c for m, v in self._t.items() if v * c})

    def __mul__(self, other) -> PhasePoly:
        if isinstance(other, PhasePoly):
            return commutative_product(self, other)
        if isinstance(other, (int, Fraction, GaussianRational, HbarPoly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> PhasePoly:
        if isinstance(other, (int, Fraction, GaussianRational, HbarPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> PhasePoly:
        out = PhasePoly.const(self.rank)
        for _ in range(n):
            out = commutative_product(out, self)
        return out

    def substitute_hbar(self, value) -> PhasePoly:
        t = {}
        for m, c in self._t.items():
            v = c.substitute(value)
            if v:
                t[m] = HbarPoly.const(v)
        return PhasePoly._raw(self.rank, t)

    def __str__(self) -> str:
        from .textio import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"PhasePoly(rank={self.rank}, {self})"


def _accumulate(t: dict, items) -> None:
    for m, c in items:
        prev = t.get(m)
        if prev is None:
            t[m] = c
        else:
            s = prev + c
            if s:
                t[m] = s
            else:
                del t[m]


def partial(f: PhasePoly, variable: str, index: int) -> PhasePoly:
    """Formal partial derivative along x^index or p_index."""
    pos = _check_var(f.rank, variable, index)
    t = {}
    for mono, c in f._t.items():
        e = mono[pos]
        if e:
            m = list(mono)
            m[pos] = e - 1
            t[tuple(m)] = c * e
    return PhasePoly._raw(f.rank, t)


def commutative_product(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    f._same_rank(g)
    t: dict = {}
    for m1, c1 in f._t.items():
        for m2, c2 in g._t.items():
            _accumulate(t, [(tuple(a + b for a, b in zip(m1, m2)), c1 * c2)])
    return PhasePoly._raw(f.rank, t)


_HALF_I = I * Fraction(1, 2)


@lru_cache(maxsize=None)
def _moyal_monomials(m1: tuple, m2: tuple) -> tuple:
    """Moyal product of two unit monomials as ((mono, HbarPoly), ...).

    Expands f exp((i hbar/2) sum_i (<d_x^i d_p_i> - <d_p_i d_x^i>)) g over
    multi-indices alpha (x on the left, p on the right) and beta (p on the
    left, x on the right): weight (i hbar/2)^k (-1)^|beta| / (alpha! beta!).
    """
    r = len(m1) // 2
    fx, fp = m1[:r], m1[r:]
    gx, gp = m2[:r], m2[r:]
    ranges = [range(min(fx[i], gp[i]) + 1) for i in range(r)]
    ranges += [range(min(fp[i], gx[i]) + 1) for i in range(r)]
    out: dict = {}
    for idx in itertools.product(*ranges):
        alpha, beta = idx[:r], idx[r:]
        k = sum(idx)
        w = Fraction(-1 if sum(beta) % 2 else 1)
        for i in range(r):
            a, b = alpha[i], beta[i]
            w *= Fraction(
                _falling(fx[i], a) * _falling(gp[i], a) * _falling(fp[i], b) * _falling(gx[i], b),
                factorial(a) * factorial(b),
            )
        res = tuple(
            [fx[i] - alpha[i] + gx[i] - beta[i] for i in range(r)]
            + [fp[i] - beta[i] + gp[i] - alpha[i] for i in range(r)]
        )
        term = HbarPoly._raw({k: _HALF_I**k * w})
        _accumulate(out, [(res, term)])
    return tuple(out.items())


def moyal_star(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    """Moyal star product f * g; the series terminates on polynomials."""
    f._same_rank(g)
    t: dict = {}
    for m1, c1 in f._t.items():
        for m2, c2 in g._t.items():
            c = c1 * c2
            _accumulate(t, [(m, c * w) for m, w in _moyal_monomials(m1, m2)])
    return PhasePoly._raw(f.rank, t)


def star_commutator(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    return moyal_star(f, g) - moyal_star(g, f)
