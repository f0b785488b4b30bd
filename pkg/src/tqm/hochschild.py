"""Hochschild chains C_m(A) = A^{(m+1)} and the differential b.

Chains are kept in the monomial tensor basis: every elementary tensor is
expanded multilinearly, so two chains are equal iff their term dicts are.
"""
from __future__ import annotations

import enum
from functools import lru_cache

from .coeff import HBAR_ONE, HbarPoly, as_hbar
from .errors import DomainError
from .weyl import PhasePoly, _accumulate, _moyal_monomials, mono_key

__all__ = ["Chain", "ProductChoice", "hochschild_b", "b_squared_check"]


class ProductChoice(str, enum.Enum):
    COMMUTATIVE = "commutative"
    MOYAL = "moyal"


def _as_choice(product) -> ProductChoice:
    try:
        return ProductChoice(product)
    except ValueError:
        raise DomainError(f"unknown product {product!r}") from None


class Chain:
    """HbarPoly-linear combination of tensors f_0 | f_1 | ... | f_m."""

    __slots__ = ("rank", "degree", "_t")

    def __init__(self, rank: int, degree: int, terms=None):
        if degree < 0:
            raise DomainError("chain degree must be non-negative")
        self.rank = rank
        self.degree = degree
        t: dict = {}
        for scalar, factors in terms or ():
            _add_tensor(t, rank, degree, as_hbar(scalar), factors)
        self._t = t

    @classmethod
    def _raw(cls, rank: int, degree: int, t: dict) -> Chain:
        obj = cls.__new__(cls)
        obj.rank = rank
        obj.degree = degree
        obj._t = t
        return obj

    @classmethod
    def tensor(cls, factors, scalar=1) -> Chain:
        factors = list(factors)
        if not factors:
            raise DomainError("a chain needs at least one factor")
        rank = factors[0].rank
        return cls(rank, len(factors) - 1, [(scalar, factors)])

    @property
    def terms(self):
        """(scalar, [PhasePoly monomial factors]) in canonical order."""
        r = self.rank
        return [
            (c, [PhasePoly._raw(r, {m: HBAR_ONE}) for m in key])
            for key, c in sorted(self._t.items(), key=lambda kv: [mono_key(m) for m in kv[0]])
        ]

    def monomial_terms(self):
        """(tuple of exponent tuples, scalar) pairs in canonical order."""
        return sorted(self._t.items(), key=lambda kv: [mono_key(m) for m in kv[0]])

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return (self.rank, self.degree, self._t) == (other.rank, other.degree, other._t)

    def __hash__(self) -> int:
        return hash((self.rank, self.degree, frozenset(self._t.items())))

    def _compatible(self, other: Chain) -> None:
        if (self.rank, self.degree) != (other.rank, other.degree):
            raise DomainError("chains differ in rank or degree")

    def __add__(self, other: Chain) -> Chain:
        if not isinstance(other, Chain):
            return NotImplemented
        self._compatible(other)
        t = dict(self._t)
        _accumulate(t, other._t.items())
        return Chain._raw(self.rank, self.degree, t)

    def __neg__(self) -> Chain:
        return Chain._raw(self.rank, self.degree, {k: -c for k, c in self._t.items()})

    def __sub__(self, other: Chain) -> Chain:
        return self + (-other)

    def scale(self, c) -> Chain:
        c = as_hbar(c)
        if not c:
            return Chain._raw(self.rank, self.degree, {})
        return Chain._raw(self.rank, self.degree, {k: v * c for k, v in self._t.items()})

    def __rmul__(self, c) -> Chain:
        return self.scale(c)

    def __str__(self) -> str:
        from .textio import format_chain

        return format_chain(self)

    def __repr__(self) -> str:
        return f"Chain(rank={self.rank}, degree={self.degree}, {self})"


def _add_tensor(t: dict, rank: int, degree: int, scalar: HbarPoly, factors) -> None:
    factors = list(factors)
    if len(factors) != degree + 1:
        raise DomainError(f"expected {degree + 1} factors, got {len(factors)}")
    for f in factors:
        if f.rank != rank:
            raise DomainError(f"rank mismatch: {f.rank} vs {rank}")
    if not scalar:
        return
    partial_terms = [((), scalar)]
    for f in factors:
        nxt = []
        for key, c in partial_terms:
            for m, fc in f._t.items():
                nxt.append((key + (m,), c * fc))
        partial_terms = nxt
    _accumulate(t, partial_terms)


@lru_cache(maxsize=None)
def _commutative_monomials(m1: tuple, m2: tuple) -> tuple:
    return ((tuple(a + b for a, b in zip(m1, m2)), HBAR_ONE),)


def _product_table(choice: ProductChoice):
    return _moyal_monomials if choice is ProductChoice.MOYAL else _commutative_monomials


def hochschild_b(c: Chain, product="moyal") -> Chain:
    """b(a_0|...|a_m) = sum_{i<m} (-1)^i (..|a_i a_{i+1}|..) + (-1)^m (a_m a_0|a_1|..|a_{m-1})."""
    choice = _as_choice(product)
    m = c.degree
    if m < 1:
        raise DomainError("b is only defined on chains of degree >= 1")
    mul = _product_table(choice)
    t: dict = {}
    for key, s in c._t.items():
        neg = -s
        for i in range(m):
            sc = s if i % 2 == 0 else neg
            head, tail = key[:i], key[i + 2:]
            _accumulate(t, [(head + (mono,) + tail, sc * w) for mono, w in mul(key[i], key[i + 1])])
        sc = s if m % 2 == 0 else neg
        mid = key[1:m]
        _accumulate(t, [((mono,) + mid, sc * w) for mono, w in mul(key[m], key[0])])
    return Chain._raw(c.rank, m - 1, t)


def b_squared_check(c: Chain, product="moyal") -> bool:
    if c.degree < 2:
        raise DomainError("b^2 needs a chain of degree >= 2")
    return not hochschild_b(hochschild_b(c, product), product)
