"""Polynomial differential forms on phase space, contraction, and the BV operator.

Grassmann generators are numbered 0..2r-1 in the fixed order
dx^1 < ... < dx^r < dp_1 < ... < dp_r; a component is keyed by the sorted
tuple of its generators.
"""
from __future__ import annotations

from fractions import Fraction

from .coeff import HBAR_ONE, GaussianRational, HbarPoly, as_hbar
from .errors import DomainError
from .hochschild import Chain
from .weyl import PhasePoly, _accumulate, _check_var, mono_key, partial

__all__ = [
    "Form",
    "wedge",
    "total_differential",
    "contract",
    "form_partial",
    "bv_delta",
    "classical_hkr",
    "generator_name",
    "merge_sign",
]


def generator_name(rank: int, g: int) -> str:
    return f"dx{g + 1}" if g < rank else f"dp{g - rank + 1}"


def merge_sign(g1: tuple, g2: tuple):
    """Sign and merged tuple for g1 ^ g2 (both sorted); (0, None) on overlap."""
    if not g1:
        return 1, g2
    if not g2:
        return 1, g1
    s1 = set(g1)
    if any(g in s1 for g in g2):
        return 0, None
    inversions = 0
    for b in g2:
        inversions += sum(1 for a in g1 if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(g1 + g2))


class Form:
    """Grassmann-algebra element over PhasePoly, stored flat as
    ``{(generators, monomial): HbarPoly}``."""

    __slots__ = ("rank", "_t", "_hash")

    def __init__(self, rank: int, components=None):
        self.rank = rank
        t: dict = {}
        for gens, poly in (components.items() if isinstance(components, dict) else components or ()):
            gens = tuple(gens)
            if list(gens) != sorted(set(gens)) or any(not 0 <= g < 2 * rank for g in gens):
                raise DomainError(f"generator subset {gens} must be sorted, distinct, < {2 * rank}")
            if isinstance(poly, PhasePoly):
                if poly.rank != rank:
                    raise DomainError("rank mismatch")
                _accumulate(t, [((gens, m), c) for m, c in poly._t.items()])
            else:
                _accumulate(t, [((gens, (0,) * (2 * rank)), as_hbar(poly))] if as_hbar(poly) else [])
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, rank: int, t: dict) -> Form:
        obj = cls.__new__(cls)
        obj.rank = rank
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, rank: int) -> Form:
        return cls._raw(rank, {})

    @classmethod
    def from_poly(cls, f: PhasePoly) -> Form:
        return cls._raw(f.rank, {((), m): c for m, c in f._t.items()})

    @classmethod
    def generator(cls, rank: int, variable: str, index: int) -> Form:
        g = _check_var(rank, variable, index)
        return cls._raw(rank, {((g,), (0,) * (2 * rank)): HBAR_ONE})

    def components(self) -> dict:
        """``{generators: PhasePoly}`` with generator tuples sorted."""
        by: dict = {}
        for (gens, m), c in self._t.items():
            by.setdefault(gens, {})[m] = c
        return {g: PhasePoly._raw(self.rank, by[g]) for g in sorted(by, key=lambda g: (len(g), g))}

    def component(self, gens) -> PhasePoly:
        gens = tuple(gens)
        return PhasePoly._raw(self.rank, {m: c for (g, m), c in self._t.items() if g == gens})

    def items(self):
        """((generators, monomial), HbarPoly) in canonical order."""
        return sorted(self._t.items(), key=lambda kv: ((len(kv[0][0]), kv[0][0]), mono_key(kv[0][1])))

    def degrees(self) -> set:
        return {len(g) for g, _ in self._t}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __bool__(self) -> bool:
        return bool(self._t)

    def __eq__(self, other) -> bool:
        if isinstance(other, PhasePoly):
            other = Form.from_poly(other)
        if not isinstance(other, Form):
            return NotImplemented
        return self.rank == other.rank and self._t == other._t

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._t.items())))
        return self._hash

    def _same_rank(self, other) -> None:
        if self.rank != other.rank:
            raise DomainError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __neg__(self) -> Form:
        return Form._raw(self.rank, {k: -c for k, c in self._t.items()})

    def __add__(self, other) -> Form:
        if isinstance(other, PhasePoly):
            other = Form.from_poly(other)
        if not isinstance(other, Form):
            return NotImplemented
        self._same_rank(other)
        t = dict(self._t)
        _accumulate(t, other._t.items())
        return Form._raw(self.rank, t)

    __radd__ = __add__

    def __sub__(self, other) -> Form:
        if isinstance(other, PhasePoly):
            other = Form.from_poly(other)
        return self + (-other)

    def scale(self, c) -> Form:
        c = as_hbar(c)
        if not c:
            return Form.zero(self.rank)
        return Form._raw(self.rank, {k: v * c for k, v in self._t.items()})

    def __mul__(self, other) -> Form:
        if isinstance(other, (int, Fraction, GaussianRational, HbarPoly)):
            return self.scale(other)
        if isinstance(other, (Form, PhasePoly)):
            return wedge(self, other)
        return NotImplemented

    def __rmul__(self, other) -> Form:
        if isinstance(other, (int, Fraction, GaussianRational, HbarPoly)):
            return self.scale(other)
        if isinstance(other, PhasePoly):
            return wedge(Form.from_poly(other), self)
        return NotImplemented

    def substitute_hbar(self, value) -> Form:
        t = {}
        for k, c in self._t.items():
            v = c.substitute(value)
            if v:
                t[k] = HbarPoly.const(v)
        return Form._raw(self.rank, t)

    def __str__(self) -> str:
        from .textio import format_form

        return format_form(self)

    def __repr__(self) -> str:
        return f"Form(rank={self.rank}, {self})"


def _as_form(v) -> Form:
    return Form.from_poly(v) if isinstance(v, PhasePoly) else v


def wedge(omega, eta) -> Form:
    omega, eta = _as_form(omega), _as_form(eta)
    omega._same_rank(eta)
    t: dict = {}
    for (g1, m1), c1 in omega._t.items():
        for (g2, m2), c2 in eta._t.items():
            sign, g = merge_sign(g1, g2)
            if not sign:
                continue
            c = c1 * c2
            _accumulate(t, [((g, tuple(a + b for a, b in zip(m1, m2))), c if sign > 0 else -c)])
    return Form._raw(omega.rank, t)


def total_differential(f: PhasePoly) -> Form:
    """df = sum_i (df/dx^i) dx^i + (df/dp_i) dp_i."""
    r = f.rank
    t: dict = {}
    for i in range(1, r + 1):
        for kind, g in (("x", i - 1), ("p", r + i - 1)):
            d = partial(f, kind, i)
            _accumulate(t, [(((g,), m), c) for m, c in d._t.items()])
    return Form._raw(r, t)


def contract(omega, direction: str, index: int) -> Form:
    """Interior product with d/dx^index or d/dp_index (odd derivation)."""
    omega = _as_form(omega)
    g = _check_var(omega.rank, direction, index)
    t: dict = {}
    for (gens, m), c in omega._t.items():
        if g in gens:
            pos = gens.index(g)
            rest = gens[:pos] + gens[pos + 1:]
            _accumulate(t, [((rest, m), -c if pos % 2 else c)])
    return Form._raw(omega.rank, t)


def form_partial(omega, variable: str, index: int) -> Form:
    """Partial derivative applied to every coefficient."""
    omega = _as_form(omega)
    pos = _check_var(omega.rank, variable, index)
    t: dict = {}
    for (gens, mono), c in omega._t.items():
        e = mono[pos]
        if e:
            m = list(mono)
            m[pos] = e - 1
            _accumulate(t, [((gens, tuple(m)), c * e)])
    return Form._raw(omega.rank, t)


def bv_delta(omega) -> Form:
    """sum_i d/dx^i contract_{d/dp_i} - d/dp_i contract_{d/dx^i}."""
    omega = _as_form(omega)
    out = Form.zero(omega.rank)
    for i in range(1, omega.rank + 1):
        out = out + form_partial(contract(omega, "p", i), "x", i)
        out = out - form_partial(contract(omega, "x", i), "p", i)
    return out


def classical_hkr(c: Chain) -> Form:
    """f_0 | f_1 | ... | f_m  ->  f_0 df_1 ^ ... ^ df_m, extended linearly."""
    r = c.rank
    out = Form.zero(r)
    for key, s in c._t.items():
        acc = Form._raw(r, {((), key[0]): s})
        for mono in key[1:]:
            acc = wedge(acc, total_differential(PhasePoly._raw(r, {mono: HBAR_ONE})))
            if not acc:
                break
        out = out + acc
    return out
