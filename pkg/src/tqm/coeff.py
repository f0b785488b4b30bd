"""Exact scalars: Gaussian rationals Q(i) and polynomials in hbar over them.

Rationals are :class:`fractions.Fraction`, which is always reduced and keeps a
positive denominator.  Everything downstream is built over :class:`HbarPoly`.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import DomainError

__all__ = [
    "GaussianRational",
    "HbarPoly",
    "I",
    "HBAR",
    "as_gaussian",
    "as_hbar",
    "gr_arith",
    "hbar_arith",
    "hbar_substitute",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, _RationalABC)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot use {type(v).__name__} as an exact rational")


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """An element re + im*i of Q(i)."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)
        self._hash = None

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> GaussianRational:
        obj = cls.__new__(cls)
        obj.re = re
        obj.im = im
        obj._hash = None
        return obj

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.re, self.im)) if self.im else hash(self.re)
        return self._hash

    def __neg__(self) -> GaussianRational:
        return GaussianRational._raw(-self.re, -self.im)

    def __add__(self, other) -> GaussianRational:
        o = _coerce_gr(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> GaussianRational:
        o = _coerce_gr(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> GaussianRational:
        o = _coerce_gr(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> GaussianRational:
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(self.re * other, self.im * other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, _ZERO)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if not n:
            raise DomainError("division by zero in Q(i)")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other) -> GaussianRational:
        o = _coerce_gr(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> GaussianRational:
        o = _coerce_gr(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> GaussianRational:
        if n < 0:
            return self.inverse() ** (-n)
        out = GaussianRational._raw(_ONE, _ZERO)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        # canonical text: a/b+c/d*i with zero parts omitted
        if not self.im:
            return _fmt_rational(self.re)
        if self.im == 1:
            im = "i"
        elif self.im == -1:
            im = "-i"
        else:
            im = f"{_fmt_rational(self.im)}*i"
        if not self.re:
            return im
        sep = "" if im.startswith("-") else "+"
        return f"{_fmt_rational(self.re)}{sep}{im}"

    def __repr__(self) -> str:
        return f"GaussianRational({self})"


def _coerce_gr(v) -> GaussianRational | None:
    if isinstance(v, GaussianRational):
        return v
    if isinstance(v, (int, Fraction)):
        return GaussianRational._raw(Fraction(v), _ZERO)
    return None


def as_gaussian(v) -> GaussianRational:
    g = _coerce_gr(v)
    if g is None:
        if isinstance(v, str):
            return GaussianRational(Fraction(v))
        raise TypeError(f"cannot convert {type(v).__name__} to GaussianRational")
    return g


GR_ZERO = GaussianRational._raw(_ZERO, _ZERO)
GR_ONE = GaussianRational._raw(_ONE, _ZERO)
I = GaussianRational._raw(_ZERO, _ONE)


class HbarPoly:
    """Polynomial in hbar with Gaussian-rational coefficients.

    Stored as a dict ``{exponent: GaussianRational}`` without zero entries.
    Instances are treated as immutable.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for k, v in items:
                if k < 0:
                    raise DomainError("negative hbar exponent")
                g = as_gaussian(v)
                if g:
                    prev = c.get(k)
                    g = g if prev is None else prev + g
                    if g:
                        c[k] = g
                    else:
                        del c[k]
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> HbarPoly:
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, v) -> HbarPoly:
        g = as_gaussian(v)
        return cls._raw({0: g} if g else {})

    @classmethod
    def monomial(cls, k: int, v=1) -> HbarPoly:
        g = as_gaussian(v)
        return cls._raw({k: g} if g else {})

    def items(self):
        """(exponent, coefficient) pairs, ascending exponent."""
        return sorted(self._c.items())

    def coefficient(self, k: int) -> GaussianRational:
        return self._c.get(k, GR_ZERO)

    @property
    def degree(self) -> int:
        """Largest stored exponent; -1 for the zero polynomial."""
        return max(self._c) if self._c else -1

    @property
    def low_degree(self) -> int:
        return min(self._c) if self._c else -1

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def constant_term(self) -> GaussianRational:
        return self._c.get(0, GR_ZERO)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, HbarPoly):
            return self._c == other._c
        g = _coerce_gr(other)
        if g is not None:
            return self._c == ({0: g} if g else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __neg__(self) -> HbarPoly:
        return HbarPoly._raw({k: -v for k, v in self._c.items()})

    def __add__(self, other) -> HbarPoly:
        o = _coerce_hbar(other)
        if o is None:
            return NotImplemented
        if not o._c:
            return self
        if not self._c:
            return o
        c = dict(self._c)
        for k, v in o._c.items():
            prev = c.get(k)
            if prev is None:
                c[k] = v
            else:
                s = prev + v
                if s:
                    c[k] = s
                else:
                    del c[k]
        return HbarPoly._raw(c)

    __radd__ = __add__

    def __sub__(self, other) -> HbarPoly:
        o = _coerce_hbar(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> HbarPoly:
        o = _coerce_hbar(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> HbarPoly:
        if isinstance(other, (int, Fraction, GaussianRational)):
            if not other:
                return HBAR_ZERO
            return HbarPoly._raw({k: v * other for k, v in self._c.items()})
        if not isinstance(other, HbarPoly):
            return NotImplemented
        if not self._c or not other._c:
            return HBAR_ZERO
        c: dict = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                k = k1 + k2
                prev = c.get(k)
                c[k] = v1 * v2 if prev is None else prev + v1 * v2
        return HbarPoly._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> HbarPoly:
        if n < 0:
            raise DomainError("hbar polynomials are not invertible")
        out = HBAR_ONE
        for _ in range(n):
            out = out * self
        return out

    def substitute(self, value) -> GaussianRational:
        """Evaluate at hbar = value (Horner)."""
        v = as_gaussian(value)
        if not self._c:
            return GR_ZERO
        acc = GR_ZERO
        for k in range(self.degree, -1, -1):
            acc = acc * v + self._c.get(k, GR_ZERO)
        return acc

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, v in self.items():
            cs = str(v)
            if k == 0:
                parts.append(cs)
                continue
            hs = "h" if k == 1 else f"h^{k}"
            if v == 1:
                parts.append(hs)
            elif v == -1:
                parts.append(f"-{hs}")
            elif v.re and v.im:
                parts.append(f"({cs})*{hs}")
            else:
                parts.append(f"{cs}*{hs}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"HbarPoly({self})"


def _coerce_hbar(v) -> HbarPoly | None:
    if isinstance(v, HbarPoly):
        return v
    g = _coerce_gr(v)
    if g is None:
        return None
    return HbarPoly._raw({0: g} if g else {})


def as_hbar(v) -> HbarPoly:
    h = _coerce_hbar(v)
    if h is None:
        raise TypeError(f"cannot convert {type(v).__name__} to HbarPoly")
    return h


HBAR_ZERO = HbarPoly._raw({})
HBAR_ONE = HbarPoly._raw({0: GR_ONE})
HBAR = HbarPoly._raw({1: GR_ONE})
I_HBAR = HbarPoly._raw({1: I})


def gr_arith(a, b, op: str) -> GaussianRational:
    a, b = as_gaussian(a), as_gaussian(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def hbar_arith(f, g, op: str) -> HbarPoly:
    f, g = as_hbar(f), as_hbar(g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def hbar_substitute(f: HbarPoly, value) -> GaussianRational:
    return as_hbar(f).substitute(value)
