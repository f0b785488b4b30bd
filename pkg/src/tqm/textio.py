"""Expression parser and canonical text/JSON serialisation.

Grammar (whitespace between tokens is ignored)::

    expr   := ('+'|'-')? term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' nat)?
    atom   := rational | 'i' | 'h' | 'x'nat | 'p'nat | '(' expr ')'
    rational := int ('/' nat)?

``h`` is hbar and ``i`` the imaginary unit.  Division is only by a nonzero
constant (no x, p or h in the divisor).  A chain is a list of expressions
separated by ``|``.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .coeff import HBAR, I, GaussianRational, HbarPoly
from .errors import DomainError, ExprSyntaxError
from .forms import Form, generator_name
from .hochschild import Chain
from .weyl import PhasePoly

__all__ = [
    "parse_poly",
    "parse_chain",
    "parse_time",
    "serialize",
    "to_json_obj",
    "poly_from_json",
    "format_poly",
    "format_form",
    "format_chain",
    "format_text",
]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[xp]\d+)|(?P<sym>[ih])|(?P<op>[-+*/^()]))")


class _Parser:
    def __init__(self, text: str, rank: int, offset: int = 0, full_text: str | None = None):
        self.text = text
        self.rank = rank
        self.offset = offset
        self.full = text if full_text is None else full_text
        self.tokens = self._lex()
        self.i = 0

    def error(self, msg: str, pos: int):
        raise ExprSyntaxError(msg, pos + self.offset, self.full)

    def _lex(self):
        out = []
        pos = 0
        n = len(self.text)
        while pos < n:
            if self.text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(self.text, pos)
            if not m or m.end() == pos:
                self.error(f"unexpected character {self.text[pos]!r}", pos)
            kind = m.lastgroup
            start = m.start(kind)
            out.append((kind, m.group(kind), start))
            pos = m.end()
        out.append(("end", "", n))
        return out

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            self.error(f"expected {op!r}", pos)

    def parse(self) -> PhasePoly:
        if self.peek()[0] == "end":
            self.error("empty expression", self.peek()[2])
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            self.error(f"unexpected {val!r}", pos)
        return value

    def expr(self) -> PhasePoly:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self) -> PhasePoly:
        value = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs_pos = self.peek()[2]
                rhs = self.factor()
                if val == "*":
                    value = value * rhs
                else:
                    value = value.scale(_constant_inverse(rhs, lambda m: self.error(m, rhs_pos)))
            else:
                return value

    def factor(self) -> PhasePoly:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                self.error("exponent must be a natural number", pos)
            base = base ** int(val)
        return base

    def atom(self) -> PhasePoly:
        kind, val, pos = self.take()
        r = self.rank
        if kind == "num":
            q = Fraction(int(val))
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "/" and self.tokens[self.i + 1][0] == "num":
                nxt = self.tokens[self.i + 1]
                self.take()
                self.take()
                if int(nxt[1]) == 0:
                    self.error("zero denominator", nxt[2])
                q = q / int(nxt[1])
            return PhasePoly.const(r, q)
        if kind == "sym":
            return PhasePoly.const(r, I if val == "i" else HBAR)
        if kind == "var":
            idx = int(val[1:])
            if idx < 1:
                self.error("variable indices start at 1", pos)
            if idx > r:
                raise DomainError(f"variable {val} at position {pos + self.offset} exceeds rank {r}")
            return PhasePoly.var(r, val[0], idx)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            self.error("unexpected end of input", pos)
        self.error(f"unexpected {val!r}", pos)


def _constant_inverse(f: PhasePoly, fail) -> GaussianRational:
    if not f.is_constant() or not f.constant_term().is_constant():
        fail("can only divide by a constant")
    c = f.constant_term().constant_term()
    if not c:
        fail("division by zero")
    return c.inverse()


def parse_poly(src: str, rank: int) -> PhasePoly:
    if rank < 1:
        raise DomainError("rank must be positive")
    return _Parser(src, rank).parse()


def parse_chain(src: str, rank: int) -> Chain:
    factors = []
    start = 0
    for seg in src.split("|"):
        if not seg.strip():
            raise ExprSyntaxError("empty chain segment", start + len(seg), src)
        factors.append(_Parser(seg, rank, offset=start, full_text=src).parse())
        start += len(seg) + 1
    return Chain.tensor(factors)


def parse_time(src: str) -> Fraction:
    try:
        return Fraction(src.strip())
    except (ValueError, ZeroDivisionError):
        raise ExprSyntaxError(f"bad rational time {src!r}", 0, src) from None


# -- text formatting -----------------------------------------------------------


def _mono_text(rank: int, mono: tuple) -> list:
    parts = []
    for k in range(rank):
        e = mono[k]
        if e:
            parts.append(f"x{k + 1}" if e == 1 else f"x{k + 1}^{e}")
    for k in range(rank):
        e = mono[rank + k]
        if e:
            parts.append(f"p{k + 1}" if e == 1 else f"p{k + 1}^{e}")
    return parts


def _coeff_parts(g: GaussianRational, k: int):
    """(negative?, factor strings) for g*h^k."""
    neg = False
    if g.re and g.im:
        factors = [f"({g})"]
    else:
        q = g.re if g.re else g.im
        if q < 0:
            neg, q = True, -q
        factors = []
        if q != 1:
            factors.append(str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}")
        if g.im:
            factors.append("i")
    if k:
        factors.append("h" if k == 1 else f"h^{k}")
    return neg, factors


def _join_terms(terms) -> str:
    if not terms:
        return "0"
    out = ""
    for n, (neg, body) in enumerate(terms):
        if n == 0:
            out = f"-{body}" if neg else body
        else:
            out += f" - {body}" if neg else f" + {body}"
    return out


def _poly_terms(rank: int, items) -> list:
    terms = []
    for mono, c in items:
        mparts = _mono_text(rank, mono)
        for k, g in c.items():
            neg, cparts = _coeff_parts(g, k)
            body = "*".join(cparts + mparts) or "1"
            terms.append((neg, body))
    return terms


def format_poly(f: PhasePoly) -> str:
    return _join_terms(_poly_terms(f.rank, f.items()))


def format_form(w: Form) -> str:
    if not w:
        return "0"
    parts = []
    for gens, poly in w.components().items():
        name = "^".join(generator_name(w.rank, g) for g in gens)
        body = format_poly(poly)
        if not gens:
            parts.append(body if len(poly) == 1 else f"({body})")
        else:
            parts.append(f"({body})*{name}")
    return " + ".join(parts)


def format_chain(c: Chain) -> str:
    if not c:
        return "0"
    parts = []
    for s, factors in c.terms:
        tensor = " | ".join(format_poly(f) for f in factors)
        parts.append(tensor if s == 1 else f"({s}) * ({tensor})")
    return " + ".join(parts)


def format_text(value) -> str:
    from .hkr import HKRResult

    if isinstance(value, HKRResult):
        return format_form(value.value)
    if isinstance(value, PhasePoly):
        return format_poly(value)
    if isinstance(value, Form):
        return format_form(value)
    if isinstance(value, Chain):
        return format_chain(value)
    if isinstance(value, HbarPoly):
        return str(value)
    raise TypeError(f"cannot format {type(value).__name__}")


# -- JSON ----------------------------------------------------------------------


def _rat(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _hbar_json(c: HbarPoly) -> list:
    return [{"hbar_power": k, "re": _rat(g.re), "im": _rat(g.im)} for k, g in c.items()]


def _poly_json(f: PhasePoly) -> dict:
    r = f.rank
    return {
        "rank": r,
        "terms": [{"x": list(m[:r]), "p": list(m[r:]), "coeff": _hbar_json(c)} for m, c in f.items()],
    }


def _form_json(w: Form) -> dict:
    return {
        "rank": w.rank,
        "components": [
            {"generators": [generator_name(w.rank, g) for g in gens], "coeff": _poly_json(poly)}
            for gens, poly in w.components().items()
        ],
    }


def to_json_obj(value):
    from .hkr import HKRResult

    if isinstance(value, PhasePoly):
        return _poly_json(value)
    if isinstance(value, Form):
        return _form_json(value)
    if isinstance(value, HKRResult):
        return {"chain_degree": value.chain_degree, "value": _form_json(value.value)}
    if isinstance(value, Chain):
        return {
            "rank": value.rank,
            "degree": value.degree,
            "terms": [
                {"scalar": _hbar_json(s), "factors": [_poly_json(f) for f in factors]}
                for s, factors in value.terms
            ],
        }
    if isinstance(value, HbarPoly):
        return _hbar_json(value)
    raise TypeError(f"cannot serialise {type(value).__name__}")


def serialize(value) -> str:
    return json.dumps(to_json_obj(value), separators=(", ", ": "))


def _rat_from(d) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def poly_from_json(data) -> PhasePoly:
    """Inverse of :func:`serialize` for PhasePoly values (accepts text or parsed JSON)."""
    if isinstance(data, str):
        data = json.loads(data)
    r = int(data["rank"])
    terms = []
    for t in data["terms"]:
        coeff = HbarPoly(
            [(c["hbar_power"], GaussianRational(_rat_from(c["re"]), _rat_from(c["im"]))) for c in t["coeff"]]
        )
        terms.append((tuple(t["x"]) + tuple(t["p"]), coeff))
    return PhasePoly(r, terms)

