import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tqm.coeff import I, HbarPoly
from tqm.errors import DomainError, ExprSyntaxError
from tqm.forms import Form, wedge
from tqm.hkr import quantum_hkr
from tqm.hochschild import Chain
from tqm.randgen import random_poly
from tqm.textio import (
    format_chain,
    format_form,
    format_poly,
    parse_chain,
    parse_poly,
    parse_time,
    poly_from_json,
    serialize,
    to_json_obj,
)
from tqm.weyl import PhasePoly, moyal_star

IH = HbarPoly.monomial(1, I)


def test_parse_examples(x1, p1):
    assert parse_poly("x1*p1 + i*h/2", 1) == moyal_star(x1, p1)
    assert parse_poly("3/2*x2^2", 2) == PhasePoly.x(2, 2) ** 2 * Fraction(3, 2)
    with pytest.raises(DomainError):
        parse_poly("x3", 2)


def test_parse_grammar_details(x1, p1):
    assert parse_poly("-x1 + 2", 1) == PhasePoly.const(1, 2) - x1
    assert parse_poly("(x1 + p1)^2", 1) == x1 * x1 + (x1 * p1).scale(2) + p1 * p1
    assert parse_poly("x1 / 4", 1) == x1.scale(Fraction(1, 4))
    assert parse_poly("x1/(2*i)", 1) == x1.scale(-I / 2)
    assert parse_poly("  h*h ", 1) == PhasePoly.const(1, HbarPoly.monomial(2))
    assert parse_poly("0", 1) == PhasePoly.zero(1)


def test_chain_examples(x1, p1):
    c = parse_chain("x1 | p1", 1)
    assert c == Chain.tensor([x1, p1]) and c.degree == 1
    assert parse_chain("x1 | p1 | x1*p1", 1) == Chain.tensor([x1, p1, x1 * p1])
    with pytest.raises(ExprSyntaxError):
        parse_chain("x1 |", 1)


@pytest.mark.parametrize(
    "src, pos",
    [
        ("", 0),
        ("x1 +", 4),
        ("x1 ** 2", 4),
        ("(x1", 3),
        ("x1^p1", 3),
        ("x1 $ 2", 3),
        ("x0", 0),
        ("x1)", 2),
        ("^2", 0),
    ],
)
def test_invalid_inputs_report_positions(src, pos):
    with pytest.raises(ExprSyntaxError) as e:
        parse_poly(src, 1)
    assert e.value.pos == pos
    assert f"position {pos}" in str(e.value)


@pytest.mark.parametrize("src", ["2x1", "x1/h", "x1/x1", "3/0", "x1/0", "x1^-1"])
def test_other_invalid_inputs(src):
    with pytest.raises(ValueError) as e:
        parse_poly(src, 1)
    assert getattr(e.value, "pos", None) is not None or isinstance(e.value, DomainError)


def test_chain_error_position_is_global():
    with pytest.raises(ExprSyntaxError) as e:
        parse_chain("x1 | p1 +", 1)
    assert e.value.pos == 9
    with pytest.raises(ExprSyntaxError) as e:
        parse_chain("x1 || p1", 1)
    assert e.value.pos == 4


def test_parse_time():
    assert parse_time(" 2/3 ") == Fraction(2, 3)
    with pytest.raises(ExprSyntaxError):
        parse_time("1/0")


def test_text_formatting(x1, p1):
    assert format_poly(moyal_star(x1, p1)) == "x1*p1 + 1/2*i*h"
    assert format_poly(PhasePoly.zero(1)) == "0"
    w = quantum_hkr(Chain.tensor([x1, p1, x1 * p1])).value
    assert format_form(w) == "(-1/2*x1*p1 + 1/12*i*h)*dx1^dp1"
    assert parse_chain(format_chain(Chain.tensor([x1, p1])), 1) == Chain.tensor([x1, p1])


def test_json_shapes(x1, p1):
    assert json.loads(serialize(PhasePoly.zero(1)))["terms"] == []
    (term,) = json.loads(serialize(PhasePoly.const(1, IH)))["terms"]
    assert term["coeff"] == [{"hbar_power": 1, "re": {"num": "0", "den": "1"}, "im": {"num": "1", "den": "1"}}]
    form = to_json_obj(wedge(x1, Form.generator(1, "p", 1)))
    assert form["components"][0]["generators"] == ["dp1"]
    chain = to_json_obj(Chain.tensor([x1, p1], 2))
    assert chain["degree"] == 1 and len(chain["terms"][0]["factors"]) == 2
    res = to_json_obj(quantum_hkr(Chain.tensor([x1, p1])))
    assert res["chain_degree"] == 1


def test_json_is_canonical(x1, p1):
    a = x1 * p1 + p1 - x1
    b = p1 - x1 + p1 * x1
    assert serialize(a) == serialize(b)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_round_trips(seed):
    rng = random.Random(seed)
    r = rng.randint(1, 2)
    f = random_poly(rng, r, 3, 4, hbar=True)
    assert parse_poly(format_poly(f), r) == f
    assert poly_from_json(serialize(f)) == f
