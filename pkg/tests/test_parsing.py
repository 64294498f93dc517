import random

import pytest

from oag import (
    ConvexCut,
    GroupSpec,
    INT,
    LitKind,
    PLOCAL,
    PSPAN,
    ParseError,
    RAT,
    Term,
    format_element,
    format_literal,
    parse_element,
    parse_formula,
    parse_params,
    parse_spec,
)
from helpers import random_element, random_spec


def test_parse_spec_examples():
    assert parse_spec("lex(Q, Gp(2)^2)") == GroupSpec((RAT, PSPAN(2), PSPAN(2)))
    assert parse_spec("lex(Z)") == GroupSpec((INT,))
    assert parse_spec("lex(Z, Zloc(3), Q)") == GroupSpec((INT, PLOCAL(3), RAT))


def test_parse_spec_rejects_nonprime():
    with pytest.raises(ParseError):
        parse_spec("lex(Gp(4))")
    with pytest.raises(ParseError):
        parse_spec("lex(Zloc(6))")


def test_parse_spec_syntax_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_spec("lex(Q Q)")
    assert err.value.position > 0
    with pytest.raises(ParseError):
        parse_spec("lex()")
    with pytest.raises(ParseError):
        parse_spec("lex(Q) trailing")


def test_spec_round_trip():
    rng = random.Random(3)
    for _ in range(50):
        spec = random_spec(rng)
        assert parse_spec(str(spec)) == spec


def test_parse_element_example():
    g = parse_spec("lex(Q, Gp(2), Zloc(3))")
    e = parse_element(g, "( 1/2 | b0 + 2*b1 | 0 )")
    assert str(e) == "(1/2 | b0 + 2*b1 | 0)"


def test_element_round_trip_random():
    rng = random.Random(5)
    for _ in range(120):
        spec = random_spec(rng)
        e = random_element(rng, spec)
        assert parse_element(spec, format_element(e)) == e


def test_parse_element_errors():
    g = parse_spec("lex(Z, Zloc(2))")
    with pytest.raises(ParseError):
        parse_element(g, "(1/2 | 0)")  # Z coordinate must be integral
    with pytest.raises(ParseError):
        parse_element(g, "(1 | 1/2)")  # denominator divisible by p
    with pytest.raises(ParseError):
        parse_element(g, "(1 | 0 | 0)")  # too many coordinates
    with pytest.raises(ParseError):
        parse_element(g, "(1)")  # too few


def test_parse_span_shorthand():
    g = parse_spec("lex(Gp(2))")
    assert parse_element(g, "3") == parse_element(g, "3*b0")
    assert parse_element(g, "-b1") == parse_element(g, "-1*b1")
    assert parse_element(g, "b0 - 2*b1") == parse_element(g, "1*b0 + -2*b1")


def test_parse_formula_example():
    lits = parse_formula("cong[4, cut2](3x, 1*a0 + -2*a1) & 1x < 1*a2")
    assert len(lits) == 2
    assert lits[0].kind is LitKind.CONG
    assert lits[0].k == 3 and lits[0].m == 4 and lits[0].alpha == ConvexCut(2)
    assert lits[0].term == Term.of({0: 1, 1: -2})
    assert lits[1].kind is LitKind.ORD and lits[1].cmp == "<"


def test_parse_formula_negations():
    lits = parse_formula("!cong[2, cut1](1x, 1*a0) & !1x = 1*a0 & !ing[cut1](1x, 1*a0) & !1x < 1*a0")
    assert [l.kind for l in lits] == [
        LitKind.NCONG,
        LitKind.NEQ,
        LitKind.NOTINGRP,
        LitKind.ORD,
    ]
    assert lits[3].cmp == ">="


def test_parse_formula_flipped_comparison():
    (lit,) = parse_formula("1*a0 < 2x")
    assert lit.kind is LitKind.ORD and lit.cmp == ">" and lit.k == 2


def test_parse_formula_errors():
    with pytest.raises(ParseError):
        parse_formula("cong[2, cut1](0x, 1*a0)")  # zero coefficient
    with pytest.raises(ParseError):
        parse_formula("1x < 2x")  # both sides mention x
    with pytest.raises(ParseError):
        parse_formula("1*a0 < 2*a1")  # neither side mentions x
    with pytest.raises(ParseError):
        parse_formula("cong[2 cut1](1x, 1*a0)")


def test_formula_round_trip():
    texts = [
        "cong[4, cut2](3x, 1*a0 + -2*a1)",
        "!cong[12, cut0](-2x, 3*a1)",
        "ing[cut1](2x, 1*a0)",
        "!ing[cut3](1x, 2*a2)",
        "1x < 1*a2",
        "-3x >= 2*a0 + 1*a1",
        "!1x = 1*a0",
        "cong[1, cut1](1x, 0)",
    ]
    for text in texts:
        (lit,) = parse_formula(text)
        assert parse_formula(format_literal(lit)) == (lit,)


def test_parse_params_empty_and_multi():
    g = parse_spec("lex(Q, Gp(2))")
    assert parse_params(g, "") == ()
    params = parse_params(g, "(1 | b0) ; (0 | 2*b1)")
    assert len(params) == 2
    assert format_element(params[1]) == "(0 | 2*b1)"
