import random

import pytest

from mvmodal.formulas import (And, Box, Const0, Const1, Diamond, Implies, ONE,
                              Or, ParseError, Times, Var, ZERO, box_prefix,
                              fpow, iff, neg, parse, prop_subformulas, render,
                              subformulas, substitute, variables)
from helpers import random_formula

p, q, r = Var("p"), Var("q"), Var("r")


def test_parse_sugar_elimination():
    assert parse("~p") == Implies(p, ZERO)
    assert parse("p <-> q") == Times(Implies(p, q), Implies(q, p))
    assert parse("p^3") == Times(p, Times(p, p))


def test_parse_precedence():
    assert parse("p -> q -> r") == Implies(p, Implies(q, r))
    assert parse("p * q \\/ r") == Or(Times(p, q), r)
    assert parse("p /\\ q \\/ r") == Or(And(p, q), r)
    assert parse("[] p -> q") == Implies(Box(p), q)
    assert parse("<> p * q") == Times(Diamond(p), q)
    assert parse("[] p ^ 2") == Times(Box(p), Box(p))
    assert parse("1") == ONE and parse("0") == ZERO


def test_parse_errors_carry_position():
    with pytest.raises(ParseError):
        parse("p ->")
    with pytest.raises(ParseError):
        parse("p & q")
    with pytest.raises(ParseError):
        parse("p^0")
    with pytest.raises(ParseError):
        parse("2")
    with pytest.raises(ParseError):
        parse("(p")


def test_render_examples():
    assert render(Box(p)) == "([] p)"
    assert render(Implies(p, ZERO)) == "(p -> 0)"
    assert render(Times(p, q)) == "(p * q)"
    assert render(Diamond(p)) == "(<> p)"


def test_parse_render_round_trip_random():
    rng = random.Random(20240311)
    for _ in range(1000):
        f = random_formula(rng, rng.randint(0, 8))
        assert parse(render(f)) == f


def test_subformulas_examples():
    assert subformulas(Box(Times(p, q))) == {p, q, Times(p, q), Box(Times(p, q))}
    assert subformulas(p) == {p}
    assert subformulas(ZERO) == {ZERO}


def test_subformulas_closed_and_bounded():
    rng = random.Random(7)

    def nodes(f):
        if isinstance(f, (Box, Diamond)):
            return 1 + nodes(f.body)
        if isinstance(f, (And, Or, Times, Implies)):
            return 1 + nodes(f.left) + nodes(f.right)
        return 1

    for _ in range(200):
        f = random_formula(rng, rng.randint(0, 5))
        sf = subformulas(f)
        assert len(sf) <= nodes(f)
        for g in sf:
            assert subformulas(g) <= sf


def test_prop_subformulas_examples():
    assert prop_subformulas(Implies(Box(p), q)) == {Box(p), q, Implies(Box(p), q)}
    assert prop_subformulas(Box(Times(p, q))) == {Box(Times(p, q))}
    assert prop_subformulas(p) == {p}


def test_substitute_examples():
    assert substitute(Implies(p, q), {"p": Box(r)}) == Implies(Box(r), q)
    assert substitute(Box(p), {}) == Box(p)
    assert substitute(Times(p, p), {"p": ZERO}) == Times(ZERO, ZERO)


def test_substitute_distributes():
    rng = random.Random(11)
    for _ in range(100):
        l = random_formula(rng, 3)
        rgt = random_formula(rng, 3)
        sigma = {"p": random_formula(rng, 2), "q": Box(r)}
        for cls in (And, Or, Times, Implies):
            assert substitute(cls(l, rgt), sigma) == \
                cls(substitute(l, sigma), substitute(rgt, sigma))


def test_box_prefix():
    assert box_prefix([p], 2) == (p, Box(p), Box(Box(p)))
    assert set(box_prefix([p, q], 0)) == {p, q}
    assert box_prefix([], 5) == ()
    with pytest.raises(ValueError):
        box_prefix([p], -1)


def test_fpow_and_helpers():
    assert fpow(p, 1) == p
    assert fpow(p, 0) == ONE
    assert neg(p) == Implies(p, ZERO)
    assert iff(p, q) == parse("p <-> q")


def test_variable_name_validation():
    with pytest.raises(ValueError):
        Var("1bad")
    with pytest.raises(ValueError):
        Var("")
    assert variables(parse("p -> ([] q12_x)")) == {"p", "q12_x"}
