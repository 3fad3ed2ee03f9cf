import random

import pytest
from hypothesis import given, settings, strategies as st

from umlpcd.minicond import (
    And, AttrRef, Compare, CondSyntaxError, Const, EvalError, Lit, LinkCount, Not, Or, Quant, Var,
    eval_cond, parse_cond, show, typecheck,
)

from helpers import model, oracle_eval, random_cond, random_state_model


def test_precedence_and_quantifier_scope():
    e = parse_cond("forall a in extent(A): a.x = 1 or a.x = 2 and true")
    assert isinstance(e, Quant)
    assert e.body == Or(Compare("=", AttrRef("a", "x"), Lit(1)),
                        And(Compare("=", AttrRef("a", "x"), Lit(2)), Const(True)))


def test_attr_forms_are_equivalent():
    assert parse_cond("exists a in extent(A): a.attr(n) > 0") == parse_cond("exists a in extent(A): a.n > 0")


def test_unicode_operators():
    assert parse_cond("1 ≠ 2 and 1 ≤ 2 and 2 ≥ 1") == parse_cond("1 != 2 and 1 <= 2 and 2 >= 1")


def test_parenthesised_term_versus_expression():
    e = parse_cond("(true or false) and not (1 = 2)")
    assert e == And(Or(Const(True), Const(False)), Not(Compare("=", Lit(1), Lit(2))))


def test_link_count_term():
    e = parse_cond("forall b in extent(B): count(links(R, b, right)) <= 1")
    assert e.body.left == LinkCount("R", "b", "right")


def test_literals():
    e = parse_cond('"a\\"b" = "a\\"b" and null = null and 1.5 > 1 and -2 < 0 and true = true')
    parts = []
    while isinstance(e, And):
        parts.append(e.right)
        e = e.left
    parts.append(e)
    lits = {p.left.value if isinstance(p.left.value, (str, type(None))) else p.left.value for p in parts}
    assert 'a"b' in lits and None in lits and 1.5 in lits and -2 in lits


@pytest.mark.parametrize("text", ["", "forall a in A: true", "1 =", "x = 1", "a.x = 1 and",
                                  "(true", "count(links(R, a, up)) = 1", "1 = 2 3", "@"])
def test_syntax_errors(text):
    with pytest.raises(CondSyntaxError):
        parse_cond(text)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10_000))
def test_show_round_trips(seed):
    e = random_cond(random.Random(seed))
    assert parse_cond(show(e)) == e


def sample():
    return model(
        types={"int": [0, 1, 2], "String": ["a", "b"]},
        classes={"A": {"attrs": {"x": "int", "peer": "A"}}, "B": {"attrs": {"s": "String"}, "super": ["A"]}},
        assocs=[{"id": "R", "left": "A", "right": "B"}],
        oids={"a1": "A", "b1": "B", "b2": "B"},
        states=[{"id": "s0", "live": ["a1", "b1", "b2"],
                 "attrs": {"a1.x": 0, "b1.x": 1, "b2.x": 2, "b1.s": "a", "a1.peer": "b1", "b1.peer": "a1", "b2.peer": "b2"},
                 "links": [{"assoc": "R", "from": "a1", "to": "b1"}, {"assoc": "R", "from": "a1", "to": "b2"}]}],
    )


@pytest.mark.parametrize("text,expected", [
    ("forall a in extent(A): a.x >= 0", True),
    ("exists b in extent(B): b.x = 0", False),
    ("forall a in extent(A): exists b in extent(B): a.x <= b.x", True),
    ("exists a in extent(A): count(links(R, a, left)) = 2", True),
    ("forall b in extent(B): count(links(R, b, right)) = 1", True),
    ("exists a in extent(A): exists b in extent(B): a.peer = b", True),
    ("forall a in extent(A): forall b in extent(A): a = b", False),
    ("true = 1", False),
    ("1 = 1.0", True),
])
def test_evaluation(text, expected):
    m = sample()
    assert eval_cond(parse_cond(text), m.states[0], m) is expected


@pytest.mark.parametrize("text", [
    "forall b in extent(B): b.s = \"a\"",          # b2.s is undefined
    "exists a in extent(A): a.x < \"a\"",             # cannot order int and string
    "exists a in extent(Nope): true",
    "exists a in extent(A): count(links(Q, a, left)) = 0",
    "exists a in extent(A): a.missing = 1",
    "true or 1 < \"x\"",                             # strict: both sides are evaluated
])
def test_evaluation_errors(text):
    m = sample()
    with pytest.raises(EvalError):
        eval_cond(parse_cond(text), m.states[0], m)


def test_typecheck():
    m = sample()
    assert typecheck(parse_cond("forall a in extent(A): a.x = 1"), m) == []
    problems = typecheck(parse_cond("forall a in extent(C): exists b in extent(A): b.y = 1 or count(links(Q, b, left)) = 0"), m)
    assert problems == ["unknown class C"]
    problems = typecheck(parse_cond("forall b in extent(A): b.y = 1 or count(links(Q, b, left)) = 0"), m)
    assert problems == ["class A has no attribute y", "unknown association Q"]


def test_agrees_with_unrolling_oracle():
    rng = random.Random(2024)
    mismatches = 0
    for _ in range(500):
        m, s = random_state_model(rng)
        e = random_cond(rng)
        try:
            got = eval_cond(e, s, m)
        except EvalError:
            got = None
        mismatches += got != oracle_eval(e, s, m)
    assert mismatches == 0
