"""MiniCond, a small first-order condition language for diagram invariants.

::

    expr  := "forall" Name "in" "extent" "(" Class ")" ":" expr
           | "exists" Name "in" "extent" "(" Class ")" ":" expr
           | expr "or" expr | expr "and" expr | "not" expr
           | "(" expr ")" | "true" | "false" | term cmp term
    term  := literal | var | var "." "attr" "(" Name ")" | var "." Name
           | "count" "(" "links" "(" Assoc "," var "," ("left"|"right") ")" ")"
    cmp   := "=" | "!=" | "≠" | "<" | "<=" | "≤" | ">" | ">=" | "≥"

Quantifier bodies extend as far right as possible. ``and`` binds tighter
than ``or``. Evaluation is strict: reading an attribute that has no value
raises :class:`EvalError` rather than yielding false.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Iterator, Union

from .sysmodel import SystemModel, SystemState, link_pairs, value_key


class CondSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


class EvalError(Exception):
    pass


# -- syntax tree -------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: Any

    def __eq__(self, other):
        return isinstance(other, Lit) and value_key(self.value) == value_key(other.value)

    def __hash__(self):
        return hash(value_key(self.value))


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class AttrRef:
    var: str
    attr: str


@dataclass(frozen=True)
class LinkCount:
    assoc: str
    var: str
    side: str  # left | right


Term = Union[Lit, Var, AttrRef, LinkCount]


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Compare:
    op: str
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    expr: Expr


@dataclass(frozen=True)
class And:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Or:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Quant:
    kind: str  # forall | exists
    var: str
    cls: str
    body: Expr


Expr = Union[Const, Compare, Not, And, Or, Quant]

OPS = {"=": "=", "!=": "!=", "≠": "!=", "<": "<", "<=": "<=", "≤": "<=",
       ">": ">", ">=": ">=", "≥": ">="}
RESERVED = {"forall", "exists", "in", "extent", "and", "or", "not", "true", "false",
            "count", "links", "null"}

_TOKEN = re.compile(
    r"""(?P<ws>\s+)
      | (?P<num>-?\d+(?:\.\d+)?)
      | (?P<str>"(?:[^"\\\n]|\\.)*")
      | (?P<name>[A-Za-z_$][A-Za-z_0-9$]*)
      | (?P<op>!=|<=|>=|≠|≤|≥|[=<>])
      | (?P<punct>[():,.])""",
    re.VERBOSE,
)


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise CondSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self, ahead: int = 0) -> tuple[str, str, int]:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def fail(self, expected: str):
        kind, text, pos = self.peek()
        found = "end of condition" if kind == "eof" else repr(text)
        raise CondSyntaxError(f"expected {expected}, found {found}", pos)

    def accept(self, text: str) -> bool:
        if self.peek()[1] == text and self.peek()[0] in ("name", "op", "punct"):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            self.fail(repr(text))

    def name(self, what: str = "a name") -> str:
        kind, text, _ = self.peek()
        if kind != "name" or text in RESERVED:
            self.fail(what)
        self.i += 1
        return text

    def expr(self) -> Expr:
        left = self.conj()
        while self.accept("or"):
            left = Or(left, self.conj())
        return left

    def conj(self) -> Expr:
        left = self.unary()
        while self.accept("and"):
            left = And(left, self.unary())
        return left

    def unary(self) -> Expr:
        kind, text, _ = self.peek()
        if kind == "name" and text in ("forall", "exists"):
            self.i += 1
            var = self.name("a variable")
            self.expect("in")
            self.expect("extent")
            self.expect("(")
            cls = self.name("a class name")
            self.expect(")")
            self.expect(":")
            return Quant(text, var, cls, self.expr())
        if self.accept("not"):
            return Not(self.unary())
        if kind == "punct" and text == "(" and self._parenthesised_expr():
            self.i += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "name" and text in ("true", "false") and self.peek(1)[0] != "op":
            self.i += 1
            return Const(text == "true")
        left = self.term()
        op_kind, op, _ = self.peek()
        if op_kind != "op":
            self.fail("a comparison operator")
        self.i += 1
        return Compare(OPS[op], left, self.term())

    def _parenthesised_expr(self) -> bool:
        # "(" starts a sub-expression unless the matching ")" is followed by an operator
        depth = 0
        j = self.i
        while j < len(self.toks):
            kind, text, _ = self.toks[j]
            if kind == "punct" and text == "(":
                depth += 1
            elif kind == "punct" and text == ")":
                depth -= 1
                if depth == 0:
                    return self.toks[j + 1][0] != "op"
            elif kind == "eof":
                return True
            j += 1
        return True

    def term(self) -> Term:
        kind, text, _ = self.peek()
        if kind == "num":
            self.i += 1
            return Lit(float(text) if "." in text else int(text))
        if kind == "str":
            self.i += 1
            try:
                return Lit(json.loads(text))
            except ValueError:
                self.i -= 1
                self.fail("a valid string literal")
        if kind == "name" and text in ("true", "false"):
            self.i += 1
            return Lit(text == "true")
        if kind == "name" and text == "null":
            self.i += 1
            return Lit(None)
        if kind == "name" and text == "count":
            self.i += 1
            self.expect("(")
            self.expect("links")
            self.expect("(")
            assoc = self.name("an association id")
            self.expect(",")
            var = self.name("a variable")
            self.expect(",")
            side = self.name("left or right")
            if side not in ("left", "right"):
                self.i -= 1
                self.fail("left or right")
            self.expect(")")
            self.expect(")")
            return LinkCount(assoc, var, side)
        var = self.name("a term")
        if not self.accept("."):
            return Var(var)
        attr = self.name("an attribute name") if self.peek()[1] != "attr" else None
        if attr is None:
            self.i += 1
            if self.accept("("):
                attr = self.name("an attribute name")
                self.expect(")")
            else:
                attr = "attr"
        return AttrRef(var, attr)


def free_vars(e: Expr | Term, bound: frozenset[str] = frozenset()) -> set[str]:
    if isinstance(e, Quant):
        return free_vars(e.body, bound | {e.var})
    if isinstance(e, (And, Or)):
        return free_vars(e.left, bound) | free_vars(e.right, bound)
    if isinstance(e, Not):
        return free_vars(e.expr, bound)
    if isinstance(e, Compare):
        return free_vars(e.left, bound) | free_vars(e.right, bound)
    if isinstance(e, (Var, AttrRef, LinkCount)):
        name = e.name if isinstance(e, Var) else e.var
        return set() if name in bound else {name}
    return set()


def parse_cond(text: str) -> Expr:
    """Parse a closed MiniCond expression."""
    p = _Parser(text)
    expr = p.expr()
    if p.peek()[0] != "eof":
        p.fail("end of condition")
    free = free_vars(expr)
    if free:
        raise CondSyntaxError("unbound variable " + ", ".join(sorted(free)), 0)
    return expr


def show(e: Expr | Term) -> str:
    """Render an expression back to MiniCond text (fully parenthesised)."""
    if isinstance(e, Const):
        return "true" if e.value else "false"
    if isinstance(e, Quant):
        return f"({e.kind} {e.var} in extent({e.cls}): {show(e.body)})"
    if isinstance(e, And):
        return f"({show(e.left)} and {show(e.right)})"
    if isinstance(e, Or):
        return f"({show(e.left)} or {show(e.right)})"
    if isinstance(e, Not):
        return f"not {show(e.expr)}"
    if isinstance(e, Compare):
        return f"{show(e.left)} {e.op} {show(e.right)}"
    if isinstance(e, Lit):
        v = e.value
        if isinstance(v, bool):
            return "true" if v else "false"
        if v is None:
            return "null"
        if isinstance(v, str):
            return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
        return repr(v)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, AttrRef):
        return f"{e.var}.attr({e.attr})"
    return f"count(links({e.assoc}, {e.var}, {e.side}))"


def walk(e: Expr | Term) -> Iterator[Expr | Term]:
    yield e
    if isinstance(e, Quant):
        yield from walk(e.body)
    elif isinstance(e, (And, Or, Compare)):
        yield from walk(e.left)
        yield from walk(e.right)
    elif isinstance(e, Not):
        yield from walk(e.expr)


# -- type checking and evaluation --------------------------------------------


def typecheck(e: Expr, sys: SystemModel) -> list[str]:
    """Problems that make ``e`` unevaluable over ``sys`` regardless of state."""
    problems = []

    def visit(e, env: dict[str, str]):
        if isinstance(e, Quant):
            if e.cls not in sys.classes:
                problems.append(f"unknown class {e.cls}")
                return
            visit(e.body, {**env, e.var: e.cls})
        elif isinstance(e, (And, Or)):
            visit(e.left, env)
            visit(e.right, env)
        elif isinstance(e, Not):
            visit(e.expr, env)
        elif isinstance(e, Compare):
            visit(e.left, env)
            visit(e.right, env)
        elif isinstance(e, AttrRef):
            cls = env.get(e.var)
            if cls is not None and e.attr not in sys.attrs_of(cls):
                problems.append(f"class {cls} has no attribute {e.attr}")
        elif isinstance(e, LinkCount):
            if e.assoc not in sys.assocs:
                problems.append(f"unknown association {e.assoc}")

    visit(e, {})
    return problems


def extent(sys: SystemModel, s: SystemState, cls: str) -> list[str]:
    return sorted(o for o in s.ds.live if sys.is_subclass(sys.oids[o], cls))


@dataclass(frozen=True)
class _Oid:
    oid: str


def _term(t: Term, env: dict[str, str], s: SystemState, sys: SystemModel) -> Any:
    if isinstance(t, Lit):
        return t.value
    if isinstance(t, Var):
        return _Oid(env[t.name])
    if isinstance(t, AttrRef):
        oid = env[t.var]
        if t.attr not in sys.attrs_of(sys.oids[oid]):
            raise EvalError(f"{oid} has no attribute {t.attr}")
        key = (oid, t.attr)
        if key not in s.ds.values:
            raise EvalError(f"attribute {t.attr} of {oid} is undefined")
        value = s.ds.values[key]
        if isinstance(value, str) and value in sys.oids and sys.attrs_of(sys.oids[oid])[t.attr] in sys.classes:
            return _Oid(value)
        return value
    if t.assoc not in sys.assocs:
        raise EvalError(f"unknown association {t.assoc}")
    oid = env[t.var]
    pairs = link_pairs(sys, t.assoc, s.ds.links.get(t.assoc, ()))
    index = 0 if t.side == "left" else 1
    return sum(1 for p in pairs if p[index] == oid)


def _key(v: Any) -> tuple[str, Any]:
    return ("oid", v.oid) if isinstance(v, _Oid) else value_key(v)


def _compare(op: str, a: Any, b: Any) -> bool:
    ka, kb = _key(a), _key(b)
    if op == "=":
        return ka == kb
    if op == "!=":
        return ka != kb
    if ka[0] != kb[0] or ka[0] not in ("num", "str"):
        raise EvalError(f"cannot order {a!r} and {b!r}")
    x, y = ka[1], kb[1]
    return {"<": x < y, "<=": x <= y, ">": x > y, ">=": x >= y}[op]


def eval_cond(e: Expr, s: SystemState, sys: SystemModel) -> bool:
    """Evaluate a closed condition in state ``s``; raises EvalError."""
    return _eval(e, {}, s, sys)


def _eval(e: Expr, env: dict[str, str], s: SystemState, sys: SystemModel) -> bool:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Compare):
        return _compare(e.op, _term(e.left, env, s, sys), _term(e.right, env, s, sys))
    if isinstance(e, Not):
        return not _eval(e.expr, env, s, sys)
    if isinstance(e, And):
        left = _eval(e.left, env, s, sys)
        right = _eval(e.right, env, s, sys)
        return left and right
    if isinstance(e, Or):
        left = _eval(e.left, env, s, sys)
        right = _eval(e.right, env, s, sys)
        return left or right
    if e.cls not in sys.classes:
        raise EvalError(f"unknown class {e.cls}")
    results = [_eval(e.body, {**env, e.var: o}, s, sys) for o in extent(sys, s, e.cls)]
    return all(results) if e.kind == "forall" else any(results)
