"""Builders, random generators and brute-force oracles shared by the tests.

The oracles re-derive results the simple way so they can be compared with
the optimised implementations.
"""

from __future__ import annotations

import itertools
import json
import random
from typing import Any

from umlpcd.lowering import to_abstract
from umlpcd.minicond import (
    And, AttrRef, Compare, Const, Lit, LinkCount, Not, Or, Quant, Var,
)
from umlpcd.parser import parse_cd
from umlpcd.sysmodel import load_system_model


def cd(text: str):
    return to_abstract(parse_cd(text))


def diagram(body: str, name: str = "D"):
    return cd(f"classdiagram {name} {{\n{body}\n}}")


# -- system model documents -----------------------------------------------------


def doc(types=None, classes=None, assocs=None, methods=None, oids=None, states=None,
        transitions=None, reachable=None) -> dict[str, Any]:
    """Interchange document from shorthand.

    ``classes`` maps a name to ``{"attrs": {name: type}, "super": [...]}``;
    ``oids`` maps oid to class; state ``attrs`` map ``"oid.attr"`` to a value.
    ``reachable`` defaults to every state.
    """
    types = types or {}
    classes = classes or {}
    states = states or []
    out_states = []
    for s in states:
        rec = {"id": s["id"], "live": list(s.get("live", []))}
        rec["attrs"] = [{"oid": k.split(".")[0], "attr": k.split(".")[1], "value": v}
                        for k, v in s.get("attrs", {}).items()]
        rec["links"] = list(s.get("links", []))
        rec["stacks"] = list(s.get("stacks", []))
        rec["events"] = list(s.get("events", []))
        out_states.append(rec)
    return {
        "types": [{"name": t, "carrier": list(c)} for t, c in types.items()],
        "classes": [
            {"name": n, "attrs": [{"name": a, "type": t} for a, t in info.get("attrs", {}).items()],
             "super": list(info.get("super", []))}
            for n, info in classes.items()
        ],
        "assocs": list(assocs or []),
        "methods": list(methods or []),
        "oids": [{"id": o, "class": c} for o, c in (oids or {}).items()],
        "states": out_states,
        "transitions": [{"from": a, "to": b} for a, b in (transitions or [])],
        "reachable": list(reachable if reachable is not None else [s["id"] for s in states]),
    }


def model(**kwargs):
    return load_system_model(json.dumps(doc(**kwargs)))


def link(assoc: str, src: str, dst: str, qual=None) -> dict[str, Any]:
    rec = {"assoc": assoc, "from": src, "to": dst}
    if qual is not None:
        rec["qual"] = qual
    return rec


# -- closure oracle ---------------------------------------------------------------


def naive_closure(pairs) -> frozenset:
    rel = set(pairs)
    while True:
        extra = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
        if not extra:
            return frozenset(rel)
        rel |= extra


def random_relation(rng: random.Random, max_nodes: int = 8, dag: bool = False) -> tuple[list[str], set]:
    n = rng.randint(1, max_nodes)
    nodes = [f"n{i}" for i in range(n)]
    p = rng.random() * 0.5
    pairs = set()
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            if (not dag or i < j) and rng.random() < p:
                pairs.add((a, b))
    return nodes, pairs


# -- MiniCond oracle ----------------------------------------------------------------


class _Error(Exception):
    pass


def _ground(e, env: dict[str, str], s, sys):
    """Unroll quantifiers over the state's live objects into a ground tree."""
    if isinstance(e, Quant):
        members = sorted(o for o in s.ds.live if (sys.oids[o], e.cls) in sys.sub_star)
        parts = [_ground(e.body, {**env, e.var: o}, s, sys) for o in members]
        if e.cls not in sys.classes:
            parts.append(("error",))
        return ("all" if e.kind == "forall" else "any", parts)
    if isinstance(e, (And, Or)):
        return ("all" if isinstance(e, And) else "any",
                [_ground(e.left, env, s, sys), _ground(e.right, env, s, sys)])
    if isinstance(e, Not):
        return ("not", _ground(e.expr, env, s, sys))
    if isinstance(e, Const):
        return ("const", e.value)
    return ("cmp", e.op, _ground_term(e.left, env, s, sys), _ground_term(e.right, env, s, sys))


def _ground_term(t, env, s, sys):
    if isinstance(t, Lit):
        return ("val", t.value)
    if isinstance(t, Var):
        return ("oid", env[t.name])
    if isinstance(t, AttrRef):
        o = env[t.var]
        table = {}
        for c in [sys.oids[o]] + [p for (c2, p) in sys.sub_star if c2 == sys.oids[o]]:
            table.update(dict(sys.classes[c].attrs))
        if t.attr not in table or (o, t.attr) not in s.ds.values:
            return ("error",)
        v = s.ds.values[(o, t.attr)]
        if table[t.attr] in sys.classes and v is not None:
            return ("oid", v)
        return ("val", v)
    assert isinstance(t, LinkCount)
    if t.assoc not in sys.assocs:
        return ("error",)
    o = env[t.var]
    n = 0
    for link in s.ds.links.get(t.assoc, ()):
        if len(link) == 2 and isinstance(link[1], tuple):
            flat = [(link[0], y) for y in link[1]]
            if sys.assocs[t.assoc].ordered == "left":
                flat = [(y, x) for x, y in flat]
        else:
            flat = [(link[0], link[1])]
        n += sum(1 for x, y in flat if (x if t.side == "left" else y) == o)
    return ("val", n)


def _tag(v):
    kind, x = v
    if kind == "oid":
        return ("oid", x)
    if isinstance(x, bool):
        return ("bool", x)
    if x is None:
        return ("null", None)
    if isinstance(x, (int, float)):
        return ("num", x)
    return ("str", x)


def _run_ground(g) -> bool:
    kind = g[0]
    if kind == "error":
        raise _Error()
    if kind == "const":
        return g[1]
    if kind == "not":
        return not _run_ground(g[1])
    if kind in ("all", "any"):
        values = [_run_ground(p) for p in g[1]]  # strict: every part is evaluated
        return all(values) if kind == "all" else any(values)
    _, op, a, b = g
    if a[0] == "error" or b[0] == "error":
        raise _Error()
    ta, tb = _tag(a), _tag(b)
    if op == "=":
        return ta == tb
    if op == "!=":
        return ta != tb
    if ta[0] != tb[0] or ta[0] not in ("num", "str"):
        raise _Error()
    return {"<": ta[1] < tb[1], "<=": ta[1] <= tb[1], ">": ta[1] > tb[1], ">=": ta[1] >= tb[1]}[op]


def oracle_eval(e, s, sys) -> bool | None:
    """Truth value of ``e`` by quantifier unrolling; ``None`` when undefined."""
    try:
        return _run_ground(_ground(e, {}, s, sys))
    except _Error:
        return None


def random_state_model(rng: random.Random, max_oids: int = 6, max_carrier: int = 5, undefined: float = 0.1):
    """A one-state model over classes A, B <: A with attributes and an association."""
    n = rng.randint(1, max_carrier)
    ints = list(range(n))
    strs = [f"v{i}" for i in range(rng.randint(1, max_carrier))]
    oids = {f"o{i}": rng.choice(["A", "B"]) for i in range(rng.randint(0, max_oids))}
    live = [o for o in oids if rng.random() < 0.85]
    attrs = {}
    for o in live:
        names = [("x", ints), ("s", strs)] + ([("y", ints)] if oids[o] == "B" else [])
        for a, carrier in names:
            if rng.random() >= undefined:
                attrs[f"{o}.{a}"] = rng.choice(carrier)
    links = []
    bs = [o for o in live if oids[o] == "B"]
    for x in live:
        for y in bs:
            if rng.random() < 0.3:
                links.append(link("R", x, y))
    m = model(
        types={"int": ints, "String": strs},
        classes={"A": {"attrs": {"x": "int", "s": "String"}},
                 "B": {"attrs": {"y": "int"}, "super": ["A"]}},
        assocs=[{"id": "R", "left": "A", "right": "B"}],
        oids=oids,
        states=[{"id": "s0", "live": live, "attrs": attrs, "links": links}],
    )
    return m, m.states[0]


def random_cond(rng: random.Random, depth: int = 3, bound: tuple[tuple[str, str], ...] = ()):
    """Random closed condition over the :func:`random_state_model` vocabulary."""
    choice = rng.random()
    if depth <= 0 or choice < 0.3:
        return _random_atom(rng, bound)
    if choice < 0.5:
        var = f"v{len(bound)}"
        cls = rng.choice(["A", "B"])
        return Quant(rng.choice(["forall", "exists"]), var, cls,
                     random_cond(rng, depth - 1, bound + ((var, cls),)))
    if choice < 0.65:
        return Not(random_cond(rng, depth - 1, bound))
    op = And if rng.random() < 0.5 else Or
    return op(random_cond(rng, depth - 1, bound), random_cond(rng, depth - 1, bound))


def _random_term(rng: random.Random, bound, numeric: bool):
    if bound and rng.random() < 0.7:
        var, cls = rng.choice(bound)
        r = rng.random()
        if r < 0.15 and not numeric:
            return Var(var)
        if r < 0.35:
            return LinkCount("R", var, rng.choice(["left", "right"]))
        attrs = ["x", "y"] if numeric else ["x", "s", "y"]
        if cls == "A" and rng.random() < 0.8:
            attrs = [a for a in attrs if a != "y"] or ["x"]
        return AttrRef(var, rng.choice(attrs))
    if numeric or rng.random() < 0.7:
        return Lit(rng.randint(-1, 5))
    return Lit(rng.choice(["v0", "v1", True, None]))


def _random_atom(rng: random.Random, bound):
    if rng.random() < 0.1:
        return Const(rng.random() < 0.5)
    op = rng.choice(["=", "!=", "<", "<=", ">", ">="])
    numeric = op not in ("=", "!=") and rng.random() < 0.9
    return Compare(op, _random_term(rng, bound, numeric), _random_term(rng, bound, numeric))


# -- multiplicity oracle ------------------------------------------------------------


def card_range(card):
    return {"0..1": (0, 1), "1": (1, 1), "*": (0, float("inf")), None: (0, float("inf"))}[card]


def oracle_multiplicity(m, s, assoc_id, left_cls, right_cls, left_card, right_card) -> bool:
    """Plain association: exact-class objects must respect the opposite cardinalities."""
    pairs = [(l[0], l[1]) for l in s.ds.links.get(assoc_id, ())]
    lo, hi = card_range(right_card)
    for o in s.ds.live:
        if m.oids[o] == left_cls:
            n = len([1 for x, _ in pairs if x == o])
            if not lo <= n <= hi:
                return False
    lo, hi = card_range(left_card)
    for o in s.ds.live:
        if m.oids[o] == right_cls:
            n = len([1 for _, y in pairs if y == o])
            if not lo <= n <= hi:
                return False
    return True


def oracle_type_qualified(m, s, assoc_id, carrier, card) -> bool:
    lo, hi = card_range(card)
    links = list(s.ds.links.get(assoc_id, ()))
    return all(lo <= len([l for l in links if l[2] == v]) <= hi for v in carrier)


def oracle_attr_qualified(m, s, assoc_id, attr, target_cls, card) -> bool:
    """Links grouped by the qualifying attribute of their right object."""
    lo, hi = card_range(card)
    undefined = object()

    def value(o):
        return s.ds.values.get((o, attr), undefined)

    links = list(s.ds.links.get(assoc_id, ()))
    for o in s.ds.live:
        if m.oids[o] != target_cls:
            continue
        mine = value(o)
        n = 0
        for _, y in links:
            theirs = value(y)
            if mine is undefined or theirs is undefined:
                n += mine is theirs
            else:
                n += theirs == mine
        if not lo <= n <= hi:
            return False
    return True


def all_subsets(items, max_size=None):
    items = list(items)
    top = len(items) if max_size is None else min(max_size, len(items))
    for k in range(top + 1):
        yield from itertools.combinations(items, k)
