"""Conformance of a finite system model to class diagrams.

The name translation is the identity: a diagram class, interface or basic
type maps to the system-model class or type of the same name, an association
to the system association with the same id (unnamed ones to the unique
association between the translated end classes), a method to the method with
the same owner, name and translated parameter types.

Each mapping condition yields exactly one verdict per diagram: ``pass``,
``fail`` (with witnesses), ``notApplicable`` (every instance was skipped
because its translation is missing) or ``outOfScope``.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from . import abstract as ab
from .diagnostics import DiagnosticError
from .minicond import EvalError, eval_cond
from .sysmodel import (
    DataStore, SystemModel, SystemState, inactive_view, link_pairs, value_key,
)
from .wellformed import check_context_conditions, errors_of

STATIC_CODES = ("SM-1a", "SM-1b", "SM-1c", "SM-1d.i", "SM-1d.ii", "SM-1e",
                "SM-2a", "SM-2b", "SM-2c", "SM-3")
DYNAMIC_CODES = ("SM-4a", "SM-4b.i", "SM-4b.ii", "SM-4c.i", "SM-4c.ii", "SM-4c.iii",
                 "SM-4c.iv", "SM-5", "SM-6", "SM-7a", "SM-7b", "SM-7c", "SM-7d",
                 "SM-7e", "SM-7f", "SM-7g")
CODES = STATIC_CODES + DYNAMIC_CODES
OUT_OF_SCOPE = {
    "SM-1e": "object creation simulation is not modelled",
    "SM-4c.iii": "method body simulation is not modelled",
    "SM-4c.iv": "static method simulation is not modelled",
}
MAX_WITNESSES = 50
STATUSES = ("pass", "fail", "notApplicable", "outOfScope")


class AmbiguousTarget(Exception):
    def __init__(self, assoc: ab.AssocDef, candidates: list[str]):
        super().__init__(f"association {assoc.label()} matches {', '.join(candidates)}")
        self.assoc = assoc
        self.candidates = candidates


class IllFormedDiagram(DiagnosticError):
    pass


# -- translation ---------------------------------------------------------------


MethodKey = tuple[str, ab.MethodDef]  # (owner name, method)


@dataclass
class TransMap:
    trans_t: dict[str, str] = field(default_factory=dict)
    trans_a: dict[ab.AssocDef, str] = field(default_factory=dict)
    trans_m: dict[MethodKey, str] = field(default_factory=dict)
    ambiguous: dict[ab.AssocDef, list[str]] = field(default_factory=dict)

    def type_(self, t: ab.TypeRef) -> str | None:
        if t.kind == "voidRef":
            return "void"
        return self.trans_t.get(t.name)


def build_translation(cd: ab.ClassDiagram, sys: SystemModel, strict: bool = True) -> TransMap:
    """Identity-by-name translation; entries without a target are left out.

    With ``strict`` an unnamed association matching several system
    associations raises :class:`AmbiguousTarget`; otherwise the candidates are
    recorded in ``TransMap.ambiguous``.
    """
    tm = TransMap()
    for e in [*cd.classes, *cd.interfaces]:
        if e.name in sys.classes:
            tm.trans_t[e.name] = e.name
    for t in _basic_types(cd):
        if t in sys.types:
            tm.trans_t[t] = t

    by_ends: dict[tuple[str, str], list[str]] = defaultdict(list)
    for info in sys.assocs.values():
        by_ends[(info.left, info.right)].append(info.id)
    for a in ab.ordered(cd.assocs):
        ends = (tm.trans_t.get(a.left_part.class_name), tm.trans_t.get(a.right_part.class_name))
        if a.assoc_name is not None:
            info = sys.assocs.get(a.assoc_name)
            if info is not None and (info.left, info.right) == ends:
                tm.trans_a[a] = info.id
            continue
        candidates = sorted(by_ends.get(ends, ())) if None not in ends else []
        if len(candidates) == 1:
            tm.trans_a[a] = candidates[0]
        elif len(candidates) > 1:
            if strict:
                raise AmbiguousTarget(a, candidates)
            tm.ambiguous[a] = candidates

    by_sig: dict[tuple[str, tuple[str, ...]], list[str]] = defaultdict(list)
    for m in sys.methods.values():
        by_sig[(m.name, m.params)].append(m.id)
    for owner in [*cd.classes, *cd.interfaces]:
        is_interface = isinstance(owner, ab.InterfaceDef)
        for m in owner.meths:
            params = tuple(tm.type_(t) for t in m.param_types())
            if None in params:
                continue
            candidates = sorted(by_sig.get((m.name, params), ()))
            if not candidates:
                continue
            cls_of = lambda mid: sys.methods[mid].class_name  # noqa: E731
            own = [c for c in candidates if cls_of(c) == owner.name]
            if is_interface:
                below = [c for c in candidates
                         if cls_of(c) != owner.name and sys.is_subclass(cls_of(c), owner.name)]
                pick = (below or own or candidates)[0]
            else:
                pick = (own or candidates)[0]
            tm.trans_m[(owner.name, m)] = pick
    return tm


def _basic_types(cd: ab.ClassDiagram) -> set[str]:
    found = set()
    for owner in [*cd.classes, *cd.interfaces]:
        for a in owner.attrs:
            found.add(a.type)
        for m in owner.meths:
            found.add(m.return_type)
            found.update(m.param_types())
        for k in getattr(owner, "constructors", ()):
            found.update(k.param_types())
    for a in cd.assocs:
        for end in (a.left_part, a.right_part):
            if isinstance(end.qualifier, ab.QualifierByType):
                found.add(end.qualifier.type)
    return {t.name for t in found if t.kind == "basic"}


# -- report ----------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    element: str = ""
    states: tuple[str, ...] = ()
    oids: tuple[str, ...] = ()
    links: tuple[tuple, ...] = ()
    detail: str = ""
    tag: str = ""

    def to_json(self) -> dict[str, Any]:
        return {
            "element": self.element,
            "states": list(self.states),
            "oids": list(self.oids),
            "links": [list(l) for l in self.links],
            "detail": self.detail,
            "tag": self.tag,
        }

    def summary(self) -> str:
        parts = []
        if self.element:
            parts.append(self.element)
        if self.states:
            parts.append("state " + "->".join(self.states))
        if self.oids:
            parts.append("oid " + ",".join(self.oids))
        if self.links:
            parts.append("link " + " ".join("(" + ",".join(map(str, l)) + ")" for l in self.links))
        text = ", ".join(parts)
        if self.detail:
            text += f": {self.detail}" if text else self.detail
        return text


@dataclass(frozen=True)
class Verdict:
    code: str
    status: str
    witnesses: tuple[Witness, ...] = ()
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict[str, Any]:
        return {
            "code": self.code,
            "status": self.status,
            "witnesses": [w.to_json() for w in self.witnesses],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class DiagramReport:
    diagram: str
    verdicts: tuple[Verdict, ...]

    @property
    def passed(self) -> bool:
        return all(v.status != "fail" for v in self.verdicts)

    def verdict(self, code: str) -> Verdict:
        return next(v for v in self.verdicts if v.code == code)


@dataclass(frozen=True)
class ConformanceReport:
    sections: tuple[DiagramReport, ...]

    @property
    def aggregate(self) -> bool:
        return all(s.passed for s in self.sections)

    def to_json(self) -> dict[str, Any]:
        return {
            "aggregate": "pass" if self.aggregate else "fail",
            "diagrams": [
                {"diagram": s.diagram, "verdicts": [v.to_json() for v in s.verdicts]}
                for s in self.sections
            ],
        }

    def records(self) -> list[dict[str, Any]]:
        """One record per verdict plus a closing aggregate record."""
        out = [{"diagram": s.diagram, **v.to_json()} for s in self.sections for v in s.verdicts]
        out.append({"aggregate": "pass" if self.aggregate else "fail"})
        return out

    def to_text(self) -> str:
        lines = []
        for s in self.sections:
            lines.append(f"diagram {s.diagram}")
            for v in s.verdicts:
                if v.status == "outOfScope":
                    summary = OUT_OF_SCOPE[v.code]
                else:
                    summary = "; ".join(w.summary() for w in v.witnesses[:3])
                    if len(v.witnesses) > 3:
                        summary += f"; and {len(v.witnesses) - 3} more"
                    if v.notes:
                        summary = "; ".join(filter(None, [summary, *v.notes]))
                lines.append(f"  {v.code:<10} {v.status:<13} {summary or '-'}")
        lines.append(f"aggregate {'pass' if self.aggregate else 'fail'}")
        return "\n".join(lines) + "\n"


# -- evaluation helpers ------------------------------------------------------------


class _Result:
    def __init__(self) -> None:
        self.witnesses: list[Witness] = []
        self.evaluated = 0
        self.skipped = 0
        self.notes: list[str] = []

    def check(self) -> None:
        self.evaluated += 1

    def skip(self) -> None:
        self.skipped += 1

    def fail(self, **kwargs) -> None:
        self.witnesses.append(Witness(**kwargs))

    def verdict(self, code: str) -> Verdict:
        if self.witnesses:
            status = "fail"
        elif self.evaluated == 0 and self.skipped > 0:
            status = "notApplicable"
        else:
            status = "pass"
        notes = list(self.notes)
        if len(self.witnesses) > MAX_WITNESSES:
            notes.append(f"{len(self.witnesses) - MAX_WITNESSES} further witnesses omitted")
        return Verdict(code, status, tuple(self.witnesses[:MAX_WITNESSES]), tuple(notes))


class _Env:
    """Shared indexes over one (diagram, system model, translation) triple."""

    def __init__(self, cd: ab.ClassDiagram, sys: SystemModel, tm: TransMap):
        self.cd = cd
        self.sys = sys
        self.tm = tm
        self.classes = ab.ordered(cd.classes)
        self.interfaces = ab.ordered(cd.interfaces)
        self.assocs = ab.ordered(cd.assocs)
        self.reachable = sys.reachable_states()
        self._by_class: dict[str, dict[str, list[str]]] = {}

    def by_class(self, s: SystemState) -> dict[str, list[str]]:
        """Live oids of ``s`` grouped by their exact class."""
        table = self._by_class.get(s.id)
        if table is None:
            table = defaultdict(list)
            for o in sorted(s.ds.live):
                table[self.sys.oids[o]].append(o)
            self._by_class[s.id] = table
        return table

    def pairs(self, assoc: str, ds: DataStore) -> list[tuple[str, str]]:
        return link_pairs(self.sys, assoc, ds.links.get(assoc, ()))

    def transitions(self):
        states = self.sys.state_by_id
        for t in self.sys.transitions:
            if t.source in self.sys.reachable and t.target in self.sys.reachable:
                yield t, states[t.source], states[t.target]


def _render(v: Any) -> str:
    return json.dumps(v)


def _missing_attrs(env: _Env, owner) -> list[str]:
    have = env.sys.attrs_of(owner.name)
    out = []
    for a in ab.ordered(owner.attrs):
        target = env.tm.type_(a.type)
        if have.get(a.name) is None or have.get(a.name) != target:
            out.append(f"{a.name}:{a.type.name}")
    return out


# -- static conditions -----------------------------------------------------------


def _sm1a(env: _Env, r: _Result) -> None:
    for c in env.classes:
        r.check()
        if c.name not in env.tm.trans_t:
            r.fail(element=c.name, detail="class is missing from the system model")
            continue
        missing = _missing_attrs(env, c)
        if missing:
            r.fail(element=c.name, detail="attributes not preserved: " + ", ".join(missing))


def _sm1b(env: _Env, r: _Result) -> None:
    for c in env.classes:
        supers = sorted(c.super_class_names | c.interface_names)
        for d in supers:
            if env.cd.class_named(d) is None and env.cd.interface_named(d) is None:
                continue
            if c.name not in env.tm.trans_t:
                r.skip()
                continue
            r.check()
            if d not in env.tm.trans_t:
                r.fail(element=f"{c.name}<:{d}", detail=f"{d} is missing from the system model")
            elif (c.name, d) not in env.sys.sub:
                r.fail(element=f"{c.name}<:{d}", detail="no direct subclass edge in the system model")


def _sm1c(env: _Env, r: _Result) -> None:
    for c in env.classes:
        if "final" not in c.modifiers:
            continue
        if c.name not in env.tm.trans_t:
            r.skip()
            continue
        r.check()
        subs = sorted(d for d, p in env.sys.sub if p == c.name)
        if subs:
            r.fail(element=c.name, detail="subclassed by " + ", ".join(subs))


def _class_methods(env: _Env):
    for c in env.classes:
        for m in ab.ordered(c.meths):
            yield c, m


def _sm1di(env: _Env, r: _Result) -> None:
    for c, m in _class_methods(env):
        r.check()
        if (c.name, m) not in env.tm.trans_m:
            r.fail(element=f"{c.name}.{m.signature()}", detail="method is missing from the system model")


def _sm1dii(env: _Env, r: _Result) -> None:
    for c, m in _class_methods(env):
        mid = env.tm.trans_m.get((c.name, m))
        if mid is None:
            r.skip()
            continue
        r.check()
        owner = env.sys.methods[mid].class_name
        if owner != c.name:
            r.fail(element=f"{c.name}.{m.signature()}", detail=f"method {mid} belongs to {owner}")


def _sm2a(env: _Env, r: _Result) -> None:
    for i in env.interfaces:
        r.check()
        if i.name not in env.tm.trans_t:
            r.fail(element=i.name, detail="interface is missing from the system model")
            continue
        missing = _missing_attrs(env, i)
        if missing:
            r.fail(element=i.name, detail="attributes not preserved: " + ", ".join(missing))


def _sm2b(env: _Env, r: _Result) -> None:
    for i in env.interfaces:
        for m in ab.ordered(i.meths):
            mid = env.tm.trans_m.get((i.name, m))
            if mid is None or i.name not in env.tm.trans_t:
                r.skip()
                continue
            r.check()
            owner = env.sys.methods[mid].class_name
            if owner == i.name or not env.sys.is_subclass(owner, i.name):
                r.fail(element=f"{i.name}.{m.signature()}",
                       detail=f"method {mid} belongs to {owner}, not to a strict subclass")


def _sm2c(env: _Env, r: _Result) -> None:
    for i in env.interfaces:
        for d in sorted(i.super_interface_names):
            if env.cd.interface_named(d) is None:
                continue
            if i.name not in env.tm.trans_t:
                r.skip()
                continue
            r.check()
            if d not in env.tm.trans_t:
                r.fail(element=f"{i.name}<:{d}", detail=f"{d} is missing from the system model")
            elif (i.name, d) not in env.sys.sub:
                r.fail(element=f"{i.name}<:{d}", detail="no direct subclass edge in the system model")


def _sm3(env: _Env, r: _Result) -> None:
    for a in env.assocs:
        r.check()
        if a in env.tm.trans_a:
            continue
        if a in env.tm.ambiguous:
            r.fail(element=a.label(), detail="ambiguous: " + ", ".join(env.tm.ambiguous[a]),
                   tag="ambiguous")
        else:
            r.fail(element=a.label(), detail="no system association with matching id and end classes")


# -- dynamic conditions ------------------------------------------------------------


def _no_instances(env: _Env, r: _Result, owners, what: str) -> None:
    for c in owners:
        if c.name not in env.tm.trans_t:
            r.skip()
            continue
        r.check()
        for s in env.reachable:
            for o in env.by_class(s).get(c.name, ()):
                r.fail(element=c.name, states=(s.id,), oids=(o,), detail=f"instance of {what} {c.name}")


def _sm4a(env: _Env, r: _Result) -> None:
    _no_instances(env, r, [c for c in env.classes if "abstract" in c.modifiers], "abstract class")


def _sm5(env: _Env, r: _Result) -> None:
    _no_instances(env, r, env.interfaces, "interface")


_UNDEF = object()


def _class_attrs(env: _Env, modifier: str):
    for c in env.classes:
        for a in ab.ordered(c.attrs):
            if modifier in a.modifiers:
                yield c, a


def _sm4bi(env: _Env, r: _Result) -> None:
    for c, a in _class_attrs(env, "final"):
        if c.name not in env.tm.trans_t:
            r.skip()
            continue
        r.check()
        first: dict[str, tuple[str, Any]] = {}
        reported = set()
        for s in env.reachable:
            for o in env.by_class(s).get(c.name, ()):
                value = s.ds.values.get((o, a.name), _UNDEF)
                if o not in first:
                    first[o] = (s.id, value)
                    continue
                sid, seen = first[o]
                same = (seen is _UNDEF and value is _UNDEF) or (
                    seen is not _UNDEF and value is not _UNDEF and value_key(seen) == value_key(value))
                if not same and o not in reported:
                    reported.add(o)
                    show = lambda v: "undefined" if v is _UNDEF else _render(v)  # noqa: E731
                    r.fail(element=f"{c.name}.{a.name}", states=(sid, s.id), oids=(o,),
                           detail=f"final attribute changes from {show(seen)} to {show(value)}")


def _sm4bii(env: _Env, r: _Result) -> None:
    for c, a in _class_attrs(env, "static"):
        if c.name not in env.tm.trans_t:
            r.skip()
            continue
        r.check()
        for s in env.reachable:
            oids = env.by_class(s).get(c.name, ())
            if len(oids) < 2:
                continue
            base = oids[0]
            ref = s.ds.values.get((base, a.name), _UNDEF)
            for o in oids[1:]:
                v = s.ds.values.get((o, a.name), _UNDEF)
                same = (ref is _UNDEF and v is _UNDEF) or (
                    ref is not _UNDEF and v is not _UNDEF and value_key(ref) == value_key(v))
                if not same:
                    r.fail(element=f"{c.name}.{a.name}", states=(s.id,), oids=(base, o),
                           detail="static attribute differs between instances")
                    break


def _calls(env: _Env, r: _Result, visibility: str, allowed: Callable[[str, str], bool]) -> None:
    for c, m in _class_methods(env):
        if visibility not in m.modifiers:
            continue
        if c.name not in env.tm.trans_t:
            r.skip()
            continue
        r.check()
        for s in env.reachable:
            for o in env.by_class(s).get(c.name, ()):
                for msg in sorted(s.es.events.get(o, ()), key=lambda x: (x.sender, x.op, _render(x.args))):
                    if msg.op != m.name:
                        continue
                    sender_cls = env.sys.oids[msg.sender]
                    if not allowed(sender_cls, c.name):
                        r.fail(element=f"{c.name}.{m.signature()}", states=(s.id,), oids=(o, msg.sender),
                               detail=f"{visibility} method called by an object of class {sender_cls}")


def _sm4ci(env: _Env, r: _Result) -> None:
    _calls(env, r, "private", lambda sender, owner: sender == owner)


def _sm4cii(env: _Env, r: _Result) -> None:
    _calls(env, r, "protected", lambda sender, owner: env.sys.is_subclass(sender, owner))


def _keep_links_view(s: SystemState) -> SystemState:
    view = inactive_view(s)
    return SystemState(s.id, DataStore(view.ds.live, view.ds.values, s.ds.links), s.cs, s.es)


def _outcome(inv: ab.Invariant, s: SystemState, sys: SystemModel) -> str:
    try:
        return "true" if eval_cond(inv.cond, s, sys) else "false"
    except EvalError as err:
        return f"error: {err}"


def _sm6(env: _Env, r: _Result) -> None:
    for inv in ab.ordered(env.cd.invs):
        r.check()
        for s in env.reachable:
            view = inactive_view(s)
            outcome = _outcome(inv, view, env.sys)
            if view is not s and view.ds.links != s.ds.links:
                other = _outcome(inv, _keep_links_view(s), env.sys)
                if (other == "true") != (outcome == "true"):
                    r.notes.append(f"state {s.id}: dropping links of active objects changes "
                                   f"'{inv.source}' from {other} to {outcome}")
            if outcome == "true":
                continue
            active = tuple(sorted(s.ds.live - view.ds.live))
            if outcome == "false":
                r.fail(element=inv.source, states=(s.id,), oids=active, detail="invariant is false")
            else:
                r.fail(element=inv.source, states=(s.id,), oids=active, detail=outcome, tag="evalError")


def _bounds_text(lo, hi) -> str:
    return f"{lo}..{'*' if hi == ab.UNBOUNDED else hi}"


def _translated_assocs(env: _Env, r: _Result):
    for a in env.assocs:
        sid = env.tm.trans_a.get(a)
        if sid is None:
            r.skip()
            continue
        yield a, sid


def _sm7a(env: _Env, r: _Result) -> None:
    for a, sid in _translated_assocs(env, r):
        if a.left_part.qualifier is not None:
            continue
        r.check()
        m1, m2 = ab.card_bounds(a.left_part.card)
        n1, n2 = ab.card_bounds(a.right_part.card)
        left, right = a.left_part.class_name, a.right_part.class_name
        for s in env.reachable:
            pairs = env.pairs(sid, s.ds)
            out_deg = defaultdict(int)
            in_deg = defaultdict(int)
            for x, y in pairs:
                out_deg[x] += 1
                in_deg[y] += 1
            for l in env.by_class(s).get(left, ()):
                if not n1 <= out_deg[l] <= n2:
                    r.fail(element=a.label(), states=(s.id,), oids=(l,),
                           detail=f"{out_deg[l]} links from left object, expected {_bounds_text(n1, n2)}",
                           tag="left")
            for o in env.by_class(s).get(right, ()):
                if not m1 <= in_deg[o] <= m2:
                    r.fail(element=a.label(), states=(s.id,), oids=(o,),
                           detail=f"{in_deg[o]} links to right object, expected {_bounds_text(m1, m2)}",
                           tag="right")


def _sm7b(env: _Env, r: _Result) -> None:
    for a, sid in _translated_assocs(env, r):
        for side, end, bounds_end in (("left", a.left_part, a.right_part),
                                      ("right", a.right_part, a.left_part)):
            q = end.qualifier
            if not isinstance(q, ab.QualifierByType):
                continue
            t = env.tm.type_(q.type)
            if t is None or t not in env.sys.types:
                continue
            r.check()
            lo, hi = ab.card_bounds(bounds_end.card)
            for s in env.reachable:
                counts = defaultdict(int)
                for link in s.ds.links.get(sid, ()):
                    if len(link) == 3:
                        counts[value_key(link[2])] += 1
                for value in env.sys.types[t]:
                    n = counts[value_key(value)]
                    if not lo <= n <= hi:
                        r.fail(element=a.label(), states=(s.id,),
                               detail=f"{n} links qualified by {_render(value)}, expected {_bounds_text(lo, hi)}",
                               tag=f"{side}:{_render(value)}")


def _sm7c(env: _Env, r: _Result) -> None:
    for a, sid in _translated_assocs(env, r):
        for side, end, bounds_end in (("left", a.left_part, a.right_part),
                                      ("right", a.right_part, a.left_part)):
            q = end.qualifier
            if not isinstance(q, ab.QualifierByAttr):
                continue
            r.check()
            lo, hi = ab.card_bounds(bounds_end.card)
            # left qualifier: compare the right objects' attribute values
            target_cls = bounds_end.class_name
            index = 1 if side == "left" else 0
            for s in env.reachable:
                pairs = env.pairs(sid, s.ds)
                val = lambda o: value_key(s.ds.values[(o, q.name)]) if (o, q.name) in s.ds.values else _UNDEF  # noqa: E731
                counts = defaultdict(int)
                for p in pairs:
                    counts[val(p[index])] += 1
                for o in env.by_class(s).get(target_cls, ()):
                    n = counts[val(o)]
                    if not lo <= n <= hi:
                        r.fail(element=a.label(), states=(s.id,), oids=(o,),
                               detail=f"{n} links share the {q.name} value of {o}, "
                                      f"expected {_bounds_text(lo, hi)}", tag=side)


def _sm7d(env: _Env, r: _Result) -> None:
    for a, sid in _translated_assocs(env, r):
        if "addonly" not in a.left_part.modifiers | a.right_part.modifiers:
            continue
        r.check()
        for t, src, dst in env.transitions():
            after = set(env.pairs(sid, dst.ds))
            for p in sorted(set(env.pairs(sid, src.ds))):
                if p not in after:
                    r.fail(element=a.label(), states=(src.id, dst.id), links=(p,),
                           detail="link removed from an addonly association")


def _sm7e(env: _Env, r: _Result) -> None:
    for a, sid in _translated_assocs(env, r):
        for side, end, index in (("left", a.left_part, 0), ("right", a.right_part, 1)):
            if "frozen" not in end.modifiers:
                continue
            r.check()
            for t, src, dst in env.transitions():
                before = {p[index] for p in env.pairs(sid, src.ds)}
                after = {p[index] for p in env.pairs(sid, dst.ds)}
                if before != after:
                    r.fail(element=a.label(), states=(src.id, dst.id),
                           oids=tuple(sorted(before ^ after)),
                           detail=f"projection on the {side} end changes", tag=side)


def _sm7f(env: _Env, r: _Result) -> None:
    for a, sid in _translated_assocs(env, r):
        sides = []
        if "composition" in a.modifiers | a.right_part.modifiers:
            sides.append("right")
        if "composition" in a.left_part.modifiers:
            sides.append("left")
        for parts_side in sides:
            r.check()
            whole_side = "left" if parts_side == "right" else "right"
            part_cls = getattr(a, f"{parts_side}_part").class_name
            whole_cls = getattr(a, f"{whole_side}_part").class_name
            pi = 1 if parts_side == "right" else 0
            for s in env.reachable:
                wholes = set(env.by_class(s).get(whole_cls, ()))
                owned = {p[pi] for p in env.pairs(sid, s.ds) if p[1 - pi] in wholes}
                for o in env.by_class(s).get(part_cls, ()):
                    if o not in owned:
                        r.fail(element=a.label(), states=(s.id,), oids=(o,),
                               detail=f"part has no linked {whole_cls}", tag=parts_side)


def _sm7g(env: _Env, r: _Result) -> None:
    for a, sid in _translated_assocs(env, r):
        for side, end in (("left", a.left_part), ("right", a.right_part)):
            if "ordered" not in end.modifiers:
                continue
            r.check()
            info = env.sys.assocs[sid]
            if info.ordered != side:
                r.fail(element=a.label(), detail=f"system association {sid} is not ordered on the {side} end",
                       tag=side)
                continue
            for s in env.reachable:
                for link in sorted(s.ds.links.get(sid, ()), key=_render):
                    if not (len(link) == 2 and isinstance(link[1], tuple)):
                        r.fail(element=a.label(), states=(s.id,), links=(link,),
                               detail="link is not an (oid, list) pair", tag=side)


STATIC_CHECKS = {
    "SM-1a": _sm1a, "SM-1b": _sm1b, "SM-1c": _sm1c, "SM-1d.i": _sm1di, "SM-1d.ii": _sm1dii,
    "SM-2a": _sm2a, "SM-2b": _sm2b, "SM-2c": _sm2c, "SM-3": _sm3,
}
DYNAMIC_CHECKS = {
    "SM-4a": _sm4a, "SM-4b.i": _sm4bi, "SM-4b.ii": _sm4bii, "SM-4c.i": _sm4ci,
    "SM-4c.ii": _sm4cii, "SM-5": _sm5, "SM-6": _sm6, "SM-7a": _sm7a, "SM-7b": _sm7b,
    "SM-7c": _sm7c, "SM-7d": _sm7d, "SM-7e": _sm7e, "SM-7f": _sm7f, "SM-7g": _sm7g,
}


def _run(codes: Iterable[str], checks: dict, env: _Env) -> list[Verdict]:
    out = []
    for code in codes:
        if code in OUT_OF_SCOPE:
            out.append(Verdict(code, "outOfScope", (), (OUT_OF_SCOPE[code],)))
            continue
        result = _Result()
        checks[code](env, result)
        out.append(result.verdict(code))
    return out


def check_static(cd: ab.ClassDiagram, sys: SystemModel, tm: TransMap) -> list[Verdict]:
    return _run(STATIC_CODES, STATIC_CHECKS, _Env(cd, sys, tm))


def check_dynamic(cd: ab.ClassDiagram, sys: SystemModel, tm: TransMap) -> list[Verdict]:
    return _run(DYNAMIC_CODES, DYNAMIC_CHECKS, _Env(cd, sys, tm))


def dynamic_passes(cd: ab.ClassDiagram, sys: SystemModel, tm: TransMap) -> bool:
    """True iff every dynamic condition holds; stops at the first failure."""
    env = _Env(cd, sys, tm)
    for code in DYNAMIC_CODES:
        if code in OUT_OF_SCOPE:
            continue
        result = _Result()
        DYNAMIC_CHECKS[code](env, result)
        if result.witnesses:
            return False
    return True


def check_diagram(cd: ab.ClassDiagram, sys: SystemModel) -> DiagramReport:
    tm = build_translation(cd, sys, strict=False)
    env = _Env(cd, sys, tm)
    verdicts = _run(STATIC_CODES, STATIC_CHECKS, env) + _run(DYNAMIC_CODES, DYNAMIC_CHECKS, env)
    return DiagramReport(cd.diagram_name, tuple(verdicts))


def check_conformance(cds: Iterable[ab.ClassDiagram], sys: SystemModel) -> ConformanceReport:
    """Check ``sys`` against every diagram; it conforms to the set iff it conforms to each.

    Raises :class:`IllFormedDiagram` if a diagram violates a context condition.
    """
    cds = list(cds)
    for cd in cds:
        errors = errors_of(check_context_conditions(cd))
        if errors:
            raise IllFormedDiagram(errors)
    return ConformanceReport(tuple(check_diagram(cd, sys) for cd in cds))
