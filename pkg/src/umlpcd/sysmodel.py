"""Finite, explicit-state system models and their JSON interchange format.

A system model fixes its universes (types with finite carriers, classes,
associations, methods, object identifiers) and lists its states and
transitions explicitly. Links are stored as tuples:

* ``(x, y)`` for plain associations and attribute-qualified ones,
* ``(x, y, v)`` for associations qualified by a value type,
* ``(o, (y1, ..., yn))`` for associations with an ordered end, where ``o``
  sits on the unordered end and the tuple lists objects of the ordered end.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping

TOP_LEVEL_KEYS = ("types", "classes", "assocs", "methods", "oids", "states",
                  "transitions", "reachable")


class SystemModelError(Exception):
    kind = "SystemModelError"

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class FormatError(SystemModelError):
    kind = "FormatError"


class RefError(SystemModelError):
    kind = "RefError"


class InvariantError(SystemModelError):
    kind = "InvariantError"


class UnknownAssoc(KeyError):
    pass


class CycleError(ValueError):
    pass


def value_key(v: Any) -> tuple[str, Any]:
    """Type-tagged key so that ``True`` and ``1`` stay distinct."""
    if isinstance(v, bool):
        return ("bool", v)
    if isinstance(v, (int, float)):
        return ("num", v)
    if v is None:
        return ("null", None)
    return ("str", v)


@dataclass(frozen=True)
class ClassInfo:
    name: str
    attrs: tuple[tuple[str, str], ...] = ()
    supers: tuple[str, ...] = ()


@dataclass(frozen=True)
class AssocInfo:
    id: str
    left: str
    right: str
    qualifier_kind: str = "none"  # none | type | attr
    qualifier_ref: str | None = None
    qualifier_side: str = "left"
    ordered: str = "none"  # none | left | right


@dataclass(frozen=True)
class MethodInfo:
    id: str
    class_name: str
    name: str
    params: tuple[str, ...] = ()
    ret: str = "void"


@dataclass(frozen=True)
class Message:
    sender: str
    op: str
    args: tuple = ()


@dataclass(frozen=True)
class DataStore:
    live: frozenset[str] = frozenset()
    values: Mapping[tuple[str, str], Any] = field(default_factory=dict)
    links: Mapping[str, frozenset[tuple]] = field(default_factory=dict)

    def value(self, oid: str, attr: str, default: Any = None) -> Any:
        return self.values.get((oid, attr), default)


@dataclass(frozen=True)
class ControlStore:
    frames: Mapping[tuple[str, str], int] = field(default_factory=dict)

    def active(self) -> frozenset[str]:
        return frozenset(oid for (oid, _), depth in self.frames.items() if depth > 0)


@dataclass(frozen=True)
class EventStore:
    events: Mapping[str, frozenset[Message]] = field(default_factory=dict)


@dataclass(frozen=True)
class SystemState:
    id: str
    ds: DataStore = field(default_factory=DataStore)
    cs: ControlStore = field(default_factory=ControlStore)
    es: EventStore = field(default_factory=EventStore)


@dataclass(frozen=True)
class Transition:
    source: str
    target: str
    input: Any = None
    output: Any = None


@dataclass(frozen=True)
class SystemModel:
    types: Mapping[str, tuple] = field(default_factory=dict)
    classes: Mapping[str, ClassInfo] = field(default_factory=dict)
    assocs: Mapping[str, AssocInfo] = field(default_factory=dict)
    methods: Mapping[str, MethodInfo] = field(default_factory=dict)
    oids: Mapping[str, str] = field(default_factory=dict)
    states: tuple[SystemState, ...] = ()
    transitions: tuple[Transition, ...] = ()
    reachable: frozenset[str] = frozenset()
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @cached_property
    def sub(self) -> frozenset[tuple[str, str]]:
        return frozenset((c.name, s) for c in self.classes.values() for s in c.supers)

    @cached_property
    def sub_star(self) -> frozenset[tuple[str, str]]:
        return sub_star(self)

    @cached_property
    def ancestors(self) -> dict[str, frozenset[str]]:
        """Reflexive ancestors of every class."""
        out: dict[str, set[str]] = {c: set() for c in self.classes}
        for a, b in self.sub_star:
            out[a].add(b)
        return {c: frozenset(s) for c, s in out.items()}

    @cached_property
    def state_by_id(self) -> dict[str, SystemState]:
        return {s.id: s for s in self.states}

    def reachable_states(self) -> list[SystemState]:
        return [s for s in self.states if s.id in self.reachable]

    def is_subclass(self, child: str, parent: str) -> bool:
        return parent in self.ancestors.get(child, ())

    def attrs_of(self, cls: str) -> dict[str, str]:
        """Own and inherited attributes of ``cls`` (name to type)."""
        return self._attr_table.get(cls, {})

    @cached_property
    def _attr_table(self) -> dict[str, dict[str, str]]:
        table = {}
        for name in self.classes:
            merged: dict[str, str] = {}
            for anc in sorted(self.ancestors.get(name, ()), key=lambda a: a != name):
                for attr, type_ in self.classes[anc].attrs:
                    merged.setdefault(attr, type_)
            table[name] = merged
        return table

    def class_of(self, oid: str) -> str:
        return self.oids[oid]


# -- queries -----------------------------------------------------------------


def rel_of(sys: SystemModel, assoc: str, ds: DataStore) -> frozenset[tuple]:
    if assoc not in sys.assocs:
        raise UnknownAssoc(assoc)
    return ds.links.get(assoc, frozenset())


def link_pairs(sys: SystemModel, assoc: str, links: Iterable[tuple]) -> list[tuple[str, str]]:
    """Flatten links of ``assoc`` into (left oid, right oid) pairs."""
    info = sys.assocs[assoc]
    pairs = []
    for link in links:
        if info.ordered == "right":
            pairs.extend((link[0], y) for y in link[1])
        elif info.ordered == "left":
            pairs.extend((x, link[0]) for x in link[1])
        else:
            pairs.append((link[0], link[1]))
    return pairs


def link_members(link: tuple) -> list[str]:
    if len(link) == 2 and isinstance(link[1], tuple):
        return [link[0], *link[1]]
    return [link[0], link[1]]


def inactive_view(s: SystemState) -> SystemState:
    """Drop objects with a non-empty stack on any thread, with their data and links."""
    active = s.cs.active() & s.ds.live
    if not active:
        return s
    live = s.ds.live - active
    values = {k: v for k, v in s.ds.values.items() if k[0] in live}
    links = {}
    for a, ls in s.ds.links.items():
        kept = frozenset(l for l in ls if not any(m in active for m in link_members(l)))
        if kept:
            links[a] = kept
    return SystemState(s.id, DataStore(live, values, links), s.cs, s.es)


def sub_star(sys: SystemModel) -> frozenset[tuple[str, str]]:
    """Reflexive-transitive closure of the direct subclass relation."""
    parents: dict[str, list[str]] = {c: [] for c in sys.classes}
    for child, parent in sys.sub:
        parents.setdefault(child, []).append(parent)
        parents.setdefault(parent, [])
    result = set()
    for start in parents:
        seen = {start}
        stack = [start]
        while stack:
            node = stack.pop()
            for p in parents[node]:
                if p == start:
                    raise CycleError(f"subclass cycle through {start}")
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        result.update((start, s) for s in seen)
    return frozenset(result)


# -- loading -----------------------------------------------------------------


class _Loader:
    def __init__(self, lenient: bool):
        self.lenient = lenient
        self.warnings: list[str] = []

    def obj(self, value: Any, path: str, required: tuple[str, ...], optional: tuple[str, ...] = ()):
        if not isinstance(value, dict):
            raise FormatError(path, "expected an object")
        for key in required:
            if key not in value:
                raise FormatError(path, f"missing key {key!r}")
        extra = sorted(set(value) - set(required) - set(optional))
        if extra:
            self.unknown(path, extra)
        return value

    def unknown(self, path: str, keys: list[str]) -> None:
        message = "unknown keys " + ", ".join(repr(k) for k in keys)
        if not self.lenient:
            raise FormatError(path, message)
        self.warnings.append(f"{path}: {message}")

    @staticmethod
    def array(value: Any, path: str) -> list:
        if not isinstance(value, list):
            raise FormatError(path, "expected an array")
        return value

    @staticmethod
    def string(value: Any, path: str) -> str:
        if not isinstance(value, str):
            raise FormatError(path, "expected a string")
        return value

    @staticmethod
    def scalar(value: Any, path: str) -> Any:
        if isinstance(value, (dict, list)):
            raise FormatError(path, "expected a JSON scalar")
        return value

    def unique(self, names: Iterable[str], path: str, what: str) -> None:
        seen = set()
        for i, name in enumerate(names):
            if name in seen:
                raise InvariantError(f"{path}[{i}]", f"duplicate {what} {name!r}")
            seen.add(name)

    def load(self, doc: Any) -> SystemModel:
        if not isinstance(doc, dict):
            raise FormatError("$", "expected an object")
        extra = sorted(set(doc) - set(TOP_LEVEL_KEYS))
        if extra:
            self.unknown("$", extra)
        for key in TOP_LEVEL_KEYS:
            if key not in doc:
                if not self.lenient:
                    raise FormatError("$", f"missing key {key!r}")
        get = lambda k: self.array(doc.get(k, []), k)  # noqa: E731

        types = {}
        for i, t in enumerate(get("types")):
            p = f"types[{i}]"
            self.obj(t, p, ("name", "carrier"))
            name = self.string(t["name"], p + ".name")
            if name in types:
                raise InvariantError(p, f"duplicate type {name!r}")
            carrier = tuple(self.scalar(v, f"{p}.carrier[{j}]")
                            for j, v in enumerate(self.array(t["carrier"], p + ".carrier")))
            if len({value_key(v) for v in carrier}) != len(carrier):
                raise InvariantError(p + ".carrier", "duplicate carrier value")
            types[name] = carrier

        raw_classes = get("classes")
        class_names = []
        for i, c in enumerate(raw_classes):
            self.obj(c, f"classes[{i}]", ("name",), ("attrs", "super"))
            class_names.append(self.string(c["name"], f"classes[{i}].name"))
        self.unique(class_names, "classes", "class")
        for i, name in enumerate(class_names):
            if name in types:
                raise InvariantError(f"classes[{i}]", f"{name!r} is both a type and a class")
        known_types = set(types) | set(class_names)

        classes = {}
        for i, c in enumerate(raw_classes):
            p = f"classes[{i}]"
            attrs = []
            for j, a in enumerate(self.array(c.get("attrs", []), p + ".attrs")):
                ap = f"{p}.attrs[{j}]"
                self.obj(a, ap, ("name", "type"))
                type_ = self.string(a["type"], ap + ".type")
                if type_ not in known_types:
                    raise RefError(ap + ".type", f"undeclared type {type_!r}")
                attrs.append((self.string(a["name"], ap + ".name"), type_))
            self.unique([a for a, _ in attrs], p + ".attrs", "attribute")
            supers = []
            for j, s in enumerate(self.array(c.get("super", []), p + ".super")):
                s = self.string(s, f"{p}.super[{j}]")
                if s not in class_names:
                    raise RefError(f"{p}.super[{j}]", f"undeclared class {s!r}")
                supers.append(s)
            classes[class_names[i]] = ClassInfo(class_names[i], tuple(attrs), tuple(supers))

        partial = SystemModel(types=types, classes=classes)
        try:
            partial.sub_star
        except CycleError as err:
            raise InvariantError("classes", str(err)) from None

        assocs = {}
        for i, a in enumerate(get("assocs")):
            p = f"assocs[{i}]"
            self.obj(a, p, ("id", "left", "right"), ("qualifier", "ordered"))
            aid = self.string(a["id"], p + ".id")
            if aid in assocs:
                raise InvariantError(p, f"duplicate association {aid!r}")
            ends = []
            for side in ("left", "right"):
                cls = self.string(a[side], f"{p}.{side}")
                if cls not in classes:
                    raise RefError(f"{p}.{side}", f"undeclared class {cls!r}")
                ends.append(cls)
            q = self.obj(a.get("qualifier", {"kind": "none"}), p + ".qualifier", ("kind",),
                         ("ref", "side"))
            kind = q["kind"]
            if kind not in ("none", "type", "attr"):
                raise FormatError(p + ".qualifier.kind", f"unknown qualifier kind {kind!r}")
            ref = q.get("ref")
            side = q.get("side", "left")
            if side not in ("left", "right"):
                raise FormatError(p + ".qualifier.side", f"unknown side {side!r}")
            if kind == "type" and ref not in known_types:
                raise RefError(p + ".qualifier.ref", f"undeclared type {ref!r}")
            if kind == "attr":
                target = ends[1] if side == "left" else ends[0]
                if ref not in partial.attrs_of(target):
                    raise RefError(p + ".qualifier.ref", f"{target} has no attribute {ref!r}")
            ordered = a.get("ordered", "none")
            if ordered not in ("none", "left", "right"):
                raise FormatError(p + ".ordered", f"unknown ordered end {ordered!r}")
            if ordered != "none" and kind == "type":
                raise InvariantError(p, "an ordered association cannot be type-qualified")
            assocs[aid] = AssocInfo(aid, ends[0], ends[1], kind, ref if kind != "none" else None,
                                    side, ordered)

        methods = {}
        for i, m in enumerate(get("methods")):
            p = f"methods[{i}]"
            self.obj(m, p, ("id", "class", "name"), ("params", "ret"))
            mid = self.string(m["id"], p + ".id")
            if mid in methods:
                raise InvariantError(p, f"duplicate method {mid!r}")
            cls = self.string(m["class"], p + ".class")
            if cls not in classes:
                raise RefError(p + ".class", f"undeclared class {cls!r}")
            params = tuple(self.string(t, f"{p}.params[{j}]")
                           for j, t in enumerate(self.array(m.get("params", []), p + ".params")))
            for j, t in enumerate(params):
                if t not in known_types:
                    raise RefError(f"{p}.params[{j}]", f"undeclared type {t!r}")
            ret = self.string(m.get("ret", "void"), p + ".ret")
            if ret != "void" and ret not in known_types:
                raise RefError(p + ".ret", f"undeclared type {ret!r}")
            methods[mid] = MethodInfo(mid, cls, self.string(m["name"], p + ".name"), params, ret)

        oids = {}
        for i, o in enumerate(get("oids")):
            p = f"oids[{i}]"
            self.obj(o, p, ("id", "class"))
            oid = self.string(o["id"], p + ".id")
            if oid in oids:
                raise InvariantError(p, f"duplicate oid {oid!r}")
            cls = self.string(o["class"], p + ".class")
            if cls not in classes:
                raise RefError(p + ".class", f"undeclared class {cls!r}")
            oids[oid] = cls

        model = SystemModel(types, classes, assocs, methods, oids)
        states = tuple(self.state(model, s, f"states[{i}]") for i, s in enumerate(get("states")))
        self.unique([s.id for s in states], "states", "state")
        state_ids = {s.id for s in states}

        transitions = []
        for i, t in enumerate(get("transitions")):
            p = f"transitions[{i}]"
            self.obj(t, p, ("from", "to"), ("in", "out"))
            for key in ("from", "to"):
                if self.string(t[key], f"{p}.{key}") not in state_ids:
                    raise RefError(f"{p}.{key}", f"undeclared state {t[key]!r}")
            transitions.append(Transition(t["from"], t["to"], self.scalar(t.get("in"), p + ".in"),
                                          self.scalar(t.get("out"), p + ".out")))

        reachable = []
        for i, r in enumerate(get("reachable")):
            if self.string(r, f"reachable[{i}]") not in state_ids:
                raise RefError(f"reachable[{i}]", f"undeclared state {r!r}")
            reachable.append(r)

        return SystemModel(types, classes, assocs, methods, oids, states, tuple(transitions),
                           frozenset(reachable), tuple(self.warnings))

    def oid(self, model: SystemModel, value: Any, path: str) -> str:
        oid = self.string(value, path)
        if oid not in model.oids:
            raise RefError(path, f"undeclared oid {oid!r}")
        return oid

    def check_type(self, model: SystemModel, value: Any, type_: str, path: str) -> None:
        if type_ in model.types:
            if value_key(value) not in {value_key(v) for v in model.types[type_]}:
                raise InvariantError(path, f"{value!r} is not in the carrier of {type_}")
        elif value is not None:
            if not isinstance(value, str) or value not in model.oids:
                raise InvariantError(path, f"{value!r} is not an oid")
            if not model.is_subclass(model.oids[value], type_):
                raise InvariantError(path, f"{value!r} is not an instance of {type_}")

    def state(self, model: SystemModel, s: Any, p: str) -> SystemState:
        self.obj(s, p, ("id",), ("live", "attrs", "links", "stacks", "events"))
        sid = self.string(s["id"], p + ".id")
        live = set()
        for j, o in enumerate(self.array(s.get("live", []), p + ".live")):
            live.add(self.oid(model, o, f"{p}.live[{j}]"))

        values: dict[tuple[str, str], Any] = {}
        for j, a in enumerate(self.array(s.get("attrs", []), p + ".attrs")):
            ap = f"{p}.attrs[{j}]"
            self.obj(a, ap, ("oid", "attr", "value"))
            oid = self.oid(model, a["oid"], ap + ".oid")
            attr = self.string(a["attr"], ap + ".attr")
            table = model.attrs_of(model.oids[oid])
            if attr not in table:
                raise RefError(ap + ".attr", f"{model.oids[oid]} has no attribute {attr!r}")
            if oid not in live:
                raise InvariantError(ap + ".oid", f"{oid!r} is not live in state {sid!r}")
            if (oid, attr) in values:
                raise InvariantError(ap, f"duplicate value for {oid}.{attr}")
            value = self.scalar(a["value"], ap + ".value")
            self.check_type(model, value, table[attr], ap + ".value")
            values[(oid, attr)] = value

        links: dict[str, set] = {}
        ordered_sources: set[tuple[str, str]] = set()
        for j, l in enumerate(self.array(s.get("links", []), p + ".links")):
            lp = f"{p}.links[{j}]"
            self.obj(l, lp, ("assoc", "from"), ("to", "qual", "toList"))
            aid = self.string(l["assoc"], lp + ".assoc")
            if aid not in model.assocs:
                raise RefError(lp + ".assoc", f"undeclared association {aid!r}")
            info = model.assocs[aid]
            src = self.oid(model, l["from"], lp + ".from")
            if info.ordered != "none":
                if "toList" not in l or "to" in l or "qual" in l:
                    raise FormatError(lp, "ordered association links need 'from' and 'toList' only")
                targets = tuple(self.oid(model, o, f"{lp}.toList[{k}]")
                                for k, o in enumerate(self.array(l["toList"], lp + ".toList")))
                if len(set(targets)) != len(targets):
                    raise InvariantError(lp + ".toList", "duplicate oid in ordered list")
                if (aid, src) in ordered_sources:
                    raise InvariantError(lp, f"second ordered list for {src!r}")
                ordered_sources.add((aid, src))
                src_cls, dst_cls = ((info.left, info.right) if info.ordered == "right"
                                    else (info.right, info.left))
                members = [(src, src_cls, lp + ".from")] + [
                    (o, dst_cls, f"{lp}.toList[{k}]") for k, o in enumerate(targets)]
                link: tuple = (src, targets)
            else:
                if "to" not in l or "toList" in l:
                    raise FormatError(lp, "links need 'from' and 'to'")
                dst = self.oid(model, l["to"], lp + ".to")
                members = [(src, info.left, lp + ".from"), (dst, info.right, lp + ".to")]
                if info.qualifier_kind == "type":
                    if "qual" not in l:
                        raise FormatError(lp, "type-qualified links need 'qual'")
                    qual = self.scalar(l["qual"], lp + ".qual")
                    self.check_type(model, qual, info.qualifier_ref, lp + ".qual")
                    link = (src, dst, qual)
                else:
                    if "qual" in l:
                        raise FormatError(lp + ".qual", "association is not type-qualified")
                    link = (src, dst)
            for oid, cls, mp in members:
                if oid not in live:
                    raise InvariantError(mp, f"{oid!r} is not live in state {sid!r}")
                if not model.is_subclass(model.oids[oid], cls):
                    raise InvariantError(mp, f"{oid!r} is not an instance of {cls}")
            links.setdefault(aid, set()).add(link)

        frames = {}
        for j, f in enumerate(self.array(s.get("stacks", []), p + ".stacks")):
            fp = f"{p}.stacks[{j}]"
            self.obj(f, fp, ("oid", "thread", "depth"))
            oid = self.oid(model, f["oid"], fp + ".oid")
            thread = self.string(f["thread"], fp + ".thread")
            depth = f["depth"]
            if not isinstance(depth, int) or isinstance(depth, bool) or depth < 0:
                raise FormatError(fp + ".depth", "expected a natural number")
            frames[(oid, thread)] = depth

        events: dict[str, set] = {}
        for j, e in enumerate(self.array(s.get("events", []), p + ".events")):
            ep = f"{p}.events[{j}]"
            self.obj(e, ep, ("oid", "recv"))
            oid = self.oid(model, e["oid"], ep + ".oid")
            recv = self.obj(e["recv"], ep + ".recv", ("sender", "op"), ("args",))
            sender = self.oid(model, recv["sender"], ep + ".recv.sender")
            args = tuple(self.scalar(v, f"{ep}.recv.args[{k}]")
                         for k, v in enumerate(self.array(recv.get("args", []), ep + ".recv.args")))
            msg = Message(sender, self.string(recv["op"], ep + ".recv.op"), args)
            events.setdefault(oid, set()).add(msg)

        return SystemState(
            sid,
            DataStore(frozenset(live), values, {a: frozenset(v) for a, v in links.items()}),
            ControlStore(frames),
            EventStore({o: frozenset(v) for o, v in events.items()}),
        )


def load_system_model(document: bytes | str, lenient: bool = False) -> SystemModel:
    """Parse and validate an interchange document.

    Raises FormatError, RefError or InvariantError; each carries a ``path``
    into the document.
    """
    try:
        doc = json.loads(document)
    except (ValueError, UnicodeDecodeError) as err:
        raise FormatError("$", f"malformed JSON: {err}") from None
    return _Loader(lenient).load(doc)


def model_to_json(sys: SystemModel) -> dict[str, Any]:
    def link_record(aid: str, link: tuple) -> dict[str, Any]:
        info = sys.assocs[aid]
        if info.ordered != "none":
            return {"assoc": aid, "from": link[0], "toList": list(link[1])}
        rec = {"assoc": aid, "from": link[0], "to": link[1]}
        if len(link) == 3:
            rec["qual"] = link[2]
        return rec

    def sort_links(links):
        return sorted(links, key=lambda l: json.dumps([l[0], l[1], *(value_key(x) for x in l[2:])]))

    states = []
    for s in sys.states:
        states.append({
            "id": s.id,
            "live": sorted(s.ds.live),
            "attrs": [{"oid": o, "attr": a, "value": v}
                      for (o, a), v in sorted(s.ds.values.items(), key=lambda kv: kv[0])],
            "links": [link_record(aid, l) for aid in sorted(s.ds.links)
                      for l in sort_links(s.ds.links[aid])],
            "stacks": [{"oid": o, "thread": t, "depth": d}
                       for (o, t), d in sorted(s.cs.frames.items())],
            "events": [{"oid": o, "recv": {"sender": m.sender, "op": m.op, "args": list(m.args)}}
                       for o in sorted(s.es.events)
                       for m in sorted(s.es.events[o], key=lambda m: (m.sender, m.op, json.dumps(m.args)))],
        })
    assocs = []
    for a in sys.assocs.values():
        q: dict[str, Any] = {"kind": a.qualifier_kind}
        if a.qualifier_kind != "none":
            q["ref"] = a.qualifier_ref
            q["side"] = a.qualifier_side
        assocs.append({"id": a.id, "left": a.left, "right": a.right, "qualifier": q,
                       "ordered": a.ordered})
    return {
        "types": [{"name": n, "carrier": list(c)} for n, c in sys.types.items()],
        "classes": [{"name": c.name, "attrs": [{"name": n, "type": t} for n, t in c.attrs],
                     "super": list(c.supers)} for c in sys.classes.values()],
        "assocs": assocs,
        "methods": [{"id": m.id, "class": m.class_name, "name": m.name,
                     "params": list(m.params), "ret": m.ret} for m in sys.methods.values()],
        "oids": [{"id": o, "class": c} for o, c in sys.oids.items()],
        "states": states,
        "transitions": [{"from": t.source, "to": t.target, "in": t.input, "out": t.output}
                        for t in sys.transitions],
        "reachable": sorted(sys.reachable),
    }


def dump_system_model(sys: SystemModel) -> str:
    return json.dumps(model_to_json(sys), indent=2) + "\n"
