"""Bounded consistency: search for a conforming finite system model.

Universes come from the diagrams by identity. Candidate models are linear
traces ``s0 -> s1 -> ... -> s(k-1)`` with every state reachable. Each state
is a choice of live objects, a total attribute valuation of the live objects
and a link set per association. Models are produced in a fixed order:
trace length first, then the states in enumeration order. A model is
yielded only if its encoding is minimal among all per-class relabellings of
its oids, so each symmetry class shows up once.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

from . import abstract as ab
from .semantics import (
    IllFormedDiagram, TransMap, _basic_types, build_translation, check_static, dynamic_passes,
)
from .sysmodel import (
    AssocInfo, ClassInfo, ControlStore, DataStore, EventStore, MethodInfo,
    SystemModel, SystemState, Transition,
)
from .wellformed import check_context_conditions, errors_of

DEFAULT_CARRIER = 2
DEFAULT_CEILING = 2_000_000


class BoundsTooLarge(Exception):
    def __init__(self, estimate: float, ceiling: float):
        super().__init__(f"estimated {estimate:.3g} candidate models exceed the ceiling of {ceiling:.3g}")
        self.estimate = estimate
        self.ceiling = ceiling


@dataclass(frozen=True)
class Bounds:
    max_oids_per_class: int = 1
    max_states: int = 1
    carrier_sizes: dict[str, int] = field(default_factory=dict, hash=False)
    max_links_per_assoc: int = 2

    def __post_init__(self):
        values = [self.max_oids_per_class, self.max_states, self.max_links_per_assoc,
                  *self.carrier_sizes.values()]
        if any(not isinstance(v, int) or v < 0 for v in values):
            raise ValueError("bounds must be natural numbers")

    def carrier_size(self, type_name: str) -> int:
        return self.carrier_sizes.get(type_name, DEFAULT_CARRIER)

    def to_json(self) -> dict[str, Any]:
        return {
            "maxOidsPerClass": self.max_oids_per_class,
            "maxStates": self.max_states,
            "carrierSizes": dict(sorted(self.carrier_sizes.items())),
            "maxLinksPerAssoc": self.max_links_per_assoc,
        }


@dataclass(frozen=True)
class ConsistencyResult:
    consistent: bool
    witness: SystemModel | None
    bounds: Bounds
    examined: int
    elapsed: float = field(compare=False)

    def verdict_text(self) -> str:
        if self.consistent:
            return "consistent: witness found"
        b = self.bounds
        carriers = ", ".join(f"{t}={n}" for t, n in sorted(b.carrier_sizes.items())) or "default"
        return (f"inconsistent up to bounds (oids/class={b.max_oids_per_class}, "
                f"states={b.max_states}, links/assoc={b.max_links_per_assoc}, carriers={carriers})")


def carrier(type_name: str, size: int) -> tuple:
    if type_name == "boolean":
        return (False, True)[:size]
    if type_name == "String":
        return tuple(f"s{i}" for i in range(size))
    if type_name == "char":
        return tuple(chr(ord("a") + i) for i in range(min(size, 26)))
    if type_name in ("float", "double"):
        return tuple(float(i) for i in range(size))
    return tuple(range(size))


def universe(cds: Iterable[ab.ClassDiagram], bounds: Bounds) -> SystemModel:
    """Types, classes, associations, methods and oids shared by all candidates."""
    cds = list(cds)
    types = {}
    for cd in cds:
        for t in sorted(_basic_types(cd)):
            types[t] = carrier(t, bounds.carrier_size(t))

    attrs: dict[str, dict[str, str]] = {}
    supers: dict[str, set[str]] = {}
    for cd in cds:
        for e in ab.ordered([*cd.classes, *cd.interfaces]):
            table = attrs.setdefault(e.name, {})
            for a in ab.ordered(e.attrs):
                table.setdefault(a.name, a.type.name)
            parents = supers.setdefault(e.name, set())
            if isinstance(e, ab.ClassDef):
                parents.update(e.super_class_names | e.interface_names)
            else:
                parents.update(e.super_interface_names)
    classes = {
        name: ClassInfo(name, tuple(sorted(attrs[name].items())),
                        tuple(sorted(p for p in supers[name] if p in attrs)))
        for name in sorted(attrs)
    }

    assocs: dict[str, AssocInfo] = {}
    for cd in cds:
        for a in ab.ordered(cd.assocs):
            left, right = a.left_part.class_name, a.right_part.class_name
            if left not in classes or right not in classes:
                continue
            if a.assoc_name is None and any((i.left, i.right) == (left, right) for i in assocs.values()):
                continue
            aid = a.assoc_name or f"{left}_{right}"
            while aid in assocs and a.assoc_name is None:
                aid += "_"
            if aid in assocs:
                continue
            kind, ref, side = "none", None, "left"
            for end_side, end in (("left", a.left_part), ("right", a.right_part)):
                q = end.qualifier
                if isinstance(q, ab.QualifierByType) and q.type.name in types:
                    kind, ref, side = "type", q.type.name, end_side
                elif isinstance(q, ab.QualifierByAttr):
                    kind, ref, side = "attr", q.name, end_side
            ordered = "none"
            if kind != "type":
                if "ordered" in a.right_part.modifiers:
                    ordered = "right"
                elif "ordered" in a.left_part.modifiers:
                    ordered = "left"
            assocs[aid] = AssocInfo(aid, left, right, kind, ref, side, ordered)

    methods = {}
    for cd in cds:
        for c in ab.ordered(cd.classes):
            for m in ab.ordered(c.meths):
                params = tuple(t.name for t in m.param_types())
                mid = f"{c.name}.{m.name}({','.join(params)})"
                methods.setdefault(mid, MethodInfo(mid, c.name, m.name, params, m.return_type.name))

    oids = {f"{c}#{i}": c for c in classes for i in range(bounds.max_oids_per_class)}
    return SystemModel(types, classes, assocs, methods, oids)


class _Space:
    def __init__(self, base: SystemModel, bounds: Bounds):
        self.base = base
        self.bounds = bounds
        self.oids = list(base.oids)
        self.assocs = list(base.assocs.values())

    def attr_values(self, type_name: str) -> list:
        if type_name in self.base.types:
            return list(self.base.types[type_name])
        return [None] + [o for o in self.oids if self.base.is_subclass(self.base.oids[o], type_name)]

    def candidate_links(self, info: AssocInfo, live: list[str]) -> list[tuple]:
        lefts = [o for o in live if self.base.is_subclass(self.base.oids[o], info.left)]
        rights = [o for o in live if self.base.is_subclass(self.base.oids[o], info.right)]
        if info.qualifier_kind == "type":
            return [(x, y, v) for x in lefts for y in rights for v in self.base.types[info.qualifier_ref]]
        return [(x, y) for x in lefts for y in rights]

    def link_sets(self, info: AssocInfo, live: list[str]) -> Iterator[frozenset]:
        limit = self.bounds.max_links_per_assoc
        candidates = self.candidate_links(info, live)
        if info.ordered == "none":
            for k in range(min(limit, len(candidates)) + 1):
                for combo in itertools.combinations(candidates, k):
                    yield frozenset(combo)
            return
        # ordered: one optional non-empty list per source on the unordered end
        src_i = 0 if info.ordered == "right" else 1
        sources = sorted({p[src_i] for p in candidates})
        targets = {s: sorted(p[1 - src_i] for p in candidates if p[src_i] == s) for s in sources}

        def lists(remaining: list[str], budget: int) -> Iterator[tuple]:
            if not remaining:
                yield ()
                return
            head, rest = remaining[0], remaining[1:]
            yield from lists(rest, budget)
            for k in range(1, min(budget, len(targets[head])) + 1):
                for perm in itertools.permutations(targets[head], k):
                    for tail in lists(rest, budget - k):
                        yield ((head, perm),) + tail

        for combo in lists(sources, limit):
            yield frozenset(combo)

    def states(self) -> Iterator[DataStore]:
        base = self.base
        for mask in itertools.product((False, True), repeat=len(self.oids)):
            live = [o for o, keep in zip(self.oids, mask) if keep]
            slots = [(o, a, t) for o in live for a, t in sorted(base.attrs_of(base.oids[o]).items())]
            domains = [self.attr_values(t) for _, _, t in slots]
            link_domains = [list(self.link_sets(info, live)) for info in self.assocs]
            for values in itertools.product(*domains):
                valuation = {(o, a): v for (o, a, _), v in zip(slots, values)}
                for links in itertools.product(*link_domains):
                    yield DataStore(
                        frozenset(live), valuation,
                        {info.id: ls for info, ls in zip(self.assocs, links) if ls},
                    )

    def single_state_estimate(self) -> float:
        base = self.base
        total = 1.0
        for o in self.oids:
            per = 1.0
            for t in base.attrs_of(base.oids[o]).values():
                per *= len(self.attr_values(t))
            total *= 1 + per
        everyone = self.oids
        for info in self.assocs:
            n = len(self.candidate_links(info, everyone))
            if info.ordered != "none":
                n = max(n, 1) * max(n, 1)
            total *= sum(math.comb(n, k) for k in range(min(self.bounds.max_links_per_assoc, n) + 1))
        return total


def estimate(cds: Iterable[ab.ClassDiagram], bounds: Bounds) -> float:
    space = _Space(universe(cds, bounds), bounds)
    s = space.single_state_estimate()
    return 1 + sum(s ** k for k in range(1, bounds.max_states + 1))


# -- symmetry reduction --------------------------------------------------------


def _enc(v: Any) -> str:
    return json.dumps(v) if not isinstance(v, tuple) else json.dumps(list(v))


def _encode(ds: DataStore, rename: dict[str, str]) -> str:
    """One state as a string, with oids relabelled by ``rename``."""
    def ren(v):
        return rename.get(v, v) if isinstance(v, str) else v

    live = sorted(rename[o] for o in ds.live)
    values = sorted((rename[o], a, _enc(ren(v))) for (o, a), v in ds.values.items())
    links = []
    for aid in sorted(ds.links):
        encoded = []
        for link in ds.links[aid]:
            if len(link) == 2 and isinstance(link[1], tuple):
                encoded.append(_enc([rename[link[0]], [rename[y] for y in link[1]]]))
            else:
                encoded.append(_enc([rename[link[0]], rename[link[1]], *link[2:]]))
        links.append((aid, sorted(encoded)))
    return json.dumps([live, values, links])


def _relabellings(base: SystemModel) -> list[dict[str, str]]:
    groups: dict[str, list[str]] = {}
    for o, c in base.oids.items():
        groups.setdefault(c, []).append(o)
    per_class = [[dict(zip(g, p)) for p in itertools.permutations(g)] for g in groups.values()]
    out = []
    for combo in itertools.product(*per_class):
        merged: dict[str, str] = {}
        for part in combo:
            merged.update(part)
        out.append(merged)
    return out


def _is_canonical(trace: tuple[int, ...], table: list[list[str]]) -> bool:
    """``table[i][p]`` encodes state ``i`` under relabelling ``p``; index 0 is the identity."""
    own = [table[i][0] for i in trace]
    return all(own <= [table[i][p] for i in trace] for p in range(1, len(table[0])))


def _model(base: SystemModel, states: list[DataStore]) -> SystemModel:
    ids = [f"s{i}" for i in range(len(states))]
    full = tuple(SystemState(sid, ds, ControlStore({}), EventStore({})) for sid, ds in zip(ids, states))
    transitions = tuple(Transition(a, b) for a, b in zip(ids, ids[1:]))
    return SystemModel(base.types, base.classes, base.assocs, base.methods, base.oids,
                       full, transitions, frozenset(ids))


def _traces(count: int, max_len: int, table: list[list[str]]) -> Iterator[tuple[int, ...]]:
    for k in range(1, max_len + 1):
        for trace in itertools.product(range(count), repeat=k):
            if not table or _is_canonical(trace, table):
                yield trace


def _table(base: SystemModel, states: list[DataStore], symmetry: bool) -> list[list[str]]:
    identity = {o: o for o in base.oids}
    perms = [identity]
    if symmetry:
        perms += [p for p in _relabellings(base) if p != identity]
    return [[_encode(ds, p) for p in perms] for ds in states] if len(perms) > 1 else []


def static_ok(cds: list[ab.ClassDiagram], base: SystemModel, translations: list[TransMap]) -> bool:
    return all(v.status != "fail" for cd, tm in zip(cds, translations) for v in check_static(cd, base, tm))


def enumerate_models(
    cds: Iterable[ab.ClassDiagram],
    bounds: Bounds,
    ceiling: float = DEFAULT_CEILING,
    symmetry: bool = True,
    include_empty_trace: bool | None = None,
) -> Iterator[SystemModel]:
    """Candidate models up to ``bounds`` in canonical order.

    The trace with no states comes first when ``include_empty_trace`` is set
    (by default only when ``max_states`` is 0). Raises
    :class:`BoundsTooLarge` before enumerating anything if the estimated
    number of candidates exceeds ``ceiling``.
    """
    cds = list(cds)
    base = universe(cds, bounds)
    space = _Space(base, bounds)
    total = estimate(cds, bounds)
    if total > ceiling:
        raise BoundsTooLarge(total, ceiling)
    if include_empty_trace is None:
        include_empty_trace = bounds.max_states == 0
    if include_empty_trace:
        yield _model(base, [])
    singles = list(space.states())
    for trace in _traces(len(singles), bounds.max_states, _table(base, singles, symmetry)):
        yield _model(base, [singles[i] for i in trace])


def bounded_consistency(
    cds: Iterable[ab.ClassDiagram],
    bounds: Bounds,
    allow_empty_trace: bool = False,
    ceiling: float = DEFAULT_CEILING,
    symmetry: bool = True,
    prune: bool = True,
) -> ConsistencyResult:
    """First enumerated model conforming to every diagram, if any.

    Unless ``allow_empty_trace`` is set, witnesses need a reachable state.
    Static conditions only see the universe, which all candidates share, so
    they are checked once; if one fails no candidate is examined.

    With ``prune`` only canonical single states are checked. Every dynamic condition
    holds vacuously on a one-state trace or quantifies over each reachable
    state separately, so each state of a conforming trace is itself a
    conforming one-state model, and one-state traces come first in the
    canonical order. Relabelling oids does not change conformance, so the
    canonical state of each orbit stands for the rest. The witness is the
    same as without pruning. ``examined`` counts conformance evaluations.
    """
    cds = list(cds)
    for cd in cds:
        errors = errors_of(check_context_conditions(cd))
        if errors:
            raise IllFormedDiagram(errors)
    start = time.perf_counter()
    base = universe(cds, bounds)
    translations = [build_translation(cd, base, strict=False) for cd in cds]

    def result(witness, examined):
        return ConsistencyResult(witness is not None, witness, bounds, examined, time.perf_counter() - start)

    def conforms(model):
        return all(dynamic_passes(cd, model, tm) for cd, tm in zip(cds, translations))

    if not prune:
        models = enumerate_models(cds, bounds, ceiling, symmetry, include_empty_trace=allow_empty_trace)
        if not static_ok(cds, base, translations):
            next(models, None)  # still surfaces BoundsTooLarge
            return result(None, 0)
        examined = 0
        for model in models:
            if not model.reachable and not allow_empty_trace:
                continue
            examined += 1
            if conforms(model):
                return result(model, examined)
        return result(None, examined)

    space = _Space(base, bounds)
    singles_estimate = 1 + space.single_state_estimate()
    if singles_estimate > ceiling:
        raise BoundsTooLarge(singles_estimate, ceiling)
    if not static_ok(cds, base, translations):
        return result(None, 0)
    examined = 0
    if allow_empty_trace:
        examined += 1
        empty = _model(base, [])
        if conforms(empty):
            return result(empty, examined)
    if bounds.max_states == 0:
        return result(None, examined)
    perms = _relabellings(base) if symmetry else []
    for ds in space.states():
        own = _encode(ds, {o: o for o in base.oids})
        if perms and any(_encode(ds, p) < own for p in perms):
            continue
        examined += 1
        single = _model(base, [ds])
        if conforms(single):
            return result(single, examined)
    return result(None, examined)
