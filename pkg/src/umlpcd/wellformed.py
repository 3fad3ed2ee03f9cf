"""Context conditions over the abstract syntax.

Every clause is a separate generator registered under its diagnostic code,
so a clause can be switched off in isolation. Results are sorted by catalog
rank, then subject path.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Iterable, Iterator

from . import abstract as ab
from .diagnostics import Diagnostic, make, sort_key

APPLICABLE = {
    "CC-1a": frozenset({"abstract", "final"}),
    "CC-1b": frozenset({"composition", "derived"}),
    "CC-1c": frozenset({"addonly", "frozen", "ordered"}),
    "CC-1d": frozenset({"public", "private", "protected"}),
    "CC-1e": frozenset({"public", "private", "protected", "abstract", "static"}),
    "CC-1f": frozenset({"public", "private", "protected", "static", "final", "derived"}),
}


def transitive_closure(pairs: Iterable[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    """Smallest transitive relation containing ``pairs``."""
    succ: dict[str, set[str]] = defaultdict(set)
    for a, b in pairs:
        succ[a].add(b)
    result = set()
    for start in list(succ):
        seen: set[str] = set()
        stack = list(succ[start])
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(succ.get(node, ()))
        result.update((start, n) for n in seen)
    return frozenset(result)


class _Context:
    def __init__(self, cd: ab.ClassDiagram):
        self.cd = cd
        self.classes = ab.ordered(cd.classes)
        self.interfaces = ab.ordered(cd.interfaces)
        self.assocs = ab.ordered(cd.assocs)
        self.class_by_name: dict[str, list[ab.ClassDef]] = defaultdict(list)
        for c in self.classes:
            self.class_by_name[c.name].append(c)
        self.iface_by_name: dict[str, list[ab.InterfaceDef]] = defaultdict(list)
        for i in self.interfaces:
            self.iface_by_name[i.name].append(i)
        self.type_names = set(self.class_by_name) | set(self.iface_by_name)

    def subject(self, *names: str) -> tuple[str, ...]:
        return (self.cd.diagram_name, *names)

    def declared_type(self, t: ab.TypeRef) -> bool:
        return t.kind in ("basic", "voidRef") or t.name in self.type_names

    def class_ancestors(self, c: ab.ClassDef) -> list[ab.ClassDef]:
        """Strict ancestors of ``c`` reachable along declared superclasses."""
        out, seen, stack = [], {c.name}, sorted(c.super_class_names)
        while stack:
            name = stack.pop(0)
            if name in seen:
                continue
            seen.add(name)
            for d in self.class_by_name.get(name, ()):
                out.append(d)
                stack.extend(sorted(d.super_class_names))
        return out

    def interface_closure(self, names: Iterable[str]) -> list[ab.InterfaceDef]:
        out, seen, stack = [], set(), sorted(names)
        while stack:
            name = stack.pop(0)
            if name in seen:
                continue
            seen.add(name)
            for i in self.iface_by_name.get(name, ()):
                out.append(i)
                stack.extend(sorted(i.super_interface_names))
        return out


Check = Callable[[_Context], Iterator[Diagnostic]]
CHECKS: dict[str, Check] = {}


def _check(code: str):
    def register(fn: Check) -> Check:
        CHECKS[code] = fn
        return fn
    return register


def _bad_modifiers(code: str, mods: frozenset[str], name: str, subject, span) -> Iterator[Diagnostic]:
    for m in sorted(mods - APPLICABLE[code]):
        yield make(code, subject, span, modifier=m, name=name)


def _all_methods(ctx: _Context):
    for c in ctx.classes:
        for m in ab.ordered(c.meths):
            yield ctx.subject(c.name, m.signature()), m
    for i in ctx.interfaces:
        for m in ab.ordered(i.meths):
            yield ctx.subject(i.name, m.signature()), m


def _all_attrs(ctx: _Context):
    for owner in [*ctx.classes, *ctx.interfaces]:
        for a in ab.ordered(owner.attrs):
            yield ctx.subject(owner.name, a.name), a


# -- 1: modifier applicability -------------------------------------------------


@_check("CC-1a")
def _cc1a(ctx):
    for c in ctx.classes:
        yield from _bad_modifiers("CC-1a", c.modifiers, c.name, ctx.subject(c.name), c.span)


@_check("CC-1b")
def _cc1b(ctx):
    for a in ctx.assocs:
        yield from _bad_modifiers("CC-1b", a.modifiers, a.label(), ctx.subject(a.label()), a.span)


@_check("CC-1c")
def _cc1c(ctx):
    for a in ctx.assocs:
        for side, end in (("left", a.left_part), ("right", a.right_part)):
            yield from _bad_modifiers("CC-1c", end.modifiers, f"{end.class_name} of {a.label()}",
                                      ctx.subject(a.label(), side), a.span)


@_check("CC-1d")
def _cc1d(ctx):
    for c in ctx.classes:
        for k in ab.ordered(c.constructors):
            yield from _bad_modifiers("CC-1d", k.modifiers, k.name, ctx.subject(c.name, k.name), k.span)


@_check("CC-1e")
def _cc1e(ctx):
    for subject, m in _all_methods(ctx):
        yield from _bad_modifiers("CC-1e", m.modifiers, m.name, subject, m.span)


@_check("CC-1f")
def _cc1f(ctx):
    for subject, a in _all_attrs(ctx):
        yield from _bad_modifiers("CC-1f", a.modifiers, a.name, subject, a.span)


# -- 2: unique names -----------------------------------------------------------


@_check("CC-2")
def _cc2(ctx):
    elements = ab.ordered([*ctx.classes, *ctx.interfaces])
    seen = set()
    for e in elements:
        if e.name in seen:
            yield make("CC-2", ctx.subject(e.name), e.span, name=e.name)
        seen.add(e.name)


# -- 3: classes ----------------------------------------------------------------


@_check("CC-3a")
def _cc3a(ctx):
    for c in ctx.classes:
        for n in sorted(c.super_class_names):
            targets = ctx.class_by_name.get(n)
            if not targets:
                yield make("CC-3a", ctx.subject(c.name, n), c.span, name=n, problem="is not a declared class")
            elif any("final" in d.modifiers for d in targets):
                yield make("CC-3a", ctx.subject(c.name, n), c.span, name=n, problem="is final")


@_check("CC-3b")
def _cc3b(ctx):
    for c in ctx.classes:
        for n in sorted(c.interface_names):
            if n not in ctx.iface_by_name:
                yield make("CC-3b", ctx.subject(c.name, n), c.span, name=n)


@_check("CC-3c")
def _cc3c(ctx):
    for c in ctx.classes:
        for k in ab.ordered(c.constructors):
            if k.name != c.name:
                yield make("CC-3c", ctx.subject(c.name, k.name), k.span, name=k.name, owner=c.name)


def _duplicate_names(code, ctx, owners):
    for owner in owners:
        seen = set()
        for a in ab.ordered(owner.attrs):
            if a.name in seen:
                yield make(code, ctx.subject(owner.name, a.name), a.span, name=a.name)
            seen.add(a.name)


@_check("CC-3d")
def _cc3d(ctx):
    yield from _duplicate_names("CC-3d", ctx, ctx.classes)


@_check("CC-3e")
def _cc3e(ctx):
    for c in ctx.classes:
        for a in ab.ordered(c.attrs):
            if len(a.modifiers & ab.VISIBILITIES) > 1:
                yield make("CC-3e", ctx.subject(c.name, a.name), a.span, name=a.name)


def _class_methods(ctx):
    for c in ctx.classes:
        for m in ab.ordered(c.meths):
            yield c, m, ctx.subject(c.name, m.signature())


@_check("CC-3f.i")
def _cc3fi(ctx):
    for _, m, subject in _class_methods(ctx):
        if len(m.modifiers & ab.VISIBILITIES) > 1:
            yield make("CC-3f.i", subject, m.span, name=m.signature())


@_check("CC-3f.ii")
def _cc3fii(ctx):
    for _, m, subject in _class_methods(ctx):
        for n in sorted(m.exception_names):
            if n not in ctx.class_by_name:
                yield make("CC-3f.ii", subject + (n,), m.span, name=n)


@_check("CC-3f.iii")
def _cc3fiii(ctx):
    for _, m, subject in _class_methods(ctx):
        if not ctx.declared_type(m.return_type):
            yield make("CC-3f.iii", subject, m.span, name=m.return_type.name)


@_check("CC-3f.iv")
def _cc3fiv(ctx):
    for c, m, subject in _class_methods(ctx):
        if "abstract" not in m.modifiers:
            continue
        if "abstract" not in c.modifiers:
            yield make("CC-3f.iv", subject, m.span, name=m.signature(),
                       problem=f"is declared in the non-abstract class {c.name}")
        if m.body is not None:
            yield make("CC-3f.iv", subject, m.span, name=m.signature(), problem="has a body")


@_check("CC-3f.v")
def _cc3fv(ctx):
    for _, m, subject in _class_methods(ctx):
        seen = set()
        for p in m.formal_params:
            if p.name in seen:
                yield make("CC-3f.v", subject + (p.name,), m.span, name=p.name,
                           problem="is declared more than once")
            seen.add(p.name)
            if not ctx.declared_type(p.type):
                yield make("CC-3f.v", subject + (p.name,), m.span, name=p.name,
                           problem=f"has the undeclared type {p.type.name}")


def _duplicate_signatures(code, ctx, owners):
    for owner in owners:
        seen = set()
        for m in ab.ordered(owner.meths):
            key = (m.name, m.param_types())
            if key in seen:
                yield make(code, ctx.subject(owner.name, m.signature()), m.span, name=m.signature())
            seen.add(key)


@_check("CC-3f.vi")
def _cc3fvi(ctx):
    yield from _duplicate_signatures("CC-3f.vi", ctx, ctx.classes)


@_check("CC-3f.vii")
def _cc3fvii(ctx):
    for _, m, subject in _class_methods(ctx):
        if m.modifiers & {"private", "protected"}:
            yield make("CC-3f.vii", subject, m.span, name=m.signature())


@_check("CC-3g.i")
def _cc3gi(ctx):
    for c in ctx.classes:
        if "abstract" in c.modifiers:
            continue
        lineage = [c, *ctx.class_ancestors(c)]
        implemented = {(m.name, m.param_types()) for d in lineage for m in d.meths
                       if "abstract" not in m.modifiers}
        required = ctx.interface_closure(n for d in lineage for n in d.interface_names)
        done = set()
        for i in required:
            for m in ab.ordered(i.meths):
                key = (m.name, m.param_types())
                if key not in implemented and (i.name, key) not in done:
                    done.add((i.name, key))
                    yield make("CC-3g.i", ctx.subject(c.name, m.signature()), c.span,
                               name=m.signature(), interface=i.name)


@_check("CC-3g.ii")
def _cc3gii(ctx):
    for c2 in ctx.classes:
        for parent in sorted(c2.super_class_names):
            for c1 in ctx.class_by_name.get(parent, ()):
                for m1 in ab.ordered(c1.meths):
                    if "public" not in m1.modifiers:
                        continue
                    for m2 in ab.ordered(c2.meths):
                        if (m2.name, m2.param_types()) != (m1.name, m1.param_types()):
                            continue
                        subject = ctx.subject(c2.name, m2.signature())
                        if "private" in m2.modifiers:
                            yield make("CC-3g.ii", subject, m2.span, name=m2.signature(),
                                       before="public", after="private")
                        elif "protected" in m2.modifiers:
                            yield make("CC-3g.ii", subject, m2.span, severity="warning",
                                       name=m2.signature(), before="public", after="protected")


# -- 4: acyclic inheritance ----------------------------------------------------


def _cycles(edges: set[tuple[str, str]]) -> list[list[str]]:
    """One cycle path per strongly connected component that contains a cycle."""
    closure = transitive_closure(edges)
    cyclic = sorted({a for a, b in closure if a == b})
    succ = defaultdict(list)
    for a, b in sorted(edges):
        succ[a].append(b)
    paths, covered = [], set()
    for start in cyclic:
        if start in covered:
            continue
        component = {n for n in cyclic if (start, n) in closure and (n, start) in closure}
        covered |= component
        # shortest path from start back to itself, inside the component
        parent: dict[str, str] = {}
        queue, found = [start], None
        while queue and found is None:
            node = queue.pop(0)
            for nxt in succ[node]:
                if nxt == start:
                    found = node
                    break
                if nxt in component and nxt not in parent:
                    parent[nxt] = node
                    queue.append(nxt)
        path = [start]
        node = found
        while node != start:
            path.insert(1, node)
            node = parent[node]
        paths.append(path + [start])
    return paths


@_check("CC-4")
def _cc4(ctx):
    r1 = {(c.name, d) for c in ctx.classes for d in c.super_class_names if d in ctx.class_by_name}
    r2 = {(i.name, d) for i in ctx.interfaces for d in i.super_interface_names if d in ctx.iface_by_name}
    for rel, table in ((r1, ctx.class_by_name), (r2, ctx.iface_by_name)):
        for path in _cycles(rel):
            yield make("CC-4", ctx.subject(path[0]), table[path[0]][0].span, cycle="→".join(path))


# -- 5, 6: associations ----------------------------------------------------------


@_check("CC-5a")
def _cc5a(ctx):
    for a in ctx.assocs:
        for side, end in (("left", a.left_part), ("right", a.right_part)):
            if end.class_name not in ctx.class_by_name:
                yield make("CC-5a", ctx.subject(a.label(), side), a.span, name=end.class_name)


def _qualifier_check(code, ctx, qualified: str, opposite: str):
    for a in ctx.assocs:
        q = getattr(a, qualified).qualifier
        if not isinstance(q, ab.QualifierByAttr):
            continue
        cname = getattr(a, opposite).class_name
        if not any(at.name == q.name for c in ctx.class_by_name.get(cname, ()) for at in c.attrs):
            yield make(code, ctx.subject(a.label(), qualified.split("_")[0]), a.span,
                       name=q.name, owner=cname)


@_check("CC-5b")
def _cc5b(ctx):
    yield from _qualifier_check("CC-5b", ctx, "left_part", "right_part")


@_check("CC-5c")
def _cc5c(ctx):
    yield from _qualifier_check("CC-5c", ctx, "right_part", "left_part")


@_check("CC-6")
def _cc6(ctx):
    for a in ctx.assocs:
        if "composition" in a.modifiers and a.left_part.card not in ("0..1", "1"):
            card = a.left_part.card or "unspecified"
            yield make("CC-6", ctx.subject(a.label(), "left"), a.span, name=a.label(), card=card)


# -- 7: interfaces ---------------------------------------------------------------


@_check("CC-7a")
def _cc7a(ctx):
    for i in ctx.interfaces:
        for n in sorted(i.super_interface_names):
            if n not in ctx.iface_by_name:
                yield make("CC-7a", ctx.subject(i.name, n), i.span, name=n)


@_check("CC-7b")
def _cc7b(ctx):
    yield from _duplicate_names("CC-7b", ctx, ctx.interfaces)


@_check("CC-7c")
def _cc7c(ctx):
    for i in ctx.interfaces:
        for m in ab.ordered(i.meths):
            if m.body is not None:
                yield make("CC-7c", ctx.subject(i.name, m.signature()), m.span, name=m.signature())


@_check("CC-7d")
def _cc7d(ctx):
    yield from _duplicate_signatures("CC-7d", ctx, ctx.interfaces)


def code_matches(code: str, selection: Iterable[str]) -> bool:
    """True if ``code`` equals or falls under one of the codes or prefixes in ``selection``."""
    for k in selection:
        if code == k:
            return True
        if code.startswith(k):
            nxt = code[len(k)]
            if nxt == "." or (k[-1].isdigit() and nxt.isalpha()):
                return True
    return False


def check_context_conditions(cd: ab.ClassDiagram, disable: Iterable[str] = ()) -> list[Diagnostic]:
    """All context-condition violations of ``cd``, deterministically ordered.

    ``disable`` holds codes or code prefixes (``"CC-3"``, ``"CC-3f"``) to skip.
    """
    disable = tuple(disable)
    ctx = _Context(cd)
    found = []
    for code, check in CHECKS.items():
        if not code_matches(code, disable):
            found.extend(check(ctx))
    return sorted(found, key=sort_key)


def errors_of(diagnostics: Iterable[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diagnostics if d.is_error]
