"""Mathematical abstract syntax of class diagrams.

Every repetition is a frozenset, parameter lists are tuples. Source spans and
lowering notes ride along for diagnostics but take no part in equality, so
two structurally equal elements collapse to one set member.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Union

from .diagnostics import Diagnostic, Span
from .minicond import Expr, show

MODIFIERS = frozenset({
    "public", "private", "protected", "static", "abstract", "final",
    "composition", "derived", "ordered", "frozen", "addonly",
})
VISIBILITIES = frozenset({"public", "private", "protected"})
BASIC_TYPES = frozenset({"int", "boolean", "char", "short", "byte", "long", "float", "double", "String"})
CARDS = ("0..1", "1", "*")
DIRECTIONS = ("←", "→", "↔", "−")
UNBOUNDED = math.inf


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class TypeRef:
    kind: str  # basic | classRef | interfaceRef | voidRef
    name: str = "void"

    def __str__(self) -> str:
        return self.name


VOID = TypeRef("voidRef", "void")


@dataclass(frozen=True)
class FormalParam:
    name: str
    type: TypeRef


@dataclass(frozen=True)
class ConstructorDef:
    modifiers: frozenset[str]
    name: str
    formal_params: tuple[FormalParam, ...] = ()
    exception_names: frozenset[str] = frozenset()
    body: str | None = None
    span: Span | None = _span()

    def param_types(self) -> tuple[TypeRef, ...]:
        return tuple(p.type for p in self.formal_params)


@dataclass(frozen=True)
class MethodDef:
    modifiers: frozenset[str]
    name: str
    return_type: TypeRef
    formal_params: tuple[FormalParam, ...] = ()
    exception_names: frozenset[str] = frozenset()
    body: str | None = None
    span: Span | None = _span()

    def param_types(self) -> tuple[TypeRef, ...]:
        return tuple(p.type for p in self.formal_params)

    def signature(self) -> str:
        return f"{self.name}({', '.join(t.name for t in self.param_types())})"


@dataclass(frozen=True)
class AttrDef:
    modifiers: frozenset[str]
    name: str
    type: TypeRef
    span: Span | None = _span()


@dataclass(frozen=True)
class ClassDef:
    modifiers: frozenset[str]
    name: str
    super_class_names: frozenset[str] = frozenset()
    interface_names: frozenset[str] = frozenset()
    constructors: frozenset[ConstructorDef] = frozenset()
    meths: frozenset[MethodDef] = frozenset()
    attrs: frozenset[AttrDef] = frozenset()
    span: Span | None = _span()


@dataclass(frozen=True)
class InterfaceDef:
    name: str
    super_interface_names: frozenset[str] = frozenset()
    meths: frozenset[MethodDef] = frozenset()
    attrs: frozenset[AttrDef] = frozenset()
    span: Span | None = _span()


@dataclass(frozen=True)
class QualifierByType:
    type: TypeRef


@dataclass(frozen=True)
class QualifierByAttr:
    name: str


Qualifier = Union[QualifierByType, QualifierByAttr]


@dataclass(frozen=True)
class AssocEnd:
    modifiers: frozenset[str]
    class_name: str
    role: str | None = None
    card: str | None = None
    qualifier: Qualifier | None = None


@dataclass(frozen=True)
class AssocDef:
    modifiers: frozenset[str]
    assoc_name: str | None
    left_part: AssocEnd
    direction: str
    right_part: AssocEnd
    span: Span | None = _span()

    def label(self) -> str:
        if self.assoc_name:
            return self.assoc_name
        return f"{self.left_part.class_name}{self.direction}{self.right_part.class_name}"


@dataclass(frozen=True)
class Invariant:
    cond: Expr
    source: str = field(default="", compare=False)
    span: Span | None = _span()


@dataclass(frozen=True)
class ClassDiagram:
    diagram_name: str
    classes: frozenset[ClassDef] = frozenset()
    interfaces: frozenset[InterfaceDef] = frozenset()
    assocs: frozenset[AssocDef] = frozenset()
    invs: frozenset[Invariant] = frozenset()
    notes: tuple[Diagnostic, ...] = field(default=(), compare=False, repr=False)

    def class_named(self, name: str) -> ClassDef | None:
        return next((c for c in self.classes if c.name == name), None)

    def interface_named(self, name: str) -> InterfaceDef | None:
        return next((i for i in self.interfaces if i.name == name), None)


def card_bounds(card: str | None) -> tuple[int, float]:
    """(min, max) for a cardinality; max is ``math.inf`` when unbounded."""
    return {"0..1": (0, 1), "1": (1, 1), "*": (0, UNBOUNDED), None: (0, UNBOUNDED)}[card]


def ordered(items, key=None):
    """Set members in source order, falling back to structural order."""
    def k(x):
        span = getattr(x, "span", None)
        if span is not None:
            return (span.offset, "")
        return (-1, json.dumps(to_json(x), sort_keys=True))
    return sorted(items, key=key or k)


# -- canonical dump ----------------------------------------------------------


def to_json(node: Any) -> Any:
    """Canonical structured form: sets become sorted lists, spans are dropped."""
    if isinstance(node, ClassDiagram):
        return {
            "diagramName": node.diagram_name,
            "classes": _sorted(node.classes),
            "interfaces": _sorted(node.interfaces),
            "assocs": _sorted(node.assocs),
            "invs": sorted(show(i.cond) for i in node.invs),
        }
    if isinstance(node, ClassDef):
        return {
            "modifiers": sorted(node.modifiers),
            "name": node.name,
            "superClassNames": sorted(node.super_class_names),
            "interfaceNames": sorted(node.interface_names),
            "constructors": _sorted(node.constructors),
            "meths": _sorted(node.meths),
            "attrs": _sorted(node.attrs),
        }
    if isinstance(node, InterfaceDef):
        return {
            "name": node.name,
            "superInterfaceNames": sorted(node.super_interface_names),
            "meths": _sorted(node.meths),
            "attrs": _sorted(node.attrs),
        }
    if isinstance(node, (MethodDef, ConstructorDef)):
        out = {
            "modifiers": sorted(node.modifiers),
            "name": node.name,
            "formalParams": [{"name": p.name, "type": to_json(p.type)} for p in node.formal_params],
            "exceptionNames": sorted(node.exception_names),
            "body": node.body,
        }
        if isinstance(node, MethodDef):
            out["returnType"] = to_json(node.return_type)
        return out
    if isinstance(node, AttrDef):
        return {"modifiers": sorted(node.modifiers), "name": node.name, "type": to_json(node.type)}
    if isinstance(node, AssocDef):
        return {
            "modifiers": sorted(node.modifiers),
            "assocName": node.assoc_name,
            "leftPart": to_json(node.left_part),
            "direction": node.direction,
            "rightPart": to_json(node.right_part),
        }
    if isinstance(node, AssocEnd):
        return {
            "modifiers": sorted(node.modifiers),
            "className": node.class_name,
            "role": node.role,
            "card": node.card,
            "qualifier": to_json(node.qualifier) if node.qualifier else None,
        }
    if isinstance(node, QualifierByType):
        return {"byType": to_json(node.type)}
    if isinstance(node, QualifierByAttr):
        return {"byAttrName": node.name}
    if isinstance(node, TypeRef):
        return {"kind": node.kind, "name": node.name}
    if isinstance(node, Invariant):
        return show(node.cond)
    raise TypeError(f"cannot dump {type(node).__name__}")


def _sorted(items) -> list:
    return sorted((to_json(i) for i in items), key=lambda d: json.dumps(d, sort_keys=True))


def dump(cd: ClassDiagram) -> str:
    return json.dumps(to_json(cd), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
