"""Concrete syntax tree, one node class per grammar production.

Field names follow the grammar's child names in snake_case. Equality
ignores source spans so trees can be compared structurally.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Iterator, Union

from .diagnostics import Span


def _span() -> Span | None:
    return field(default=None, compare=False, repr=False)


@dataclass
class Node:
    def children(self) -> Iterator[Node]:
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, Node):
                yield value
            elif isinstance(value, list):
                yield from (v for v in value if isinstance(v, Node))

    def walk(self) -> Iterator[Node]:
        yield self
        for child in self.children():
            yield from child.walk()


@dataclass
class OpaqueBlock(Node):
    """Embedded foreign text, preserved byte for byte."""

    raw: str
    style: str  # "brace" | "bracket"
    span: Span | None = _span()


@dataclass
class Completeness(Node):
    text: str  # "(c)" or "(...)"
    span: Span | None = _span()


@dataclass
class StereoValue(Node):
    name: str
    value: str | None = None  # STRING token text including quotes
    span: Span | None = _span()


@dataclass
class Stereotype(Node):
    values: list[StereoValue]
    span: Span | None = _span()


@dataclass
class QualifiedName(Node):
    names: list[str]
    span: Span | None = _span()

    def dotted(self) -> str:
        return ".".join(self.names)


@dataclass
class Cardinality(Node):
    many: bool = False
    lower_bound: str | None = None
    upper_bound: str | None = None
    no_upper_limit: bool = False
    span: Span | None = _span()

    def surface(self) -> str:
        if self.many:
            return "*"
        if self.upper_bound is None and not self.no_upper_limit:
            return str(self.lower_bound)
        return f"{self.lower_bound}..{'*' if self.no_upper_limit else self.upper_bound}"


@dataclass
class Modifier(Node):
    stereotype: Stereotype | None
    keywords: list[str]  # surface text, e.g. "public" or "+"
    span: Span | None = _span()


@dataclass
class TypeArgument(Node):
    type: Type | None = None
    wildcard: bool = False
    upper_bound: ReferenceType | None = None
    lower_bound: ReferenceType | None = None
    span: Span | None = _span()


@dataclass
class TypeArguments(Node):
    type_arguments: list[TypeArgument]
    span: Span | None = _span()


@dataclass
class ClassOrInterfaceType(Node):
    name: QualifiedName
    type_arguments: TypeArguments | None = None
    span: Span | None = _span()


@dataclass
class TypeParameter(Node):
    name: str
    sup_types: list[ClassOrInterfaceType]
    span: Span | None = _span()


@dataclass
class TypeParameters(Node):
    type_parameters: list[TypeParameter]
    span: Span | None = _span()


@dataclass
class VoidType(Node):
    span: Span | None = _span()


@dataclass
class PrimitiveType(Node):
    primitive: str
    dims: int = 0
    span: Span | None = _span()


@dataclass
class ReferenceType(Node):
    type: ClassOrInterfaceType
    dims: int = 0
    span: Span | None = _span()


Type = Union[PrimitiveType, ReferenceType]
ReturnType = Union[VoidType, PrimitiveType, ReferenceType]


@dataclass
class Qualifier(Node):
    type: ClassOrInterfaceType
    span: Span | None = _span()


@dataclass
class Invariant(Node):
    kind: str | None
    expression: OpaqueBlock
    span: Span | None = _span()


@dataclass
class CDParameter(Node):
    type: Type
    name: str
    span: Span | None = _span()


@dataclass
class CDAttribute(Node):
    modifier: Modifier
    type: Type
    name: str
    value: OpaqueBlock | None = None
    span: Span | None = _span()


@dataclass
class CDMethod(Node):
    modifier: Modifier
    type_parameters: TypeParameters | None
    return_type: ReturnType
    name: str
    cd_parameters: list[CDParameter]
    throws: list[QualifiedName]
    body: OpaqueBlock | None = None
    span: Span | None = _span()


@dataclass
class CDConstructor(Node):
    modifier: Modifier
    type_parameters: TypeParameters | None
    name: str
    cd_parameters: list[CDParameter]
    throws: list[QualifiedName]
    body: OpaqueBlock | None = None
    span: Span | None = _span()


@dataclass
class CDEnumParameter(Node):
    value: OpaqueBlock
    span: Span | None = _span()


@dataclass
class CDEnumConstant(Node):
    name: str
    cd_enum_parameters: list[CDEnumParameter] | None = None
    span: Span | None = _span()


@dataclass
class CDClass(Node):
    completeness: Completeness | None
    modifier: Modifier
    name: str
    type_parameters: TypeParameters | None = None
    superclasses: list[ClassOrInterfaceType] = field(default_factory=list)
    interfaces: list[ClassOrInterfaceType] = field(default_factory=list)
    braced: bool = False
    cd_constructors: list[CDConstructor] = field(default_factory=list)
    cd_methods: list[CDMethod] = field(default_factory=list)
    cd_attributes: list[CDAttribute] = field(default_factory=list)
    span: Span | None = _span()


@dataclass
class CDInterface(Node):
    completeness: Completeness | None
    modifier: Modifier
    name: str
    type_parameters: TypeParameters | None = None
    interfaces: list[ClassOrInterfaceType] = field(default_factory=list)
    braced: bool = False
    cd_methods: list[CDMethod] = field(default_factory=list)
    cd_attributes: list[CDAttribute] = field(default_factory=list)
    span: Span | None = _span()


@dataclass
class CDEnum(Node):
    completeness: Completeness | None
    modifier: Modifier
    name: str
    interfaces: list[ClassOrInterfaceType] = field(default_factory=list)
    braced: bool = False
    cd_enum_constants: list[CDEnumConstant] = field(default_factory=list)
    cd_constructors: list[CDConstructor] = field(default_factory=list)
    cd_methods: list[CDMethod] = field(default_factory=list)
    cd_attributes: list[CDAttribute] = field(default_factory=list)
    span: Span | None = _span()


ARROWS = {"->": "lefttoright", "<-": "righttoleft", "<->": "bidirectional", "--": "simple"}


@dataclass
class CDAssociation(Node):
    stereotype: Stereotype | None
    type: str  # association | aggregation | composition
    derived: bool
    name: str | None
    left_stereotype: Stereotype | None
    left_cardinality: Cardinality | None
    left_reference: QualifiedName
    left_qualifier: Qualifier | None
    left_role: str | None
    arrow: str  # lefttoright | righttoleft | bidirectional | simple
    right_role: str | None
    right_qualifier: Qualifier | None
    right_reference: QualifiedName
    right_cardinality: Cardinality | None
    right_stereotype: Stereotype | None
    span: Span | None = _span()


CDElement = Union[CDClass, CDInterface, CDEnum, CDAssociation]


@dataclass
class CDDefinition(Node):
    completeness: Completeness | None
    stereotype: Stereotype | None
    name: str
    cd_elements: list[CDElement] = field(default_factory=list)
    invariants: list[Invariant] = field(default_factory=list)
    span: Span | None = _span()
