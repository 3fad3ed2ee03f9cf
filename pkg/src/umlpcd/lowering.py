"""Lowering from the concrete syntax tree to the abstract syntax.

The transformation drops completeness markers, splits the element list into
classes, interfaces and associations, renames ``readonly`` to ``frozen``,
flattens qualified names with ``.``, and rejects what the abstract syntax
cannot express (enums, generics, arrays, initial values, ``local``, other
cardinalities). A stereotype naming a modifier becomes that modifier; any
other stereotype only produces a warning.
"""

from __future__ import annotations

from . import abstract as ab
from . import cst
from .diagnostics import Diagnostic, DiagnosticError, make
from .minicond import CondSyntaxError, parse_cond
from .parser import MODIFIER_KEYWORDS

DIRECTION_OF = {"lefttoright": "→", "righttoleft": "←", "bidirectional": "↔", "simple": "−"}
CARD_OF = {"0..1": "0..1", "1": "1", "*": "*", "0..*": "*"}


class LoweringError(DiagnosticError):
    pass


class _Lowering:
    def __init__(self, tree: cst.CDDefinition):
        self.tree = tree
        self.diagnostics: list[Diagnostic] = []
        self.interfaces = {e.name for e in tree.cd_elements if isinstance(e, cst.CDInterface)}
        self.classes = {e.name for e in tree.cd_elements if isinstance(e, cst.CDClass)}

    def unsupported(self, construct: str, reason: str, subject, span, severity=None) -> None:
        self.diagnostics.append(make("UnsupportedConstruct", subject, span, severity,
                                     construct=construct, reason=reason))

    def stereotype(self, st: cst.Stereotype | None, subject) -> frozenset[str]:
        """Modifiers named by ``st``; any other stereotype is reported and ignored."""
        if st is None:
            return frozenset()
        out = set()
        for v in st.values:
            if v.value is None and (v.name in ab.MODIFIERS or v.name == "readonly"):
                out.add("frozen" if v.name == "readonly" else v.name)
            else:
                self.diagnostics.append(make("UnsupportedStereotype", subject, v.span, name=v.name))
        return frozenset(out)

    def modifiers(self, mod: cst.Modifier, subject) -> frozenset[str]:
        out = set(self.stereotype(mod.stereotype, subject))
        for word in mod.keywords:
            meaning = MODIFIER_KEYWORDS[word]
            if meaning == "local":
                self.unsupported("modifier local", "it only restricts references from other diagrams",
                                 subject, mod.span)
                continue
            out.add("frozen" if meaning == "readonly" else meaning)
        return frozenset(out)

    def type_name(self, t: cst.ClassOrInterfaceType, subject) -> str:
        if t.type_arguments is not None:
            self.unsupported("type argument", "generic types are not supported", subject, t.type_arguments.span)
        return t.name.dotted()

    def resolve(self, name: str) -> ab.TypeRef:
        if name in ab.BASIC_TYPES:
            return ab.TypeRef("basic", name)
        if name in self.interfaces:
            return ab.TypeRef("interfaceRef", name)
        return ab.TypeRef("classRef", name)

    def type_(self, t, subject) -> ab.TypeRef:
        if isinstance(t, cst.VoidType):
            return ab.VOID
        if t.dims:
            self.unsupported("array type", "the type domain has no arrays", subject, t.span)
        if isinstance(t, cst.PrimitiveType):
            return ab.TypeRef("basic", t.primitive)
        return self.resolve(self.type_name(t.type, subject))

    def type_parameters(self, tp: cst.TypeParameters | None, subject) -> None:
        if tp is not None:
            self.unsupported("type parameter", "generic types are not supported", subject, tp.span)

    def params(self, params: list[cst.CDParameter], subject) -> tuple[ab.FormalParam, ...]:
        return tuple(ab.FormalParam(p.name, self.type_(p.type, subject + (p.name,))) for p in params)

    def method(self, m: cst.CDMethod, owner) -> ab.MethodDef:
        subject = owner + (m.name,)
        self.type_parameters(m.type_parameters, subject)
        return ab.MethodDef(
            self.modifiers(m.modifier, subject), m.name, self.type_(m.return_type, subject),
            self.params(m.cd_parameters, subject), frozenset(q.dotted() for q in m.throws),
            m.body.raw if m.body else None, m.span,
        )

    def constructor(self, k: cst.CDConstructor, owner) -> ab.ConstructorDef:
        subject = owner + (k.name,)
        self.type_parameters(k.type_parameters, subject)
        return ab.ConstructorDef(
            self.modifiers(k.modifier, subject), k.name, self.params(k.cd_parameters, subject),
            frozenset(q.dotted() for q in k.throws), k.body.raw if k.body else None, k.span,
        )

    def attribute(self, a: cst.CDAttribute, owner) -> ab.AttrDef:
        subject = owner + (a.name,)
        if a.value is not None:
            self.unsupported("initial value", "attributes cannot have initial values", subject, a.value.span)
        return ab.AttrDef(self.modifiers(a.modifier, subject), a.name, self.type_(a.type, subject), a.span)

    def class_(self, c: cst.CDClass) -> ab.ClassDef:
        subject = (self.tree.name, c.name)
        self.type_parameters(c.type_parameters, subject)
        return ab.ClassDef(
            self.modifiers(c.modifier, subject), c.name,
            frozenset(self.type_name(t, subject) for t in c.superclasses),
            frozenset(self.type_name(t, subject) for t in c.interfaces),
            frozenset(self.constructor(k, subject) for k in c.cd_constructors),
            frozenset(self.method(m, subject) for m in c.cd_methods),
            frozenset(self.attribute(a, subject) for a in c.cd_attributes),
            c.span,
        )

    def interface(self, i: cst.CDInterface) -> ab.InterfaceDef:
        subject = (self.tree.name, i.name)
        self.type_parameters(i.type_parameters, subject)
        dropped = set(self.stereotype(i.modifier.stereotype, subject))
        dropped.update(MODIFIER_KEYWORDS[w] for w in i.modifier.keywords)
        for word in sorted(dropped):
            self.unsupported(f"modifier {word} on an interface",
                             "interfaces carry no modifiers and it is dropped",
                             subject, i.modifier.span, severity="warning")
        return ab.InterfaceDef(
            i.name,
            frozenset(self.type_name(t, subject) for t in i.interfaces),
            frozenset(self.method(m, subject) for m in i.cd_methods),
            frozenset(self.attribute(a, subject) for a in i.cd_attributes),
            i.span,
        )

    def cardinality(self, c: cst.Cardinality | None, subject) -> str | None:
        if c is None:
            return None
        card = CARD_OF.get(c.surface())
        if card is None:
            self.unsupported(f"cardinality [{c.surface()}]", "only [0..1], [1] and [*] are allowed",
                             subject, c.span)
        return card

    def qualifier(self, q: cst.Qualifier | None, subject) -> ab.Qualifier | None:
        if q is None:
            return None
        name = self.type_name(q.type, subject)
        if name in ab.BASIC_TYPES or name in self.classes or name in self.interfaces:
            return ab.QualifierByType(self.resolve(name))
        return ab.QualifierByAttr(name)

    def end(self, a: cst.CDAssociation, side: str, subject) -> ab.AssocEnd:
        mods = self.stereotype(getattr(a, f"{side}_stereotype"), subject)
        ref = getattr(a, f"{side}_reference")
        return ab.AssocEnd(
            mods, ref.dotted(), getattr(a, f"{side}_role"),
            self.cardinality(getattr(a, f"{side}_cardinality"), subject),
            self.qualifier(getattr(a, f"{side}_qualifier"), subject),
        )

    def association(self, a: cst.CDAssociation) -> ab.AssocDef:
        label = a.name or f"{a.left_reference.dotted()}{DIRECTION_OF[a.arrow]}{a.right_reference.dotted()}"
        subject = (self.tree.name, label)
        mods = set(self.stereotype(a.stereotype, subject))
        if a.type == "composition":
            mods.add("composition")
        if a.derived:
            mods.add("derived")
        return ab.AssocDef(
            frozenset(mods), a.name,
            self.end(a, "left", subject + ("left",)), DIRECTION_OF[a.arrow],
            self.end(a, "right", subject + ("right",)), a.span,
        )

    def invariant(self, inv: cst.Invariant) -> ab.Invariant | None:
        raw = inv.expression.raw
        try:
            cond = parse_cond(raw)
        except CondSyntaxError as err:
            self.diagnostics.append(make("InvariantSyntax", (self.tree.name, "inv"),
                                         inv.expression.span or inv.span, message=str(err)))
            return None
        return ab.Invariant(cond, raw.strip(), inv.span)

    def run(self) -> ab.ClassDiagram:
        tree = self.tree
        for v in tree.stereotype.values if tree.stereotype else ():
            self.diagnostics.append(make("UnsupportedStereotype", (tree.name,), v.span, name=v.name))
        classes, interfaces, assocs = set(), set(), set()
        for e in tree.cd_elements:
            if isinstance(e, cst.CDClass):
                classes.add(self.class_(e))
            elif isinstance(e, cst.CDInterface):
                interfaces.add(self.interface(e))
            elif isinstance(e, cst.CDEnum):
                self.unsupported(f"enum {e.name}", "enumeration types are not supported",
                                 (tree.name, e.name), e.span)
            else:
                assocs.add(self.association(e))
        invs = {inv for inv in map(self.invariant, tree.invariants) if inv is not None}
        return ab.ClassDiagram(tree.name, frozenset(classes), frozenset(interfaces),
                               frozenset(assocs), frozenset(invs))


def to_abstract(tree: cst.CDDefinition) -> ab.ClassDiagram:
    """Lower a parsed diagram.

    Raises :class:`LoweringError` with every rejected construct. Warnings of
    a successful lowering are kept in ``ClassDiagram.notes``.
    """
    lowering = _Lowering(tree)
    cd = lowering.run()
    found = sorted(lowering.diagnostics, key=lambda d: (d.span.offset if d.span else -1))
    if any(d.is_error for d in found):
        raise LoweringError(found)
    return ab.ClassDiagram(cd.diagram_name, cd.classes, cd.interfaces, cd.assocs, cd.invs, tuple(found))
