"""Canonical textual layout for concrete syntax trees."""

from __future__ import annotations

from . import cst

INDENT = "  "
ARROW_TEXT = {v: k for k, v in cst.ARROWS.items()}


def pretty_print(tree: cst.CDDefinition) -> str:
    lines = []
    head = _join(
        tree.completeness.text if tree.completeness else "",
        _stereotype(tree.stereotype),
        f"classdiagram {tree.name} {{",
    )
    lines.append(head)
    for element in tree.cd_elements:
        lines.extend(INDENT + line for line in _element(element))
    for inv in tree.invariants:
        prefix = f"{inv.kind}: " if inv.kind else ""
        lines.append(f"{INDENT}{prefix}[{inv.expression.raw}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _join(*parts: str) -> str:
    return " ".join(p for p in parts if p)


def _stereotype(st: cst.Stereotype | None) -> str:
    if st is None:
        return ""
    values = [v.name if v.value is None else f"{v.name}={v.value}" for v in st.values]
    return "<<" + ", ".join(values) + ">>"


def _modifier(mod: cst.Modifier) -> str:
    return _join(_stereotype(mod.stereotype), *mod.keywords)


def _qname(q: cst.QualifiedName) -> str:
    return q.dotted()


def _class_type(t: cst.ClassOrInterfaceType) -> str:
    text = _qname(t.name)
    if t.type_arguments is not None:
        text += "<" + ", ".join(_type_argument(a) for a in t.type_arguments.type_arguments) + ">"
    return text


def _type_argument(a: cst.TypeArgument) -> str:
    if not a.wildcard:
        return _type(a.type)
    if a.upper_bound is not None:
        return "? extends " + _type(a.upper_bound)
    if a.lower_bound is not None:
        return "? super " + _type(a.lower_bound)
    return "?"


def _type(t) -> str:
    if isinstance(t, cst.VoidType):
        return "void"
    if isinstance(t, cst.PrimitiveType):
        return t.primitive + "[]" * t.dims
    return _class_type(t.type) + "[]" * t.dims


def _type_parameters(tp: cst.TypeParameters | None) -> str:
    if tp is None:
        return ""
    parts = []
    for p in tp.type_parameters:
        if p.sup_types:
            parts.append(p.name + " extends " + " & ".join(_class_type(s) for s in p.sup_types))
        else:
            parts.append(p.name)
    return "<" + ", ".join(parts) + ">"


def _params(params: list[cst.CDParameter]) -> str:
    return "(" + ", ".join(f"{_type(p.type)} {p.name}" for p in params) + ")"


def _tail(throws: list[cst.QualifiedName], body: cst.OpaqueBlock | None) -> str:
    text = ""
    if throws:
        text += " throws " + ", ".join(_qname(q) for q in throws)
    return text + (" " + body.raw if body is not None else ";")


def _constructor(k: cst.CDConstructor) -> str:
    head = _join(_modifier(k.modifier), _type_parameters(k.type_parameters), k.name)
    return head + _params(k.cd_parameters) + _tail(k.throws, k.body)


def _method(m: cst.CDMethod) -> str:
    head = _join(_modifier(m.modifier), _type_parameters(m.type_parameters),
                 _type(m.return_type), m.name)
    return head + _params(m.cd_parameters) + _tail(m.throws, m.body)


def _attribute(a: cst.CDAttribute) -> str:
    text = _join(_modifier(a.modifier), _type(a.type), a.name)
    if a.value is not None:
        text += " = " + a.value.raw
    return text + ";"


def _members(node) -> list[str]:
    out = []
    out.extend(_constructor(k) for k in getattr(node, "cd_constructors", []))
    out.extend(_method(m) for m in node.cd_methods)
    out.extend(_attribute(a) for a in node.cd_attributes)
    return out


def _block(head: str, node, prefix: list[str] | None = None) -> list[str]:
    if not node.braced:
        return [head + ";"]
    body = (prefix or []) + _members(node)
    return [head + " {", *(INDENT + line for line in body), "}"]


def _supers(keyword: str, types: list[cst.ClassOrInterfaceType]) -> str:
    if not types:
        return ""
    return f"{keyword} " + ", ".join(_class_type(t) for t in types)


def _element(e) -> list[str]:
    completeness = getattr(e, "completeness", None)
    comp = completeness.text if completeness else ""
    if isinstance(e, cst.CDClass):
        head = _join(comp, _modifier(e.modifier), "class", e.name + _type_parameters(e.type_parameters),
                     _supers("extends", e.superclasses), _supers("implements", e.interfaces))
        return _block(head, e)
    if isinstance(e, cst.CDInterface):
        head = _join(comp, _modifier(e.modifier),
                     "interface", e.name + _type_parameters(e.type_parameters),
                     _supers("extends", e.interfaces))
        return _block(head, e)
    if isinstance(e, cst.CDEnum):
        head = _join(comp, _modifier(e.modifier), "enum", e.name, _supers("implements", e.interfaces))
        constants = []
        for c in e.cd_enum_constants:
            if c.cd_enum_parameters is None:
                constants.append(c.name)
            else:
                constants.append(c.name + "(" + ", ".join(p.value.raw for p in c.cd_enum_parameters) + ")")
        return _block(head, e, [", ".join(constants) + ";"])
    return [_association(e)]


def _cardinality(c: cst.Cardinality | None) -> str:
    return "" if c is None else f"[{c.surface()}]"


def _association(a: cst.CDAssociation) -> str:
    return _join(
        _stereotype(a.stereotype),
        a.type,
        "/" if a.derived else "",
        a.name or "",
        _stereotype(a.left_stereotype),
        _cardinality(a.left_cardinality),
        _qname(a.left_reference),
        f"[{_class_type(a.left_qualifier.type)}]" if a.left_qualifier else "",
        f"({a.left_role})" if a.left_role else "",
        ARROW_TEXT[a.arrow],
        f"({a.right_role})" if a.right_role else "",
        f"[{_class_type(a.right_qualifier.type)}]" if a.right_qualifier else "",
        _qname(a.right_reference),
        _cardinality(a.right_cardinality),
        _stereotype(a.right_stereotype),
    ) + ";"
