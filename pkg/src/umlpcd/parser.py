"""Recursive-descent parser producing the concrete syntax tree.

Errors inside a diagram element or a class member are recorded and the
parser resynchronises at the next ``;`` or closing ``}`` of the enclosing
block, so one run can report several syntax errors.
"""

from __future__ import annotations

from collections import Counter

from . import cst
from .diagnostics import Diagnostic, DiagnosticError, Span, make
from .lexer import LexError, Token, tokenize

PRIMITIVES = ("boolean", "byte", "char", "short", "int", "float", "long", "double")

MODIFIER_KEYWORDS = {
    "public": "public", "+": "public",
    "private": "private", "-": "private",
    "protected": "protected", "#": "protected",
    "final": "final",
    "abstract": "abstract",
    "local": "local",
    "derived": "derived", "/": "derived",
    "readonly": "readonly", "?": "readonly",
    "static": "static",
}

ASSOCIATION_KINDS = ("association", "aggregation", "composition")

PRODUCTIONS = (
    "CDDefinition", "CDClass", "CDInterface", "CDEnum", "CDEnumConstant",
    "CDEnumParameter", "CDMethod", "CDConstructor", "CDParameter", "CDAttribute",
    "CDAssociation", "Stereotype", "StereoValue", "QualifiedName", "Cardinality",
    "Qualifier", "Modifier", "TypeParameters", "TypeParameter", "VoidType",
    "PrimitiveType", "ReferenceType", "ClassOrInterfaceType", "TypeArguments",
    "TypeArgument", "Invariant", "Completeness", "Value", "Body", "InvariantExpression",
)

ALTERNATIVES = (
    ("CDDefinition", "element"), ("CDDefinition", "invariant"),
    ("CDClass", "braced"), ("CDClass", "semicolon"),
    ("CDClass", "constructor"), ("CDClass", "method"), ("CDClass", "attribute"),
    ("CDInterface", "braced"), ("CDInterface", "semicolon"),
    ("CDInterface", "method"), ("CDInterface", "attribute"),
    ("CDEnum", "braced"), ("CDEnum", "semicolon"),
    ("CDEnum", "constructor"), ("CDEnum", "method"), ("CDEnum", "attribute"),
    ("CDMethod", "body"), ("CDMethod", "semicolon"),
    ("CDConstructor", "body"), ("CDConstructor", "semicolon"),
    *(("CDAssociation.Type", k) for k in ASSOCIATION_KINDS),
    *(("CDAssociation.Arrow", a) for a in cst.ARROWS.values()),
    ("Cardinality", "Many"), ("Cardinality", "LowerBound"),
    ("Cardinality", "UpperBound"), ("Cardinality", "NoUpperLimit"),
    *(("Modifier", k) for k in MODIFIER_KEYWORDS),
    *(("PrimitiveType", p) for p in PRIMITIVES),
    ("ReturnType", "VoidType"), ("ReturnType", "PrimitiveType"), ("ReturnType", "ReferenceType"),
    ("Type", "PrimitiveType"), ("Type", "ReferenceType"),
    ("TypeArgument", "Type"), ("TypeArgument", "wildcard"),
    ("TypeArgument", "extends"), ("TypeArgument", "super"),
    ("Completeness", "(c)"), ("Completeness", "(...)"),
)

GRAMMAR_ITEMS = frozenset(PRODUCTIONS) | frozenset(f"{p}:{a}" for p, a in ALTERNATIVES)


class Coverage:
    """Counts how often each production and alternative was used."""

    def __init__(self) -> None:
        self.counts: Counter[str] = Counter()

    def hit(self, item: str) -> None:
        assert item in GRAMMAR_ITEMS, item
        self.counts[item] += 1

    def missing(self) -> set[str]:
        return set(GRAMMAR_ITEMS) - set(self.counts)

    def ratio(self) -> float:
        return 1 - len(self.missing()) / len(GRAMMAR_ITEMS)


class ParseError(DiagnosticError):
    pass


class _Fail(Exception):
    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic


def _token_span(tok: Token) -> Span:
    return Span(tok.line, tok.column, tok.line, tok.column + max(len(tok.text), 1) - 1,
                tok.offset, tok.end_offset)


class _Parser:
    def __init__(self, text: str, tokens: list[Token], coverage: Coverage | None):
        self.text = text
        end_line = text.count("\n") + 1
        end_col = len(text) - text.rfind("\n")
        self.tokens = tokens + [Token("EOF", "", end_line, end_col, len(text))]
        self.pos = 0
        self.coverage = coverage
        self.errors: list[Diagnostic] = []

    # -- token helpers -----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, n: int = 1) -> Token:
        return self.tokens[min(self.pos + n, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.is_(text)

    def hit(self, item: str) -> None:
        if self.coverage is not None:
            self.coverage.hit(item)

    def advance(self) -> Token:
        tok = self.tok
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def fail(self, expected: str, production: str) -> _Fail:
        tok = self.tok
        diag = make("SyntaxError", span=_token_span(tok), expected=expected,
                    production=production, found=str(tok))
        return _Fail(diag)

    def expect(self, text: str, production: str) -> Token:
        if not self.at(text):
            raise self.fail(repr(text), production)
        return self.advance()

    def ident(self, production: str, what: str = "identifier") -> str:
        if self.tok.kind != "IDENT":
            raise self.fail(what, production)
        return self.advance().text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.advance()
            return True
        return False

    def span(self, start: Token) -> Span:
        last = self.tokens[self.pos - 1] if self.pos > 0 else start
        if last.offset < start.offset:
            last = start
        chunk = last.text
        end_line = last.line + chunk.count("\n")
        if "\n" in chunk:
            end_col = len(chunk) - chunk.rfind("\n") - 1
        else:
            end_col = last.column + max(len(chunk), 1) - 1
        return Span(start.line, start.column, end_line, end_col, start.offset, last.end_offset)

    def split_shift(self) -> None:
        """Turn a ``>>`` token into two ``>`` tokens (nested type arguments)."""
        tok = self.tok
        if tok.is_(">>"):
            first = Token("punct", ">", tok.line, tok.column, tok.offset)
            second = Token("punct", ">", tok.line, tok.column + 1, tok.offset + 1)
            self.tokens[self.pos:self.pos + 1] = [first, second]

    # -- recovery ----------------------------------------------------------

    def recover(self, start: int) -> None:
        """Skip to just past the ``;`` or block ``}`` ending the item at ``start``.

        A ``}`` at nesting level zero belongs to the enclosing block and is
        left in place.
        """
        error_pos = max(self.pos, start)
        i = start
        depth = 0
        while True:
            tok = self.tokens[i]
            if tok.kind == "EOF":
                break
            if tok.is_("{"):
                depth += 1
            elif tok.is_("}"):
                if depth == 0:
                    break
                depth -= 1
                if depth == 0 and i >= error_pos:
                    i += 1
                    if self.tokens[i].is_(";"):
                        i += 1
                    break
            elif tok.is_(";") and depth == 0 and i >= error_pos:
                i += 1
                break
            i += 1
        if i == start and not self.tokens[i].is_("}") and self.tokens[i].kind != "EOF":
            i += 1
        self.pos = i

    # -- grammar -----------------------------------------------------------

    def definition(self) -> cst.CDDefinition:
        start = self.tok
        self.hit("CDDefinition")
        completeness = self.completeness()
        stereotype = self.stereotype() if self.at("<<") else None
        self.expect("classdiagram", "CDDefinition")
        name = self.ident("CDDefinition", "diagram name")
        self.expect("{", "CDDefinition")
        node = cst.CDDefinition(completeness, stereotype, name)
        while not self.at("}") and self.tok.kind != "EOF":
            item_start = self.pos
            try:
                if self.at_invariant():
                    self.hit("CDDefinition:invariant")
                    node.invariants.append(self.invariant())
                    self.expect(";", "CDDefinition")
                else:
                    self.hit("CDDefinition:element")
                    node.cd_elements.append(self.element())
            except _Fail as failure:
                self.errors.append(failure.diagnostic)
                self.recover(item_start)
        self.expect("}", "CDDefinition")
        if self.tok.kind != "EOF":
            raise self.fail("end of input", "CDDefinition")
        node.span = self.span(start)
        return node

    def at_invariant(self) -> bool:
        if self.at("["):
            return self.peek().kind == "opaque"
        return self.tok.kind == "IDENT" and self.peek().is_(":")

    def invariant(self) -> cst.Invariant:
        start = self.tok
        self.hit("Invariant")
        kind = None
        if self.tok.kind == "IDENT":
            kind = self.advance().text
            self.expect(":", "Invariant")
        self.expect("[", "Invariant")
        if self.tok.kind != "opaque":
            raise self.fail("invariant expression", "Invariant")
        body = self.advance()
        self.hit("InvariantExpression")
        expression = cst.OpaqueBlock(body.text, "bracket", _token_span(body))
        self.expect("]", "Invariant")
        return cst.Invariant(kind, expression, self.span(start))

    def completeness(self) -> cst.Completeness | None:
        # Only "(c)" and "(...)" are accepted; the grammar leaves the rule open.
        if not self.at("("):
            return None
        start = self.tok
        inner = self.peek()
        if inner.kind == "IDENT" and inner.text == "c":
            text = "(c)"
        elif inner.is_("..."):
            text = "(...)"
        else:
            raise self.fail("'(c)' or '(...)'", "Completeness")
        self.advance()
        self.advance()
        self.expect(")", "Completeness")
        self.hit("Completeness")
        self.hit(f"Completeness:{text}")
        return cst.Completeness(text, self.span(start))

    def element(self) -> cst.CDElement:
        start = self.tok
        completeness = self.completeness()
        stereotype = self.stereotype() if self.at("<<") else None
        if self.tok.kind == "keyword" and self.tok.text in ASSOCIATION_KINDS and completeness is None:
            return self.association(start, stereotype)
        modifier = self.modifier(stereotype)
        if self.at("class"):
            return self.class_(start, completeness, modifier)
        if self.at("interface"):
            return self.interface(start, completeness, modifier)
        if self.at("enum"):
            return self.enum(start, completeness, modifier)
        expected = "'class', 'interface' or 'enum'"
        if not modifier.keywords and completeness is None:
            expected = "'class', 'interface', 'enum' or an association"
        raise self.fail(expected, "CDElement")

    def stereotype(self) -> cst.Stereotype:
        start = self.tok
        self.hit("Stereotype")
        self.expect("<<", "Stereotype")
        values = [self.stereo_value()]
        while self.accept(","):
            values.append(self.stereo_value())
        self.expect(">>", "Stereotype")
        return cst.Stereotype(values, self.span(start))

    def stereo_value(self) -> cst.StereoValue:
        start = self.tok
        self.hit("StereoValue")
        name = self.ident("StereoValue", "stereotype name")
        value = None
        if self.accept("="):
            if self.tok.kind != "STRING":
                raise self.fail("string literal", "StereoValue")
            value = self.advance().text
        return cst.StereoValue(name, value, self.span(start))

    def modifier(self, stereotype: cst.Stereotype | None) -> cst.Modifier:
        self.hit("Modifier")
        begin_pos, begin_tok = self.pos, self.tok
        if stereotype is None and self.at("<<"):
            stereotype = self.stereotype()
        keywords = []
        while self.tok.kind in ("keyword", "punct") and self.tok.text in MODIFIER_KEYWORDS:
            word = self.advance().text
            self.hit(f"Modifier:{word}")
            keywords.append(word)
        span = None
        if stereotype is not None:
            first = stereotype.span
            last = self.span(begin_tok) if self.pos > begin_pos else first
            span = Span(first.line, first.column, last.end_line, last.end_column,
                        first.offset, last.end_offset)
        elif self.pos > begin_pos:
            span = self.span(begin_tok)
        return cst.Modifier(stereotype, keywords, span)

    def type_list(self, production: str) -> list[cst.ClassOrInterfaceType]:
        types = [self.class_or_interface_type(production)]
        while self.accept(","):
            types.append(self.class_or_interface_type(production))
        return types

    def class_(self, start: Token, completeness, modifier) -> cst.CDClass:
        self.hit("CDClass")
        self.expect("class", "CDClass")
        node = cst.CDClass(completeness, modifier, self.ident("CDClass", "class name"))
        if self.at("<"):
            node.type_parameters = self.type_parameters()
        if self.accept("extends"):
            node.superclasses = self.type_list("CDClass")
        if self.accept("implements"):
            node.interfaces = self.type_list("CDClass")
        self.block(node, "CDClass", ("constructor", "method", "attribute"))
        node.span = self.span(start)
        return node

    def interface(self, start: Token, completeness, modifier) -> cst.CDInterface:
        self.hit("CDInterface")
        self.expect("interface", "CDInterface")
        node = cst.CDInterface(completeness, modifier, self.ident("CDInterface", "interface name"))
        if self.at("<"):
            node.type_parameters = self.type_parameters()
        if self.accept("extends"):
            node.interfaces = self.type_list("CDInterface")
        self.block(node, "CDInterface", ("method", "attribute"))
        node.span = self.span(start)
        return node

    def enum(self, start: Token, completeness, modifier) -> cst.CDEnum:
        self.hit("CDEnum")
        self.expect("enum", "CDEnum")
        node = cst.CDEnum(completeness, modifier, self.ident("CDEnum", "enum name"))
        if self.accept("implements"):
            node.interfaces = self.type_list("CDEnum")
        if self.accept(";"):
            self.hit("CDEnum:semicolon")
        else:
            self.expect("{", "CDEnum")
            self.hit("CDEnum:braced")
            node.braced = True
            node.cd_enum_constants.append(self.enum_constant())
            while self.accept(","):
                node.cd_enum_constants.append(self.enum_constant())
            self.expect(";", "CDEnum")
            self.members(node, "CDEnum", ("constructor", "method", "attribute"))
            self.expect("}", "CDEnum")
        node.span = self.span(start)
        return node

    def enum_constant(self) -> cst.CDEnumConstant:
        start = self.tok
        self.hit("CDEnumConstant")
        node = cst.CDEnumConstant(self.ident("CDEnumConstant", "enum constant"))
        if self.accept("("):
            node.cd_enum_parameters = [self.enum_parameter()]
            while self.accept(","):
                node.cd_enum_parameters.append(self.enum_parameter())
            self.expect(")", "CDEnumConstant")
        node.span = self.span(start)
        return node

    def enum_parameter(self) -> cst.CDEnumParameter:
        start = self.tok
        self.hit("CDEnumParameter")
        return cst.CDEnumParameter(self.value("CDEnumParameter"), self.span(start))

    def block(self, node, production: str, kinds: tuple[str, ...]) -> None:
        if self.accept(";"):
            self.hit(f"{production}:semicolon")
            return
        if not self.at("{"):
            expected = "'{' or ';'"
            if production == "CDClass" and not node.superclasses and not node.interfaces:
                expected = "'extends', 'implements', '{' or ';'"
            raise self.fail(expected, production)
        self.advance()
        self.hit(f"{production}:braced")
        node.braced = True
        self.members(node, production, kinds)
        self.expect("}", production)

    def members(self, node, production: str, kinds: tuple[str, ...]) -> None:
        while not self.at("}") and self.tok.kind != "EOF":
            member_start = self.pos
            try:
                member = self.member(production)
                kind = {cst.CDConstructor: "constructor", cst.CDMethod: "method",
                        cst.CDAttribute: "attribute"}[type(member)]
                if kind not in kinds:
                    self.pos = member_start
                    raise self.fail("method or attribute", production)
                self.hit(f"{production}:{kind}")
                getattr(node, f"cd_{kind}s").append(member)
            except _Fail as failure:
                self.errors.append(failure.diagnostic)
                self.recover(member_start)

    def member(self, production: str):
        start = self.tok
        modifier = self.modifier(None)
        type_parameters = self.type_parameters() if self.at("<") else None
        if self.tok.kind == "IDENT" and self.peek().is_("("):
            return self.constructor(start, modifier, type_parameters)
        return_type = self.return_type(production)
        name = self.ident(production, "member name")
        if self.at("("):
            return self.method(start, modifier, type_parameters, return_type, name)
        if type_parameters is not None:
            raise self.fail("'('", "CDMethod")
        if isinstance(return_type, cst.VoidType):
            raise self.fail("'('", "CDMethod")
        self.hit("CDAttribute")
        value = None
        if self.accept("="):
            value = self.value("CDAttribute")
        self.expect(";", "CDAttribute")
        return cst.CDAttribute(modifier, return_type, name, value, self.span(start))

    def parameters(self, production: str) -> list[cst.CDParameter]:
        self.expect("(", production)
        params = []
        if not self.at(")"):
            params.append(self.parameter())
            while self.accept(","):
                params.append(self.parameter())
        self.expect(")", production)
        return params

    def parameter(self) -> cst.CDParameter:
        start = self.tok
        self.hit("CDParameter")
        type_ = self.type_("CDParameter")
        name = self.ident("CDParameter", "parameter name")
        return cst.CDParameter(type_, name, self.span(start))

    def throws_and_body(self, production: str):
        throws = []
        if self.accept("throws"):
            throws.append(self.qualified_name(production))
            while self.accept(","):
                throws.append(self.qualified_name(production))
        if self.tok.kind == "opaque":
            tok = self.advance()
            self.hit("Body")
            self.hit(f"{production}:body")
            return throws, cst.OpaqueBlock(tok.text, "brace", _token_span(tok))
        if self.accept(";"):
            self.hit(f"{production}:semicolon")
            return throws, None
        raise self.fail("method body or ';'", production)

    def method(self, start, modifier, type_parameters, return_type, name) -> cst.CDMethod:
        self.hit("CDMethod")
        params = self.parameters("CDMethod")
        throws, body = self.throws_and_body("CDMethod")
        return cst.CDMethod(modifier, type_parameters, return_type, name, params, throws,
                            body, self.span(start))

    def constructor(self, start, modifier, type_parameters) -> cst.CDConstructor:
        self.hit("CDConstructor")
        name = self.advance().text
        params = self.parameters("CDConstructor")
        throws, body = self.throws_and_body("CDConstructor")
        return cst.CDConstructor(modifier, type_parameters, name, params, throws, body,
                                 self.span(start))

    def value(self, production: str) -> cst.OpaqueBlock:
        # A single literal (optionally signed or dotted) or parenthesised text.
        start = self.tok
        self.hit("Value")
        if self.at("("):
            depth = 0
            while True:
                tok = self.tok
                if tok.kind == "EOF":
                    raise self.fail("')'", production)
                self.advance()
                if tok.is_("("):
                    depth += 1
                elif tok.is_(")"):
                    depth -= 1
                    if depth == 0:
                        break
        else:
            if self.at("-") or self.at("+"):
                self.advance()
            tok = self.tok
            if tok.kind not in ("NUMBER", "STRING", "IDENT", "keyword"):
                raise self.fail("value", production)
            self.advance()
            if tok.kind in ("NUMBER", "IDENT") and self.at("."):
                follow = "NUMBER" if tok.kind == "NUMBER" else "IDENT"
                while self.at(".") and self.peek().kind == follow:
                    self.advance()
                    self.advance()
        end = self.tokens[self.pos - 1]
        raw = self.text[start.offset:end.end_offset]
        return cst.OpaqueBlock(raw, "bracket", self.span(start))

    # -- types -------------------------------------------------------------

    def dims(self) -> int:
        n = 0
        while self.at("[") and self.peek().is_("]"):
            self.advance()
            self.advance()
            n += 1
        return n

    def return_type(self, production: str):
        start = self.tok
        if self.at("void"):
            self.advance()
            self.hit("VoidType")
            self.hit("ReturnType:VoidType")
            return cst.VoidType(self.span(start))
        type_ = self.type_(production, context="ReturnType")
        return type_

    def type_(self, production: str, context: str = "Type"):
        start = self.tok
        if self.tok.kind == "keyword" and self.tok.text in PRIMITIVES:
            word = self.advance().text
            self.hit("PrimitiveType")
            self.hit(f"PrimitiveType:{word}")
            self.hit(f"{context}:PrimitiveType")
            return cst.PrimitiveType(word, self.dims(), self.span(start))
        if self.tok.kind == "IDENT":
            ref = self.class_or_interface_type(production)
            self.hit("ReferenceType")
            self.hit(f"{context}:ReferenceType")
            return cst.ReferenceType(ref, self.dims(), self.span(start))
        raise self.fail("type", production)

    def reference_type(self, production: str) -> cst.ReferenceType:
        start = self.tok
        ref = self.class_or_interface_type(production)
        self.hit("ReferenceType")
        return cst.ReferenceType(ref, self.dims(), self.span(start))

    def qualified_name(self, production: str) -> cst.QualifiedName:
        start = self.tok
        self.hit("QualifiedName")
        names = [self.ident(production, "name")]
        while self.at(".") and self.peek().kind == "IDENT":
            self.advance()
            names.append(self.advance().text)
        return cst.QualifiedName(names, self.span(start))

    def class_or_interface_type(self, production: str) -> cst.ClassOrInterfaceType:
        start = self.tok
        if self.tok.kind != "IDENT":
            raise self.fail("ClassOrInterfaceType", production)
        self.hit("ClassOrInterfaceType")
        name = self.qualified_name(production)
        args = self.type_arguments() if self.at("<") else None
        return cst.ClassOrInterfaceType(name, args, self.span(start))

    def close_angle(self, production: str) -> None:
        self.split_shift()
        self.expect(">", production)

    def type_arguments(self) -> cst.TypeArguments:
        start = self.tok
        self.hit("TypeArguments")
        self.expect("<", "TypeArguments")
        args = [self.type_argument()]
        while self.accept(","):
            args.append(self.type_argument())
        self.close_angle("TypeArguments")
        return cst.TypeArguments(args, self.span(start))

    def type_argument(self) -> cst.TypeArgument:
        start = self.tok
        self.hit("TypeArgument")
        if self.accept("?"):
            node = cst.TypeArgument(wildcard=True)
            if self.accept("extends"):
                self.hit("TypeArgument:extends")
                node.upper_bound = self.reference_type("TypeArgument")
            elif self.accept("super"):
                self.hit("TypeArgument:super")
                node.lower_bound = self.reference_type("TypeArgument")
            else:
                self.hit("TypeArgument:wildcard")
        else:
            self.hit("TypeArgument:Type")
            node = cst.TypeArgument(type=self.type_("TypeArgument"))
        node.span = self.span(start)
        return node

    def type_parameters(self) -> cst.TypeParameters:
        start = self.tok
        self.hit("TypeParameters")
        self.expect("<", "TypeParameters")
        params = [self.type_parameter()]
        while self.accept(","):
            params.append(self.type_parameter())
        self.close_angle("TypeParameters")
        return cst.TypeParameters(params, self.span(start))

    def type_parameter(self) -> cst.TypeParameter:
        start = self.tok
        self.hit("TypeParameter")
        name = self.ident("TypeParameter", "type parameter name")
        sups = []
        if self.accept("extends"):
            sups.append(self.class_or_interface_type("TypeParameter"))
            while self.accept("&"):
                sups.append(self.class_or_interface_type("TypeParameter"))
        return cst.TypeParameter(name, sups, self.span(start))

    # -- associations ------------------------------------------------------

    def cardinality(self) -> cst.Cardinality:
        start = self.tok
        self.hit("Cardinality")
        self.expect("[", "Cardinality")
        node = cst.Cardinality()
        if self.accept("*"):
            self.hit("Cardinality:Many")
            node.many = True
        elif self.tok.kind == "NUMBER":
            node.lower_bound = self.advance().text
            if self.accept(".."):
                if self.accept("*"):
                    self.hit("Cardinality:NoUpperLimit")
                    node.no_upper_limit = True
                elif self.tok.kind == "NUMBER":
                    self.hit("Cardinality:UpperBound")
                    node.upper_bound = self.advance().text
                else:
                    raise self.fail("upper bound", "Cardinality")
            else:
                self.hit("Cardinality:LowerBound")
        else:
            raise self.fail("'*' or number", "Cardinality")
        self.expect("]", "Cardinality")
        node.span = self.span(start)
        return node

    def qualifier(self) -> cst.Qualifier:
        start = self.tok
        self.hit("Qualifier")
        self.expect("[", "Qualifier")
        type_ = self.class_or_interface_type("Qualifier")
        self.expect("]", "Qualifier")
        return cst.Qualifier(type_, self.span(start))

    def at_cardinality(self) -> bool:
        return self.at("[") and (self.peek().kind == "NUMBER" or self.peek().is_("*"))

    def role(self) -> str | None:
        if self.at("(") and self.peek().kind == "IDENT" and self.peek(2).is_(")"):
            self.advance()
            name = self.advance().text
            self.advance()
            return name
        return None

    def association(self, start: Token, stereotype) -> cst.CDAssociation:
        self.hit("CDAssociation")
        kind = self.advance().text
        self.hit(f"CDAssociation.Type:{kind}")
        derived = self.accept("/")
        name = None
        if self.tok.kind == "IDENT":
            nxt = self.peek()
            if nxt.kind == "IDENT" or nxt.is_("<<") or (
                nxt.is_("[") and (self.peek(2).kind == "NUMBER" or self.peek(2).is_("*"))
            ):
                name = self.advance().text
        left_stereo = self.stereotype() if self.at("<<") else None
        left_card = self.cardinality() if self.at_cardinality() else None
        left_ref = self.qualified_name("CDAssociation")
        left_qual = self.qualifier() if self.at("[") else None
        left_role = self.role()
        arrow_tok = self.tok
        if not (arrow_tok.kind == "punct" and arrow_tok.text in cst.ARROWS):
            raise self.fail("'->', '<-', '<->' or '--'", "CDAssociation")
        self.advance()
        arrow = cst.ARROWS[arrow_tok.text]
        self.hit(f"CDAssociation.Arrow:{arrow}")
        right_role = self.role()
        right_qual = self.qualifier() if self.at("[") else None
        right_ref = self.qualified_name("CDAssociation")
        right_card = self.cardinality() if self.at("[") else None
        right_stereo = self.stereotype() if self.at("<<") else None
        self.expect(";", "CDAssociation")
        return cst.CDAssociation(
            stereotype, kind, derived, name, left_stereo, left_card, left_ref, left_qual,
            left_role, arrow, right_role, right_qual, right_ref, right_card, right_stereo,
            self.span(start),
        )


def parse_cd(text: str, coverage: Coverage | None = None) -> cst.CDDefinition:
    """Parse one class diagram.

    Raises :class:`ParseError` carrying every syntax diagnostic found.
    """
    try:
        tokens = tokenize(text)
    except LexError as err:
        span = Span(err.line, err.column, err.line, err.column)
        diag = Diagnostic("LexError", "error", err.message, (), span)
        raise ParseError([diag]) from None
    parser = _Parser(text, tokens, coverage)
    try:
        tree = parser.definition()
    except _Fail as failure:
        parser.errors.append(failure.diagnostic)
        tree = None
    if parser.errors:
        raise ParseError(parser.errors)
    return tree
