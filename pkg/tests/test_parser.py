import pytest

from umlpcd import cst
from umlpcd.lexer import tokenize
from umlpcd.parser import GRAMMAR_ITEMS, Coverage, ParseError, parse_cd
from umlpcd.printer import pretty_print


def parse_error(text):
    with pytest.raises(ParseError) as info:
        parse_cd(text)
    return info.value.diagnostics


def test_minimal_diagram():
    tree = parse_cd("classdiagram D { }")
    assert tree.name == "D"
    assert tree.cd_elements == [] and tree.invariants == []
    assert pretty_print(tree) == "classdiagram D {\n}\n"


def test_class_members():
    tree = parse_cd("""classdiagram D {
      class A extends B implements I, J {
        int x;
        A(int x);
        void m(String s) throws E { body(); }
      }
    }""")
    (a,) = tree.cd_elements
    assert isinstance(a, cst.CDClass)
    assert [t.name.dotted() for t in a.superclasses] == ["B"]
    assert [t.name.dotted() for t in a.interfaces] == ["I", "J"]
    assert [x.name for x in a.cd_attributes] == ["x"]
    assert a.cd_constructors[0].name == "A"
    m = a.cd_methods[0]
    assert m.name == "m" and m.throws[0].dotted() == "E"
    assert m.body.raw == "{ body(); }"


def test_association_surface_order():
    tree = parse_cd("classdiagram D { class A; class B; "
                    "composition /R <<ls>> [1] A [String] (a) <-> (b) [x] B [*] <<rs>>; }")
    a = tree.cd_elements[2]
    assert a.type == "composition" and a.derived and a.name == "R"
    assert a.left_cardinality.surface() == "1" and a.right_cardinality.surface() == "*"
    assert a.left_role == "a" and a.right_role == "b"
    assert a.left_qualifier.type.name.dotted() == "String"
    assert a.right_qualifier.type.name.dotted() == "x"
    assert a.arrow == "bidirectional"
    assert a.left_stereotype.values[0].name == "ls"
    assert a.right_stereotype.values[0].name == "rs"


def test_keywords_are_names_inside_stereotypes():
    tree = parse_cd("classdiagram D { <<abstract, final>> class A; }")
    names = [v.name for v in tree.cd_elements[0].modifier.stereotype.values]
    assert names == ["abstract", "final"]


def test_syntax_error_position_and_format():
    (d,) = parse_error("classdiagram D {\n  class A\n  int x;\n}\n")
    assert d.code == "SyntaxError" and d.severity == "error"
    assert (d.span.line, d.span.column) == (3, 3)
    assert d.format("f.cd").startswith("f.cd:3:3: error SyntaxError: ")


def test_recovery_reports_each_broken_element():
    found = parse_error("classdiagram D {\n class A { int ; }\n class B;\n association A -> ;\n class C x;\n}")
    assert len(found) == 3
    assert [d.span.line for d in found] == [2, 4, 5]


def test_lexer_error():
    found = parse_error("classdiagram D { class A { int x @ ; } }")
    assert found[0].code == "LexError"


def test_unterminated_body():
    found = parse_error("classdiagram D { class A { void m() { ; } }")
    assert found and found[0].is_error


def test_trailing_input_rejected():
    found = parse_error("classdiagram D { } class X;")
    assert "end of input" in found[0].message


def test_opaque_tokens_balance_braces_and_strings():
    tree = parse_cd('classdiagram D { class A { void m() { if (x) { s = "}"; } } int y; } }')
    a = tree.cd_elements[0]
    assert [x.name for x in a.cd_attributes] == ["y"]


def test_invariant_tokens():
    tree = parse_cd("classdiagram D { class A; [forall a in extent(A): a.x[0] = 1]; ocl: [true]; }")
    assert [i.kind for i in tree.invariants] == [None, "ocl"]
    assert tree.invariants[0].expression.raw == "forall a in extent(A): a.x[0] = 1"


def test_nested_generics_split_shift():
    tree = parse_cd("classdiagram D { class A { Map<String, List<int>> m; List<List<List<A>>> n; } }")
    assert len(tree.cd_elements[0].cd_attributes) == 2


def test_tokens_carry_positions():
    toks = tokenize("classdiagram\n  D")
    assert (toks[1].line, toks[1].column) == (2, 3)


def test_coverage_counter_rejects_unknown_items():
    cov = Coverage()
    with pytest.raises(AssertionError):
        cov.hit("NoSuchProduction")
    assert cov.ratio() == 0
    parse_cd("classdiagram D { }", cov)
    assert "CDDefinition" in cov.counts
    assert cov.missing() < GRAMMAR_ITEMS


ROUND_TRIP = """<<s>> classdiagram D {
  <<entity>> public abstract class A<T extends B & C> extends B implements C {
    - static int x;
    A(int x) throws E;
    <U> List<? extends U> f(Map<String, U[]> m) { return null; }
  }
  (c) interface C extends I;
  enum K { X(1), Y; int v; }
  association /R [1] A [String] (a) -> (b) B [*] <<ordered>>;
  [true];
}
"""


def test_round_trip_is_stable():
    once = pretty_print(parse_cd(ROUND_TRIP))
    twice = pretty_print(parse_cd(once))
    assert once == twice
