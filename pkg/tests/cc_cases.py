"""One minimal passing and one minimal violating diagram body per clause.

Each entry maps a clause code to (passing body, violating body, codes the
violating body must produce). Notes produced alongside an error are listed
explicitly.
"""

CC_CASES = {
    "CC-1a": ("abstract class A;", "static class A;", {"CC-1a"}),
    "CC-1b": ("class A; class B; composition [1] A -> B [*];",
              "class A; class B; <<ordered>> association A -> B;", {"CC-1b"}),
    "CC-1c": ("class A; class B; association <<ordered>> A -> B <<frozen>>;",
              "class A; class B; association <<derived>> A -> B;", {"CC-1c"}),
    "CC-1d": ("class A { public A(); }", "class A { static A(); }", {"CC-1d"}),
    "CC-1e": ("class A { public static int m(); }", "class A { final void m(); }", {"CC-1e"}),
    "CC-1f": ("class A { public static final int x; }", "class A { abstract int x; }", {"CC-1f"}),
    "CC-2": ("class A; interface I;", "class A; interface A;", {"CC-2"}),
    "CC-3a": ("class A; class B extends A;", "final class A; class B extends A;", {"CC-3a"}),
    "CC-3b": ("interface I; class A implements I;", "class A implements I;", {"CC-3b"}),
    "CC-3c": ("class A { A(int x); }", "class A { B(); }", {"CC-3c"}),
    "CC-3d": ("class A { int x; int y; }", "class A { int x; String x; }", {"CC-3d"}),
    "CC-3e": ("class A { public int x; }", "class A { public private int x; }", {"CC-3e"}),
    "CC-3f.i": ("class A { public void m(); }", "class A { public protected void m(); }",
                {"CC-3f.i", "CC-3f.vii"}),
    "CC-3f.ii": ("class E; class A { void m() throws E; }", "class A { void m() throws E; }",
                 {"CC-3f.ii"}),
    "CC-3f.iii": ("class B; class A { B m(); }", "class A { B m(); }", {"CC-3f.iii"}),
    "CC-3f.iv": ("abstract class A { abstract void m(); }", "class A { abstract void m(); }",
                 {"CC-3f.iv"}),
    "CC-3f.v": ("class A { void m(int a, String b); }", "class A { void m(int a, int a); }",
                {"CC-3f.v"}),
    "CC-3f.vi": ("class A { void m(int a); void m(String a); }",
                 "class A { void m(int a); int m(int b); }", {"CC-3f.vi"}),
    "CC-3f.vii": ("class A { public void m(); }", "class A { private void m(); }", {"CC-3f.vii"}),
    "CC-3g.i": ("interface I { void m(); } class A implements I { void m(); }",
                "interface I { void m(); } class A implements I;", {"CC-3g.i"}),
    "CC-3g.ii": ("class A { public void m(); } class B extends A { public void m(); }",
                 "class A { public void m(); } class B extends A { private void m(); }",
                 {"CC-3g.ii", "CC-3f.vii"}),
    "CC-4": ("class A; class B extends A;", "class A extends B; class B extends A;", {"CC-4"}),
    "CC-5a": ("class A; class B; association A -> B;",
              "class A; interface I; association A -> I;", {"CC-5a"}),
    "CC-5b": ("class A; class B { int k; } association A [k] -> B;",
              "class A; class B; association A [k] -> B;", {"CC-5b"}),
    "CC-5c": ("class A { int k; } class B; association A -> [k] B;",
              "class A; class B; association A -> [k] B;", {"CC-5c"}),
    "CC-6": ("class A; class B; composition [1] A -> B [*];",
             "class A; class B; composition [*] A -> B;", {"CC-6"}),
    "CC-7a": ("interface I; interface J extends I;", "interface J extends I;", {"CC-7a"}),
    "CC-7b": ("interface I { int x; int y; }", "interface I { int x; String x; }", {"CC-7b"}),
    "CC-7c": ("interface I { void m(); }", "interface I { void m() { } }", {"CC-7c"}),
    "CC-7d": ("interface I { void m(int a); void m(String a); }",
              "interface I { void m(int a); int m(int b); }", {"CC-7d"}),
}
