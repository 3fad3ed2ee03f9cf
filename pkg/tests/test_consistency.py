import itertools
import time

import pytest

from umlpcd.consistency import (
    Bounds, BoundsTooLarge, _encode, _relabellings, bounded_consistency, enumerate_models, estimate,
    universe,
)
from umlpcd.semantics import IllFormedDiagram, check_conformance

from helpers import diagram

FALSE_INV = "class A { int x; } class B { int y; } association R A -> B; [false];"


def test_one_plain_class_has_two_canonical_models():
    models = list(enumerate_models([diagram("class A;")], Bounds(1, 1)))
    assert [sorted(m.states[0].ds.live) for m in models] == [[], ["A#0"]]


def test_zero_bounds_yield_only_the_empty_model():
    models = list(enumerate_models([diagram("class A { int x; }")], Bounds(0, 0, {}, 0)))
    assert len(models) == 1
    assert models[0].states == () and models[0].oids == {}


def test_empty_diagram_starts_with_the_empty_model():
    first = next(enumerate_models([diagram("")], Bounds(2, 2)))
    assert all(not s.ds.live for s in first.states)


def test_plain_class_is_consistent_and_witness_conforms():
    cd = diagram("class A;")
    result = bounded_consistency([cd], Bounds())
    assert result.consistent
    assert check_conformance([cd], result.witness).aggregate
    assert result.witness.reachable


def test_false_invariant_is_inconsistent_in_time():
    start = time.perf_counter()
    result = bounded_consistency([diagram(FALSE_INV)], Bounds(2, 2, {"int": 3}))
    assert time.perf_counter() - start < 10
    assert not result.consistent and result.witness is None
    assert result.verdict_text().startswith("inconsistent up to bounds (oids/class=2, states=2")


@pytest.mark.parametrize("b", [Bounds(0, 1), Bounds(1, 1), Bounds(2, 1), Bounds(1, 2, {"int": 1})])
def test_false_invariant_inconsistent_at_every_bound(b):
    assert not bounded_consistency([diagram(FALSE_INV)], b).consistent


def test_abstract_class_with_required_instance_is_inconsistent():
    cd = diagram("abstract class A; [exists a in extent(A): true];")
    assert not bounded_consistency([cd], Bounds(2, 2)).consistent
    concrete = diagram("abstract class A; class B extends A; [exists a in extent(A): true];")
    result = bounded_consistency([concrete], Bounds(1, 1))
    assert result.consistent and check_conformance([concrete], result.witness).aggregate


def test_empty_trace_only_when_allowed():
    cd = diagram(FALSE_INV)
    result = bounded_consistency([cd], Bounds(1, 1), allow_empty_trace=True)
    assert result.consistent and result.witness.states == ()


def test_ill_formed_diagram_rejected():
    with pytest.raises(IllFormedDiagram):
        bounded_consistency([diagram("class A extends B; class B extends A;")], Bounds())


def test_bounds_too_large_reports_estimate():
    cd = diagram("class A { int x; int y; } class B; association R A -> B;")
    b = Bounds(4, 4, {"int": 5}, 4)
    with pytest.raises(BoundsTooLarge) as info:
        list(enumerate_models([cd], b))
    assert info.value.estimate == estimate([cd], b) > info.value.ceiling
    with pytest.raises(BoundsTooLarge):
        bounded_consistency([cd], b)


def test_negative_bounds_rejected():
    with pytest.raises(ValueError):
        Bounds(-1, 1)


def test_search_is_deterministic():
    cd = diagram("class A { int x; } class B; association R [1] A -> B [*]; "
                 "[forall a in extent(A): a.x = 1];")
    runs = [bounded_consistency([cd], Bounds(2, 2, {"int": 2})) for _ in range(2)]
    assert runs[0].witness == runs[1].witness and runs[0].examined == runs[1].examined
    assert runs[0].consistent and check_conformance([cd], runs[0].witness).aggregate


# -- agreement with the unreduced enumerator -------------------------------------------


FEATURES_A = ["class A;", "abstract class A;", "class A { int x; }", "class A { final int x; }",
              "class A { static int x; }"]
FEATURES_B = ["", "class B;", "class B extends A;", "class B { int y; }"]
ASSOCS = ["", "association R A -> B;", "association R [1] A -> B [1];", "association R A -> B [1];",
          "composition R [0..1] A -> B;", "association R A -> B <<addonly>>;",
          "association R A -> B <<frozen>>;", "association R A -> B <<ordered>>;"]
INVARIANTS = ["", "[false];", "[exists a in extent(A): true];",
              "[forall a in extent(A): exists b in extent(B): true];",
              "[exists a in extent(A): a.x = 1];"]


def small_diagrams():
    out = []
    for a, b, r, inv in itertools.product(FEATURES_A, FEATURES_B, ASSOCS, INVARIANTS):
        if r and not b:
            continue
        if "a.x" in inv and "x;" not in a:
            continue
        if "extent(B)" in inv and not b:
            continue
        out.append(" ".join(filter(None, [a, b, r, inv])))
    return out


DIAGRAMS = small_diagrams()
SMALL_BOUNDS = [Bounds(1, 1, {"int": 2}, 1), Bounds(2, 1, {"int": 2}, 2), Bounds(1, 2, {"int": 2}, 2)]


def naive(cd, b):
    return bounded_consistency([cd], b, symmetry=False, prune=False)


def test_reduced_and_naive_search_agree():
    # the acceptance suite runs the whole family; a third of it is enough here
    mismatches = []
    for text in DIAGRAMS[::3]:
        cd = diagram(text)
        for b in SMALL_BOUNDS:
            fast, slow = bounded_consistency([cd], b), naive(cd, b)
            if fast.consistent != slow.consistent:
                mismatches.append((text, b))
    assert len(DIAGRAMS) > 300
    assert mismatches == []


TWO_BY_TWO = ["class A;", "abstract class A;", "class A; class B; association R [1] A -> B [0..1];",
              "class A; class B extends A; association R [1] A -> B [1];",
              "class A; class B; composition R [0..1] A -> B; [exists b in extent(B): true];",
              "class A; class B; association R A -> B <<addonly>>; [false];",
              "class A { boolean f; } [forall a in extent(A): a.f = true]; [exists a in extent(A): a.f = false];"]


@pytest.mark.parametrize("text", TWO_BY_TWO)
def test_agreement_at_two_oids_two_states(text):
    cd = diagram(text)
    b = Bounds(2, 2, {}, 2)
    fast = bounded_consistency([cd], b)
    assert fast.consistent == naive(cd, b).consistent
    # pruning never changes which model is found first
    assert fast.witness == bounded_consistency([cd], b, prune=False).witness


def _orbit_key(model, perms):
    return min(tuple(_encode(s.ds, p) for s in model.states) for p in perms)


@pytest.mark.parametrize("text", ["class A;", "class A { boolean f; }", "class A; class B; association R A -> B;",
                                  "class A; association R A -> A;"])
def test_symmetry_reduction_keeps_one_model_per_orbit(text):
    cd = diagram(text)
    b = Bounds(2, 2, {}, 2)
    perms = _relabellings(universe([cd], b))
    naive = {_orbit_key(m, perms) for m in enumerate_models([cd], b, symmetry=False)}
    reduced = [_orbit_key(m, perms) for m in enumerate_models([cd], b)]
    assert len(reduced) == len(set(reduced)) == len(naive)
    assert set(reduced) == naive


def test_witnesses_are_sound():
    for text in DIAGRAMS[::7]:
        cd = diagram(text)
        result = bounded_consistency([cd], SMALL_BOUNDS[1])
        if result.consistent:
            assert check_conformance([cd], result.witness).aggregate, text


def test_monotone_in_bounds():
    # no type qualifiers here: larger carriers would demand more qualified links
    ladder = [Bounds(0, 1, {"int": 1}, 0), Bounds(1, 1, {"int": 1}, 1), Bounds(1, 1, {"int": 2}, 1),
              Bounds(2, 1, {"int": 2}, 2), Bounds(2, 2, {"int": 2}, 2)]
    for text in DIAGRAMS[::10]:
        cd = diagram(text)
        verdicts = [bounded_consistency([cd], b).consistent for b in ladder]
        assert verdicts == sorted(verdicts), text


def test_multiple_diagrams_share_the_universe():
    d1 = diagram("class A { int x; } [forall a in extent(A): a.x = 0];", name="D1")
    d2 = diagram("class A { int x; } [exists a in extent(A): a.x = 1];", name="D2")
    assert bounded_consistency([d1], Bounds(1, 1)).consistent
    assert bounded_consistency([d2], Bounds(1, 1)).consistent
    assert not bounded_consistency([d1, d2], Bounds(1, 1)).consistent
