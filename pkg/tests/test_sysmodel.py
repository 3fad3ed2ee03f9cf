import json
import random

import pytest

from umlpcd.sysmodel import (
    CycleError, FormatError, InvariantError, RefError, UnknownAssoc, dump_system_model,
    inactive_view, link_pairs, load_system_model, rel_of, sub_star, value_key,
)

from helpers import doc, link, model, naive_closure, random_relation


def base(**overrides):
    kwargs = dict(
        types={"int": [0, 1]},
        classes={"A": {"attrs": {"x": "int"}}, "B": {"super": ["A"]}},
        assocs=[{"id": "R", "left": "A", "right": "B"}],
        oids={"a": "A", "b": "B"},
        states=[{"id": "s0", "live": ["a", "b"], "attrs": {"a.x": 1}, "links": [link("R", "a", "b")]}],
    )
    kwargs.update(overrides)
    return doc(**kwargs)


def load(document, lenient=False):
    return load_system_model(json.dumps(document), lenient=lenient)


def error_of(document, kind):
    with pytest.raises(kind) as info:
        load(document)
    return info.value


def test_loads_and_queries():
    m = load(base())
    assert m.is_subclass("B", "A") and not m.is_subclass("A", "B")
    assert m.attrs_of("B") == {"x": "int"}
    assert rel_of(m, "R", m.states[0].ds) == {("a", "b")}
    assert m.reachable_states() == list(m.states)


def test_unknown_association_query():
    m = load(base())
    with pytest.raises(UnknownAssoc):
        rel_of(m, "Q", m.states[0].ds)


def test_malformed_json():
    with pytest.raises(FormatError) as info:
        load_system_model("{not json")
    assert info.value.path == "$"


def test_missing_top_level_key_is_strict():
    d = base()
    del d["methods"]
    assert error_of(d, FormatError).message == "missing key 'methods'"
    assert load(d, lenient=True).methods == {}


def test_unknown_keys_warn_in_lenient_mode():
    d = base()
    d["states"][0]["colour"] = "red"
    err = error_of(d, FormatError)
    assert err.path == "states[0]"
    assert load(d, lenient=True).warnings == ("states[0]: unknown keys 'colour'",)


@pytest.mark.parametrize("mutate,kind,path", [
    (lambda d: d["classes"][1].update(super=["Z"]), RefError, "classes[1].super[0]"),
    (lambda d: d["oids"].append({"id": "z", "class": "Z"}), RefError, "oids[2].class"),
    (lambda d: d["states"][0]["live"].append("nobody"), RefError, "states[0].live[2]"),
    (lambda d: d["states"][0]["attrs"][0].update(value=7), InvariantError, "states[0].attrs[0].value"),
    (lambda d: d["states"][0]["attrs"][0].update(attr="y"), RefError, "states[0].attrs[0].attr"),
    (lambda d: d["states"][0]["links"][0].update({"from": "b", "to": "a"}), InvariantError,
     "states[0].links[0].to"),
    (lambda d: d["states"][0]["live"].remove("b"), InvariantError, "states[0].links[0].to"),
    (lambda d: d["states"][0]["links"][0].update(assoc="Q"), RefError, "states[0].links[0].assoc"),
    (lambda d: d["reachable"].append("s9"), RefError, "reachable[1]"),
    (lambda d: d["transitions"].append({"from": "s0", "to": "s9"}), RefError, "transitions[0].to"),
    (lambda d: d["oids"].append({"id": "a", "class": "A"}), InvariantError, "oids[2]"),
    (lambda d: d["types"][0].update(carrier=[1, 1]), InvariantError, "types[0].carrier"),
    (lambda d: d["classes"][0].update(super=["B"]), InvariantError, "classes"),
    (lambda d: d["states"][0].update(stacks=[{"oid": "a", "thread": "t", "depth": -1}]), FormatError,
     "states[0].stacks[0].depth"),
    (lambda d: d["assocs"][0].update(qualifier={"kind": "attr", "ref": "y"}), RefError, "assocs[0].qualifier.ref"),
    (lambda d: d["assocs"][0].update(ordered="up"), FormatError, "assocs[0].ordered"),
])
def test_errors_carry_paths(mutate, kind, path):
    d = base()
    mutate(d)
    assert error_of(d, kind).path == path


def test_values_are_type_tagged():
    assert value_key(True) != value_key(1)
    assert value_key(1) == value_key(1.0)
    assert value_key(None) == ("null", None)
    d = base()
    d["states"][0]["attrs"][0]["value"] = True
    assert error_of(d, InvariantError).path == "states[0].attrs[0].value"


def test_type_qualified_links():
    d = base(assocs=[{"id": "R", "left": "A", "right": "B", "qualifier": {"kind": "type", "ref": "int"}}],
             states=[{"id": "s0", "live": ["a", "b"], "links": [link("R", "a", "b", 0), link("R", "a", "b", 1)]}])
    m = load(d)
    assert m.states[0].ds.links["R"] == {("a", "b", 0), ("a", "b", 1)}
    assert sorted(rel_of(m, "R", m.states[0].ds)) == [("a", "b", 0), ("a", "b", 1)]
    d["states"][0]["links"][0].pop("qual")
    assert error_of(d, FormatError).path == "states[0].links[0]"


def test_ordered_links():
    d = base(oids={"a": "A", "b": "B", "c": "B"},
             assocs=[{"id": "R", "left": "A", "right": "B", "ordered": "right"}],
             states=[{"id": "s0", "live": ["a", "b", "c"],
                      "links": [{"assoc": "R", "from": "a", "toList": ["c", "b"]}]}])
    m = load(d)
    (l,) = m.states[0].ds.links["R"]
    assert l == ("a", ("c", "b"))
    assert link_pairs(m, "R", [l]) == [("a", "c"), ("a", "b")]
    d["states"][0]["links"].append({"assoc": "R", "from": "a", "toList": ["b"]})
    assert error_of(d, InvariantError).path == "states[0].links[1]"


def test_ordered_on_the_left_flips_pairs():
    d = base(oids={"a": "A", "c": "A", "b": "B"},
             assocs=[{"id": "R", "left": "A", "right": "B", "ordered": "left"}],
             states=[{"id": "s0", "live": ["a", "b", "c"],
                      "links": [{"assoc": "R", "from": "b", "toList": ["c", "a"]}]}])
    m = load(d)
    assert link_pairs(m, "R", m.states[0].ds.links["R"]) == [("c", "b"), ("a", "b")]


def test_ordered_cannot_be_type_qualified():
    d = base(assocs=[{"id": "R", "left": "A", "right": "B", "ordered": "right",
                      "qualifier": {"kind": "type", "ref": "int"}}], states=[])
    assert error_of(d, InvariantError).path == "assocs[0]"


def test_inactive_view_drops_busy_objects():
    d = base()
    d["states"][0]["stacks"] = [{"oid": "b", "thread": "t1", "depth": 2}, {"oid": "a", "thread": "t1", "depth": 0}]
    m = load(d)
    s = m.states[0]
    view = inactive_view(s)
    assert view.ds.live == {"a"}
    assert view.ds.links == {}
    assert view.ds.values == {("a", "x"): 1}
    quiet = load(base()).states[0]
    assert inactive_view(quiet) is quiet


def test_dump_round_trip():
    d = base(transitions=[("s0", "s1")],
             states=[{"id": "s0", "live": ["a"]}, {"id": "s1", "live": ["a", "b"], "links": [link("R", "a", "b")],
                      "events": [{"oid": "a", "recv": {"sender": "b", "op": "m", "args": [1]}}]}])
    m = load(d)
    text = dump_system_model(m)
    again = load_system_model(text)
    assert again == m
    assert dump_system_model(again) == text


def test_sub_star_matches_naive_closure():
    rng = random.Random(11)
    for _ in range(200):
        nodes, pairs = random_relation(rng, dag=True)
        classes = {n: {"super": sorted(b for a, b in pairs if a == n)} for n in nodes}
        m = model(classes=classes)
        expected = naive_closure(pairs) | {(n, n) for n in nodes}
        assert sub_star(m) == expected


def test_cyclic_hierarchy_is_rejected():
    from umlpcd.sysmodel import SystemModel, ClassInfo
    m = SystemModel(types={}, classes={"A": ClassInfo("A", (), ("B",)), "B": ClassInfo("B", (), ("A",))})
    with pytest.raises(CycleError):
        sub_star(m)
