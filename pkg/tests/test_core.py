import json

import pytest
from hypothesis import given, strategies as st

from oracles import nx_isomorphic, respects
from tlts import (
    EPS, Alphabet, I, LabelError, Tlts, UnknownStateError, iso_equal, reachable,
    reflexive_closure, tlts_from_json, tlts_to_json, validate,
)
from tlts.core import format_label, rename_states
from tlts.wscc import identity, tensor

from conftest import systems

AB = Alphabet.of("a", "b")


def test_alphabet_always_contains_eps():
    assert EPS in Alphabet.of()
    assert Alphabet.of() == I
    assert I.labels == {EPS}
    with pytest.raises(LabelError):
        Alphabet(frozenset({"a"}))


def test_alphabet_rejects_mixed_shapes_and_bad_tokens():
    with pytest.raises(LabelError):
        Alphabet(frozenset({EPS, ("eps", "eps")}))
    with pytest.raises(LabelError):
        Alphabet.of("a b")
    with pytest.raises(LabelError):
        Alphabet.of("")


def test_product_alphabet_eps_is_pair():
    x = Alphabet(frozenset({(EPS, EPS), ("a", EPS)}))
    assert x.eps == (EPS, EPS)
    assert x.factors == (Alphabet.of("a"), I)


def test_format_label_brackets_right_nesting():
    assert format_label(("a", "b")) == "a*b"
    assert format_label((("a", "b"), "c")) == "a*b*c"
    assert format_label(("a", ("b", "c"))) == "a*(b*c)"


# -- validate ----------------------------------------------------------------

def test_validate_identity_ok():
    t = Tlts(Alphabet.of("a"), Alphabet.of("a"), {"*"}, {("*", EPS, EPS, "*"), ("*", "a", "a", "*")})
    assert validate(t).ok


def test_validate_missing_reflexive_edge():
    t = Tlts(I, I, {"s"}, set())
    result = validate(t)
    assert not result.ok
    assert [v.kind for v in result.violations] == ["missing reflexive edge"]
    assert "missing reflexive edge at s" in result.violations[0].message


def test_validate_label_out_of_alphabet():
    x = Alphabet.of("a")
    t = Tlts(x, x, {"s"}, {("s", EPS, EPS, "s"), ("s", "b", "a", "s")})
    result = validate(t)
    assert [v.kind for v in result.violations] == ["label out of alphabet"]
    assert result.violations[0].witness == ("s", "b", "a", "s")


def test_validate_unknown_state_never_raises():
    t = Tlts(I, I, set(), {("p", EPS, EPS, "q")})
    kinds = [v.kind for v in validate(t).violations]
    assert kinds.count("unknown state") == 2


# -- reflexive closure ---------------------------------------------------------

def test_reflexive_closure_adds_loops():
    y = Alphabet.of("a")
    t = reflexive_closure({"s0", "s1"}, {("s0", EPS, "a", "s1")}, I, y)
    assert len(t.transitions) == 3
    assert validate(t).ok


def test_reflexive_closure_empty():
    t = reflexive_closure(set(), set(), I, I)
    assert t.states == frozenset() and t.transitions == frozenset()
    assert validate(t).ok


def test_reflexive_closure_idempotent_on_existing_loop():
    y = Alphabet.of("a")
    base = {("s0", EPS, "a", "s1")}
    t1 = reflexive_closure({"s0", "s1"}, base, I, y)
    t2 = reflexive_closure({"s0", "s1"}, base | {("s0", EPS, EPS, "s0")}, I, y)
    assert t1 == t2


def test_reflexive_closure_rejects_foreign_label():
    with pytest.raises(LabelError, match="s0 -eps/b-> s1"):
        reflexive_closure({"s0", "s1"}, {("s0", EPS, "b", "s1")}, I, Alphabet.of("a"))


def test_reflexive_closure_rejects_unknown_state():
    with pytest.raises(UnknownStateError):
        reflexive_closure({"s0"}, {("s0", EPS, EPS, "zz")}, I, I)


# -- isomorphism ---------------------------------------------------------------

def test_iso_self_gives_identity_bijection():
    x = Alphabet.of("a")
    t = reflexive_closure({"p", "q"}, {("p", "a", EPS, "q")}, x, I)
    assert iso_equal(t, t) == {"p": "p", "q": "q"}


def test_iso_reassociation():
    x = Alphabet.of("a")
    s = reflexive_closure({"s"}, {("s", "a", "a", "s")}, x, x)
    t = reflexive_closure({"t0", "t1"}, {("t0", "a", "a", "t1")}, x, x)
    u = reflexive_closure({"u0", "u1"}, {("u1", "a", EPS, "u0")}, x, x)
    right_nested = tensor(s, tensor(t, u))
    left_nested = tensor(tensor(s, t), u)
    # same system modulo bracketing of both states and labels
    rebracket = lambda p: ((p[0], p[1][0]), p[1][1])
    relabelled = Tlts(left_nested.left, left_nested.right, left_nested.states,
                      {(rebracket(a), rebracket(x), rebracket(y), rebracket(b))
                       for a, x, y, b in right_nested.transitions})
    relabelled = Tlts(left_nested.left, left_nested.right,
                      {rebracket(p) for p in right_nested.states}, relabelled.transitions)
    phi = iso_equal(relabelled, left_nested)
    assert phi is not None
    assert all(phi[p] == p for p in relabelled.states)


def test_iso_flat_states_vs_nested():
    x = Alphabet.of("a")
    t = reflexive_closure({("s", ("t", "u"))}, {(("s", ("t", "u")), "a", "a", ("s", ("t", "u")))}, x, x)
    moved = rename_states(t, lambda p: ((p[0], p[1][0]), p[1][1]))
    assert iso_equal(t, moved) == {("s", ("t", "u")): (("s", "t"), "u")}


def test_iso_detects_missing_transition():
    x = Alphabet.of("a")
    with_loop = Tlts(x, x, {"*"}, {("*", EPS, EPS, "*"), ("*", "a", "a", "*")})
    without = Tlts(x, x, {"*"}, {("*", EPS, EPS, "*")})
    assert iso_equal(with_loop, without) is None


def test_iso_requires_literal_alphabets():
    assert iso_equal(identity(Alphabet.of("a")), identity(Alphabet.of("b"))) is None


def test_iso_handles_symmetric_systems():
    x = Alphabet.of("a")
    ring = lambda n, tag: reflexive_closure(
        {f"{tag}{i}" for i in range(n)},
        {(f"{tag}{i}", "a", EPS, f"{tag}{(i + 1) % n}") for i in range(n)}, x, I)
    two_triangles = reflexive_closure(
        {f"v{i}" for i in range(6)},
        {(f"v{i}", "a", EPS, f"v{(i + 1) % 3 + 3 * (i // 3)}") for i in range(6)}, x, I)
    assert iso_equal(ring(6, "p"), ring(6, "q")) is not None
    # same degree sequences, not isomorphic
    assert iso_equal(ring(6, "p"), two_triangles) is None
    assert iso_equal(ring(7, "p"), ring(7, "q")) is not None


@given(systems(), st.randoms(use_true_random=False))
def test_iso_finds_random_renaming(t, rnd):
    names = [f"r{i}" for i in range(len(t.states))]
    rnd.shuffle(names)
    mapping = dict(zip(t.sorted_states(), names))
    moved = rename_states(t, mapping)
    phi = iso_equal(t, moved)
    assert phi is not None and respects(phi, t, moved)


@given(systems(), systems())
def test_iso_agrees_with_networkx(a, b):
    phi = iso_equal(a, b)
    assert (phi is not None) == nx_isomorphic(a, b)
    if phi is not None:
        assert respects(phi, a, b)


@given(systems(), st.randoms(use_true_random=False), st.randoms(use_true_random=False))
def test_iso_is_an_equivalence(t, r1, r2):
    def shuffled(src, rnd, prefix):
        names = [f"{prefix}{i}" for i in range(len(src.states))]
        rnd.shuffle(names)
        return rename_states(src, dict(zip(src.sorted_states(), names)))
    u = shuffled(t, r1, "u")
    v = shuffled(u, r2, "v")
    tu, uv = iso_equal(t, u), iso_equal(u, v)
    ut = iso_equal(u, t)
    assert respects({b: a for a, b in tu.items()}, u, t) and ut is not None
    composite = {s: uv[tu[s]] for s in t.states}
    assert respects(composite, t, v)


# -- reachability ----------------------------------------------------------------

def test_reachable_identity():
    t = identity(AB)
    assert reachable(t, {"*"}) == t


def test_reachable_disconnected():
    t = reflexive_closure({"p", "q"}, set(), I, I)
    r = reachable(t, {"p"})
    assert r.states == {"p"}
    assert validate(r).ok


def test_reachable_unknown_initial():
    with pytest.raises(UnknownStateError, match="nowhere"):
        reachable(identity(I), {"nowhere"})


@given(systems(), st.data())
def test_reachable_idempotent_and_valid(t, data):
    if not t.states:
        return
    initial = data.draw(st.sets(st.sampled_from(t.sorted_states()), min_size=1))
    once = reachable(t, initial)
    assert validate(once).ok
    assert reachable(once, initial) == once


# -- JSON ------------------------------------------------------------------------

def test_json_round_trip_keeps_pairs():
    x = Alphabet.of("a")
    t = tensor(reflexive_closure({"p", "q"}, {("p", "a", EPS, "q")}, x, I), identity(x))
    obj = json.loads(json.dumps(tlts_to_json(t)))
    assert ["p", "*"] in obj["states"]
    assert [["p", "*"], ["a", "a"], ["eps", "a"], ["q", "*"]] in obj["transitions"]
    assert tlts_from_json(obj) == t


def test_json_input_may_omit_eps_and_reflexive_edges():
    t = tlts_from_json({"left": [], "right": ["a"], "states": ["s0", "s1"],
                        "transitions": [["s0", "eps", "a", "s1"]]})
    assert t.left == I and t.right == Alphabet.of("a")
    assert ("s0", EPS, EPS, "s0") in t.transitions
    assert len(tlts_to_json(t)["transitions"]) == 3


def test_json_accepts_explicit_eps():
    t = tlts_from_json({"left": ["eps"], "right": ["eps", "a"], "states": ["s"], "transitions": []})
    assert t.right == Alphabet.of("a")
