import random
from itertools import permutations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from oracles import graph_product
from tlts import EPS, Alphabet, I, InterfaceError, TltsError, iso_equal, reachable, validate
from tlts.algebra import RelMonoid, TAU, broadcast_algebra, ccs_algebra, classify, clock_system
from tlts.parallel import (
    OneSidedTS, broadcast_composite, broadcast_expr, bullet, check_prop1, embed, nary_parallel,
    prop1_reports, prop3_check, strip_reflexive, unit_system, winskel_parallel,
)
from tlts.sampling import random_one_sided

from conftest import one_sided

ABC = Alphabet.of("a", "b", "c")
CCS_AB = ccs_algebra(["a", "b"])
BCAST = broadcast_algebra(ABC)

HANDSHAKE = {
    (("s0", "t0"), TAU, ("s1", "t1")),
    (("s0", "t0"), "a", ("s1", "t0")),
    (("s0", "t1"), "a", ("s1", "t1")),
    (("s0", "t0"), "~a", ("s0", "t1")),
    (("s1", "t0"), "~a", ("s1", "t1")),
}


def cycle(n, prefix, signal):
    x = Alphabet.of(signal)
    return OneSidedTS({f"{prefix}{i}" for i in range(n)}, x,
                      {(f"{prefix}{i}", signal, f"{prefix}{(i + 1) % n}") for i in range(n)})


def test_embed():
    t = embed(OneSidedTS({"s0", "s1"}, Alphabet.of("a"), {("s0", "a", "s1")}))
    assert t.left == I and len(t.transitions) == 3
    assert embed(OneSidedTS(set(), I, set())).states == frozenset()
    with_loop = OneSidedTS({"s0", "s1"}, Alphabet.of("a"), {("s0", "a", "s1"), ("s0", EPS, "s0")})
    assert embed(with_loop) == t
    assert strip_reflexive(t) == OneSidedTS({"s0", "s1"}, Alphabet.of("a"), {("s0", "a", "s1")})


def test_handshake_bullet(ccs_a, handshake):
    a, b = handshake
    t = bullet(embed(a), embed(b), ccs_a)
    assert t.states == {("s0", "t0"), ("s0", "t1"), ("s1", "t0"), ("s1", "t1")}
    assert {(s, y, u) for s, _, y, u in t.non_reflexive()} == HANDSHAKE
    assert validate(t).ok


def test_handshake_winskel(ccs_a, handshake):
    a, b = handshake
    w = winskel_parallel(a, b, classify(ccs_a))
    assert w.transitions == HANDSHAKE
    assert prop3_check(a, b, classify(ccs_a)).passed


def test_winskel_with_idle_component(ccs_a):
    a = OneSidedTS({"p"}, ccs_a.carrier, set())
    b = OneSidedTS({"q0", "q1"}, ccs_a.carrier, {("q0", "~a", "q1")})
    assert winskel_parallel(a, b, classify(ccs_a)).transitions == {(("p", "q0"), "~a", ("p", "q1"))}


def test_winskel_rejects_non_winskel_algebra():
    x = Alphabet.of("a")
    z2 = RelMonoid.from_table(x, [("a", EPS, {"a"}), ("a", "a", {EPS})], unit={EPS})
    a = OneSidedTS({"p"}, x, set())
    with pytest.raises(TltsError, match="not a synchronization algebra"):
        winskel_parallel(a, a, classify(z2))


def test_broadcast_is_a_synchronization_algebra():
    assert classify(BCAST).is_synchronization_algebra


@given(one_sided(ABC, "p"), one_sided(ABC, "q"))
def test_broadcast_only_simultaneous_moves(a, b):
    t = bullet(embed(a), embed(b), BCAST)
    expected = {((p, q), l, (p2, q2))
                for p, l, p2 in a.transitions for q, l2, q2 in b.transitions if l == l2}
    # a shared idle step contributes only reflexive edges
    got = {(s, y, u) for s, _, y, u in t.non_reflexive()}
    assert got == expected - {((p, q), EPS, (p, q)) for p in a.states for q in b.states}
    assert len(t.states) == len(a.states) * len(b.states)


def test_bullet_rejects_other_carrier(ccs_a):
    a = embed(OneSidedTS({"p"}, ABC, set()))
    with pytest.raises(InterfaceError):
        bullet(a, a, ccs_a)


def test_unit_system_is_neutral(ccs_a, handshake):
    a, _ = handshake
    e = unit_system(ccs_a)
    assert e.states == {"*"} and len(e.transitions) == 1
    assert iso_equal(bullet(embed(a), e, ccs_a), embed(a)) is not None
    be = unit_system(BCAST)
    assert len(be.transitions) == len(ABC.labels)


@given(one_sided(CCS_AB.carrier, "a"), one_sided(CCS_AB.carrier, "b"))
def test_prop3_ccs(a, b):
    assert prop3_check(a, b, classify(CCS_AB)).passed


@given(one_sided(ABC, "a"), one_sided(ABC, "b"), one_sided(ABC, "c"))
def test_prop1_broadcast(a, b, c):
    reports = prop1_reports(BCAST, embed(a), embed(b), embed(c))
    assert [r.law for r in reports] == ["prop1.associativity", "prop1.commutativity", "prop1.unit"]
    assert all(r.passed for r in reports)


@given(one_sided(CCS_AB.carrier, "a"), one_sided(CCS_AB.carrier, "b"), one_sided(CCS_AB.carrier, "c"))
def test_prop1_ccs(a, b, c):
    assert all(r.passed for r in prop1_reports(CCS_AB, embed(a), embed(b), embed(c)))


def test_check_prop1_aggregates():
    rng = random.Random(3)
    samples = [tuple(embed(random_one_sided(rng, ABC, p)) for p in "abc") for _ in range(10)]
    reports = check_prop1(BCAST, samples)
    assert [r.law for r in reports] == ["prop1.associativity", "prop1.commutativity", "prop1.unit"]
    assert all(r.passed for r in reports)


def test_check_prop1_reports_broken_table():
    m = RelMonoid.from_table(ABC, [
        ("a", "b", {"c"}), ("b", "c", {"a"}),
        ("a", "a", {"a"}), ("b", "b", {"a"}), ("a", "c", {"c"}),
    ])
    fire = lambda label, p: embed(OneSidedTS({f"{p}0", f"{p}1"}, ABC, {(f"{p}0", label, f"{p}1")}))
    harmless = (fire("a", "x"), fire("a", "y"), fire("a", "z"))
    samples = [harmless, (fire("a", "x"), fire("b", "y"), fire("c", "z"))]
    reports = {r.law: r for r in check_prop1(m, samples)}
    assoc = reports["prop1.associativity"]
    assert not assoc.passed
    assert assoc.inputs == {"sample": 1}
    assert assoc.witness
    assert reports["prop1.commutativity"].passed


def _clock_parts():
    x = Alphabet.of("tick")
    c2, c3 = cycle(2, "p", "tick"), cycle(3, "q", "tick")
    return x, c2, c3


def test_clock_lockstep():
    x, c2, c3 = _clock_parts()
    t = broadcast_expr([clock_system("tick"), embed(c2), embed(c3)])
    r = reachable(t, {(("*", "p0"), "q0")})
    assert len(r.states) == 6
    edges = {(s, u) for s, _, _, u in r.non_reflexive()}
    assert all(y == "tick" for _, _, y, _ in r.non_reflexive())
    expected = graph_product({(s, u) for s, _, u in c2.transitions},
                             {(s, u) for s, _, u in c3.transitions})
    assert nx.is_isomorphic(nx.DiGraph(list(edges)), nx.DiGraph(list(expected)))
    assert len(edges) == 6


def test_clock_with_clock():
    t = broadcast_expr([clock_system("tick"), clock_system("tick")])
    assert len(t.states) == 1
    assert {y for _, _, y, _ in t.transitions} == {EPS, "tick"} and len(t.transitions) == 2


def test_broadcast_expr_matches_literal_wiring():
    rng = random.Random(11)
    for _ in range(20):
        a, b, c = (embed(random_one_sided(rng, ABC, p, 3, 4)) for p in "abc")
        expr = broadcast_expr([a, b, c])
        assert iso_equal(expr, broadcast_composite([a, b, c])) is not None
        assert iso_equal(expr, bullet(bullet(c, a, BCAST), b, BCAST)) is not None


def test_broadcast_expr_edges():
    a = embed(cycle(2, "p", "a"))
    assert broadcast_expr([a]) == a
    with pytest.raises(TltsError):
        broadcast_expr([])


def test_nary_parallel_is_order_free():
    rng = random.Random(5)
    parts = [embed(random_one_sided(rng, CCS_AB.carrier, p, 3, 4)) for p in "abc"]
    results = [nary_parallel(perm, CCS_AB) for perm in permutations(parts)]
    results.append(bullet(parts[0], bullet(parts[1], parts[2], CCS_AB), CCS_AB))
    for other in results[1:]:
        assert iso_equal(results[0], other) is not None


def test_nary_parallel_single_and_empty():
    a = embed(cycle(2, "p", "a"))
    assert nary_parallel([a], broadcast_algebra(Alphabet.of("a"))) == a
    with pytest.raises(TltsError):
        nary_parallel([], BCAST)


def test_sampling_is_seed_deterministic():
    one = [random_one_sided(random.Random(42), ABC) for _ in range(2)]
    assert one[0] == one[1]
    assert random_one_sided(random.Random(1), I).transitions == frozenset()
