"""Parallel composition induced by a monoid on the bus.

``bullet(a, b, m)`` runs ``a`` and ``b`` side by side and merges the labels
they emit through the multiplication of ``m``.  ``winskel_parallel`` is the
classical construction on one-sided systems, kept independent so the two can
be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, product

from .algebra import RelMonoid, SyncAlgebraView, broadcast_algebra, mult_arrow, unit_arrow_of
from .core import (
    EPS, Alphabet, I, InterfaceError, LabelError, LawReport, Tlts, TltsError,
    UnknownStateError, format_label, format_state, iso_report, label_key,
    label_to_json, reflexive_closure, rename_states, state_key, state_to_json,
)
from .wscc import STAR, codiag, compose, compose_all, counit_arrow, diag, identity, left_unitor_inv, tensor


@dataclass(frozen=True)
class OneSidedTS:
    """A classical transition system: ``(source, label, target)`` triples.

    Reflexive loops are not required.
    """

    states: frozenset
    alphabet: Alphabet
    transitions: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))
        for s, lam, u in self.transitions:
            if lam not in self.alphabet:
                raise LabelError(f"label {format_label(lam)} not in {self.alphabet}")
            for end in (s, u):
                if end not in self.states:
                    raise UnknownStateError(f"unknown state {format_state(end)}")

    def to_json(self) -> dict:
        return {
            "alphabet": [label_to_json(l) for l in self.alphabet.sorted()],
            "states": [state_to_json(s) for s in sorted(self.states, key=state_key)],
            "transitions": [[state_to_json(s), label_to_json(l), state_to_json(u)]
                            for s, l, u in sorted(self.transitions, key=lambda t: (
                                state_key(t[0]), label_key(t[1]), state_key(t[2])))],
        }


def embed(t: OneSidedTS) -> Tlts:
    """The system ``I -> L`` moving silently on the left."""
    return reflexive_closure(t.states, ((s, EPS, lam, u) for s, lam, u in t.transitions),
                             I, t.alphabet)


def strip_reflexive(t: Tlts) -> OneSidedTS:
    """Inverse of :func:`embed` on systems ``I -> L``, dropping reflexive edges."""
    if t.left != I:
        raise InterfaceError(f"expected a system from I, got {t.left}")
    return OneSidedTS(t.states, t.right, {(s, y, u) for s, _, y, u in t.non_reflexive()})


def bullet(a: Tlts, b: Tlts, m: RelMonoid) -> Tlts:
    """Copy the left interface, run ``a`` beside ``b``, multiply on the right.

    The copy is ``diag`` of the left alphabet, which for ``I`` is trivial.
    States are the pairs ``(p, q)`` of component states.
    """
    if a.interface != b.interface:
        raise InterfaceError(f"bullet needs equal interfaces: {a.left} -> {a.right} "
                             f"vs {b.left} -> {b.right}")
    if a.right != m.carrier:
        raise InterfaceError(f"systems emit {a.right} but the algebra is on {m.carrier}")
    raw = compose_all(diag(a.left), tensor(a, b), mult_arrow(m))
    return rename_states(raw, lambda s: s[0][1])


def unit_system(m: RelMonoid, x: Alphabet = I) -> Tlts:
    """The neutral element for ``bullet``: counit on ``x`` then the unit of ``m``."""
    raw = compose(counit_arrow(x), unit_arrow_of(m))
    return rename_states(raw, lambda s: STAR)


def nary_parallel(systems, m: RelMonoid) -> Tlts:
    """Left fold of :func:`bullet`: ``((s1 . s2) . s3) ...``."""
    systems = list(systems)
    if not systems:
        raise TltsError("parallel composition of no systems needs a unit system")
    out = systems[0]
    if out.right != m.carrier:
        raise InterfaceError(f"systems emit {out.right} but the algebra is on {m.carrier}")
    for t in systems[1:]:
        out = bullet(out, t, m)
    return out


def broadcast_expr(systems) -> Tlts:
    systems = list(systems)
    if not systems:
        raise TltsError("broadcast of no systems needs a unit system")
    return nary_parallel(systems, broadcast_algebra(systems[0].right))


def broadcast_composite(systems) -> Tlts:
    """The wiring ``codiag (C * 1) codiag (B * 1) A`` built from constants.

    Systems are consumed in list order, each new one tensored on the left of
    the bus so far.  Independent of :func:`bullet`; used to cross-check it.
    """
    systems = list(systems)
    if not systems:
        raise TltsError("broadcast of no systems needs a unit system")
    bus = systems[0].right
    out = systems[0]
    for t in systems[1:]:
        out = compose_all(out, left_unitor_inv(bus), tensor(t, identity(bus)), codiag(bus))
    return out


def winskel_parallel(a: OneSidedTS, b: OneSidedTS, view: SyncAlgebraView) -> OneSidedTS:
    """Synchronised product over moves of both or of one with the other idle."""
    if not view.partial_function:
        raise TltsError("not a synchronization algebra: some product has several results")
    if not view.winskel_epsilon:
        raise TltsError("not a synchronization algebra: a product other than "
                        "eps * eps yields eps, or eps * eps is undefined")
    m = view.monoid
    if a.alphabet != b.alphabet or a.alphabet != m.carrier:
        raise InterfaceError(f"alphabets differ: {a.alphabet}, {b.alphabet}, {m.carrier}")
    idle_a = [(s, EPS, s) for s in a.states]
    idle_b = [(s, EPS, s) for s in b.states]
    moves = chain(product(a.transitions, b.transitions),
                  product(a.transitions, idle_b),
                  product(idle_a, b.transitions))
    transitions = set()
    for (p, alpha, p2), (q, beta, q2) in moves:
        for lam in m.m(alpha, beta):
            transitions.add(((p, q), lam, (p2, q2)))
    states = {(p, q) for p in a.states for q in b.states}
    return OneSidedTS(states, a.alphabet, transitions)


def prop3_check(a: OneSidedTS, b: OneSidedTS, view: SyncAlgebraView) -> LawReport:
    """Compare the bullet product with the reflexive closure of the classical one."""
    lhs = bullet(embed(a), embed(b), view.monoid)
    rhs = embed(winskel_parallel(a, b, view))
    return iso_report("prop3", lhs, rhs, {"a": a.to_json(), "b": b.to_json()},
                      expected=lambda s: s)


def prop1_reports(m: RelMonoid, a: Tlts, b: Tlts, c: Tlts, inputs=None) -> list[LawReport]:
    """Associativity and commutativity of bullet, and the unit law if ``m`` has one."""
    reports = [
        iso_report("prop1.associativity", bullet(bullet(a, b, m), c, m),
                   bullet(a, bullet(b, c, m), m), inputs,
                   expected=lambda s: (s[0][0], (s[0][1], s[1]))),
        iso_report("prop1.commutativity", bullet(a, b, m), bullet(b, a, m), inputs,
                   expected=lambda s: (s[1], s[0])),
    ]
    if m.unit is not None:
        e = unit_system(m, a.left)
        reports.append(iso_report("prop1.unit", bullet(a, e, m), a, inputs,
                                  expected=lambda s: s[0]))
    return reports


def check_prop1(m: RelMonoid, samples) -> list[LawReport]:
    """Run :func:`prop1_reports` on each ``(a, b, c)`` sample; one report per law.

    Each aggregated report carries the index and witness of the first failure.
    """
    first_failure: dict = {}
    order: list = []
    for i, (a, b, c) in enumerate(samples):
        for report in prop1_reports(m, a, b, c):
            if report.law not in order:
                order.append(report.law)
            if not report.passed and report.law not in first_failure:
                first_failure[report.law] = (i, report)
    out = []
    for law in order:
        if law in first_failure:
            i, report = first_failure[law]
            out.append(LawReport(law, False, {"sample": i}, report.witness))
        else:
            out.append(LawReport(law, True))
    return out
