"""Categorical structure on two-sided transition systems.

Composition ``compose(a, b)`` is diagrammatic: ``a`` first, then ``b``.  All
constants are one-state systems whose single state is ``"*"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import (
    EPS, Alphabet, I, InterfaceError, LabelError, LawReport, Tlts,
    format_label, iso_report, relabel, relation_of,
)

STAR = "*"


def _one_state(left: Alphabet, right: Alphabet, pairs) -> Tlts:
    return Tlts(left, right, {STAR}, {(STAR, x, y, STAR) for x, y in pairs})


def compose(a: Tlts, b: Tlts) -> Tlts:
    """``a : X -> Y`` followed by ``b : Y -> Z``.

    Transitions synchronise on the shared middle label; distinct middle labels
    producing the same outer transition collapse into one.
    """
    if a.right != b.left:
        raise InterfaceError(f"cannot compose: {a.right} does not match {b.left}")
    by_middle: dict = {}
    for q, y, z, q2 in b.transitions:
        by_middle.setdefault(y, []).append((q, z, q2))
    transitions = set()
    for p, x, y, p2 in a.transitions:
        for q, z, q2 in by_middle.get(y, ()):
            transitions.add(((p, q), x, z, (p2, q2)))
    states = {(p, q) for p in a.states for q in b.states}
    return Tlts(a.left, b.right, states, transitions)


def compose_all(first: Tlts, *rest: Tlts) -> Tlts:
    out = first
    for t in rest:
        out = compose(out, t)
    return out


def identity(x: Alphabet) -> Tlts:
    return _one_state(x, x, ((l, l) for l in x.labels))


def tensor_alphabet(x: Alphabet, z: Alphabet) -> Alphabet:
    return Alphabet(frozenset((l, m) for l in x.labels for m in z.labels))


def tensor(a: Tlts, b: Tlts) -> Tlts:
    """``a : X -> Y`` beside ``b : Z -> W``, giving ``X*Z -> Y*W``."""
    transitions = {((p, q), (x, z), (y, w), (p2, q2))
                   for p, x, y, p2 in a.transitions
                   for q, z, w, q2 in b.transitions}
    states = {(p, q) for p in a.states for q in b.states}
    return Tlts(tensor_alphabet(a.left, b.left), tensor_alphabet(a.right, b.right),
                states, transitions)


def twist(x: Alphabet, y: Alphabet) -> Tlts:
    return _one_state(tensor_alphabet(x, y), tensor_alphabet(y, x),
                      (((l, m), (m, l)) for l in x.labels for m in y.labels))


def codiag(x: Alphabet) -> Tlts:
    """The multiplication ``X*X -> X`` relating ``l*l`` to ``l``."""
    return _one_state(tensor_alphabet(x, x), x, (((l, l), l) for l in x.labels))


def diag(x: Alphabet) -> Tlts:
    """The comultiplication ``X -> X*X`` relating ``l`` to ``l*l``."""
    return _one_state(x, tensor_alphabet(x, x), ((l, (l, l)) for l in x.labels))


def unit_arrow(x: Alphabet) -> Tlts:
    """``I -> X`` relating the silent label to every label."""
    return _one_state(I, x, ((EPS, l) for l in x.labels))


def counit_arrow(x: Alphabet) -> Tlts:
    """``X -> I`` relating every label to the silent label."""
    return _one_state(x, I, ((l, EPS) for l in x.labels))


def eta_arrow(x: Alphabet) -> Tlts:
    """``I -> X*X``; the composite of ``unit_arrow`` then ``diag``."""
    return _one_state(I, tensor_alphabet(x, x), ((EPS, (l, l)) for l in x.labels))


def epsilon_arrow(x: Alphabet) -> Tlts:
    """``X*X -> I``; the composite of ``codiag`` then ``counit_arrow``."""
    return _one_state(tensor_alphabet(x, x), I, (((l, l), EPS) for l in x.labels))


def projection(x: Alphabet, y: Alphabet) -> Tlts:
    """``X*Y -> X``: counit on the second factor, then the right unitor."""
    return _one_state(tensor_alphabet(x, y), x,
                      (((l, m), l) for l in x.labels for m in y.labels))


def opposite_projection(x: Alphabet, y: Alphabet) -> Tlts:
    """``X -> X*Y``, the reverse of :func:`projection`.

    Right unitor inverse, then the unit arrow on the second factor.
    """
    return _one_state(x, tensor_alphabet(x, y),
                      ((l, (l, m)) for l in x.labels for m in y.labels))


# -- coherence isomorphisms ------------------------------------------------------

def associator(x: Alphabet, y: Alphabet, z: Alphabet) -> Tlts:
    """``(X*Y)*Z -> X*(Y*Z)``."""
    return _one_state(tensor_alphabet(tensor_alphabet(x, y), z),
                      tensor_alphabet(x, tensor_alphabet(y, z)),
                      ((((a, b), c), (a, (b, c)))
                       for a in x.labels for b in y.labels for c in z.labels))


def associator_inv(x: Alphabet, y: Alphabet, z: Alphabet) -> Tlts:
    """``X*(Y*Z) -> (X*Y)*Z``."""
    return _one_state(tensor_alphabet(x, tensor_alphabet(y, z)),
                      tensor_alphabet(tensor_alphabet(x, y), z),
                      (((a, (b, c)), ((a, b), c))
                       for a in x.labels for b in y.labels for c in z.labels))


def left_unitor(x: Alphabet) -> Tlts:
    """``I*X -> X``."""
    return _one_state(tensor_alphabet(I, x), x, (((EPS, l), l) for l in x.labels))


def left_unitor_inv(x: Alphabet) -> Tlts:
    return _one_state(x, tensor_alphabet(I, x), ((l, (EPS, l)) for l in x.labels))


def right_unitor(x: Alphabet) -> Tlts:
    """``X*I -> X``."""
    return _one_state(tensor_alphabet(x, I), x, (((l, EPS), l) for l in x.labels))


def right_unitor_inv(x: Alphabet) -> Tlts:
    return _one_state(x, tensor_alphabet(x, I), ((l, (l, EPS)) for l in x.labels))


def unit_normal_form(x: Alphabet) -> tuple[Alphabet, Callable]:
    """Collapse every ``I`` factor of ``x``; returns the alphabet and label map."""
    if not x.is_product:
        return x, lambda l: l
    (n0, f0), (n1, f1) = (unit_normal_form(f) for f in x.factors)
    if n0 == I:
        fn = lambda l: f1(l[1])
    elif n1 == I:
        fn = lambda l: f0(l[0])
    else:
        fn = lambda l: (f0(l[0]), f1(l[1]))
    return Alphabet(frozenset(fn(l) for l in x.labels)), fn


def normalize_units(t: Tlts) -> Tlts:
    """Identify ``I*X`` and ``X*I`` with ``X`` on both interfaces of ``t``."""
    left, lf = unit_normal_form(t.left)
    right, rf = unit_normal_form(t.right)
    if left == t.left and right == t.right:
        return t
    return relabel(t, left, right, lf, rf)


# -- pointed relations ---------------------------------------------------------------

@dataclass(frozen=True)
class PointedRelation:
    left: Alphabet
    right: Alphabet
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        if (self.left.eps, self.right.eps) not in self.pairs:
            raise LabelError("a pointed relation must relate the silent labels")
        for x, y in self.pairs:
            if x not in self.left or y not in self.right:
                raise LabelError(f"pair {format_label(x)}/{format_label(y)} "
                                 f"outside {self.left} x {self.right}")

    def then(self, other: PointedRelation) -> PointedRelation:
        if self.right != other.left:
            raise InterfaceError(f"cannot compose relations: {self.right} vs {other.left}")
        return PointedRelation(self.left, other.right,
                               frozenset((x, z) for x, y in self.pairs
                                         for y2, z in other.pairs if y == y2))


def from_relation(r: PointedRelation) -> Tlts:
    return _one_state(r.left, r.right, r.pairs)


def to_relation(t: Tlts) -> PointedRelation:
    return PointedRelation(t.left, t.right, relation_of(t))


# -- law suites ----------------------------------------------------------------

def frobenius_sides(x: Alphabet) -> tuple[Tlts, Tlts]:
    """Both sides of the Frobenius law as ``X*X -> X*X`` systems."""
    one = identity(x)
    lhs = compose_all(tensor(one, diag(x)), associator_inv(x, x, x), tensor(codiag(x), one))
    rhs = compose(codiag(x), diag(x))
    return lhs, rhs


def frobenius_report(x: Alphabet) -> LawReport:
    lhs, rhs = frobenius_sides(x)
    expected = frozenset(((l, l), (l, l)) for l in x.labels)
    return _relation_report("frobenius", lhs, rhs, expected, {"alphabet": str(x)})


def separable_report(x: Alphabet) -> LawReport:
    lhs = compose(diag(x), codiag(x))
    return _relation_report("separable", lhs, identity(x), relation_of(identity(x)),
                            {"alphabet": str(x)})


def _relation_report(law, lhs, rhs, expected, inputs) -> LawReport:
    got_l, got_r = relation_of(lhs), relation_of(rhs)
    if got_l == got_r == expected and lhs.interface == rhs.interface:
        return LawReport(law, True, inputs)
    return iso_report(law, lhs, rhs, inputs)


def monoid_reports(mult: Tlts, unit: Tlts | None, x: Alphabet, prefix="monoid") -> list[LawReport]:
    """Associativity, unit and commutativity diagrams for ``mult : X*X -> X``."""
    one = identity(x)
    inputs = {"object": str(x)}
    reports = [
        iso_report(f"{prefix}.associativity",
                   compose_all(associator(x, x, x), tensor(one, mult), mult),
                   compose(tensor(mult, one), mult), inputs),
        iso_report(f"{prefix}.commutativity", compose(twist(x, x), mult), mult, inputs),
    ]
    if unit is not None:
        reports.append(iso_report(f"{prefix}.left_unit",
                                  compose(tensor(unit, one), mult), left_unitor(x), inputs))
        reports.append(iso_report(f"{prefix}.right_unit",
                                  compose(tensor(one, unit), mult), right_unitor(x), inputs))
    return reports


def comonoid_reports(comult: Tlts, counit: Tlts | None, x: Alphabet,
                     prefix="comonoid") -> list[LawReport]:
    """The duals of :func:`monoid_reports` for ``comult : X -> X*X``."""
    one = identity(x)
    inputs = {"object": str(x)}
    reports = [
        iso_report(f"{prefix}.coassociativity",
                   compose_all(comult, tensor(comult, one), associator(x, x, x)),
                   compose(comult, tensor(one, comult)), inputs),
        iso_report(f"{prefix}.cocommutativity", compose(comult, twist(x, x)), comult, inputs),
    ]
    if counit is not None:
        reports.append(iso_report(f"{prefix}.left_counit",
                                  compose(comult, tensor(counit, one)), left_unitor_inv(x), inputs))
        reports.append(iso_report(f"{prefix}.right_counit",
                                  compose(comult, tensor(one, counit)), right_unitor_inv(x), inputs))
    return reports


def wscc_reports(x: Alphabet) -> list[LawReport]:
    return [frobenius_report(x), separable_report(x)]
