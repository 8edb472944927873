"""Commutative monoids and semigroups in pointed relations.

A multiplication assigns to each unordered pair of labels a (possibly empty)
set of labels; the empty set stands for a disallowed synchronisation.  The
optional unit is a set of labels containing the silent one.  Synchronization
algebras in Winskel's sense are the case where every product has at most one
element and only ``eps * eps`` yields ``eps``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .core import (
    EPS, Alphabet, I, LabelError, LawFailure, LawReport, Tlts, TltsError,
    alphabet_from_json, check_atom, format_label, label_from_json, label_key, label_to_json,
)
from .wscc import STAR, tensor_alphabet

TAU = "tau"
_EMPTY: frozenset = frozenset()


def bar(name: str) -> str:
    """The complementary CCS label of ``name``."""
    return name[1:] if name.startswith("~") else "~" + name


def _key(x, y) -> frozenset:
    return frozenset((x, y))


@dataclass(frozen=True)
class RelMonoid:
    """A commutative multiplication ``m : X x X -> P(X)`` with optional unit.

    ``mult`` maps unordered pairs (as frozensets) to non-empty result sets;
    absent pairs multiply to the empty set.
    """

    carrier: Alphabet
    mult: dict = field(hash=False)
    unit: frozenset | None = None

    def __post_init__(self):
        mult = {}
        for key, results in self.mult.items():
            key = frozenset(key)
            results = frozenset(results)
            if not 1 <= len(key) <= 2:
                raise LabelError(f"malformed product key {set(key)!r}")
            for label in key | results:
                if label not in self.carrier:
                    raise LabelError(f"label {format_label(label)} not in carrier {self.carrier}")
            if results:
                mult[key] = results
        object.__setattr__(self, "mult", mult)
        if self.unit is not None:
            unit = frozenset(self.unit)
            for label in unit:
                if label not in self.carrier:
                    raise LabelError(f"unit label {format_label(label)} not in carrier")
            object.__setattr__(self, "unit", unit)

    @classmethod
    def from_table(cls, carrier: Alphabet, entries: Iterable, unit=None) -> RelMonoid:
        """Build from ``(x, y, results)`` rows; ``eps * eps = eps`` is implied.

        Rows name unordered pairs; giving one pair two different results is
        an error.
        """
        mult: dict = {}
        for x, y, results in entries:
            key = _key(x, y)
            results = frozenset(results)
            if key in mult and mult[key] != results:
                raise LabelError(f"conflicting products for {format_label(x)} * {format_label(y)}")
            mult[key] = results
        eps = carrier.eps
        mult.setdefault(_key(eps, eps), frozenset({eps}))
        return cls(carrier, mult, None if unit is None else frozenset(unit))

    def m(self, x, y) -> frozenset:
        return self.mult.get(_key(x, y), _EMPTY)

    def m_sets(self, xs: Iterable, ys: Iterable) -> frozenset:
        ys = list(ys)
        out: set = set()
        for x in xs:
            for y in ys:
                out |= self.m(x, y)
        return frozenset(out)

    def table(self) -> list[tuple]:
        """Rows ``(x, y, results)`` with ``x <= y``, in canonical order."""
        rows = []
        for key, results in self.mult.items():
            x, y = sorted(key, key=label_key) * (2 if len(key) == 1 else 1)
            rows.append((x, y, results))
        return sorted(rows, key=lambda r: (label_key(r[0]), label_key(r[1])))

    def renamed(self, mapping: dict) -> RelMonoid:
        """Transport along a carrier bijection fixing the silent label."""
        carrier = Alphabet(frozenset(mapping[l] for l in self.carrier.labels))
        mult = {frozenset(mapping[l] for l in key): frozenset(mapping[l] for l in res)
                for key, res in self.mult.items()}
        unit = None if self.unit is None else frozenset(mapping[l] for l in self.unit)
        return RelMonoid(carrier, mult, unit)


def check_rel_monoid(m: RelMonoid) -> list[LawReport]:
    """Commutativity, associativity and (if present) unit laws, exhaustively."""
    labels = m.carrier.sorted()
    inputs = {"carrier": [label_to_json(l) for l in labels]}
    reports = []

    bad_keys = [k for k in m.mult if not isinstance(k, frozenset) or not 1 <= len(k) <= 2]
    reports.append(LawReport("commutativity", not bad_keys, inputs,
                             {"malformedKey": repr(bad_keys[0])} if bad_keys else None))

    witness = None
    for x, y, z in product(labels, repeat=3):
        lhs = m.m_sets(m.m(x, y), [z])
        rhs = m.m_sets([x], m.m(y, z))
        if lhs != rhs:
            witness = {"tripleViolatingAssoc": [label_to_json(v) for v in (x, y, z)],
                       "leftBracketing": sorted((label_to_json(v) for v in lhs), key=str),
                       "rightBracketing": sorted((label_to_json(v) for v in rhs), key=str)}
            break
    reports.append(LawReport("associativity", witness is None, inputs, witness))

    if m.unit is not None:
        if m.carrier.eps not in m.unit:
            reports.append(LawReport("unit", False, inputs, {"unitLacksSilentLabel": True}))
        else:
            for side in ("left_unit", "right_unit"):
                witness = None
                for x in labels:
                    got = m.m_sets(m.unit, [x]) if side == "left_unit" else m.m_sets([x], m.unit)
                    if got != {x}:
                        witness = {"label": label_to_json(x),
                                   "product": sorted((label_to_json(v) for v in got), key=str)}
                        break
                reports.append(LawReport(side, witness is None, inputs, witness))
    return reports


@dataclass(frozen=True)
class SyncAlgebraView:
    monoid: RelMonoid
    partial_function: bool
    winskel_epsilon: bool
    unit_partial_function: bool | None

    @property
    def is_synchronization_algebra(self) -> bool:
        return self.partial_function and self.winskel_epsilon


def classify(m: RelMonoid) -> SyncAlgebraView:
    reports = check_rel_monoid(m)
    failed = [r for r in reports if not r.passed]
    if failed:
        raise LawFailure(f"not a commutative monoid/semigroup: {failed[0].law} fails", reports)
    labels = m.carrier.sorted()
    eps = m.carrier.eps
    partial = all(len(m.m(x, y)) <= 1 for x, y in product(labels, repeat=2))
    winskel = all((eps in m.m(x, y)) == (x == y == eps) for x, y in product(labels, repeat=2))
    unit_partial = None if m.unit is None else len(m.unit) <= 1
    return SyncAlgebraView(m, partial, winskel, unit_partial)


def mult_arrow(m: RelMonoid) -> Tlts:
    """The multiplication as a one-state system ``X*X -> X``."""
    eps = m.carrier.eps
    if m.m(eps, eps) != {eps}:
        raise TltsError("eps * eps must be exactly {eps}: the arrow would not be reflexive")
    x = m.carrier
    transitions = {(STAR, (a, b), c, STAR)
                   for a, b in product(x.labels, repeat=2) for c in m.m(a, b)}
    return Tlts(tensor_alphabet(x, x), x, {STAR}, transitions)


def unit_arrow_of(m: RelMonoid) -> Tlts:
    if m.unit is None:
        raise TltsError("semigroup only: the algebra has no unit")
    return Tlts(I, m.carrier, {STAR}, {(STAR, I.eps, u, STAR) for u in m.unit})


def ccs_algebra(names: Iterable[str]) -> RelMonoid:
    """CCS handshake on ``names`` and their complements, with ``tau``."""
    names = list(names)
    for name in names:
        check_atom(name)
        if name in (EPS, TAU) or name.startswith("~"):
            raise LabelError(f"reserved or complemented name {name!r}")
    if len(set(names)) != len(names):
        raise LabelError(f"duplicate names in {names!r}")
    actions = [TAU] + [l for n in names for l in (n, bar(n))]
    carrier = Alphabet.of(*actions)
    entries = [(a, EPS, {a}) for a in actions]
    entries += [(n, bar(n), {TAU}) for n in names]
    return RelMonoid.from_table(carrier, entries, unit={EPS})


def broadcast_algebra(x: Alphabet) -> RelMonoid:
    """Pure broadcast: equal labels merge, everything else is disallowed."""
    return RelMonoid(x, {_key(l, l): {l} for l in x.labels}, frozenset(x.labels))


def clock_system(signal: str) -> Tlts:
    """One state, one non-reflexive edge carrying ``signal``."""
    if signal == EPS:
        raise LabelError("the clock signal cannot be the silent label")
    check_atom(signal)
    return Tlts(I, Alphabet.of(signal), {STAR},
                {(STAR, EPS, EPS, STAR), (STAR, EPS, signal, STAR)})


def algebra_to_json(m: RelMonoid) -> dict:
    return {
        "carrier": [label_to_json(l) for l in m.carrier.sorted()],
        "mult": [[label_to_json(x), label_to_json(y),
                  [label_to_json(z) for z in sorted(res, key=label_key)]]
                 for x, y, res in m.table()],
        "unit": None if m.unit is None else [label_to_json(l) for l in sorted(m.unit, key=label_key)],
    }


def algebra_from_json(obj: dict) -> RelMonoid:
    carrier = alphabet_from_json(obj["carrier"])
    entries = [(label_from_json(x), label_from_json(y), {label_from_json(z) for z in zs})
               for x, y, zs in obj.get("mult", [])]
    unit = obj.get("unit")
    return RelMonoid.from_table(carrier, entries,
                                None if unit is None else {label_from_json(l) for l in unit})
