"""Alphabets, two-sided labelled transition systems and structural utilities.

A label is either an atom (a non-empty string) or an ordered pair of labels,
the latter arising from tensoring alphabets.  The silent label is the atom
``"eps"``; the silent label of a product alphabet is the pair of the factors'
silent labels.

A state is either an atom or an ordered pair of states.  Pairs produced by
composition and tensor are stored exactly as produced and never flattened.
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Iterable

EPS = "eps"

Label = Hashable
State = Hashable
Transition = tuple  # (source, left label, right label, target)

_ATOM_RE = re.compile(r"~?[A-Za-z0-9_][A-Za-z0-9_']*\Z")


class TltsError(Exception):
    """Base class for errors raised by this package."""


class LabelError(TltsError):
    """A label is malformed or lies outside its alphabet."""


class UnknownStateError(TltsError):
    """A state was referenced that the system does not have."""


class InterfaceError(TltsError):
    """Two arrows do not share the interface required to combine them."""


class LawFailure(TltsError):
    """An operation required a law that does not hold; carries the reports."""

    def __init__(self, message: str, reports: list[LawReport]):
        super().__init__(message)
        self.reports = reports


def check_atom(token: str) -> str:
    if not isinstance(token, str) or not _ATOM_RE.match(token):
        raise LabelError(f"malformed label {token!r}")
    return token


def eps_like(label: Label) -> Label:
    """The silent label with the same pair-nesting shape as ``label``."""
    if isinstance(label, tuple):
        return (eps_like(label[0]), eps_like(label[1]))
    return EPS


def label_key(label: Label):
    if isinstance(label, tuple):
        return (2, label_key(label[0]), label_key(label[1]))
    if label == EPS:
        return (0,)
    return (1, label)


def state_key(state: State):
    if isinstance(state, tuple):
        return (1, state_key(state[0]), state_key(state[1]))
    return (0, str(state))


def transition_key(t: Transition):
    s, x, y, u = t
    return (state_key(s), label_key(x), label_key(y), state_key(u))


def format_label(label: Label) -> str:
    """Render ``label`` with ``*`` for pairs; pairs associate to the left."""
    if isinstance(label, tuple):
        left, right = label
        rhs = format_label(right)
        if isinstance(right, tuple):
            rhs = f"({rhs})"
        return f"{format_label(left)}*{rhs}"
    return str(label)


def format_state(state: State) -> str:
    if isinstance(state, tuple):
        return f"({format_state(state[0])},{format_state(state[1])})"
    return str(state)


def _check_label_shape(label: Label) -> None:
    if isinstance(label, tuple):
        if len(label) != 2:
            raise LabelError(f"pair label must have two components: {label!r}")
        _check_label_shape(label[0])
        _check_label_shape(label[1])
    else:
        check_atom(label)


@dataclass(frozen=True)
class Alphabet:
    """A finite label set containing its silent label.

    Equality is literal equality of label sets.  All labels must have the same
    pair-nesting shape, which determines the silent label.
    """

    labels: frozenset

    def __post_init__(self):
        labels = frozenset(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise LabelError("an alphabet must contain at least its silent label")
        shapes = set()
        for label in labels:
            _check_label_shape(label)
            shapes.add(eps_like(label))
        if len(shapes) != 1:
            raise LabelError(f"labels of mixed pair shape: {sorted(labels, key=label_key)!r}")
        (eps,) = shapes
        if eps not in labels:
            raise LabelError(f"alphabet lacks its silent label {format_label(eps)}")

    @classmethod
    def of(cls, *labels: Label) -> Alphabet:
        """Atomic alphabet on ``labels``; ``eps`` is added."""
        return cls(frozenset(labels) | {EPS})

    @cached_property
    def eps(self) -> Label:
        return eps_like(next(iter(self.labels)))

    @property
    def is_product(self) -> bool:
        return isinstance(self.eps, tuple)

    @cached_property
    def factors(self) -> tuple[Alphabet, Alphabet]:
        if not self.is_product:
            raise LabelError("atomic alphabet has no factors")
        return (Alphabet(frozenset(l[0] for l in self.labels)),
                Alphabet(frozenset(l[1] for l in self.labels)))

    def sorted(self) -> list:
        return sorted(self.labels, key=label_key)

    def __contains__(self, label) -> bool:
        return label in self.labels

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.labels)

    def __str__(self) -> str:
        return "{" + ", ".join(format_label(l) for l in self.sorted()) + "}"


I = Alphabet(frozenset({EPS}))


@dataclass(frozen=True)
class Tlts:
    """A two-sided labelled transition system ``left -> right``.

    Construction only freezes the fields; use :func:`validate` to audit an
    instance and :func:`reflexive_closure` to build a checked one.
    """

    left: Alphabet
    right: Alphabet
    states: frozenset
    transitions: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))

    @property
    def interface(self) -> tuple[Alphabet, Alphabet]:
        return self.left, self.right

    def non_reflexive(self) -> frozenset:
        eps = (self.left.eps, self.right.eps)
        return frozenset(t for t in self.transitions
                         if not (t[0] == t[3] and (t[1], t[2]) == eps))

    def sorted_states(self) -> list:
        return sorted(self.states, key=state_key)

    def sorted_transitions(self) -> list:
        return sorted(self.transitions, key=transition_key)

    def __repr__(self) -> str:
        return (f"Tlts({self.left} -> {self.right}, {len(self.states)} states, "
                f"{len(self.transitions)} transitions)")


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: Any = None


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate(t: Tlts) -> ValidationResult:
    """Audit every Tlts invariant; never raises."""
    found = []
    for tr in t.sorted_transitions():
        if len(tr) != 4:
            found.append(Violation("malformed transition", f"not a quadruple: {tr!r}", tr))
            continue
        s, x, y, u = tr
        for end in (s, u):
            if end not in t.states:
                found.append(Violation("unknown state",
                                       f"state {format_state(end)} not in states", tr))
        if x not in t.left:
            found.append(Violation("label out of alphabet",
                                   f"left label {format_label(x)} not in {t.left}", tr))
        if y not in t.right:
            found.append(Violation("label out of alphabet",
                                   f"right label {format_label(y)} not in {t.right}", tr))
    for s in t.sorted_states():
        if (s, t.left.eps, t.right.eps, s) not in t.transitions:
            found.append(Violation("missing reflexive edge",
                                   f"missing reflexive edge at {format_state(s)}", s))
    return ValidationResult(tuple(found))


def reflexive_closure(states: Iterable, transitions: Iterable, left: Alphabet,
                      right: Alphabet) -> Tlts:
    """The Tlts on ``states`` with ``transitions`` plus every reflexive edge.

    Raises LabelError or UnknownStateError naming the offending quadruple.
    """
    states = frozenset(states)
    quads = set()
    for tr in transitions:
        s, x, y, u = tr
        if x not in left or y not in right:
            raise LabelError(f"transition {format_transition(tr)} leaves the interface "
                             f"{left} -> {right}")
        for end in (s, u):
            if end not in states:
                raise UnknownStateError(f"transition {format_transition(tr)} uses "
                                        f"unknown state {format_state(end)}")
        quads.add((s, x, y, u))
    quads.update((s, left.eps, right.eps, s) for s in states)
    return Tlts(left, right, states, frozenset(quads))


def format_transition(tr: Transition) -> str:
    s, x, y, u = tr
    return f"{format_state(s)} -{format_label(x)}/{format_label(y)}-> {format_state(u)}"


def rename_states(t: Tlts, mapping) -> Tlts:
    """Apply an injective state renaming (a dict or a callable)."""
    f = mapping.__getitem__ if isinstance(mapping, dict) else mapping
    states = frozenset(f(s) for s in t.states)
    if len(states) != len(t.states):
        raise TltsError("state renaming is not injective")
    return Tlts(t.left, t.right, states,
                frozenset((f(s), x, y, f(u)) for s, x, y, u in t.transitions))


def relabel(t: Tlts, left: Alphabet, right: Alphabet, left_map, right_map) -> Tlts:
    return Tlts(left, right, t.states,
                frozenset((s, left_map(x), right_map(y), u) for s, x, y, u in t.transitions))


def relation_of(t: Tlts) -> frozenset:
    """The label relation of a one-state system."""
    if len(t.states) != 1:
        raise TltsError(f"expected a one-state system, got {len(t.states)} states")
    return frozenset((x, y) for _, x, y, _ in t.transitions)


def reachable(t: Tlts, initial: Iterable) -> Tlts:
    """Restriction of ``t`` to the states reachable from ``initial``."""
    initial = list(initial)
    for s in initial:
        if s not in t.states:
            raise UnknownStateError(f"unknown initial state {format_state(s)}")
    succ: dict = {}
    for s, _, _, u in t.transitions:
        succ.setdefault(s, set()).add(u)
    seen = set(initial)
    queue = deque(initial)
    while queue:
        s = queue.popleft()
        for u in succ.get(s, ()):
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return Tlts(t.left, t.right, frozenset(seen),
                frozenset(tr for tr in t.transitions if tr[0] in seen))


# -- isomorphism -------------------------------------------------------------

def _refine(colors: dict, out: dict, inn: dict) -> dict:
    """Colour refinement to a stable partition; codes are canonical per call."""
    ncolors = len(set(colors.values()))
    while True:
        sigs = {}
        for n, c in colors.items():
            sigs[n] = (c,
                       tuple(sorted((lp, colors[m]) for lp, m in out[n])),
                       tuple(sorted((lp, colors[m]) for lp, m in inn[n])))
        table = {sig: i for i, sig in enumerate(sorted(set(sigs.values())))}
        colors = {n: table[sig] for n, sig in sigs.items()}
        if len(table) == ncolors:
            return colors
        ncolors = len(table)


def iso_equal(a: Tlts, b: Tlts) -> dict | None:
    """A state bijection ``a -> b`` respecting all labelled transitions, or None.

    Alphabets must be literally equal.  The search refines colour classes on
    the disjoint union of both systems, then individualizes one state at a
    time and backtracks.
    """
    if a.interface != b.interface:
        return None
    if len(a.states) != len(b.states) or len(a.transitions) != len(b.transitions):
        return None
    pairs = {(x, y) for _, x, y, _ in a.transitions} | {(x, y) for _, x, y, _ in b.transitions}
    lp_index = {p: i for i, p in enumerate(sorted(pairs, key=lambda p: (label_key(p[0]), label_key(p[1]))))}

    out: dict = {}
    inn: dict = {}
    edges: dict = {}
    for side, t in ((0, a), (1, b)):
        for s in t.states:
            out[(side, s)] = []
            inn[(side, s)] = []
        for s, x, y, u in t.transitions:
            lp = lp_index[(x, y)]
            out[(side, s)].append((lp, (side, u)))
            inn[(side, u)].append((lp, (side, s)))
            edges.setdefault(((side, s), (side, u)), set()).add(lp)

    def histogram(colors, side):
        return Counter(c for (sd, _), c in colors.items() if sd == side)

    def search(colors):
        colors = _refine(colors, out, inn)
        if histogram(colors, 0) != histogram(colors, 1):
            return None
        cells: dict = {}
        for node, c in colors.items():
            cells.setdefault(c, ([], []))[node[0]].append(node)
        pending = [cell for cell in cells.values() if len(cell[0]) > 1]
        if not pending:
            mapping = {cell[0][0]: cell[1][0] for cell in cells.values()}
            for (n, m), lps in edges.items():
                if n[0] == 0 and edges.get((mapping[n], mapping[m])) != lps:
                    return None
            return {n[1]: m[1] for n, m in mapping.items()}
        lefts, rights = min(pending, key=lambda cell: (len(cell[0]), state_key(cell[0][0][1])))
        pick = min(lefts, key=lambda n: state_key(n[1]))
        fresh = max(colors.values()) + 1
        for cand in sorted(rights, key=lambda n: state_key(n[1])):
            trial = dict(colors)
            trial[pick] = fresh
            trial[cand] = fresh
            found = search(trial)
            if found is not None:
                return found
        return None

    return search({n: 0 for n in out})


def iso_equivalent(a: Tlts, b: Tlts) -> bool:
    return iso_equal(a, b) is not None


# -- JSON --------------------------------------------------------------------

def label_to_json(label: Label):
    if isinstance(label, tuple):
        return [label_to_json(label[0]), label_to_json(label[1])]
    return label


def label_from_json(obj) -> Label:
    if isinstance(obj, list):
        if len(obj) != 2:
            raise LabelError(f"pair label must be a 2-array: {obj!r}")
        return (label_from_json(obj[0]), label_from_json(obj[1]))
    return check_atom(obj)


state_to_json = label_to_json


def state_from_json(obj) -> State:
    if isinstance(obj, list):
        if len(obj) != 2:
            raise TltsError(f"pair state must be a 2-array: {obj!r}")
        return (state_from_json(obj[0]), state_from_json(obj[1]))
    if not isinstance(obj, str) or not obj:
        raise TltsError(f"state names must be non-empty strings: {obj!r}")
    return obj


def alphabet_from_json(items) -> Alphabet:
    labels = {label_from_json(x) for x in items}
    if not labels:
        return I
    shape = eps_like(next(iter(labels)))
    return Alphabet(frozenset(labels) | {shape})


def alphabet_to_json(alpha: Alphabet) -> list:
    return [label_to_json(l) for l in alpha.sorted()]


def tlts_to_json(t: Tlts) -> dict:
    return {
        "left": alphabet_to_json(t.left),
        "right": alphabet_to_json(t.right),
        "states": [state_to_json(s) for s in t.sorted_states()],
        "transitions": [[state_to_json(s), label_to_json(x), label_to_json(y), state_to_json(u)]
                        for s, x, y, u in t.sorted_transitions()],
    }


def tlts_from_json(obj: dict) -> Tlts:
    left = alphabet_from_json(obj.get("left", []))
    right = alphabet_from_json(obj.get("right", []))
    states = [state_from_json(s) for s in obj.get("states", [])]
    transitions = []
    for tr in obj.get("transitions", []):
        if len(tr) != 4:
            raise TltsError(f"transition must be a 4-array: {tr!r}")
        s, x, y, u = tr
        transitions.append((state_from_json(s), label_from_json(x),
                            label_from_json(y), state_from_json(u)))
    return reflexive_closure(states, transitions, left, right)


# -- law reports ---------------------------------------------------------------

@dataclass
class LawReport:
    """Outcome of one law check."""

    law: str
    passed: bool
    inputs: Any = None
    witness: dict | None = field(default=None)

    def to_json(self) -> dict:
        out: dict = {"law": self.law, "pass": self.passed}
        if self.inputs is not None:
            out["inputs"] = self.inputs
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def transition_to_json(tr: Transition) -> list:
    s, x, y, u = tr
    return [state_to_json(s), label_to_json(x), label_to_json(y), state_to_json(u)]


def iso_report(law: str, lhs: Tlts, rhs: Tlts, inputs=None, expected=None) -> LawReport:
    """Report whether ``lhs`` and ``rhs`` are isomorphic.

    ``expected`` is the canonical bijection the law predicts (dict or callable
    on lhs states); it is only used to name a witness transition on failure.
    """
    if iso_equal(lhs, rhs) is not None:
        return LawReport(law, True, inputs)
    witness: dict = {}
    if lhs.interface != rhs.interface:
        witness["interfaceMismatch"] = {
            "left": [alphabet_to_json(lhs.left), alphabet_to_json(lhs.right)],
            "right": [alphabet_to_json(rhs.left), alphabet_to_json(rhs.right)],
        }
    else:
        moved = lhs
        if expected is not None:
            try:
                moved = rename_states(lhs, expected)
            except (KeyError, TypeError, TltsError):
                moved = lhs
        if len(lhs.states) == 1 and len(rhs.states) == 1:
            (s,), (u,) = lhs.states, rhs.states
            moved = rename_states(lhs, {s: u})
        only_l = sorted(moved.transitions - rhs.transitions, key=transition_key)
        only_r = sorted(rhs.transitions - moved.transitions, key=transition_key)
        if only_l:
            witness["transitionOnlyInLeft"] = transition_to_json(only_l[0])
        elif only_r:
            witness["transitionOnlyInRight"] = transition_to_json(only_r[0])
        witness["counts"] = {"left": [len(lhs.states), len(lhs.transitions)],
                             "right": [len(rhs.states), len(rhs.transitions)]}
    return LawReport(law, False, inputs, witness)
