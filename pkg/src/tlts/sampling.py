"""Seeded random systems for the property suites.

Every generator draws from a ``random.Random`` (Mersenne Twister) in a fixed
order, so a seed reproduces the same systems on every run:

1. ``n = randint(1, max_states)``; states are ``prefix + "0" .. prefix + str(n-1)``.
2. ``k = randint(0, max_transitions)``.
3. ``k`` times: source ``choice(states)``, label ``choice(labels)``, target
   ``choice(states)``, where ``labels`` is the non-silent carrier in
   canonical order.  Repeated draws collapse, so at most ``k`` transitions.
   Over a carrier with no visible labels step 2 is skipped and ``k = 0``.
"""

from __future__ import annotations

import random

from .core import Alphabet
from .parallel import OneSidedTS
from .wscc import PointedRelation

MAX_STATES = 4
MAX_TRANSITIONS = 6


def random_one_sided(rng: random.Random, alphabet: Alphabet, prefix: str = "s",
                     max_states: int = MAX_STATES,
                     max_transitions: int = MAX_TRANSITIONS) -> OneSidedTS:
    labels = [l for l in alphabet.sorted() if l != alphabet.eps]
    n = rng.randint(1, max_states)
    states = [f"{prefix}{i}" for i in range(n)]
    k = rng.randint(0, max_transitions) if labels else 0
    transitions = set()
    for _ in range(k):
        s = rng.choice(states)
        lam = rng.choice(labels)
        transitions.add((s, lam, rng.choice(states)))
    return OneSidedTS(states, alphabet, transitions)


def random_pointed_relation(rng: random.Random, left: Alphabet, right: Alphabet,
                            density: float = 0.4) -> PointedRelation:
    pairs = {(left.eps, right.eps)}
    for x in left.sorted():
        for y in right.sorted():
            if rng.random() < density:
                pairs.add((x, y))
    return PointedRelation(left, right, pairs)


def random_atomic_alphabet(rng: random.Random, max_size: int, pool: str = "abcdefgh") -> Alphabet:
    """An alphabet with ``1..max_size`` labels in total, counting ``eps``."""
    size = rng.randint(1, max_size)
    return Alphabet.of(*pool[:size - 1])
