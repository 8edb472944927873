import pytest
from hypothesis import settings, strategies as st

from tlts import EPS, Alphabet, OneSidedTS, ccs_algebra, reflexive_closure

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, in criterion order."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if rep.when == "call" and "criterion" in props:
                lines.append((props["criterion"], outcome.upper()[:4], props["title"]))
    if lines:
        terminalreporter.section("acceptance criteria")
        for n, verdict, title in sorted(lines):
            terminalreporter.write_line(f"[{verdict}] AC{n}: {title}")


@pytest.fixture
def ccs_a():
    return ccs_algebra(["a"])


@pytest.fixture
def handshake(ccs_a):
    L = ccs_a.carrier
    a = OneSidedTS({"s0", "s1"}, L, {("s0", "a", "s1")})
    b = OneSidedTS({"t0", "t1"}, L, {("t0", "~a", "t1")})
    return a, b


def alphabets(pool="abc", max_size=3):
    return st.lists(st.sampled_from(pool), max_size=max_size, unique=True).map(
        lambda ls: Alphabet.of(*ls))


@st.composite
def systems(draw, left=None, right=None, max_states=4, max_transitions=6):
    """Small valid Tlts over the given (or drawn) alphabets."""
    left = left if left is not None else draw(alphabets("ab", 2))
    right = right if right is not None else draw(alphabets("xy", 2))
    n = draw(st.integers(0, max_states))
    states = [f"q{i}" for i in range(n)]
    if not states:
        return reflexive_closure([], [], left, right)
    quad = st.tuples(st.sampled_from(states), st.sampled_from(left.sorted()),
                     st.sampled_from(right.sorted()), st.sampled_from(states))
    transitions = draw(st.lists(quad, max_size=max_transitions))
    return reflexive_closure(states, transitions, left, right)


@st.composite
def one_sided(draw, alphabet, prefix="s", max_states=4, max_transitions=6):
    n = draw(st.integers(1, max_states))
    states = [f"{prefix}{i}" for i in range(n)]
    labels = [l for l in alphabet.sorted() if l != EPS]
    triple = st.tuples(st.sampled_from(states), st.sampled_from(labels), st.sampled_from(states))
    return OneSidedTS(states, alphabet, draw(st.lists(triple, max_size=max_transitions)))
