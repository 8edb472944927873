"""Graphviz rendering of transition systems."""

from __future__ import annotations

from .core import Tlts, format_label, format_state


def _quote(s: str) -> str:
    return '"{}"'.format(s.replace("\\", "\\\\").replace('"', r"\""))


def to_dot(t: Tlts, name: str = "tlts", show_eps: bool = False, initial=()) -> str:
    """States become nodes and transitions edges labelled ``x/y``.

    Reflexive ``eps/eps`` loops are left out unless ``show_eps`` is set.
    """
    initial = set(initial)
    keep = t.transitions if show_eps else t.non_reflexive()
    edges = [tr for tr in t.sorted_transitions() if tr in keep]
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    for s in t.sorted_states():
        shape = "doublecircle" if s in initial else "circle"
        lines.append(f"  {_quote(format_state(s))} [shape={shape}];")
    for s, x, y, u in edges:
        label = f"{format_label(x)}/{format_label(y)}"
        lines.append(f"  {_quote(format_state(s))} -> {_quote(format_state(u))} "
                     f"[label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
