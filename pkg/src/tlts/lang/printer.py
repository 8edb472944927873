"""Canonical pretty-printer; ``parse(print_module(m)) == m``."""

from __future__ import annotations

from ..core import EPS, label_key
from .nodes import (
    AlphName, AlphTensor, BroadcastAlgebraDecl, CcsAlgebraDecl, Compose, Const,
    Module, Par, Ref, Tensor,
)
from .parser import _eps_shape

_COMPOSE, _TENSOR, _ATOM = 0, 1, 2


def print_label(label) -> str:
    if isinstance(label, tuple):
        return f"{print_label(label[0])}*{_latom(label[1])}"
    return label


def _latom(label) -> str:
    return f"({print_label(label)})" if isinstance(label, tuple) else label


def print_alph(a, ctx: int = _TENSOR) -> str:
    if isinstance(a, AlphName):
        return a.name
    text = f"{print_alph(a.left, _TENSOR)} * {print_alph(a.right, _ATOM)}"
    return f"({text})" if ctx > _TENSOR else text


def print_expr(e, ctx: int = _COMPOSE) -> str:
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, Const):
        return f"{e.op}({', '.join(print_alph(a) for a in e.args)})"
    if isinstance(e, Par):
        return f"par[{e.algebra}]({', '.join(print_expr(a) for a in e.args)})"
    if isinstance(e, Compose):
        text = f"{print_expr(e.left, _COMPOSE)} ; {print_expr(e.right, _TENSOR)}"
        return f"({text})" if ctx > _COMPOSE else text
    if isinstance(e, Tensor):
        text = f"{print_expr(e.left, _TENSOR)} * {print_expr(e.right, _ATOM)}"
        return f"({text})" if ctx > _TENSOR else text
    raise TypeError(f"not an expression node: {e!r}")


def _labels(labels) -> str:
    return ", ".join(print_label(l) for l in sorted(labels, key=label_key))


def print_module(m: Module) -> str:
    out = []
    for d in m.alphabets.values():
        body = _labels(l for l in d.labels if l != EPS)
        out.append(f"alphabet {d.name} = {{{' ' + body + ' ' if body else ''}}};")
    for d in m.algebras.values():
        if isinstance(d, CcsAlgebraDecl):
            out.append(f"algebra {d.name} = ccs({', '.join(d.names)});")
        elif isinstance(d, BroadcastAlgebraDecl):
            out.append(f"algebra {d.name} = broadcast({print_alph(d.carrier)});")
        else:
            lines = [f"algebra {d.name} on {print_alph(d.carrier)} {{"]
            rows = []
            for key, results in d.products:
                x, y = sorted(key, key=label_key) * (2 if len(key) == 1 else 1)
                rows.append(((label_key(x), label_key(y)), x, y, results))
            for _, x, y, results in sorted(rows, key=lambda r: r[0]):
                rhs = (print_label(next(iter(results))) if len(results) == 1
                       else f"{{ {_labels(results)} }}")
                lines.append(f"  {_latom(x)} * {_latom(y)} = {rhs};")
            if d.unit is not None:
                lines.append(f"  unit = {{{' ' + _labels(d.unit) + ' ' if d.unit else ''}}};")
            lines.append("}")
            out.append("\n".join(lines))
    for d in m.systems.values():
        lines = [f"system {d.name} : {print_alph(d.left)} -> {print_alph(d.right)} {{"]
        lines.append(f"  states {', '.join(sorted(d.states))};" if d.states else "  states;")
        left_eps = _eps_shape(d.left)
        for s, x, y, u in sorted(d.transitions, key=lambda t: (t[0], label_key(t[1]),
                                                               label_key(t[2]), t[3])):
            lab = print_label(y) if x == left_eps else f"{print_label(x)}/{print_label(y)}"
            lines.append(f"  {s} -{lab}-> {u};")
        lines.append("}")
        out.append("\n".join(lines))
    for d in m.exprs.values():
        out.append(f"expr {d.name} = {print_expr(d.expr)};")
    return "\n\n".join(out) + ("\n" if out else "")
