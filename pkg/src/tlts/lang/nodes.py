"""Syntax tree for ``.tlts`` source files.

Source positions are carried on every node but excluded from equality, so
two trees compare equal when they have the same structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

CONST_ARITY = {
    "id": 1, "diag": 1, "codiag": 1, "unit": 1, "counit": 1, "eta": 1,
    "eps_arrow": 1, "twist": 2, "proj": 2, "oproj": 2,
}

RESERVED = frozenset({
    "alphabet", "system", "algebra", "expr", "states", "unit", "eps", "id", "diag",
    "codiag", "counit", "eta", "eps_arrow", "twist", "proj", "oproj", "par",
})


@dataclass(frozen=True)
class Pos:
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


def _pos():
    return field(default=None, compare=False, repr=False)


# -- alphabet expressions --------------------------------------------------------

@dataclass(frozen=True)
class AlphName:
    name: str
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class AlphTensor:
    left: AlphExpr
    right: AlphExpr
    pos: Pos | None = _pos()


AlphExpr = Union[AlphName, AlphTensor]


# -- arrow expressions -----------------------------------------------------------

@dataclass(frozen=True)
class Ref:
    name: str
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Compose:
    """``left ; right``: left first."""

    left: Expr
    right: Expr
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Tensor:
    left: Expr
    right: Expr
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Par:
    algebra: str
    args: tuple
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Const:
    """A structure constant such as ``diag(L)`` or ``twist(L, K)``."""

    op: str
    args: tuple
    pos: Pos | None = _pos()


Expr = Union[Ref, Compose, Tensor, Par, Const]


# -- declarations ----------------------------------------------------------------

@dataclass(frozen=True)
class AlphabetDecl:
    name: str
    labels: frozenset  # always includes "eps"
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class SystemDecl:
    name: str
    left: AlphExpr
    right: AlphExpr
    states: frozenset
    transitions: frozenset  # (source, left label, right label, target)
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class TableAlgebraDecl:
    """``algebra N on A { x * y = z; ...; unit = {...}; }``."""

    name: str
    carrier: AlphExpr
    products: frozenset  # of (frozenset pair, frozenset results)
    unit: frozenset | None
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class CcsAlgebraDecl:
    name: str
    names: tuple
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class BroadcastAlgebraDecl:
    name: str
    carrier: AlphExpr
    pos: Pos | None = _pos()


AlgebraDecl = Union[TableAlgebraDecl, CcsAlgebraDecl, BroadcastAlgebraDecl]


@dataclass(frozen=True)
class ExprDecl:
    name: str
    expr: Expr
    pos: Pos | None = _pos()


@dataclass
class Module:
    alphabets: dict = field(default_factory=dict)
    algebras: dict = field(default_factory=dict)
    systems: dict = field(default_factory=dict)
    exprs: dict = field(default_factory=dict)
