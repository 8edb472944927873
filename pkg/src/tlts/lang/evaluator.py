"""Interface checking and evaluation of parsed modules.

Every intermediate result has ``I`` factors collapsed (``I*X`` and ``X*I``
become ``X``), so wiring such as ``A ; (B * id(L)) ; codiag(L)`` typechecks
when ``A : I -> L``.  The raw operations in :mod:`tlts.wscc` never do this.
"""

from __future__ import annotations

from .. import wscc
from ..algebra import RelMonoid, broadcast_algebra, ccs_algebra
from ..core import Alphabet, I, InterfaceError, Tlts, TltsError, reflexive_closure
from ..parallel import nary_parallel
from .nodes import (
    AlphName, AlphTensor, BroadcastAlgebraDecl, CcsAlgebraDecl, Compose, Const,
    Module, Par, Ref, Tensor,
)

_CONSTANTS = {
    "id": wscc.identity, "diag": wscc.diag, "codiag": wscc.codiag,
    "unit": wscc.unit_arrow, "counit": wscc.counit_arrow, "eta": wscc.eta_arrow,
    "eps_arrow": wscc.epsilon_arrow, "twist": wscc.twist, "proj": wscc.projection,
    "oproj": wscc.opposite_projection,
}


class UnknownNameError(TltsError):
    pass


def _const_interface(op: str, args: list[Alphabet]) -> tuple[Alphabet, Alphabet]:
    t = wscc.tensor_alphabet
    x = args[0]
    y = args[1] if len(args) > 1 else None
    return {
        "id": lambda: (x, x),
        "diag": lambda: (x, t(x, x)),
        "codiag": lambda: (t(x, x), x),
        "unit": lambda: (I, x),
        "counit": lambda: (x, I),
        "eta": lambda: (I, t(x, x)),
        "eps_arrow": lambda: (t(x, x), I),
        "twist": lambda: (t(x, y), t(y, x)),
        "proj": lambda: (t(x, y), x),
        "oproj": lambda: (x, t(x, y)),
    }[op]()


def _norm(a: Alphabet) -> Alphabet:
    return wscc.unit_normal_form(a)[0]


def _describe(e) -> str:
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, Const):
        return e.op
    if isinstance(e, Par):
        return f"par[{e.algebra}]"
    return type(e).__name__.lower()


class Evaluator:
    """Resolves names in ``module`` and evaluates expressions, with caching."""

    def __init__(self, module: Module):
        self.module = module
        self._alphabets: dict = {}
        self._algebras: dict = {}
        self._systems: dict = {}
        self._values: dict = {}
        self._interfaces: dict = {}
        self._active: list = []

    # -- names -----------------------------------------------------------------

    def alphabet(self, a, raw: bool = False) -> Alphabet:
        """The alphabet denoted by ``a``; with ``raw`` the ``I`` factors are kept."""
        if isinstance(a, AlphName):
            if a.name == "I":
                return I
            if a.name not in self.module.alphabets:
                raise UnknownNameError(f"{a.pos or '?'}: unknown alphabet {a.name!r}")
            if a.name not in self._alphabets:
                self._alphabets[a.name] = Alphabet(self.module.alphabets[a.name].labels)
            return self._alphabets[a.name]
        if isinstance(a, AlphTensor):
            out = wscc.tensor_alphabet(self.alphabet(a.left, True), self.alphabet(a.right, True))
            return out if raw else _norm(out)
        if isinstance(a, str):
            return self.alphabet(AlphName(a), raw)
        raise TypeError(f"not an alphabet expression: {a!r}")

    def algebra(self, name: str) -> RelMonoid:
        if name in self._algebras:
            return self._algebras[name]
        decl = self.module.algebras.get(name)
        if decl is None:
            raise UnknownNameError(f"unknown algebra {name!r}")
        if isinstance(decl, CcsAlgebraDecl):
            alg = ccs_algebra(decl.names)
        elif isinstance(decl, BroadcastAlgebraDecl):
            alg = broadcast_algebra(self.alphabet(decl.carrier))
        else:
            carrier = self.alphabet(decl.carrier)
            rows = [(*sorted(key, key=str) * (2 if len(key) == 1 else 1), res)
                    for key, res in decl.products]
            alg = RelMonoid.from_table(carrier, rows, decl.unit)
        self._algebras[name] = alg
        return alg

    def system(self, name: str) -> Tlts:
        if name not in self._systems:
            decl = self.module.systems.get(name)
            if decl is None:
                raise UnknownNameError(f"unknown system {name!r}")
            left = self.alphabet(decl.left, raw=True)
            right = self.alphabet(decl.right, raw=True)
            try:
                t = reflexive_closure(decl.states, decl.transitions, left, right)
            except TltsError as exc:
                raise type(exc)(f"system {name}: {exc}") from exc
            self._systems[name] = wscc.normalize_units(t)
        return self._systems[name]

    def names(self) -> list[str]:
        return list(self.module.systems) + list(self.module.exprs)

    def named(self, name: str) -> Tlts:
        """Value of a system or expr declaration."""
        if name in self.module.exprs:
            return self._guarded(name, lambda: self.evaluate(self.module.exprs[name].expr, name))
        if name in self.module.systems:
            return self.system(name)
        raise UnknownNameError(f"unknown system or expr {name!r}")

    def named_interface(self, name: str) -> tuple[Alphabet, Alphabet]:
        if name in self.module.exprs:
            return self._guarded(name, lambda: self.infer(self.module.exprs[name].expr, name))
        if name in self.module.systems:
            decl = self.module.systems[name]
            return self.alphabet(decl.left), self.alphabet(decl.right)
        raise UnknownNameError(f"unknown system or expr {name!r}")

    def _guarded(self, name, thunk):
        if name in self._active:
            cycle = " -> ".join(self._active + [name])
            raise TltsError(f"recursive expression: {cycle}")
        self._active.append(name)
        try:
            return thunk()
        finally:
            self._active.pop()

    # -- interfaces ----------------------------------------------------------------

    def infer(self, e, path: str = "") -> tuple[Alphabet, Alphabet]:
        here = f"{path} > {_describe(e)}" if path else _describe(e)
        if isinstance(e, Ref):
            if e.name not in self._interfaces:
                self._interfaces[e.name] = self.named_interface(e.name)
            return self._interfaces[e.name]
        if isinstance(e, Const):
            args = [self.alphabet(a, raw=True) for a in e.args]
            left, right = _const_interface(e.op, args)
            return _norm(left), _norm(right)
        if isinstance(e, Compose):
            l1, r1 = self.infer(e.left, here)
            l2, r2 = self.infer(e.right, here)
            if r1 != l2:
                raise InterfaceError(f"{e.pos or '?'}: in {here}: cannot compose "
                                     f"{l1} -> {r1} with {l2} -> {r2}: {r1} is not {l2}")
            return l1, r2
        if isinstance(e, Tensor):
            l1, r1 = self.infer(e.left, here)
            l2, r2 = self.infer(e.right, here)
            return (_norm(wscc.tensor_alphabet(l1, l2)), _norm(wscc.tensor_alphabet(r1, r2)))
        if isinstance(e, Par):
            alg = self.algebra(e.algebra)
            faces = [self.infer(a, f"{here} > arg {i + 1}") for i, a in enumerate(e.args)]
            for i, face in enumerate(faces):
                if face != faces[0]:
                    raise InterfaceError(f"{e.pos or '?'}: in {here}: argument {i + 1} has "
                                         f"interface {face[0]} -> {face[1]}, argument 1 has "
                                         f"{faces[0][0]} -> {faces[0][1]}")
            if faces[0][1] != alg.carrier:
                raise InterfaceError(f"{e.pos or '?'}: in {here}: arguments emit {faces[0][1]} "
                                     f"but algebra {e.algebra} is on {alg.carrier}")
            return faces[0]
        raise TypeError(f"not an expression node: {e!r}")

    # -- evaluation ------------------------------------------------------------------

    def evaluate(self, e, path: str = "") -> Tlts:
        self.infer(e, path)
        return self._eval(e)

    def _eval(self, e) -> Tlts:
        if isinstance(e, Ref):
            if e.name not in self._values:
                self._values[e.name] = self.named(e.name)
            return self._values[e.name]
        if isinstance(e, Const):
            args = [self.alphabet(a, raw=True) for a in e.args]
            return wscc.normalize_units(_CONSTANTS[e.op](*args))
        if isinstance(e, Compose):
            return wscc.compose(self._eval(e.left), self._eval(e.right))
        if isinstance(e, Tensor):
            return wscc.normalize_units(wscc.tensor(self._eval(e.left), self._eval(e.right)))
        if isinstance(e, Par):
            return nary_parallel([self._eval(a) for a in e.args], self.algebra(e.algebra))
        raise TypeError(f"not an expression node: {e!r}")


def infer_interface(e, env: Module) -> tuple[Alphabet, Alphabet]:
    return Evaluator(env).infer(e)


def evaluate(e, env: Module) -> Tlts:
    return Evaluator(env).evaluate(e)
