"""Recursive-descent parser for ``.tlts`` source.

Grammar (``;`` is diagrammatic composition, ``*`` is tensor and binds tighter)::

    module  := decl*
    decl    := 'alphabet' NAME '=' '{' [label {',' label}] '}' ';'
             | 'system' NAME ':' alph '->' alph '{' {item} '}'
             | 'algebra' NAME 'on' alph '{' {row} '}'
             | 'algebra' NAME '=' ('ccs' '(' NAME {',' NAME} ')' | 'broadcast' '(' alph ')') ';'
             | 'expr' NAME '=' expr ';'
    item    := 'states' [NAME {',' NAME}] ';'
             | NAME '-' label ['/' label] '->' NAME ';'     # '-y->' means '-eps/y->'
    row     := latom '*' latom '=' (label | '{' label {',' label} '}') ';'
             | 'unit' '=' '{' [label {',' label}] '}' ';'
    alph    := aatom {'*' aatom}          aatom := NAME | '(' alph ')'
    label   := latom {'*' latom}          latom := 'eps' | NAME | '~'NAME | '(' label ')'
    expr    := texpr {';' texpr}          texpr := atom {'*' atom}
    atom    := NAME | '(' expr ')' | CONST '(' alph [',' alph] ')'
             | 'par' '[' NAME ']' '(' expr {',' expr} ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..core import EPS, TltsError
from .nodes import (
    CONST_ARITY, RESERVED, AlphabetDecl, AlphName, AlphTensor, BroadcastAlgebraDecl,
    CcsAlgebraDecl, Compose, Const, ExprDecl, Module, Par, Pos, Ref, SystemDecl,
    TableAlgebraDecl, Tensor,
)

BUILTIN_ALPHABETS = frozenset({"I"})
DECL_KEYWORDS = ("alphabet", "system", "algebra", "expr")


class ParseError(TltsError):
    def __init__(self, message: str, pos: Pos | None = None, expected=()):
        self.pos = pos
        self.expected = tuple(sorted(set(expected)))
        where = f"{pos}: " if pos is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "sym" or "eof"
    value: str
    pos: Pos

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.value)


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<name>~?[A-Za-z0-9_][A-Za-z0-9_']*)
  | (?P<sym>->|[{}()\[\],;:=*/\-])
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        pos = Pos(line, i - line_start + 1)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", pos)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("name", "sym"):
            tokens.append(Token(kind, m.group(), pos))
        i = m.end()
    tokens.append(Token("eof", "", Pos(line, i - line_start + 1)))
    return tokens


def _eps_shape(alph):
    if isinstance(alph, AlphTensor):
        return (_eps_shape(alph.left), _eps_shape(alph.right))
    return EPS


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers ---------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, value: str) -> bool:
        return self.tok.value == value and self.tok.kind != "eof"

    def fail(self, *expected: str):
        raise ParseError(f"expected one of {', '.join(sorted(set(expected)))}; "
                         f"found {self.tok.describe()}", self.tok.pos, expected)

    def expect(self, value: str) -> Token:
        if not self.at(value):
            self.fail(repr(value))
        tok = self.tok
        self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.i += 1
            return True
        return False

    def name(self, what: str = "name") -> tuple[str, Pos]:
        tok = self.tok
        if tok.kind != "name":
            self.fail(what)
        if tok.value in RESERVED:
            raise ParseError(f"reserved word {tok.value!r} cannot be used as a {what}", tok.pos)
        if tok.value.startswith("~"):
            raise ParseError(f"{what} cannot start with '~': {tok.value!r}", tok.pos)
        self.i += 1
        return tok.value, tok.pos

    # -- module ----------------------------------------------------------------

    def module(self) -> Module:
        mod = Module()
        namespaces = {"alphabet": mod.alphabets, "algebra": mod.algebras,
                      "system": mod.systems, "expr": mod.exprs}
        while self.tok.kind != "eof":
            kw = self.tok.value
            if kw == "alphabet":
                decl = self.alphabet_decl()
            elif kw == "system":
                decl = self.system_decl()
            elif kw == "algebra":
                decl = self.algebra_decl()
            elif kw == "expr":
                decl = self.expr_decl()
            else:
                self.fail(*(repr(k) for k in DECL_KEYWORDS))
            space = namespaces[kw]
            if decl.name in space:
                raise ParseError(f"duplicate {kw} name {decl.name!r}", decl.pos)
            if kw == "alphabet" and decl.name in BUILTIN_ALPHABETS:
                raise ParseError(f"alphabet {decl.name!r} is built in", decl.pos)
            other = {"system": mod.exprs, "expr": mod.systems}.get(kw)
            if other is not None and decl.name in other:
                raise ParseError(f"name {decl.name!r} is used by both a system and an expr",
                                 decl.pos)
            space[decl.name] = decl
        return mod

    def alphabet_decl(self) -> AlphabetDecl:
        pos = self.expect("alphabet").pos
        name, _ = self.name("alphabet name")
        self.expect("=")
        labels = self.label_set(atomic=True)
        self.expect(";")
        return AlphabetDecl(name, frozenset(labels) | {EPS}, pos)

    def label_set(self, atomic: bool = False) -> list:
        self.expect("{")
        labels = []
        if not self.at("}"):
            labels.append(self.latom() if atomic else self.label())
            while self.accept(","):
                labels.append(self.latom() if atomic else self.label())
        self.expect("}")
        if atomic and any(isinstance(l, tuple) for l in labels):
            raise ParseError("alphabet declarations take atomic labels; use '*' on alphabets",
                             self.tok.pos)
        return labels

    def system_decl(self) -> SystemDecl:
        pos = self.expect("system").pos
        name, _ = self.name("system name")
        self.expect(":")
        left = self.alph()
        self.expect("->")
        right = self.alph()
        self.expect("{")
        states: set = set()
        declared = False
        transitions = []
        while not self.at("}"):
            if self.accept("states"):
                declared = True
                if not self.at(";"):
                    states.add(self.name("state")[0])
                    while self.accept(","):
                        states.add(self.name("state")[0])
                self.expect(";")
            elif self.tok.kind == "name":
                transitions.append(self.transition(_eps_shape(left)))
            else:
                self.fail("'states'", "state", "'}'")
        self.expect("}")
        self.accept(";")
        for s, _, _, u, tpos in transitions:
            for end in (s, u):
                if end not in states:
                    raise ParseError(f"state {end!r} is not listed in 'states'"
                                     if declared else f"system {name!r} has no 'states' line",
                                     tpos)
        return SystemDecl(name, left, right, frozenset(states),
                          frozenset(t[:4] for t in transitions), pos)

    def transition(self, left_eps):
        src, pos = self.name("state")
        self.expect("-")
        first = self.label()
        if self.accept("/"):
            x, y = first, self.label()
        else:
            x, y = left_eps, first
        self.expect("->")
        dst, _ = self.name("state")
        self.expect(";")
        return (src, x, y, dst, pos)

    def algebra_decl(self):
        pos = self.expect("algebra").pos
        name, _ = self.name("algebra name")
        if self.accept("="):
            kind = self.tok
            if kind.value == "ccs":
                self.i += 1
                self.expect("(")
                names = [self.name("label name")[0]]
                while self.accept(","):
                    names.append(self.name("label name")[0])
                self.expect(")")
                decl = CcsAlgebraDecl(name, tuple(names), pos)
            elif kind.value == "broadcast":
                self.i += 1
                self.expect("(")
                carrier = self.alph()
                self.expect(")")
                decl = BroadcastAlgebraDecl(name, carrier, pos)
            else:
                self.fail("'ccs'", "'broadcast'")
            self.expect(";")
            return decl
        if self.tok.value != "on":
            self.fail("'on'", "'='")
        self.i += 1
        carrier = self.alph()
        self.expect("{")
        products: dict = {}
        unit = None
        while not self.at("}"):
            if self.at("unit"):
                upos = self.tok.pos
                self.i += 1
                self.expect("=")
                if unit is not None:
                    raise ParseError("unit given twice", upos)
                unit = frozenset(self.label_set())
                self.expect(";")
                continue
            rpos = self.tok.pos
            x = self.latom()
            self.expect("*")
            y = self.latom()
            self.expect("=")
            results = frozenset(self.label_set()) if self.at("{") else frozenset({self.label()})
            self.expect(";")
            if not results:
                raise ParseError("algebra rows list only non-empty products", rpos)
            key = frozenset((x, y))
            if key in products and products[key] != results:
                raise ParseError("conflicting products for one unordered pair", rpos)
            products[key] = results
        self.expect("}")
        self.accept(";")
        return TableAlgebraDecl(name, carrier, frozenset(products.items()), unit, pos)

    def expr_decl(self) -> ExprDecl:
        pos = self.expect("expr").pos
        name, _ = self.name("expr name")
        self.expect("=")
        e = self.expr(top=True)
        self.expect(";")
        return ExprDecl(name, e, pos)

    # -- alphabets and labels ---------------------------------------------------

    def alph(self):
        node = self.aatom()
        while self.at("*"):
            pos = self.expect("*").pos
            node = AlphTensor(node, self.aatom(), pos)
        return node

    def aatom(self):
        if self.accept("("):
            node = self.alph()
            self.expect(")")
            return node
        name, pos = self.name("alphabet name")
        return AlphName(name, pos)

    def label(self):
        node = self.latom()
        while self.accept("*"):
            node = (node, self.latom())
        return node

    def latom(self):
        if self.accept("("):
            node = self.label()
            self.expect(")")
            return node
        tok = self.tok
        if tok.kind != "name":
            self.fail("label")
        if tok.value != EPS and tok.value in RESERVED:
            raise ParseError(f"reserved word {tok.value!r} cannot be used as a label", tok.pos)
        self.i += 1
        return tok.value

    # -- expressions -------------------------------------------------------------

    def expr(self, top: bool = False):
        node = self.texpr()
        while self.at(";"):
            nxt = self.peek()
            if top and (nxt.kind == "eof" or nxt.value in DECL_KEYWORDS):
                break
            pos = self.expect(";").pos
            node = Compose(node, self.texpr(), pos)
        return node

    def texpr(self):
        node = self.atom()
        while self.at("*"):
            pos = self.expect("*").pos
            node = Tensor(node, self.atom(), pos)
        return node

    def atom(self):
        tok = self.tok
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "name" and tok.value in CONST_ARITY:
            self.i += 1
            self.expect("(")
            args = [self.alph()]
            while self.accept(","):
                args.append(self.alph())
            self.expect(")")
            if len(args) != CONST_ARITY[tok.value]:
                raise ParseError(f"{tok.value} takes {CONST_ARITY[tok.value]} alphabet "
                                 f"argument(s), got {len(args)}", tok.pos)
            return Const(tok.value, tuple(args), tok.pos)
        if tok.kind == "name" and tok.value == "par":
            self.i += 1
            self.expect("[")
            alg, _ = self.name("algebra name")
            self.expect("]")
            self.expect("(")
            args = [self.expr()]
            while self.accept(","):
                args.append(self.expr())
            self.expect(")")
            return Par(alg, tuple(args), tok.pos)
        if tok.kind == "name" and tok.value not in RESERVED and not tok.value.startswith("~"):
            self.i += 1
            return Ref(tok.value, tok.pos)
        self.fail("name", "'('", "'par'", *(repr(c) for c in CONST_ARITY))


def parse(text: str) -> Module:
    return Parser(text).module()


def parse_expr(text: str):
    p = Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        p.fail("end of input")
    return e
