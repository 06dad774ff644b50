"""Modal formulas over the residuated-lattice signature.

The canonical AST has constants ``0``/``1``, variables, the binary
connectives ``/\\``, ``\\/``, ``*``, ``->`` and the unary modalities ``[]``
and ``<>``.  Negation, equivalence and powers are surface sugar only and are
eliminated while parsing:

    ~f        becomes  f -> 0
    f <-> g   becomes  (f -> g) * (g -> f)
    f^n       becomes  the n-fold product f * (f * ... )

Formulas are immutable and hashable; equality is structural.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "Formula", "Const0", "Const1", "Var", "And", "Or", "Times", "Implies",
    "Box", "Diamond", "ZERO", "ONE", "ParseError",
    "neg", "iff", "fpow", "variables", "subformulas", "prop_subformulas",
    "substitute", "box_prefix", "render", "parse", "is_propositional",
]

_IDENT_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")


class ParseError(ValueError):
    """Malformed formula text; ``position`` is the offending offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Const0(Formula):
    pass


@dataclass(frozen=True)
class Const1(Formula):
    pass


@dataclass(frozen=True)
class Var(Formula):
    name: str

    def __post_init__(self):
        if not _IDENT_RE.fullmatch(self.name):
            raise ValueError(f"invalid variable name: {self.name!r}")


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Times(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    body: Formula


@dataclass(frozen=True)
class Diamond(Formula):
    body: Formula


ZERO = Const0()
ONE = Const1()

_BINARY = (And, Or, Times, Implies)
_MODAL = (Box, Diamond)


def neg(f: Formula) -> Formula:
    return Implies(f, ZERO)


def iff(a: Formula, b: Formula) -> Formula:
    return Times(Implies(a, b), Implies(b, a))


def fpow(f: Formula, n: int) -> Formula:
    """n-fold product of ``f`` with itself, right-nested; ``f^0`` is ``1``."""
    if n < 0:
        raise ValueError("negative power")
    if n == 0:
        return ONE
    out = f
    for _ in range(n - 1):
        out = Times(f, out)
    return out


def variables(f: Formula | Iterable[Formula]) -> frozenset[str]:
    if isinstance(f, Formula):
        f = (f,)
    out: set[str] = set()
    stack = list(f)
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            out.add(g.name)
        elif isinstance(g, _BINARY):
            stack.append(g.left)
            stack.append(g.right)
        elif isinstance(g, _MODAL):
            stack.append(g.body)
    return frozenset(out)


def subformulas(f: Formula) -> frozenset[Formula]:
    """All subformulas of ``f``, including ``f`` itself."""
    out: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        if isinstance(g, _BINARY):
            stack.append(g.left)
            stack.append(g.right)
        elif isinstance(g, _MODAL):
            stack.append(g.body)
    return frozenset(out)


def prop_subformulas(f: Formula) -> frozenset[Formula]:
    """Propositional subformulas: modal subformulas count as atoms."""
    out: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        if isinstance(g, _BINARY):
            stack.append(g.left)
            stack.append(g.right)
    return frozenset(out)


def substitute(f: Formula, mapping: Mapping[str, Formula]) -> Formula:
    if isinstance(f, Var):
        return mapping.get(f.name, f)
    if isinstance(f, _BINARY):
        return type(f)(substitute(f.left, mapping), substitute(f.right, mapping))
    if isinstance(f, _MODAL):
        return type(f)(substitute(f.body, mapping))
    return f


def box_prefix(gamma: Iterable[Formula], k: int) -> tuple[Formula, ...]:
    """All prefixes ``[]^i g`` for ``g`` in ``gamma`` and ``0 <= i <= k``."""
    if k < 0:
        raise ValueError("negative box-prefix depth")
    gamma = tuple(gamma)
    out: list[Formula] = []
    seen: set[Formula] = set()
    layer = gamma
    for _ in range(k + 1):
        for g in layer:
            if g not in seen:
                seen.add(g)
                out.append(g)
        layer = tuple(Box(g) for g in layer)
    return tuple(out)


def is_propositional(f: Formula) -> bool:
    return not any(isinstance(g, _MODAL) for g in subformulas(f))


def render(f: Formula) -> str:
    """Fully parenthesized concrete syntax; ``parse(render(f)) == f``."""
    if isinstance(f, Const0):
        return "0"
    if isinstance(f, Const1):
        return "1"
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Box):
        return f"([] {render(f.body)})"
    if isinstance(f, Diamond):
        return f"(<> {render(f.body)})"
    op = {And: "/\\", Or: "\\/", Times: "*", Implies: "->"}[type(f)]
    return f"({render(f.left)} {op} {render(f.right)})"


_TOKEN_RE = re.compile(
    r"(<->)|(->)|(/\\)|(\\/)|(\[\])|(<>)|([*^~()])|([0-9]+)|([a-zA-Z][a-zA-Z0-9_]*)"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tok = m.group(0)
        if m.group(8):
            kind = "num"
        elif m.group(9):
            kind = "ident"
        else:
            kind = tok
        tokens.append((kind, tok, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        if self.peek() != kind:
            _, text, pos = self.tokens[self.i]
            raise ParseError(f"expected {kind!r}, found {text!r}", pos)
        return self.next()

    def formula(self) -> Formula:
        left = self.implication()
        while self.peek() == "<->":
            self.next()
            left = iff(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.next()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek() == "\\/":
            self.next()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.product()
        while self.peek() == "/\\":
            self.next()
            left = And(left, self.product())
        return left

    def product(self) -> Formula:
        left = self.postfix()
        while self.peek() == "*":
            self.next()
            left = Times(left, self.postfix())
        return left

    def postfix(self) -> Formula:
        f = self.unary()
        while self.peek() == "^":
            self.next()
            _, text, pos = self.expect("num")
            n = int(text)
            if n == 0:
                raise ParseError("power exponent must be positive", pos)
            f = fpow(f, n)
        return f

    def unary(self) -> Formula:
        kind = self.peek()
        if kind == "~":
            self.next()
            return neg(self.unary())
        if kind == "[]":
            self.next()
            return Box(self.unary())
        if kind == "<>":
            self.next()
            return Diamond(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, text, pos = self.next()
        if kind == "(":
            f = self.formula()
            self.expect(")")
            return f
        if kind == "num":
            if text == "0":
                return ZERO
            if text == "1":
                return ONE
            raise ParseError(f"unexpected number {text!r}", pos)
        if kind == "ident":
            return Var(text)
        raise ParseError(f"unexpected token {text or kind!r}", pos)


def parse(text: str) -> Formula:
    parser = _Parser(text)
    f = parser.formula()
    if parser.peek() != "eof":
        _, text_, pos = parser.tokens[parser.i]
        raise ParseError(f"trailing input {text_!r}", pos)
    return f
