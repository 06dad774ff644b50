"""Correspondence-problem instances and their modal encoding.

An instance is a finite list of pairs of numerals in some base ``s >= 2``.
Numerals carry an explicit digit count so that words with leading zeros are
representable; concatenation is then associative and faithful:

    concat(x, y) = (x.value * s^y.length + y.value, x.length + y.length)

The encoder produces, from an instance ``P``, a premise set in the three
variables x, y, z and a conclusion formula such that chain countermodels
correspond exactly to solutions of ``P``; the constructors and the extractor
below realize both directions of that correspondence on concrete models.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .algebras import Algebra, ExpChain, ExpValue, StdMV, Value
from .formulas import (And, Box, Diamond, Formula, Implies, Or, Times, Var,
                       ZERO, fpow, iff, neg)
from .kripke import KripkeFrame, KripkeModel, evaluate, globally_satisfies

__all__ = [
    "Numeral", "PCPInstance", "concat", "encode", "verify_solution",
    "build_chain_model", "build_countermodel", "extract_solution",
    "find_solutions", "instance_to_json", "instance_from_json",
    "load_instance",
]

X = Var("x")
Y = Var("y")
Z = Var("z")


@dataclass(frozen=True)
class Numeral:
    """A number together with its digit count in the ambient base."""

    value: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("numeral needs at least one digit")
        if self.value < 0:
            raise ValueError("numeral value must be nonnegative")

    def check_base(self, base: int) -> "Numeral":
        if self.value >= base ** self.length:
            raise ValueError(
                f"{self.value} does not fit in {self.length} base-{base} digits")
        return self


@dataclass(frozen=True)
class PCPInstance:
    base: int
    pairs: tuple[tuple[Numeral, Numeral], ...]

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be at least 2")
        if not self.pairs:
            raise ValueError("instance needs at least one pair")
        for x, y in self.pairs:
            x.check_base(self.base)
            y.check_base(self.base)

    @property
    def size(self) -> int:
        return len(self.pairs)


def concat(x: Numeral, y: Numeral, base: int) -> Numeral:
    x.check_base(base)
    y.check_base(base)
    return Numeral(x.value * base ** y.length + y.value, x.length + y.length)


def _concat_all(instance: PCPInstance, indices, side: int) -> Numeral:
    out = None
    for i in indices:
        num = instance.pairs[i - 1][side]
        out = num if out is None else concat(out, num, instance.base)
    return out


def verify_solution(instance: PCPInstance, indices) -> bool:
    """Do the x-side and y-side concatenations agree in value and length?"""
    indices = list(indices)
    if not indices:
        raise ValueError("a solution is a nonempty index sequence")
    for i in indices:
        if not 1 <= i <= instance.size:
            raise ValueError(f"index {i} out of range 1..{instance.size}")
    return _concat_all(instance, indices, 0) == _concat_all(instance, indices, 1)


def encode(instance: PCPInstance) -> tuple[tuple[Formula, ...], Formula]:
    """Premise set and conclusion of the reduction, in variables x, y, z.

    The premises are: for each variable p, "a world with successors gives box
    and diamond of p the same value"; "a world with successors keeps z stable
    under box"; and one big disjunction tying x and y at a world to the
    values one step up, shifted by each pair of the instance.  The conclusion
    is refutable exactly on chain models that spell out a solution.
    """
    s = instance.base
    not_box_zero = neg(Box(ZERO))
    premises: list[Formula] = [
        Implies(not_box_zero, iff(Box(p), Diamond(p))) for p in (X, Y, Z)
    ]
    premises.append(Implies(not_box_zero, iff(Z, Box(Z))))
    disjuncts = []
    for xn, yn in instance.pairs:
        dx = iff(X, Times(fpow(Box(X), s ** xn.length), fpow(Z, xn.value)))
        dy = iff(Y, Times(fpow(Box(Y), s ** yn.length), fpow(Z, yn.value)))
        disjuncts.append(And(dx, dy))
    big_or = disjuncts[0]
    for d in disjuncts[1:]:
        big_or = Or(big_or, d)
    premises.append(big_or)
    conclusion = Implies(fpow(iff(X, Y), 2), Or(Implies(X, Times(X, Z)), Z))
    return tuple(premises), conclusion


def _chain_base(alg: Algebra, r: int) -> Value:
    """An element with a^(r+1) < a^r: r/(r+1) in standard MV (so a^r is
    exactly 1/(r+1) and a^(r+1) is 0), the formal generator in the chain."""
    if isinstance(alg, StdMV):
        return Fraction(r, r + 1)
    if isinstance(alg, ExpChain):
        return ExpValue(Fraction(1))
    raise ValueError(f"unsupported countermodel algebra {alg.kind!r}")


def build_chain_model(instance: PCPInstance, indices, alg: Algebra) -> KripkeModel:
    """Chain model spelled out by an index sequence, solution or not.

    World j (1-based from the successor-free end) values x and y by the
    powers a^(x-concatenation of the first j indices) and analogously for y;
    z is the constant a.  The base a is non-contractive at the larger of the
    two full concatenation values.
    """
    indices = list(indices)
    if not indices:
        raise ValueError("need a nonempty index sequence")
    k = len(indices)
    xc = [_concat_all(instance, indices[:j], 0).value for j in range(1, k + 1)]
    yc = [_concat_all(instance, indices[:j], 1).value for j in range(1, k + 1)]
    r = max(xc[-1], yc[-1])
    a = _chain_base(alg, r)
    width = len(str(k))
    worlds = [f"v{j:0{width}d}" for j in range(1, k + 1)]
    edges = [(worlds[j], worlds[j - 1]) for j in range(1, k)]
    valuation = {
        worlds[j]: {"x": alg.power(a, xc[j]), "y": alg.power(a, yc[j]), "z": a}
        for j in range(k)
    }
    return KripkeModel(KripkeFrame(worlds, edges), alg, valuation)


def build_countermodel(instance: PCPInstance, indices, alg: Algebra) -> KripkeModel:
    """Countermodel for the encoding from a verified solution."""
    if not verify_solution(instance, indices):
        raise ValueError(f"{list(indices)} is not a solution of the instance")
    return build_chain_model(instance, indices, alg)


def _chain_order(model: KripkeModel, top: str) -> list[str]:
    """Worlds from ``top`` down to the successor-free end; error when the
    model is not a successor chain through all of its worlds."""
    if top not in model.worlds:
        raise KeyError(f"unknown world {top!r}")
    order = [top]
    seen = {top}
    cur = top
    while True:
        succ = model.frame.successors(cur)
        if not succ:
            break
        if len(succ) > 1:
            raise ValueError(f"world {cur!r} has {len(succ)} successors; not a chain")
        nxt = succ[0]
        if nxt in seen:
            raise ValueError("cycle detected; not a chain")
        order.append(nxt)
        seen.add(nxt)
        cur = nxt
    if len(order) != len(model.worlds):
        raise ValueError("model is not a single chain from the given top world")
    chain_edges = set(zip(order, order[1:]))
    for edge in model.frame.edges:
        if edge not in chain_edges:
            raise ValueError("extra accessibility edges; not a chain")
    return order


def _exponent_of(alg: Algebra, base: Value, value: Value) -> int:
    """Recover n with value = base^n, exactly."""
    if isinstance(alg, ExpChain):
        if value == alg.one:
            return 0
        if value.is_zero or base.is_zero or base.exponent == 0:
            raise ValueError("exponent not recoverable")
        n = value.exponent / base.exponent
        if n.denominator != 1 or n < 0:
            raise ValueError(f"{value!r} is not a power of {base!r}")
        return int(n)
    if isinstance(alg, StdMV):
        if value == 1:
            return 0
        if base in (0, 1) or value == 0:
            raise ValueError("exponent not recoverable")
        n = (1 - value) / (1 - base)
        if n.denominator != 1 or n < 0:
            raise ValueError(f"{value} is not a power of {base}")
        return int(n)
    raise ValueError(f"unsupported extraction algebra {alg.kind!r}")


def extract_solution(instance: PCPInstance, model: KripkeModel, top: str) -> list[int]:
    """Read a solution off a chain countermodel.

    Walking from the successor-free end upward, picks at each world the least
    disjunct of the big-disjunction premise that evaluates to 1 there.  The
    result is certified: the values of x and y must be the powers of the
    constant z-value dictated by the chosen indices, and when additionally
    x and y agree at the top, the indices verify as a solution.
    """
    gamma, phi = encode(instance)
    order = _chain_order(model, top)
    verdict = globally_satisfies(model, gamma)
    if not verdict.holds:
        w = verdict.witness
        raise ValueError(
            f"model does not satisfy the encoding premises "
            f"(world {w.world!r}, value {w.value!r})")
    alg = model.algebra
    if evaluate(model, top, phi) == alg.one:
        raise ValueError("conclusion is not refuted at the top world")

    s = instance.base
    alpha = model.value(top, "z")
    big_or = gamma[-1]
    disjuncts = []
    cursor = big_or
    while isinstance(cursor, Or):
        disjuncts.append(cursor.right)
        cursor = cursor.left
    disjuncts.append(cursor)
    disjuncts.reverse()

    indices: list[int] = []
    memo: dict = {}
    for w in reversed(order):  # successor-free end first
        for i, d in enumerate(disjuncts, start=1):
            if evaluate(model, w, d, _memo=memo) == alg.one:
                indices.append(i)
                break
        else:
            raise ValueError(f"no disjunct holds at world {w!r}")

    # certify by exponent recovery against the concatenation values
    for j, w in enumerate(reversed(order), start=1):
        expected_x = _concat_all(instance, indices[:j], 0).value
        expected_y = _concat_all(instance, indices[:j], 1).value
        got_x = _exponent_of(alg, alpha, model.value(w, "x"))
        got_y = _exponent_of(alg, alpha, model.value(w, "y"))
        if (got_x, got_y) != (expected_x, expected_y):
            raise ValueError(
                f"world {w!r} carries powers ({got_x}, {got_y}), expected "
                f"({expected_x}, {expected_y}) from indices {indices[:j]}")
    return indices


def find_solutions(instance: PCPInstance, max_length: int):
    """All solutions up to the given length, by exhaustive search."""
    out = []
    for k in range(1, max_length + 1):
        for seq in itertools.product(range(1, instance.size + 1), repeat=k):
            if verify_solution(instance, seq):
                out.append(list(seq))
    return out


def instance_to_json(instance: PCPInstance) -> dict:
    return {
        "base": instance.base,
        "pairs": [[[str(x.value), x.length], [str(y.value), y.length]]
                  for x, y in instance.pairs],
    }


def instance_from_json(obj: dict) -> PCPInstance:
    pairs = tuple(
        (Numeral(int(x[0]), int(x[1])), Numeral(int(y[0]), int(y[1])))
        for x, y in obj["pairs"])
    return PCPInstance(int(obj["base"]), pairs)


def load_instance(path: str) -> PCPInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return instance_from_json(json.load(fh))
