"""Finite Kripke frames and models, evaluation, and submodel extractions.

Models are finite by construction, so box/diamond meets and joins are always
defined: an empty meet evaluates to 1 and an empty join to 0.  Models are
treated as immutable after construction and all queries are pure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .algebras import (Algebra, Value, algebra_from_json, algebra_to_json,
                       value_from_json, value_to_json)
from .formulas import (And, Box, Const0, Const1, Diamond, Formula, Implies,
                       Or, Times, Var)

__all__ = [
    "KripkeFrame", "KripkeModel", "Witness", "Verdict",
    "evaluate", "globally_satisfies", "consequence_witness",
    "height", "heights", "unravel", "extract_chain", "generated_submodel",
    "is_transitive",
    "frame_to_json", "frame_from_json", "model_to_json", "model_from_json",
    "load_model", "dump_model",
]


class KripkeFrame:
    """Finite frame: nonempty world set plus a binary accessibility relation."""

    def __init__(self, worlds: Iterable[str], edges: Iterable[tuple[str, str]]):
        ws = tuple(sorted(set(worlds)))
        if not ws:
            raise ValueError("frame needs at least one world")
        wset = set(ws)
        es = frozenset((a, b) for a, b in edges)
        for a, b in es:
            if a not in wset or b not in wset:
                raise ValueError(f"edge ({a!r}, {b!r}) mentions unknown world")
        self.worlds = ws
        self.edges = es
        succ: dict[str, list[str]] = {w: [] for w in ws}
        for a, b in es:
            succ[a].append(b)
        self._succ = {w: tuple(sorted(vs)) for w, vs in succ.items()}

    def successors(self, w: str) -> tuple[str, ...]:
        if w not in self._succ:
            raise KeyError(f"unknown world {w!r}")
        return self._succ[w]

    def __eq__(self, other):
        return (isinstance(other, KripkeFrame)
                and self.worlds == other.worlds and self.edges == other.edges)

    def __hash__(self):
        return hash((self.worlds, self.edges))

    def __repr__(self):
        return f"KripkeFrame(worlds={self.worlds}, edges={sorted(self.edges)})"


class KripkeModel:
    """Frame plus algebra plus a total valuation world x variable -> value."""

    def __init__(self, frame: KripkeFrame, algebra: Algebra,
                 valuation: Mapping[str, Mapping[str, Value]]):
        vars_per_world = [frozenset(valuation.get(w, {})) for w in frame.worlds]
        declared = frozenset().union(*vars_per_world) if vars_per_world else frozenset()
        for w, vs in zip(frame.worlds, vars_per_world):
            if vs != declared:
                missing = declared - vs
                raise ValueError(f"valuation not total: world {w!r} lacks {sorted(missing)}")
        self.frame = frame
        self.algebra = algebra
        self.variables = tuple(sorted(declared))
        self._val = {w: {p: algebra.require(valuation[w][p]) for p in declared}
                     for w in frame.worlds}

    @property
    def worlds(self) -> tuple[str, ...]:
        return self.frame.worlds

    def value(self, world: str, var: str) -> Value:
        try:
            return self._val[world][var]
        except KeyError:
            raise KeyError(f"no value for variable {var!r} at world {world!r}") from None

    def valuation_dict(self) -> dict[str, dict[str, Value]]:
        return {w: dict(vs) for w, vs in self._val.items()}

    def __repr__(self):
        return (f"KripkeModel({len(self.worlds)} worlds, "
                f"{self.algebra!r}, vars={list(self.variables)})")


@dataclass(frozen=True)
class Witness:
    world: str | None = None
    formula: Formula | None = None
    value: Value | None = None
    model: "KripkeModel | None" = None
    valuation: "dict | None" = None


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Witness | None = None

    def __post_init__(self):
        if self.holds and self.witness is not None:
            raise ValueError("holding verdicts carry no witness")
        if not self.holds and self.witness is None:
            raise ValueError("failing verdicts need a witness")


def evaluate(model: KripkeModel, world: str, f: Formula,
             _memo: dict | None = None) -> Value:
    """World-wise value of ``f``: connectives pointwise, box as the meet and
    diamond as the join over the successor values (1 and 0 when empty)."""
    if world not in model._val:
        raise KeyError(f"unknown world {world!r}")
    memo = _memo if _memo is not None else {}
    return _eval(model, world, f, memo)


def _eval(model: KripkeModel, world: str, f: Formula, memo: dict) -> Value:
    key = (world, f)
    hit = memo.get(key)
    if hit is not None:
        return hit
    alg = model.algebra
    if isinstance(f, Const0):
        out = alg.zero
    elif isinstance(f, Const1):
        out = alg.one
    elif isinstance(f, Var):
        out = model.value(world, f.name)
    elif isinstance(f, And):
        out = alg.meet(_eval(model, world, f.left, memo), _eval(model, world, f.right, memo))
    elif isinstance(f, Or):
        out = alg.join(_eval(model, world, f.left, memo), _eval(model, world, f.right, memo))
    elif isinstance(f, Times):
        out = alg.times(_eval(model, world, f.left, memo), _eval(model, world, f.right, memo))
    elif isinstance(f, Implies):
        out = alg.residuum(_eval(model, world, f.left, memo), _eval(model, world, f.right, memo))
    elif isinstance(f, Box):
        out = alg.one
        for w in model.frame.successors(world):
            out = alg.meet(out, _eval(model, w, f.body, memo))
    elif isinstance(f, Diamond):
        out = alg.zero
        for w in model.frame.successors(world):
            out = alg.join(out, _eval(model, w, f.body, memo))
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[key] = out
    return out


def globally_satisfies(model: KripkeModel, gamma: Iterable[Formula]) -> Verdict:
    """Do all formulas of ``gamma`` take value 1 at every world?

    The witness is the first failure in (world id, formula order) scan order.
    """
    gamma = tuple(gamma)
    memo: dict = {}
    one = model.algebra.one
    for w in model.worlds:
        for g in gamma:
            v = _eval(model, w, g, memo)
            if v != one:
                return Verdict(False, Witness(world=w, formula=g, value=v, model=model))
    return Verdict(True)


def consequence_witness(model: KripkeModel, gamma: Iterable[Formula],
                        phi: Formula) -> Verdict:
    """Global consequence on a single model: if ``gamma`` holds everywhere,
    ``phi`` must too; a failing verdict names a world where it does not."""
    if not globally_satisfies(model, gamma).holds:
        return Verdict(True)
    memo: dict = {}
    one = model.algebra.one
    for w in model.worlds:
        v = _eval(model, w, phi, memo)
        if v != one:
            return Verdict(False, Witness(world=w, formula=phi, value=v, model=model))
    return Verdict(True)


def heights(frame: KripkeFrame) -> dict[str, int | float]:
    """Height of every world: sup of outgoing path lengths, ``inf`` when a
    cycle is reachable."""
    out: dict[str, int | float] = {}
    color: dict[str, int] = {}  # 1 = on stack, 2 = done

    def visit(w: str) -> int | float:
        if color.get(w) == 2:
            return out[w]
        if color.get(w) == 1:
            # back edge: w is an ancestor on the stack, so it lies on a cycle
            return math.inf
        color[w] = 1
        h: int | float = 0
        for v in frame.successors(w):
            hv = visit(v)
            h = max(h, hv + 1)
        color[w] = 2
        out[w] = h
        return h

    for w in frame.worlds:
        visit(w)
    return out


def height(frame: KripkeFrame, w: str) -> int | float:
    if w not in frame._succ:
        raise KeyError(f"unknown world {w!r}")
    return heights(frame)[w]


def unravel(model: KripkeModel, root: str, depth: int) -> KripkeModel:
    """Path tree of the given depth rooted at ``root``.

    Each path copy inherits the valuation of its final source world; for any
    formula of modal depth at most ``depth`` the root evaluates as in the
    source model.
    """
    if depth < 0:
        raise ValueError("negative depth")
    if root not in model._val:
        raise KeyError(f"unknown world {root!r}")
    paths = [(root,)]
    edges: list[tuple[str, str]] = []
    frontier = [(root,)]
    for _ in range(depth):
        nxt = []
        for path in frontier:
            for w in model.frame.successors(path[-1]):
                child = path + (w,)
                paths.append(child)
                edges.append(("/".join(path), "/".join(child)))
                nxt.append(child)
        frontier = nxt
    valuation = {"/".join(p): {v: model.value(p[-1], v) for v in model.variables}
                 for p in paths}
    frame = KripkeFrame(["/".join(p) for p in paths], edges)
    return KripkeModel(frame, model.algebra, valuation)


def extract_chain(model: KripkeModel, root: str) -> KripkeModel:
    """Submodel on one successor chain from ``root`` down to a successor-free
    world, taking the least-id successor at every step.

    Requires ``root`` to have finite height.
    """
    if root not in model._val:
        raise KeyError(f"unknown world {root!r}")
    if height(model.frame, root) == math.inf:
        raise ValueError(f"world {root!r} has infinite height (reachable cycle)")
    chain = [root]
    cur = root
    while True:
        succ = model.frame.successors(cur)
        if not succ:
            break
        cur = succ[0]
        chain.append(cur)
    keep = set(chain)
    edges = [(a, b) for a, b in model.frame.edges if a in keep and b in keep]
    frame = KripkeFrame(chain, edges)
    valuation = {w: {v: model.value(w, v) for v in model.variables} for w in chain}
    return KripkeModel(frame, model.algebra, valuation)


def generated_submodel(model: KripkeModel, w: str) -> KripkeModel:
    """Restriction to the worlds reachable from ``w`` (including ``w``)."""
    if w not in model._val:
        raise KeyError(f"unknown world {w!r}")
    seen = {w}
    stack = [w]
    while stack:
        u = stack.pop()
        for v in model.frame.successors(u):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    edges = [(a, b) for a, b in model.frame.edges if a in seen and b in seen]
    frame = KripkeFrame(seen, edges)
    valuation = {u: {v: model.value(u, v) for v in model.variables} for u in seen}
    return KripkeModel(frame, model.algebra, valuation)


def is_transitive(frame: KripkeFrame) -> bool:
    for a, b in frame.edges:
        for c in frame.successors(b):
            if (a, c) not in frame.edges:
                return False
    return True


def frame_to_json(frame: KripkeFrame) -> dict:
    return {"worlds": list(frame.worlds),
            "edges": [list(e) for e in sorted(frame.edges)]}


def frame_from_json(obj: dict) -> KripkeFrame:
    return KripkeFrame(obj["worlds"], [tuple(e) for e in obj["edges"]])


def model_to_json(model: KripkeModel) -> dict:
    return {
        "algebra": algebra_to_json(model.algebra),
        "worlds": list(model.worlds),
        "edges": [list(e) for e in sorted(model.frame.edges)],
        "valuation": {w: {p: value_to_json(model.algebra, model.value(w, p))
                          for p in model.variables}
                      for w in model.worlds},
    }


def model_from_json(obj: dict) -> KripkeModel:
    algebra = algebra_from_json(obj["algebra"])
    frame = KripkeFrame(obj["worlds"], [tuple(e) for e in obj["edges"]])
    valuation = {w: {p: value_from_json(algebra, raw)
                     for p, raw in obj.get("valuation", {}).get(w, {}).items()}
                 for w in frame.worlds}
    return KripkeModel(frame, algebra, valuation)


def load_model(path: str) -> KripkeModel:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_json(json.load(fh))


def dump_model(model: KripkeModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_json(model), fh, indent=2, sort_keys=True)
        fh.write("\n")
