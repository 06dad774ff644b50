"""Propositional consequence decisions and the finite-frame reduction.

Two propositional backends are provided: an exact case-splitting decision for
the standard MV algebra (the connectives are piecewise linear, so each
connective occurrence contributes two linear regimes and every branch is an
exact rational LP), and a brute-force sweep for finite algebras.  On top of
them sits the frame translation that turns global consequence over a fixed
finite frame into a propositional consequence question, the cardinality-bound
decision that conjoins it over all labeled frames of a given size, and the
co-enumerator of non-consequences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import lp
from .algebras import (Algebra, FiniteTable, MVn, ResourceLimitError, StdMV,
                       Value)
from .formulas import (And, Box, Const0, Const1, Diamond, Formula, Implies,
                       Or, Times, Var, iff, is_propositional, render,
                       subformulas, variables)
from .kripke import (KripkeFrame, KripkeModel, Verdict, Witness, evaluate,
                     globally_satisfies)

__all__ = [
    "BRANCH_GUARD_DEFAULT", "CARDINALITY_CAP_DEFAULT", "FINITE_SEARCH_GUARD",
    "FrameTranslation", "luk_consequence", "finite_consequence",
    "translate_on_frame", "decide_on_frame", "decide_cardinality",
    "EmittedNonConsequence", "coenumerate_nonconsequences",
]

BRANCH_GUARD_DEFAULT = 2 ** 24
CARDINALITY_CAP_DEFAULT = 3
FINITE_SEARCH_GUARD = 10 ** 7

_F0 = Fraction(0)
_F1 = Fraction(1)


class _Unsat(Exception):
    """Premises force a contradiction; the consequence holds vacuously."""


class _Affine:
    """Linear expression c0 + sum(ci * vi) over variables ranging in [0, 1]."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs: dict | None = None, const: Fraction = _F0):
        self.coeffs = coeffs or {}
        self.const = const

    @classmethod
    def of_const(cls, c) -> "_Affine":
        return cls({}, Fraction(c))

    @classmethod
    def of_var(cls, name: str) -> "_Affine":
        return cls({name: _F1})

    def add(self, other: "_Affine") -> "_Affine":
        coeffs = dict(self.coeffs)
        for v, a in other.coeffs.items():
            c = coeffs.get(v, _F0) + a
            if c:
                coeffs[v] = c
            else:
                coeffs.pop(v, None)
        return _Affine(coeffs, self.const + other.const)

    def sub(self, other: "_Affine") -> "_Affine":
        return self.add(other.negate())

    def negate(self) -> "_Affine":
        return _Affine({v: -a for v, a in self.coeffs.items()}, -self.const)

    def shift(self, c) -> "_Affine":
        return _Affine(dict(self.coeffs), self.const + c)

    @property
    def is_const(self) -> bool:
        return not self.coeffs

    def bounds01(self) -> tuple[Fraction, Fraction]:
        """Range of the expression when every variable ranges over [0, 1]."""
        lo = hi = self.const
        for a in self.coeffs.values():
            if a > 0:
                hi += a
            else:
                lo += a
        return lo, hi

    def value_at(self, point: dict) -> Fraction:
        return self.const + sum((a * point.get(v, _F0)
                                 for v, a in self.coeffs.items()), _F0)


def _row(expr: _Affine, sense: str, rhs: Fraction = _F0) -> lp.Constraint:
    return lp.Constraint(expr.coeffs, sense, rhs - expr.const)


_ONE_AFF = _Affine.of_const(1)
_ZERO_AFF = _Affine.of_const(0)

_REGIME_KIND = {Times: "times", Implies: "implies", And: "and", Or: "or"}


class _LukSystem:
    """Case system for standard-MV consequence.

    Every propositional subformula carries an affine value form when one is
    derivable (premise pinning, partial evaluation over [0, 1] interval
    bounds); the remaining connective occurrences become case-split nodes
    with two linear regimes each.
    """

    def __init__(self, gamma: Sequence[Formula], phi: Formula,
                 drop_regime: tuple[str, int] | None = None):
        self.gamma = tuple(gamma)
        self.phi = phi
        self.drop_regime = drop_regime
        self.propagate = drop_regime is None
        self.nodes = self._postorder()
        self.pinned: set[Formula] = set()
        self.affine: dict[Formula, _Affine] = {}
        self.forced_rows: list[lp.Constraint] = []
        self.splits: list[tuple[Formula, list[list[lp.Constraint]]]] = []
        self._fresh = 0
        self._node_var: dict[Formula, str] = {}
        self._build()

    def _postorder(self) -> list[Formula]:
        order: list[Formula] = []
        seen: set[Formula] = set()

        def walk(f: Formula):
            if f in seen:
                return
            seen.add(f)
            if isinstance(f, (And, Or, Times, Implies)):
                walk(f.left)
                walk(f.right)
            elif isinstance(f, (Box, Diamond)):
                raise ValueError(
                    f"modal operator in propositional consequence: {render(f)}")
            order.append(f)

        for g in self.gamma:
            walk(g)
        walk(self.phi)
        return order

    def _var_for(self, f: Formula) -> str:
        name = self._node_var.get(f)
        if name is None:
            name = f"n:{self._fresh}"
            self._fresh += 1
            self._node_var[f] = name
        return name

    def _pin(self, roots: Iterable[Formula]) -> None:
        """Pin formulas to value 1, closing under the exact consequences:
        a product or meet equal to 1 forces both operands to 1, and a pinned
        implication with pinned antecedent forces its consequent."""
        stack = [g for g in roots if g not in self.pinned]
        while stack:
            f = stack.pop()
            if f in self.pinned:
                continue
            if isinstance(f, Const0):
                raise _Unsat
            self.pinned.add(f)
            if self.propagate and isinstance(f, (Times, And)):
                stack.append(f.left)
                stack.append(f.right)
        if not self.propagate:
            return
        changed = True
        while changed:
            changed = False
            for f in list(self.pinned):
                if isinstance(f, Implies) and f.left in self.pinned \
                        and f.right not in self.pinned:
                    self._pin([f.right])
                    changed = True

    def _affine_pass(self) -> None:
        self.affine.clear()
        self.forced_rows = []
        self.splits = []
        aff = self.affine
        for f in self.nodes:
            if isinstance(f, Const0):
                aff[f] = _ZERO_AFF
            elif isinstance(f, Const1):
                aff[f] = _ONE_AFF
            elif isinstance(f, Var):
                if f in self.pinned:
                    aff[f] = _ONE_AFF
                else:
                    aff[f] = _Affine.of_var("v:" + f.name)
            else:
                a = aff[f.left]
                b = aff[f.right]
                if self.propagate and isinstance(f, Implies) and f in self.pinned:
                    # a -> b = 1 is exactly a <= b; no case split needed
                    aff[f] = _ONE_AFF
                    d = a.sub(b)
                    if d.is_const:
                        if d.const > 0:
                            raise _Unsat
                    else:
                        self.forced_rows.append(_row(d, "<="))
                    continue
                aff[f] = self._binary(f, a, b)

    def _binary(self, f: Formula, a: _Affine, b: _Affine) -> _Affine:
        if isinstance(f, Times):
            s = a.add(b).shift(-1)
            lo, hi = s.bounds01() if self.propagate else (None, None)
            if self.propagate and hi <= 0:
                return _ZERO_AFF
            if self.propagate and lo >= 0:
                return s
            t = _Affine.of_var(self._var_for(f))
            self._add_split(f, [
                [_row(s, "<="), _row(t, "==")],
                [_row(s, ">="), _row(t.sub(s), "==")],
            ])
            return t
        if isinstance(f, Implies):
            d = a.sub(b)
            lo, hi = d.bounds01() if self.propagate else (None, None)
            if self.propagate and hi <= 0:
                return _ONE_AFF
            if self.propagate and lo >= 0:
                return _ONE_AFF.sub(a).add(b)
            t = _Affine.of_var(self._var_for(f))
            linear = _ONE_AFF.sub(a).add(b)
            self._add_split(f, [
                [_row(d, "<="), _row(t.sub(_ONE_AFF), "==")],
                [_row(d, ">="), _row(t.sub(linear), "==")],
            ])
            return t
        if isinstance(f, And):
            d = a.sub(b)
            lo, hi = d.bounds01() if self.propagate else (None, None)
            if self.propagate and hi <= 0:
                return a
            if self.propagate and lo >= 0:
                return b
            t = _Affine.of_var(self._var_for(f))
            self._add_split(f, [
                [_row(d, "<="), _row(t.sub(a), "==")],
                [_row(d, ">="), _row(t.sub(b), "==")],
            ])
            return t
        # Or
        d = a.sub(b)
        lo, hi = d.bounds01() if self.propagate else (None, None)
        if self.propagate and hi <= 0:
            return b
        if self.propagate and lo >= 0:
            return a
        t = _Affine.of_var(self._var_for(f))
        self._add_split(f, [
            [_row(d, ">="), _row(t.sub(a), "==")],
            [_row(d, "<="), _row(t.sub(b), "==")],
        ])
        return t

    def _add_split(self, f: Formula, regimes: list[list[lp.Constraint]]) -> None:
        if self.drop_regime is not None:
            kind, idx = self.drop_regime
            if _REGIME_KIND[type(f)] == kind:
                regimes = [r for i, r in enumerate(regimes) if i != idx]
        self.splits.append((f, regimes))

    def _build(self) -> None:
        self._pin(self.gamma)
        while True:
            self._affine_pass()
            if not self.propagate:
                break
            # a pinned implication whose antecedent folded to the constant 1
            # pins its consequent; pinned only grows, so this terminates
            new = [f.right for f in self.pinned
                   if isinstance(f, Implies) and f.right not in self.pinned
                   and self.affine[f.left].is_const
                   and self.affine[f.left].const == 1]
            if not new:
                break
            self._pin(new)
        self.base_rows = list(self.forced_rows)
        for f in self.pinned:
            a = self.affine[f]
            if a.is_const:
                if a.const != 1:
                    raise _Unsat
            else:
                self.base_rows.append(_row(a, "==", _F1))
        # upper bounds for every variable in play (lower bounds are implicit)
        used: set[str] = set()
        for a in self.affine.values():
            used.update(a.coeffs)
        for row in self.base_rows:
            used.update(row.coeffs)
        for _, regimes in self.splits:
            for regime in regimes:
                for row in regime:
                    used.update(row.coeffs)
        self.var_names = sorted(used)
        for v in self.var_names:
            self.base_rows.append(lp.Constraint({v: _F1}, "<=", _F1))


def _luk_eval(f: Formula, val: dict) -> Fraction:
    """Direct standard-MV evaluation, used to re-check LP countermodels."""
    if isinstance(f, Const0):
        return _F0
    if isinstance(f, Const1):
        return _F1
    if isinstance(f, Var):
        return val.get(f.name, _F0)
    a = _luk_eval(f.left, val)
    b = _luk_eval(f.right, val)
    if isinstance(f, And):
        return min(a, b)
    if isinstance(f, Or):
        return max(a, b)
    if isinstance(f, Times):
        return max(_F0, a + b - 1)
    return min(_F1, 1 - a + b)


def luk_consequence(gamma: Iterable[Formula], phi: Formula, *,
                    branch_guard: int = BRANCH_GUARD_DEFAULT,
                    _drop_regime: tuple[str, int] | None = None) -> Verdict:
    """Does ``phi`` take value 1 under every [0,1]-MV valuation making all of
    ``gamma`` equal to 1?

    Decided exactly: connective regimes are enumerated depth-first and each
    branch maximizes ``1 - value(phi)`` by exact rational LP; a positive
    optimum yields a rational countermodel valuation, re-checked by direct
    evaluation before it is returned.  Branches whose relaxation already
    caps the objective at 0 are pruned, which does not change the verdict.
    The guard bounds the number of explored search nodes.
    """
    gamma = tuple(gamma)
    try:
        system = _LukSystem(gamma, phi, drop_regime=_drop_regime)
    except _Unsat:
        return Verdict(True)

    objective = {v: -a for v, a in system.affine[phi].coeffs.items()}
    offset = 1 - system.affine[phi].const
    explored = 0

    def search(i: int, rows: list[lp.Constraint]) -> dict | None:
        nonlocal explored
        explored += 1
        if explored > branch_guard:
            raise ResourceLimitError(
                f"case-split guard exceeded ({branch_guard} branches)")
        res = lp.solve_max(objective, rows)
        if res.status == "infeasible":
            return None
        if res.status != "optimal":
            raise RuntimeError("bounded system reported unbounded")
        if offset + res.value <= 0:
            return None
        if i == len(system.splits):
            return res.point
        _, regimes = system.splits[i]
        for regime in regimes:
            out = search(i + 1, rows + regime)
            if out is not None:
                return out
        return None

    point = search(0, system.base_rows)
    if point is None:
        return Verdict(True)
    valuation = {name: system.affine[Var(name)].value_at(point)
                 for name in sorted(variables(gamma + (phi,)))}
    for g in gamma:
        if _luk_eval(g, valuation) != 1:
            raise RuntimeError("countermodel failed premise re-check")
    conc = _luk_eval(phi, valuation)
    if conc >= 1:
        raise RuntimeError("countermodel failed conclusion re-check")
    return Verdict(False, Witness(formula=phi, value=conc, valuation=valuation))


def _compile_finite(f: Formula, index: dict[str, int], alg: Algebra, memo: dict):
    fn = memo.get(f)
    if fn is not None:
        return fn
    if isinstance(alg, MVn):
        m = alg.n - 1
        if isinstance(f, Const0):
            fn = lambda a: 0
        elif isinstance(f, Const1):
            fn = lambda a: m
        elif isinstance(f, Var):
            i = index[f.name]
            fn = lambda a: a[i]
        else:
            lf = _compile_finite(f.left, index, alg, memo)
            rf = _compile_finite(f.right, index, alg, memo)
            if isinstance(f, And):
                fn = lambda a: min(lf(a), rf(a))
            elif isinstance(f, Or):
                fn = lambda a: max(lf(a), rf(a))
            elif isinstance(f, Times):
                fn = lambda a: max(0, lf(a) + rf(a) - m)
            else:
                fn = lambda a: min(m, m - lf(a) + rf(a))
    else:
        if isinstance(f, Const0):
            z = alg.zero
            fn = lambda a: z
        elif isinstance(f, Const1):
            o = alg.one
            fn = lambda a: o
        elif isinstance(f, Var):
            i = index[f.name]
            fn = lambda a: a[i]
        else:
            lf = _compile_finite(f.left, index, alg, memo)
            rf = _compile_finite(f.right, index, alg, memo)
            table = {And: alg.meet_table, Or: alg.join_table,
                     Times: alg.times_table, Implies: alg.residuum_table}[type(f)]
            fn = lambda a: table[lf(a)][rf(a)]
    memo[f] = fn
    return fn


def _eval_prop(f: Formula, alg: Algebra, val: dict) -> Value:
    if isinstance(f, Const0):
        return alg.zero
    if isinstance(f, Const1):
        return alg.one
    if isinstance(f, Var):
        return val[f.name]
    a = _eval_prop(f.left, alg, val)
    b = _eval_prop(f.right, alg, val)
    op = {And: alg.meet, Or: alg.join, Times: alg.times,
          Implies: alg.residuum}[type(f)]
    return op(a, b)


def finite_consequence(alg: Algebra, gamma: Iterable[Formula], phi: Formula, *,
                       guard: int = FINITE_SEARCH_GUARD) -> Verdict:
    """Brute-force propositional consequence over a finite algebra."""
    if not isinstance(alg, (MVn, FiniteTable)):
        raise ValueError("finite_consequence needs a finite algebra")
    gamma = tuple(gamma)
    for f in gamma + (phi,):
        if not is_propositional(f):
            raise ValueError(f"modal operator in propositional consequence: {render(f)}")
    names = sorted(variables(gamma + (phi,)))
    size = alg.n if isinstance(alg, MVn) else alg.size
    if size ** len(names) > guard:
        raise ResourceLimitError(
            f"{size}^{len(names)} valuations exceed the search guard {guard}")
    index = {p: i for i, p in enumerate(names)}
    memo: dict = {}
    prem_fns = [_compile_finite(g, index, alg, memo) for g in gamma]
    conc_fn = _compile_finite(phi, index, alg, memo)
    one = (alg.n - 1) if isinstance(alg, MVn) else alg.one_index
    for assign in itertools.product(range(size), repeat=len(names)):
        if any(fn(assign) != one for fn in prem_fns):
            continue
        if conc_fn(assign) != one:
            if isinstance(alg, MVn):
                valuation = {p: Fraction(assign[i], alg.n - 1)
                             for p, i in index.items()}
            else:
                valuation = {p: assign[i] for p, i in index.items()}
            # re-check through the plain operation interface
            for g in gamma:
                if _eval_prop(g, alg, valuation) != alg.one:
                    raise RuntimeError("countermodel failed premise re-check")
            value = _eval_prop(phi, alg, valuation)
            if value == alg.one:
                raise RuntimeError("countermodel failed conclusion re-check")
            return Verdict(False, Witness(formula=phi, value=value,
                                          valuation=valuation))
    return Verdict(True)


@dataclass(frozen=True, eq=False)
class FrameTranslation:
    """Propositional rendering of global consequence over a fixed frame.

    Fresh variables stand for the source variables at each world and for each
    boxed/diamonded subformula at each world; the deltas tie the latter to
    the meet/join of their successor translations.
    """

    frame: KripkeFrame
    premises: tuple[Formula, ...]
    deltas: dict[str, tuple[Formula, ...]]
    conclusion: Formula
    legend: dict[str, tuple]

    def all_premises(self) -> tuple[Formula, ...]:
        out = list(self.premises)
        for w in self.frame.worlds:
            out.extend(self.deltas[w])
        return tuple(out)


def _fold(cls, items: Sequence[Formula], empty: Formula) -> Formula:
    if not items:
        return empty
    out = items[0]
    for f in items[1:]:
        out = cls(out, f)
    return out


def translate_on_frame(frame: KripkeFrame, gamma: Iterable[Formula],
                       phi: Formula) -> FrameTranslation:
    """Star translation of ``gamma |- phi`` over the given finite frame."""
    gamma = tuple(gamma)
    source_vars = sorted(variables(gamma + (phi,)))
    taken = set(source_vars)

    def fresh(base: str) -> str:
        while base in taken:
            base += "_"
        taken.add(base)
        return base

    widx = {w: i for i, w in enumerate(frame.worlds)}
    modal = sorted((f for f in subformulas(And(_fold(And, gamma, Const1()), phi))
                    if isinstance(f, (Box, Diamond))), key=render)
    legend: dict[str, tuple] = {}
    var_name: dict[tuple[str, str], str] = {}
    mod_name: dict[tuple[Formula, str], str] = {}
    for p in source_vars:
        for w in frame.worlds:
            name = fresh(f"{p}__w{widx[w]}")
            var_name[(p, w)] = name
            legend[name] = ("var", p, w)
    for k, mf in enumerate(modal):
        tag = "box" if isinstance(mf, Box) else "dia"
        for w in frame.worlds:
            name = fresh(f"x{tag}{k}__w{widx[w]}")
            mod_name[(mf, w)] = name
            legend[name] = (tag, mf.body, w)

    star_memo: dict[tuple[Formula, str], Formula] = {}

    def star(f: Formula, w: str) -> Formula:
        key = (f, w)
        out = star_memo.get(key)
        if out is not None:
            return out
        if isinstance(f, (Const0, Const1)):
            out = f
        elif isinstance(f, Var):
            out = Var(var_name[(f.name, w)])
        elif isinstance(f, (Box, Diamond)):
            out = Var(mod_name[(f, w)])
        else:
            out = type(f)(star(f.left, w), star(f.right, w))
        star_memo[key] = out
        return out

    deltas: dict[str, tuple[Formula, ...]] = {}
    for w in frame.worlds:
        rows = []
        for mf in modal:
            succ = [star(mf.body, u) for u in frame.successors(w)]
            if isinstance(mf, Box):
                rhs = _fold(And, succ, Const1())
            else:
                rhs = _fold(Or, succ, Const0())
            rows.append(iff(Var(mod_name[(mf, w)]), rhs))
        deltas[w] = tuple(rows)

    premises = tuple(star(g, w) for g in gamma for w in frame.worlds)
    conclusion = _fold(And, [star(phi, w) for w in frame.worlds], Const1())
    return FrameTranslation(frame=frame, premises=premises, deltas=deltas,
                            conclusion=conclusion, legend=legend)


def decide_on_frame(frame: KripkeFrame, gamma: Iterable[Formula], phi: Formula,
                    alg: Algebra, *,
                    branch_guard: int = BRANCH_GUARD_DEFAULT) -> Verdict:
    """Global consequence over all models on a fixed finite frame.

    Fails with a concrete countermodel on the frame, re-checked by the
    evaluator before being returned.
    """
    gamma = tuple(gamma)
    tr = translate_on_frame(frame, gamma, phi)
    if isinstance(alg, StdMV):
        res = luk_consequence(tr.all_premises(), tr.conclusion,
                              branch_guard=branch_guard)
    elif isinstance(alg, (MVn, FiniteTable)):
        res = finite_consequence(alg, tr.all_premises(), tr.conclusion)
    else:
        raise ValueError(
            f"no propositional decision for {alg.kind}: out of scope")
    if res.holds:
        return Verdict(True)
    point = res.witness.valuation
    valuation: dict[str, dict[str, Value]] = {w: {} for w in frame.worlds}
    for name, entry in tr.legend.items():
        if entry[0] == "var":
            _, p, w = entry
            valuation[w][p] = point.get(name, alg.zero)
    model = KripkeModel(frame, alg, valuation)
    if not globally_satisfies(model, gamma).holds:
        raise RuntimeError("folded countermodel failed premise re-check")
    for w in model.worlds:
        value = evaluate(model, w, phi)
        if value != alg.one:
            return Verdict(False, Witness(world=w, formula=phi, value=value,
                                          model=model))
    raise RuntimeError("folded countermodel failed conclusion re-check")


def decide_cardinality(j: int, gamma: Iterable[Formula], phi: Formula,
                       alg: Algebra, *, cap: int = CARDINALITY_CAP_DEFAULT,
                       branch_guard: int = BRANCH_GUARD_DEFAULT) -> Verdict:
    """Global consequence over all models of cardinality ``j``: conjunction of
    the frame decision over all ``2^(j*j)`` labeled frames, first failure
    returned."""
    if j < 1:
        raise ValueError("cardinality must be at least 1")
    if j > cap:
        raise ResourceLimitError(f"cardinality {j} above cap {cap}")
    gamma = tuple(gamma)
    worlds = [f"w{i + 1}" for i in range(j)]
    pairs = [(a, b) for a in worlds for b in worlds]
    for mask in range(2 ** (j * j)):
        edges = [pairs[b] for b in range(j * j) if mask >> b & 1]
        verdict = decide_on_frame(KripkeFrame(worlds, edges), gamma, phi, alg,
                                  branch_guard=branch_guard)
        if not verdict.holds:
            return verdict
    return Verdict(True)


@dataclass(frozen=True)
class EmittedNonConsequence:
    index: int
    premises: tuple[Formula, ...]
    conclusion: Formula
    cardinality: int
    verdict: Verdict


def coenumerate_nonconsequences(pairs: Sequence[tuple[Sequence[Formula], Formula]],
                                budget: int, alg: Algebra | None = None, *,
                                cap: int = CARDINALITY_CAP_DEFAULT
                                ) -> tuple[EmittedNonConsequence, ...]:
    """Dovetailed co-enumeration of refutable pairs at desk scale.

    The finite input list stands in for the enumeration of all pairs, so all
    of it is stored up front; stage ``i <= budget`` checks every stored pair
    against every cardinality ``j <= min(i, cap)`` and emits newly refuted
    pairs with their witnesses.  Budget exhaustion is normal termination.
    """
    if alg is None:
        alg = StdMV()
    emitted: list[EmittedNonConsequence] = []
    done: set[int] = set()
    cache: dict[tuple[int, int], Verdict] = {}
    for stage in range(1, budget + 1):
        for idx, (gamma, phi) in enumerate(pairs):
            if idx in done:
                continue
            for j in range(1, min(stage, cap) + 1):
                key = (idx, j)
                verdict = cache.get(key)
                if verdict is None:
                    verdict = decide_cardinality(j, tuple(gamma), phi, alg, cap=cap)
                    cache[key] = verdict
                if not verdict.holds:
                    emitted.append(EmittedNonConsequence(
                        idx, tuple(gamma), phi, j, verdict))
                    done.add(idx)
                    break
    return tuple(emitted)
