"""Shared test utilities: an independent reference evaluator and generators.

The reference evaluator below works on raw dicts and spells out the
operation tables inline, so it shares no code with the package's algebra or
evaluation paths.
"""

from __future__ import annotations

import random
from fractions import Fraction as F

from mvmodal.formulas import (And, Box, Const0, Const1, Diamond, Formula,
                              Implies, Or, Times, Var)

MV3 = (F(0), F(1, 2), F(1))


def luk_times(a, b):
    return max(F(0), a + b - 1)


def luk_implies(a, b):
    return min(F(1), 1 - a + b)


def naive_eval(worlds, edges, valuation, world, f):
    """Plain recursive evaluation over the standard MV operations.

    ``worlds`` is an iterable of ids, ``edges`` a collection of pairs and
    ``valuation`` a nested dict; no memoization, no shared code with the
    package evaluator.
    """
    if isinstance(f, Const0):
        return F(0)
    if isinstance(f, Const1):
        return F(1)
    if isinstance(f, Var):
        return valuation[world][f.name]
    if isinstance(f, And):
        return min(naive_eval(worlds, edges, valuation, world, f.left),
                   naive_eval(worlds, edges, valuation, world, f.right))
    if isinstance(f, Or):
        return max(naive_eval(worlds, edges, valuation, world, f.left),
                   naive_eval(worlds, edges, valuation, world, f.right))
    if isinstance(f, Times):
        return luk_times(naive_eval(worlds, edges, valuation, world, f.left),
                         naive_eval(worlds, edges, valuation, world, f.right))
    if isinstance(f, Implies):
        return luk_implies(naive_eval(worlds, edges, valuation, world, f.left),
                           naive_eval(worlds, edges, valuation, world, f.right))
    succ = sorted(b for a, b in edges if a == world)
    vals = [naive_eval(worlds, edges, valuation, s, f.body) for s in succ]
    if isinstance(f, Box):
        return min(vals, default=F(1))
    return max(vals, default=F(0))


def random_formula(rng: random.Random, depth: int, names=("p", "q"),
                   modal: bool = True) -> Formula:
    if depth == 0 or rng.random() < 0.2:
        k = rng.randrange(len(names) + 2)
        if k == 0:
            return Const0()
        if k == 1:
            return Const1()
        return Var(names[k - 2])
    choices = [And, Or, Times, Implies]
    if modal:
        choices += [Box, Diamond]
    cls = rng.choice(choices)
    if cls in (Box, Diamond):
        return cls(random_formula(rng, depth - 1, names, modal))
    return cls(random_formula(rng, depth - 1, names, modal),
               random_formula(rng, depth - 1, names, modal))


def modal_depth(f: Formula) -> int:
    if isinstance(f, (Const0, Const1, Var)):
        return 0
    if isinstance(f, (Box, Diamond)):
        return 1 + modal_depth(f.body)
    return max(modal_depth(f.left), modal_depth(f.right))


def random_mv3_model_data(rng: random.Random, max_worlds: int = 4,
                          names=("p", "q")):
    """Raw (worlds, edges, valuation) triple over the three-element chain."""
    k = rng.randint(1, max_worlds)
    worlds = [f"w{i}" for i in range(k)]
    edges = [(a, b) for a in worlds for b in worlds if rng.random() < 0.4]
    valuation = {w: {p: rng.choice(MV3) for p in names} for w in worlds}
    return worlds, edges, valuation


def random_rational(rng: random.Random, max_den: int = 12) -> F:
    den = rng.randint(1, max_den)
    return F(rng.randint(0, den), den)
