"""Global consequence is strictly stronger than local-plus-necessitation.

The four premises below entail x -> x*y in every global model: each world
keeps a successor alive, y is constant along the accessible part, and x sits
below every power of y.  Locally, adding the necessitation rule only ever
buys finitely many boxed copies of the premises, and for every depth N a
finite chain satisfies all of them at its start world while x -> x*y stays
below 1 there.
"""

from fractions import Fraction as F

from mvmodal import (ExpChain, StdMV, build_premise_cycle_model,
                     build_nec_model, evaluate, globally_satisfies, parse,
                     render, separation_premises, verify_separation)

premises = separation_premises()
print("== the premises ==")
for f in premises:
    print("  ", render(f))
print("|-  x -> x * y   (globally, but not locally with necessitation)")

print("\n== global direction: cycle models satisfying the premises ==")
for k, alpha in ((1, F(1, 2)), (3, F(3, 4))):
    m = build_premise_cycle_model(k, alpha)
    goal_ok = all(evaluate(m, w, parse("x -> x * y")) == 1 for w in m.worlds)
    print(f"  {k}-cycle with y = {alpha}: premises hold "
          f"{globally_satisfies(m, premises).holds}, x -> x*y everywhere {goal_ok}")

print("\n== local direction: one chain countermodel per boxing depth ==")
for n in (0, 2, 5):
    report = verify_separation(n, StdMV())
    m = report.model
    xs = ", ".join(f"x({w})={m.value(w, 'x')}" for w in m.worlds)
    print(f"  N={n}: levels all hold: {all(ok for _, ok in report.levels)}, "
          f"final x -> x*y = {report.final_value} | {xs}")

report = verify_separation(3, ExpChain())
print(f"  N=3 over the power chain: final value {report.final_value!r} "
      f"(one step short of the unit)")

print("\n== tightness: one more boxing level breaks the countermodel ==")
from mvmodal import Box
m = build_nec_model(2, StdMV())
boxed = premises
for _ in range(3):
    boxed = tuple(Box(f) for f in boxed)
values = [str(evaluate(m, m.worlds[0], f)) for f in boxed]
print("  box^3 of the premises at the start world:", values)
