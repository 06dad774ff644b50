"""Deciding global consequence over a fixed finite frame.

The decision translates the question into pure propositional consequence:
fresh variables stand for each source variable at each world and for each
boxed/diamonded subformula at each world, and delta premises tie the modal
variables to meets/joins over successors.  Over the standard MV algebra the
propositional question is settled by exact case-split linear programming;
over finite chains by brute force.
"""

from mvmodal import (KripkeFrame, MVn, StdMV, decide_cardinality,
                     decide_on_frame, evaluate, globally_satisfies, parse,
                     render, translate_on_frame)
from mvmodal.decision import coenumerate_nonconsequences

frame = KripkeFrame(["w1", "w2"], [("w1", "w2")])
gamma = [parse("[] p")]
phi = parse("p")

print("== the translation for {[] p} |= p over w1 -> w2 ==")
tr = translate_on_frame(frame, gamma, phi)
print("starred premises:", [render(f) for f in tr.premises])
for w in frame.worlds:
    print(f"deltas at {w}:", [render(f) for f in tr.deltas[w]])
print("conclusion:", render(tr.conclusion))

print("\n== the verdict ==")
verdict = decide_on_frame(frame, gamma, phi, StdMV())
print("holds:", verdict.holds)
model = verdict.witness.model
print("countermodel:", {w: {v: str(model.value(w, v)) for v in model.variables}
                        for w in model.worlds})
print("re-checked: premises hold globally:",
      globally_satisfies(model, gamma).holds,
      "| conclusion at", verdict.witness.world, "=",
      str(evaluate(model, verdict.witness.world, phi)))

print("\n== sweeping every labeled frame of a given cardinality ==")
for j in (1, 2):
    v = decide_cardinality(j, [], parse("[] p -> p"), StdMV())
    print(f"cardinality {j}: [] p -> p holds: {v.holds}")

print("\n== co-enumerating refutable pairs from a seeded list ==")
pairs = [
    ((), parse("p \\/ ~p")),
    ((parse("p"),), parse("[] p")),
    ((), parse("[] p -> p")),
]
for e in coenumerate_nonconsequences(pairs, 2):
    print(f"pair #{e.index} refuted at cardinality {e.cardinality}; "
          f"witness world {e.verdict.witness.world}")
