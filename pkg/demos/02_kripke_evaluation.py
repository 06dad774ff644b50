"""Kripke models over many-valued algebras: evaluation and submodels.

Box is the meet over successors (1 when there are none), diamond the join
(0 when there are none); global satisfaction asks for value 1 everywhere.
"""

from fractions import Fraction as F

from mvmodal import (KripkeFrame, KripkeModel, StdMV, consequence_witness,
                     evaluate, extract_chain, generated_submodel,
                     globally_satisfies, height, parse, render, unravel)

frame = KripkeFrame(["u", "v", "w"], [("u", "v"), ("u", "w"), ("v", "w")])
model = KripkeModel(frame, StdMV(), {
    "u": {"p": F(1), "q": F(1, 2)},
    "v": {"p": F(3, 4), "q": F(1)},
    "w": {"p": F(1, 2), "q": F(1, 2)},
})

print("frame:", sorted(frame.edges))
for s in ("[] p", "<> q", "p * [] p", "[] (p -> q)"):
    f = parse(s)
    print(f"{s:12s} ->", {w: str(evaluate(model, w, f)) for w in model.worlds})

print("\nheights:", {w: height(frame, w) for w in frame.worlds})

print("\nglobal satisfaction of p -> q:")
verdict = globally_satisfies(model, [parse("p -> q")])
print("holds:", verdict.holds, "| witness:",
      verdict.witness.world, str(verdict.witness.value))

print("\nper-model consequence [] p |= p:")
verdict = consequence_witness(model, [parse("[] p")], parse("p"))
print("holds:", verdict.holds)

print("\nunraveling a reflexive world into a depth-3 path tree:")
loop = KripkeModel(KripkeFrame(["r"], [("r", "r")]), StdMV(),
                   {"r": {"p": F(2, 3)}})
tree = unravel(loop, "r", 3)
print("tree worlds:", tree.worlds)
print("box-depth-2 formula agrees at the root:",
      evaluate(tree, "r", parse("[] [] p")) == evaluate(loop, "r", parse("[] [] p")))

print("\nchain extraction (least-id successor at every step):")
chain = extract_chain(model, "u")
print("chain worlds:", chain.worlds, "edges:", sorted(chain.frame.edges))

print("\ngenerated submodel at v:")
sub = generated_submodel(model, "v")
print("worlds:", sub.worlds)
