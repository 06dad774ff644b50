"""Bridges between the logics: finite-to-global and MV-to-product.

The first reduction swallows the finiteness of models into two fresh
variables; the second maps MV values v to powers a^(1-v) of a formal base,
so that consequence questions transfer between the two standard semantics.
"""

from fractions import Fraction as F

from mvmodal import (KripkeFrame, KripkeModel, StdMV, evaluate,
                     finite_to_global, luk2prod_formula, modal_to_fo,
                     model_l2p, model_p2l, parse, recognize_finite_to_global,
                     render, render_fo, rewrite_to_fragment, product_side_premises,
                     verify_exponent_identity)

print("== finite-model consequence reduced to unrestricted consequence ==")
gamma, phi = finite_to_global((parse("r"),), parse("r"), "p", "q")
for g in gamma:
    print("  ", render(g))
print("|- ", render(phi))
print("recognized back:", recognize_finite_to_global(gamma, phi))

print("\n== the product-side translation, clause by clause ==")
for s in ("0", "p", "p * q", "p -> q", "[] p"):
    f = rewrite_to_fragment(parse(s))
    print(f"  ({s})^x  =", render(luk2prod_formula(f, "x")))
print("side premises:", [render(f) for f in product_side_premises("x")])

print("\n== the model transform realizes a^(1 - v) exactly ==")
frame = KripkeFrame(["a", "b"], [("a", "b")])
model = KripkeModel(frame, StdMV(), {"a": {"p": F(1, 2)}, "b": {"p": F(3, 4)}})
prod = model_l2p(model, "x")
for w in prod.worlds:
    print(f"  {w}: p={prod.value(w, 'p')!r} x={prod.value(w, 'x')!r}")
print("box case at a:", repr(evaluate(prod, "a",
                                      luk2prod_formula(parse("[] p"), "x"))),
      "(the source box value is 3/4, and 1 - 3/4 = 1/4)")

violations = verify_exponent_identity(model, [rewrite_to_fragment(parse(s))
                                   for s in ("~p", "[] p", "p * p")], "x")
print("exponent identity violations:", violations)

back = model_p2l(prod)
print("round trip restores the valuation:",
      all(back.value(w, "p") == model.value(w, "p") for w in model.worlds))

print("\n== standard first-order translation ==")
for s in ("[] p", "<> p", "[] (p -> <> q)"):
    print(f"  {s:16s}", render_fo(modal_to_fo(parse(s), 0)))
