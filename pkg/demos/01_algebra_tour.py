"""Tour of the supported algebras and their exact operations.

Every carrier is exact: rationals, symbolic powers, or table indices.
"""

from fractions import Fraction as F

from mvmodal import (ExpChain, ExpValue, FiniteTable, MVn, StdGodel, StdMV,
                     StdProduct, mv_chain_tables, validate_finite_algebra)

mv = StdMV()
godel = StdGodel()
prod = StdProduct()
chain = ExpChain()

print("== products and residua at (1/2, 1/4) ==")
for alg in (mv, godel, prod):
    print(f"{alg.kind:12s} 1/2 * 1/4 = {alg.times(F(1,2), F(1,4))}"
          f"   1/2 -> 1/4 = {alg.residuum(F(1,2), F(1,4))}")

print("\n== powers: the MV product truncates, the others do not ==")
a = F(7, 8)
print("std-mv    ", [str(mv.power(a, n)) for n in range(9)])
print("std-godel ", [str(godel.power(a, n)) for n in range(4)])
print("std-product art: exact rationals grow, so large powers are refused;")
print("the power chain tracks exponents of a formal base a instead:")
t = ExpValue(F(1))
print("exp-chain ", [repr(chain.power(t, n)) for n in (0, 1, 7, 10 ** 12)])

print("\n== contractivity ==")
alg5 = MVn(5)
print("MV_5 is 4-contractive: a^5 = a^4 for every a:",
      all(alg5.power(a, 5) == alg5.power(a, 4) for a in alg5.carrier()))
print("the power chain never contracts: a^(n+1) < a^n:",
      all(chain.leq(chain.power(t, n + 1), chain.power(t, n))
          and chain.power(t, n + 1) != chain.power(t, n) for n in range(1, 8)))

print("\n== finite tables are validated exhaustively ==")
tables = mv_chain_tables(3)
report = validate_finite_algebra(tables["size"], tables["meet"], tables["join"],
                                 tables["times"], tables["residuum"],
                                 tables["zero"], tables["one"])
print("3-element MV chain tables:", report)
bad = [list(row) for row in tables["residuum"]]
bad[1][1] = 0
report = validate_finite_algebra(tables["size"], tables["meet"], tables["join"],
                                 tables["times"], bad,
                                 tables["zero"], tables["one"])
print("after corrupting residuum(1/2, 1/2):")
print(report)

ft = FiniteTable(**mv_chain_tables(4))
print("\n4-element chain as a table algebra: 2 * 3 =", ft.times(2, 3),
      "  residuum(2, 1) =", ft.residuum(2, 1))
