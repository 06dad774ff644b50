import random
from fractions import Fraction as F

from mvmodal.lp import Constraint, solve_max


def test_textbook_maximum():
    res = solve_max({"x": F(1), "y": F(1)}, [
        Constraint({"x": F(1), "y": F(2)}, "<=", F(4)),
        Constraint({"x": F(3), "y": F(1)}, "<=", F(6)),
    ])
    assert res.status == "optimal"
    assert res.value == F(14, 5)
    assert res.point == {"x": F(8, 5), "y": F(6, 5)}


def test_equalities_and_negative_rhs():
    res = solve_max({"t": F(-1)}, [Constraint({"t": F(1)}, "==", F(1))])
    assert res.status == "optimal" and res.value == F(-1)
    res = solve_max({"x": F(-1)}, [
        Constraint({"x": F(-1)}, "<=", F(-1, 2)),
        Constraint({"x": F(1)}, "<=", F(1)),
    ])
    assert res.value == F(-1, 2)


def test_infeasible_and_unbounded():
    res = solve_max({"x": F(1)}, [
        Constraint({"x": F(1)}, "<=", F(1)),
        Constraint({"x": F(1)}, ">=", F(2)),
    ])
    assert res.status == "infeasible"
    res = solve_max({"x": F(1)}, [Constraint({"y": F(1)}, "<=", F(1))])
    assert res.status == "unbounded"


def test_redundant_rows_and_degeneracy():
    res = solve_max({"x": F(1)}, [
        Constraint({"x": F(1)}, "==", F(1)),
        Constraint({"x": F(1)}, "==", F(1)),
        Constraint({"x": F(1), "y": F(1)}, "<=", F(1)),
    ])
    assert res.status == "optimal" and res.value == 1 and res.point["y"] == 0


def test_random_solutions_are_feasible_and_dominant():
    rng = random.Random(3)
    for _ in range(60):
        nvars = rng.randint(1, 4)
        names = [f"v{i}" for i in range(nvars)]
        rows = [Constraint({v: F(1)}, "<=", F(1)) for v in names]
        for _ in range(rng.randint(1, 5)):
            coeffs = {v: F(rng.randint(-3, 3)) for v in names}
            rows.append(Constraint(coeffs, rng.choice(["<=", ">=", "=="]),
                                   F(rng.randint(-2, 3))))
        obj = {v: F(rng.randint(-3, 3)) for v in names}
        res = solve_max(obj, rows)
        if res.status != "optimal":
            continue

        def feasible(pt):
            for c in rows:
                lhs = sum(a * pt.get(v, F(0)) for v, a in c.coeffs.items())
                if c.sense == "<=" and lhs > c.rhs:
                    return False
                if c.sense == ">=" and lhs < c.rhs:
                    return False
                if c.sense == "==" and lhs != c.rhs:
                    return False
            return True

        assert feasible(res.point)
        assert all(v >= 0 for v in res.point.values())
        # random feasible points never beat the reported optimum
        for _ in range(30):
            pt = {v: F(rng.randint(0, 4), 4) for v in names}
            if feasible(pt):
                val = sum(a * pt[v] for v, a in obj.items())
                assert val <= res.value
