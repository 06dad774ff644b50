import math
import random
from fractions import Fraction as F

import pytest

from mvmodal.algebras import ExpChain, ExpValue, MVn, StdMV
from mvmodal.formulas import Box, Diamond, Var, box_prefix, parse
from mvmodal.kripke import (KripkeFrame, KripkeModel, consequence_witness,
                            evaluate, extract_chain, generated_submodel,
                            globally_satisfies, height, heights, is_transitive,
                            model_from_json, model_to_json, unravel)
from helpers import (modal_depth, naive_eval, random_formula,
                     random_mv3_model_data)

P = parse


def single(value=F(1), var="p", edges=()):
    return KripkeModel(KripkeFrame(["w"], edges), StdMV(), {"w": {var: value}})


def test_evaluate_successor_free_world():
    m = single()
    assert evaluate(m, "w", P("[] 0")) == 1
    assert evaluate(m, "w", P("<> 1")) == 0


def test_evaluate_box_meet():
    fr = KripkeFrame(["w1", "w2"], [("w1", "w2")])
    m = KripkeModel(fr, StdMV(), {"w1": {"p": F(1)}, "w2": {"p": F(1, 2)}})
    assert evaluate(m, "w1", P("[] p")) == F(1, 2)
    assert evaluate(m, "w1", P("p * [] p")) == F(1, 2)


def test_evaluate_undeclared_variable():
    m = single()
    with pytest.raises(KeyError):
        evaluate(m, "w", P("p -> zz"))
    with pytest.raises(KeyError):
        evaluate(m, "v", P("p"))


def test_valuation_must_be_total():
    fr = KripkeFrame(["a", "b"], [])
    with pytest.raises(ValueError):
        KripkeModel(fr, StdMV(), {"a": {"p": F(1)}, "b": {}})


def test_globally_satisfies():
    m = single()
    assert globally_satisfies(m, []).holds
    assert globally_satisfies(m, [P("p")]).holds
    m2 = single(F(1, 2))
    v = globally_satisfies(m2, [P("p \\/ ~p")])
    assert not v.holds
    assert v.witness.world == "w" and v.witness.value == F(1, 2)


def test_consequence_witness():
    fr = KripkeFrame(["w1", "w2"], [("w1", "w2")])
    m = KripkeModel(fr, StdMV(), {"w1": {"p": F(1, 4)}, "w2": {"p": F(1)}})
    # premises fail globally: vacuous
    assert consequence_witness(m, [P("p")], P("0")).holds
    m2 = KripkeModel(fr, StdMV(), {"w1": {"p": F(1)}, "w2": {"p": F(1)}})
    assert consequence_witness(m2, [P("p")], P("[] p")).holds
    m3 = KripkeModel(fr, StdMV(), {"w1": {"p": F(0)}, "w2": {"p": F(1)}})
    v = consequence_witness(m3, [P("[] p")], P("p"))
    assert not v.holds and v.witness.world == "w1"


def test_height():
    fr = KripkeFrame(["0", "1", "2"], [("0", "1"), ("1", "2")])
    assert height(fr, "0") == 2 and height(fr, "2") == 0
    refl = KripkeFrame(["w"], [("w", "w")])
    assert height(refl, "w") == math.inf
    iso = KripkeFrame(["w"], [])
    assert height(iso, "w") == 0
    # predecessors of a cycle have infinite height
    fr2 = KripkeFrame(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "b")])
    hs = heights(fr2)
    assert hs["a"] == hs["b"] == hs["c"] == math.inf
    with pytest.raises(KeyError):
        height(fr, "zz")


def test_unravel_reflexive_singleton():
    m = KripkeModel(KripkeFrame(["w"], [("w", "w")]), StdMV(),
                    {"w": {"p": F(1, 3)}})
    t = unravel(m, "w", 2)
    assert len(t.worlds) == 3
    assert all(t.value(w, "p") == F(1, 3) for w in t.worlds)
    hs = heights(t.frame)
    assert sorted(hs.values()) == [0, 1, 2]


def test_unravel_tree_copy():
    fr = KripkeFrame(["r", "a", "b"], [("r", "a"), ("r", "b")])
    m = KripkeModel(fr, StdMV(), {w: {"p": F(1, 2)} for w in fr.worlds})
    t = unravel(m, "r", 3)
    assert len(t.worlds) == 3
    assert len(t.frame.edges) == 2


def test_unravel_evaluation_agreement():
    rng = random.Random(42)
    for _ in range(100):
        worlds, edges, valuation = random_mv3_model_data(rng)
        m = KripkeModel(KripkeFrame(worlds, edges), MVn(3), valuation)
        root = rng.choice(worlds)
        f = random_formula(rng, 3)
        d = modal_depth(f)
        if d > 3:
            continue
        t = unravel(m, root, max(d, 1))
        assert evaluate(t, root, f) == evaluate(m, root, f)


def test_extract_chain():
    fr = KripkeFrame(["0", "1", "2"], [("0", "1"), ("1", "2")])
    m = KripkeModel(fr, StdMV(), {w: {"p": F(1)} for w in fr.worlds})
    c = extract_chain(m, "0")
    assert c.worlds == ("0", "1", "2")
    # branching: least-id successor chosen at each step
    fr2 = KripkeFrame(["r", "a", "b", "c"], [("r", "b"), ("r", "a"), ("a", "c")])
    m2 = KripkeModel(fr2, StdMV(), {w: {"p": F(1)} for w in fr2.worlds})
    c2 = extract_chain(m2, "r")
    assert c2.worlds == ("a", "c", "r")
    assert c2.frame.edges == frozenset({("r", "a"), ("a", "c")})
    refl = KripkeModel(KripkeFrame(["w"], [("w", "w")]), StdMV(),
                       {"w": {"p": F(1)}})
    with pytest.raises(ValueError):
        extract_chain(refl, "w")


def test_generated_submodel():
    fr = KripkeFrame(["0", "1", "2"], [("0", "1"), ("1", "2")])
    m = KripkeModel(fr, StdMV(), {w: {"p": F(1, 2)} for w in fr.worlds})
    sub = generated_submodel(m, "1")
    assert set(sub.worlds) == {"1", "2"}
    assert generated_submodel(m, "2").worlds == ("2",)
    cyc = KripkeModel(KripkeFrame(["a", "b"], [("a", "b"), ("b", "a")]),
                      StdMV(), {w: {"p": F(1)} for w in ("a", "b")})
    assert set(generated_submodel(cyc, "a").worlds) == {"a", "b"}


def test_is_transitive():
    assert is_transitive(KripkeFrame(["a", "b", "c"],
                                     [("a", "b"), ("b", "c"), ("a", "c")]))
    assert not is_transitive(KripkeFrame(["a", "b", "c"],
                                         [("a", "b"), ("b", "c")]))
    assert is_transitive(KripkeFrame(["a"], []))


def test_evaluator_against_naive_reference():
    rng = random.Random(123)
    for _ in range(60):
        worlds, edges, valuation = random_mv3_model_data(rng)
        m = KripkeModel(KripkeFrame(worlds, edges), MVn(3), valuation)
        f = random_formula(rng, 4)
        for w in worlds:
            assert evaluate(m, w, f) == naive_eval(worlds, edges, valuation, w, f)


def test_global_to_local_on_transitive_models():
    # over transitive frames: premises plus their boxed copies hold at v
    # exactly when the submodel generated by v satisfies them globally
    rng = random.Random(99)
    gamma = (P("p"), P("p -> q"))
    checked = 0
    while checked < 50:
        worlds, edges, valuation = random_mv3_model_data(rng, max_worlds=4)
        # transitive closure
        es = set(edges)
        changed = True
        while changed:
            changed = False
            for a, b in list(es):
                for c, d in list(es):
                    if b == c and (a, d) not in es:
                        es.add((a, d))
                        changed = True
        m = KripkeModel(KripkeFrame(worlds, es), MVn(3), valuation)
        v = rng.choice(worlds)
        local = all(evaluate(m, v, g) == 1
                    for g in box_prefix(gamma, 1))
        glob = globally_satisfies(generated_submodel(m, v), gamma).holds
        assert local == glob
        checked += 1


def test_model_json_round_trip():
    fr = KripkeFrame(["w1", "w2"], [("w1", "w2")])
    for alg, val in ((StdMV(), F(1, 2)), (ExpChain(), ExpValue(F(3, 2)))):
        m = KripkeModel(fr, alg, {w: {"p": val} for w in fr.worlds})
        back = model_from_json(model_to_json(m))
        assert back.worlds == m.worlds
        assert back.frame.edges == m.frame.edges
        assert back.value("w1", "p") == val
        assert back.algebra == alg
