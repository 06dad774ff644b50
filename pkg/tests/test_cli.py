import json

import pytest

from mvmodal.cli import run
from mvmodal.kripke import model_from_json

P0_JSON = {"base": 2, "pairs": [[["1", 1], ["3", 2]], [["3", 2], ["1", 1]]]}
CHAIN2 = {"worlds": ["w1", "w2"], "edges": [["w1", "w2"]]}


@pytest.fixture
def files(tmp_path):
    p0 = tmp_path / "p0.json"
    p0.write_text(json.dumps(P0_JSON))
    fr = tmp_path / "chain2.json"
    fr.write_text(json.dumps(CHAIN2))
    return {"p0": str(p0), "frame": str(fr), "dir": tmp_path}


def invoke(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


def test_check_frame_fails_with_witness(files, capsys):
    code, out = invoke(capsys, ["check", "--frame", files["frame"],
                                "--algebra", "std-mv",
                                "--premises", "[]p", "--conclusion", "p"])
    assert code == 1
    blob = json.loads(out)
    assert blob["holds"] is False
    model = model_from_json(blob["witness"]["model"])
    assert blob["witness"]["world"] == "w1"
    # witness re-verifies through eval
    mfile = files["dir"] / "witness.json"
    mfile.write_text(json.dumps(blob["witness"]["model"]))
    code2, out2 = invoke(capsys, ["eval", "--model", str(mfile),
                                  "--conclusion", "p"])
    assert code2 == 0
    values = json.loads(out2)["values"]
    assert values[blob["witness"]["world"]] != "1"


def test_check_holds_exit_zero(files, capsys):
    code, out = invoke(capsys, ["check", "--frame", files["frame"],
                                "--algebra", "std-mv",
                                "--premises", "p", "--conclusion", "[]p"])
    assert code == 0 and json.loads(out) == {"holds": True}


def test_check_cardinality(files, capsys):
    code, out = invoke(capsys, ["check", "--cardinality", "1",
                                "--algebra", "std-mv",
                                "--conclusion", "[]p -> p"])
    assert code == 1
    code, _ = invoke(capsys, ["check", "--cardinality", "2",
                              "--algebra", "mv-3",
                              "--premises", "p", "--conclusion", "[]p"])
    assert code == 0


def test_check_model_mode(files, capsys, tmp_path):
    code, out = invoke(capsys, ["pcp-model", "--instance", files["p0"],
                                "--solution", "1,2", "--algebra", "std-mv"])
    assert code == 0
    mfile = tmp_path / "m.json"
    mfile.write_text(out)
    code, out = invoke(capsys, ["check", "--model", str(mfile),
                                "--premises", "z", "--conclusion", "x"])
    assert code == 0  # premises not satisfied: vacuous
    code, out = invoke(capsys, ["check", "--model", str(mfile),
                                "--premises", "x <-> x", "--conclusion", "z"])
    assert code == 1


def test_pcp_pipeline(files, capsys, tmp_path):
    code, out = invoke(capsys, ["pcp-encode", "--instance", files["p0"]])
    assert code == 0
    enc = json.loads(out)
    assert len(enc["premises"]) == 5
    gfile = tmp_path / "gamma.json"
    gfile.write_text(json.dumps(enc["premises"]))

    code, out = invoke(capsys, ["pcp-model", "--instance", files["p0"],
                                "--solution", "1,2", "--algebra", "exp-chain"])
    assert code == 0
    mfile = tmp_path / "me.json"
    mfile.write_text(out)

    # the emitted model globally satisfies the encoded premises
    code, out = invoke(capsys, ["check", "--model", str(mfile),
                                "--premises", "@" + str(gfile),
                                "--conclusion", enc["conclusion"]])
    assert code == 1  # refuted at the top world: that is the point

    code, out = invoke(capsys, ["pcp-extract", "--instance", files["p0"],
                                "--model", str(mfile)])
    assert code == 0
    assert json.loads(out)["solution"] == [1, 2]


def test_determinism(files, capsys):
    args = ["check", "--frame", files["frame"], "--algebra", "std-mv",
            "--premises", "[]p", "--conclusion", "p"]
    _, out1 = invoke(capsys, args)
    _, out2 = invoke(capsys, args)
    assert out1 == out2


def test_nec_demo(capsys):
    code, out = invoke(capsys, ["nec-demo", "--n", "2"])
    assert code == 0
    blob = json.loads(out)
    assert blob["passed"] is True
    assert blob["final_value"] == "4/5"
    assert [row["x"] for row in blob["table"]] == ["2/5", "3/5", "4/5", "1"]
    code, out = invoke(capsys, ["nec-demo", "--n", "1", "--algebra", "exp-chain"])
    assert code == 0
    assert json.loads(out)["final_value"] == {"pow": "1"}


def test_coenum(tmp_path, capsys):
    pairs = [
        {"premises": [], "conclusion": "p \\/ ~p"},
        {"premises": ["p"], "conclusion": "p"},
        {"premises": [], "conclusion": "[]p -> p"},
    ]
    pfile = tmp_path / "pairs.json"
    pfile.write_text(json.dumps(pairs))
    code, out = invoke(capsys, ["coenum", "--instance", str(pfile),
                                "--budget", "2"])
    assert code == 0
    blob = json.loads(out)
    assert [e["index"] for e in blob["emitted"]] == [0, 2]


def test_mod2fo(capsys):
    code, out = invoke(capsys, ["mod2fo", "--conclusion", "[]p"])
    assert code == 0
    blob = json.loads(out)
    assert blob["fo"] == "∀x1 (R(x0,x1) -> P_p(x1))"
    assert blob["fo_ascii"] == "forall x1 (R(x0,x1) -> P_p(x1))"


def test_reduce_and_l2p(capsys):
    code, out = invoke(capsys, ["reduce-fin2glob", "--premises", "r",
                                "--conclusion", "r"])
    assert code == 0
    blob = json.loads(out)
    assert blob["p"] == "p" and blob["q"] == "q"
    assert len(blob["premises"]) == 4

    code, out = invoke(capsys, ["l2p", "--conclusion", "~p"])
    assert code == 0
    blob = json.loads(out)
    assert blob["x"] == "t"
    assert blob["formula"] == "((p \\/ t) -> t)"
    assert len(blob["product_side_premises"]) == 3


def test_usage_errors(files, capsys):
    assert run(["check", "--conclusion", "p -> ("]) == 2
    assert run(["check", "--frame", files["frame"], "--cardinality", "1",
                "--conclusion", "p"]) == 2  # two modes at once
    assert run(["eval", "--conclusion", "p"]) == 2  # missing model
    assert run(["nope"]) == 2
    assert run(["check", "--frame", files["frame"], "--weird"]) == 2
    assert run(["check", "--cardinality", "9", "--algebra", "std-mv",
                "--conclusion", "p"]) == 3  # cardinality guard


def test_plain_output(files, capsys):
    code, out = invoke(capsys, ["check", "--frame", files["frame"],
                                "--algebra", "std-mv", "--premises", "[]p",
                                "--conclusion", "p", "--plain"])
    assert code == 1
    assert out.strip() == "fails at world w1"
