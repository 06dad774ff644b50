"""Batch command-line surface with stable, machine-readable output.

Exit codes: 0 when a verdict holds or a construction succeeds, 1 when a
verdict fails (the witness is emitted), 2 on usage or input errors, 3 when a
resource guard trips.  All output is deterministic: JSON with sorted keys by
default, a human rendering behind --plain.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebras import (Algebra, ExpChain, MVn, ResourceLimitError, StdGodel,
                       StdMV, StdProduct, algebra_to_json, value_to_json)
from .bridges import (finite_to_global, luk2prod_formula, model_l2p,
                      modal_to_fo, render_fo, rewrite_to_fragment, product_side_premises)
from .decision import (coenumerate_nonconsequences, decide_cardinality,
                       decide_on_frame)
from .formulas import Formula, ParseError, parse, render, variables
from .kripke import (KripkeModel, Verdict, consequence_witness, evaluate,
                     frame_from_json, frame_to_json, load_model,
                     model_to_json)
from .necessitation import verify_separation
from .pcp import (build_countermodel, encode, extract_solution, load_instance)

__all__ = ["run", "main"]


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _parse_algebra(name: str) -> Algebra:
    if name == "std-mv":
        return StdMV()
    if name == "std-godel":
        return StdGodel()
    if name == "std-product":
        return StdProduct()
    if name == "exp-chain":
        return ExpChain()
    if name.startswith("mv-"):
        try:
            return MVn(int(name[3:]))
        except ValueError:
            pass
    raise ValueError(f"unknown algebra {name!r} (use std-mv, std-godel, "
                     "std-product, exp-chain or mv-<n>)")


def _parse_premises(spec: str | None) -> tuple[Formula, ...]:
    if not spec:
        return ()
    if spec.startswith("@"):
        with open(spec[1:], "r", encoding="utf-8") as fh:
            text = fh.read()
        stripped = text.lstrip()
        if stripped.startswith("["):
            items = json.loads(text)
        else:
            items = [line for line in text.splitlines() if line.strip()]
        return tuple(parse(s) for s in items)
    return tuple(parse(part) for part in spec.split(";") if part.strip())


def _emit(obj, plain: str | None, use_plain: bool) -> None:
    if use_plain and plain is not None:
        print(plain)
    else:
        print(json.dumps(obj, indent=2, sort_keys=True))


def _witness_json(verdict: Verdict, alg: Algebra) -> dict:
    w = verdict.witness
    out: dict = {}
    if w.world is not None:
        out["world"] = w.world
    if w.value is not None:
        out["value"] = value_to_json(alg, w.value)
    if w.model is not None:
        out["model"] = model_to_json(w.model)
        out["frame"] = frame_to_json(w.model.frame)
    if w.valuation is not None:
        out["valuation"] = {k: value_to_json(alg, v)
                            for k, v in sorted(w.valuation.items())}
    return out


def _cmd_eval(args) -> int:
    model = load_model(args.model)
    f = parse(args.conclusion)
    values = {w: value_to_json(model.algebra, evaluate(model, w, f))
              for w in model.worlds}
    plain = "\n".join(f"{w}: {values[w]}" for w in model.worlds)
    _emit({"formula": render(f), "values": values}, plain, args.plain)
    return 0


def _cmd_check(args) -> int:
    gamma = _parse_premises(args.premises)
    phi = parse(args.conclusion)
    modes = [m for m in (args.model, args.frame, args.cardinality) if m is not None]
    if len(modes) != 1:
        raise ValueError("check needs exactly one of --model, --frame, --cardinality")
    if args.model:
        model = load_model(args.model)
        alg = model.algebra
        verdict = consequence_witness(model, gamma, phi)
    else:
        alg = _parse_algebra(args.algebra)
        if args.frame:
            frame = frame_from_json(_load_json(args.frame))
            verdict = decide_on_frame(frame, gamma, phi, alg)
        else:
            verdict = decide_cardinality(args.cardinality, gamma, phi, alg)
    if verdict.holds:
        _emit({"holds": True}, "holds", args.plain)
        return 0
    out = {"holds": False, "witness": _witness_json(verdict, alg)}
    plain = f"fails at world {verdict.witness.world}" \
        if verdict.witness.world else "fails"
    _emit(out, plain, args.plain)
    return 1


def _cmd_pcp_encode(args) -> int:
    instance = load_instance(args.instance)
    gamma, phi = encode(instance)
    out = {"premises": [render(g) for g in gamma], "conclusion": render(phi)}
    plain = "\n".join([*out["premises"], "|-", out["conclusion"]])
    _emit(out, plain, args.plain)
    return 0


def _parse_solution(spec: str) -> list[int]:
    return [int(s) for s in spec.split(",") if s.strip()]


def _cmd_pcp_model(args) -> int:
    instance = load_instance(args.instance)
    alg = _parse_algebra(args.algebra)
    model = build_countermodel(instance, _parse_solution(args.solution), alg)
    out = model_to_json(model)
    plain = "\n".join(
        f"{w}: " + ", ".join(f"{p}={out['valuation'][w][p]}" for p in model.variables)
        for w in model.worlds)
    _emit(out, plain, args.plain)
    return 0


def _cmd_pcp_extract(args) -> int:
    instance = load_instance(args.instance)
    model = load_model(args.model)
    targets = [w for w in model.worlds
               if all(e[1] != w for e in model.frame.edges)]
    if len(targets) != 1:
        raise ValueError("model does not have a unique top world")
    solution = extract_solution(instance, model, targets[0])
    _emit({"solution": solution, "top": targets[0]},
          ",".join(map(str, solution)), args.plain)
    return 0


def _fresh_names(used, bases) -> list[str]:
    out = []
    for base in bases:
        name = base
        i = 0
        while name in used or name in out:
            name = f"{base}{i}"
            i += 1
        out.append(name)
    return out


def _cmd_reduce(args) -> int:
    gamma = _parse_premises(args.premises)
    phi = parse(args.conclusion)
    p, q = _fresh_names(variables(gamma + (phi,)), ["p", "q"])
    new_gamma, new_phi = finite_to_global(gamma, phi, p, q)
    out = {"premises": [render(g) for g in new_gamma],
           "conclusion": render(new_phi), "p": p, "q": q}
    plain = "\n".join([*out["premises"], "|-", out["conclusion"]])
    _emit(out, plain, args.plain)
    return 0


def _cmd_l2p(args) -> int:
    if not args.conclusion and not args.model:
        raise ValueError("l2p needs --conclusion and/or --model")
    out: dict = {}
    plain_lines = []
    used: set[str] = set()
    phi = parse(args.conclusion) if args.conclusion else None
    model = load_model(args.model) if args.model else None
    if phi is not None:
        used |= variables(phi)
    if model is not None:
        used |= set(model.variables)
    (x,) = _fresh_names(used, ["t"])
    out["x"] = x
    out["product_side_premises"] = [render(f) for f in product_side_premises(x)]
    if phi is not None:
        translated = luk2prod_formula(rewrite_to_fragment(phi), x)
        out["formula"] = render(translated)
        plain_lines.append(out["formula"])
    if model is not None:
        out["model"] = model_to_json(model_l2p(model, x))
        plain_lines.append(f"model with {len(model.worlds)} worlds translated")
    _emit(out, "\n".join(plain_lines), args.plain)
    return 0


def _cmd_mod2fo(args) -> int:
    f = parse(args.conclusion)
    fo = modal_to_fo(f, 0)
    out = {"fo": render_fo(fo), "fo_ascii": render_fo(fo, ascii_only=True)}
    _emit(out, out["fo"], args.plain)
    return 0


def _cmd_nec_demo(args) -> int:
    alg = _parse_algebra(args.algebra)
    report = verify_separation(args.n, alg)
    out = report.to_json()
    rows = [f"{r['world']}: x={r['x']} y={r['y']}" for r in out["table"]]
    plain = "\n".join(rows + [f"final x -> x*y at start: {out['final_value']}",
                              "pass" if report.passed else "FAIL"])
    _emit(out, plain, args.plain)
    return 0 if report.passed else 1


def _cmd_coenum(args) -> int:
    raw = _load_json(args.instance)
    pairs = [(tuple(parse(s) for s in item.get("premises", [])),
              parse(item["conclusion"])) for item in raw]
    emitted = coenumerate_nonconsequences(pairs, args.budget)
    alg = StdMV()
    out = {"emitted": [
        {"index": e.index,
         "premises": [render(g) for g in e.premises],
         "conclusion": render(e.conclusion),
         "cardinality": e.cardinality,
         "witness": _witness_json(e.verdict, alg)}
        for e in emitted
    ]}
    plain = "\n".join(
        f"#{e.index}: {'; '.join(render(g) for g in e.premises)} |/- "
        f"{render(e.conclusion)} (cardinality {e.cardinality})"
        for e in emitted) or "nothing refuted within budget"
    _emit(out, plain, args.plain)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvmodal",
        description="workbench for many-valued modal logics over residuated lattices")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, flags):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        for flag in flags:
            if flag == "--algebra":
                p.add_argument("--algebra", default="std-mv",
                               help="std-mv | std-godel | std-product | exp-chain | mv-<n>")
            elif flag == "--model":
                p.add_argument("--model", help="model file (JSON)")
            elif flag == "--frame":
                p.add_argument("--frame", help="frame file (JSON)")
            elif flag == "--cardinality":
                p.add_argument("--cardinality", type=int, help="model cardinality bound")
            elif flag == "--premises":
                p.add_argument("--premises", default="",
                               help="semicolon-separated formulas, or @FILE")
            elif flag == "--conclusion":
                p.add_argument("--conclusion", help="formula")
            elif flag == "--instance":
                p.add_argument("--instance", required=True, help="instance file (JSON)")
            elif flag == "--solution":
                p.add_argument("--solution", required=True, help="indices i1,i2,...")
            elif flag == "--n":
                p.add_argument("--n", type=int, required=True, help="box-prefix depth")
            elif flag == "--budget":
                p.add_argument("--budget", type=int, required=True,
                               help="co-enumeration stage budget")
            elif flag == "--jobs":
                p.add_argument("--jobs", type=int, default=1,
                               help="worker cap (execution is deterministic)")
        p.add_argument("--plain", action="store_true", help="human-readable output")
        return p

    add("eval", _cmd_eval, "evaluate a formula at every world of a model",
        ["--model", "--conclusion", "--jobs"])
    add("check", _cmd_check,
        "global-consequence verdict on a model, a frame, or all frames of a cardinality",
        ["--model", "--frame", "--cardinality", "--algebra", "--premises",
         "--conclusion", "--jobs"])
    add("pcp-encode", _cmd_pcp_encode, "encode an instance into premises and conclusion",
        ["--instance"])
    add("pcp-model", _cmd_pcp_model, "build the chain countermodel of a solution",
        ["--instance", "--solution", "--algebra"])
    add("pcp-extract", _cmd_pcp_extract, "extract the solution spelled by a chain model",
        ["--instance", "--model"])
    add("reduce-fin2glob", _cmd_reduce,
        "reduce finite-model consequence to unrestricted global consequence",
        ["--premises", "--conclusion"])
    add("l2p", _cmd_l2p, "translate a formula and/or model to the product side",
        ["--conclusion", "--model"])
    add("mod2fo", _cmd_mod2fo, "standard first-order translation of a modal formula",
        ["--conclusion"])
    add("nec-demo", _cmd_nec_demo, "chain countermodel separating global consequence "
        "from local consequence plus necessitation",
        ["--n", "--algebra"])
    add("coenum", _cmd_coenum, "co-enumerate refutable pairs from a seeded list",
        ["--instance", "--budget", "--jobs"])
    return parser


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        required = {"eval": ["model", "conclusion"],
                    "check": ["conclusion"],
                    "mod2fo": ["conclusion"],
                    "reduce-fin2glob": ["conclusion"]}
        for attr in required.get(args.command, []):
            if getattr(args, attr, None) in (None, ""):
                raise ValueError(f"{args.command} requires --{attr}")
        return args.fn(args)
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 3
    except (ParseError, ValueError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
