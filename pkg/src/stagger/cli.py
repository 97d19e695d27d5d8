"""Command-line front end.  Every command prints one JSON report.

Exit status: 0 on success, 1 on a domain error (reported as
``{"error": {code, message, context}}``), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import derived, perversity as pv, purity
from .errors import ScenarioError, StaggerError
from .expr import CohomologyTable, value_json
from .graded import finite_length
from .scenario import Scenario, load_scenario
from .sstructure import altitude, classify, is_recessed, restricted_step, scod
from .torus import codim, conormal_weights


def _strat(s) -> list[int]:
    return list(s.indices)


def _full(sc: Scenario, p, what: str):
    missing = [s for s in sc.setup.strata if s not in p]
    if missing:
        raise ScenarioError(f"{what} must be defined on every stratum", missing=[_strat(s) for s in missing])
    return p


# -- commands ------------------------------------------------------------


def cmd_orbits(sc: Scenario, args) -> dict:
    S = sc.setup
    rows = []
    for s in S.strata:
        rows.append({
            "stratum": _strat(s),
            "codim": codim(S, s),
            "altitude": altitude(S, s),
            "scod": scod(S, s),
            "cocharacter": list(S.cochars[s].values),
        })
    return {"n": S.n, "strata": rows}


def cmd_sstructure(sc: Scenario, args) -> dict:
    S = sc.setup
    rows = []
    for s in S.strata:
        rows.append({
            "stratum": _strat(s),
            "cocharacter": list(S.cochars[s].values),
            "conormal_steps": [restricted_step(S, s, w) for w in conormal_weights(s)],
            "altitude": altitude(S, s),
        })
    middles = {}
    for kind in ("baric", "db", "staggered"):
        try:
            middles[kind] = pv.middle(S, kind).to_json()
        except StaggerError as exc:
            middles[kind] = {"error": exc.to_dict()}
    return {"recessed": is_recessed(S), "focused": True, "strata": rows, "middle_perversities": middles}


def cmd_perversity(sc: Scenario, args) -> dict:
    S = sc.setup
    kind = args.kind
    if kind == "middle":
        return {"kind": kind, "type": args.type, "perversity": pv.middle(S, args.type).to_json()}
    if args.perversity is None:
        raise ScenarioError(f"--kind {kind} needs --perversity")
    q = _full(sc, sc.perversity(args.perversity), "perversity")
    out = {"kind": kind, "input": q.to_json()}
    if kind == "baric-dual":
        out["result"] = pv.baric_dual(S, q).to_json()
    elif kind == "db-dual":
        out["result"] = pv.db_dual(S, q).to_json()
    elif kind == "staggered-dual":
        out["result"] = pv.staggered_dual(S, q).to_json()
    elif kind == "skew":
        out["result"] = pv.skew_of(S, q).to_json()
    elif kind == "moderate-check":
        out["moderate"] = pv.is_moderate(S, q)
        out["violations"] = pv.moderate_violations(S, q)
    elif kind == "monotone-check":
        out["monotone"] = pv.is_monotone(q)
        out["comonotone"] = {k: pv.is_comonotone(S, q, k) for k in pv.DUAL_KINDS}
    return out


def cmd_classify(args) -> dict:
    data = {}
    if args.file:
        try:
            with open(args.file) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ScenarioError(f"cannot read classification input: {exc}") from None
    try:
        upsilon = json.loads(args.upsilon) if args.upsilon is not None else data.get("upsilon", [])
        phi = json.loads(args.phi) if args.phi is not None else data.get("phi")
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"malformed JSON argument: {exc.msg}") from None
    if phi is None:
        raise ScenarioError("a cocharacter is required (--phi or 'phi' in the input file)")
    rank = args.rank if args.rank is not None else data.get("rank")
    res = classify(upsilon, phi, rank)
    return {"upsilon": upsilon, "phi": phi, **res}


def cmd_compute(sc: Scenario, args) -> dict:
    value = sc.evaluate(args.expr)
    return {"expression": args.expr, "value": value_json(value)}


def _object(sc: Scenario, text: str):
    v = sc.evaluate(text)
    if isinstance(v, CohomologyTable):
        raise ScenarioError("expected an object, got a cohomology table")
    return v


def cmd_membership(sc: Scenario, args) -> dict:
    F = _object(sc, args.expr)
    params = {}
    for name in ("n", "w"):
        v = getattr(args, name)
        if v is not None:
            params[name] = v
    for name in ("r", "q"):
        v = getattr(args, name)
        if v is not None:
            params[name] = _full(sc, sc.perversity(v), name)
    if args.p is not None:
        params["p"] = sc.perversity(args.p)
    cert = purity.membership(sc.setup, F, args.family, **params)
    return {"expression": args.expr, "certificates": [cert.to_json()]}


def cmd_purity(sc: Scenario, args) -> dict:
    F = _object(sc, args.expr)
    r = _full(sc, sc.perversity(args.r), "r")
    out = {"expression": args.expr, "notion": args.notion}
    if args.w is not None:
        if args.notion == "baric":
            cert = purity.is_pure(sc.setup, F, args.w)
        else:
            cert = purity.is_skew_pure(sc.setup, F, args.w, r)
        out["certificates"] = [cert.to_json()]
    if args.filtration:
        out["filtration"] = purity.purity_filtration(sc.setup, F, args.notion, r)
    return out


def cmd_decompose(sc: Scenario, args) -> dict:
    F = _object(sc, args.expr)
    r = _full(sc, sc.perversity(args.r), "r")
    parts = purity.decompose_pure(sc.setup, F, args.notion, args.w, r)
    return {
        "expression": args.expr,
        "notion": args.notion,
        "w": args.w,
        "summands": [{"stratum": _strat(s), "character": list(lam), "shift": k} for s, lam, k in parts],
    }


def example_s12() -> dict:
    """The worked example on affine 3-space, recomputed from scratch."""
    sc = load_scenario(None)
    S = sc.setup
    ev = sc.evaluator()
    Ox, Oz = ev.names["Ox"], ev.names["Oz"]
    r = pv.middle(S, "staggered")
    res = derived.free_resolution(Ox)
    dual_oz = {str(k): M.to_json() for k, M in derived.cohomology(derived.dualize(S, Oz)).items()}
    T = derived.tensorL(Ox, Oz)
    coh = {str(k): [{"char": list(c), "dim": d} for c, d in finite_length(M).items()]
           for k, M in derived.cohomology(T).items()}
    mc = derived.dual_of_tensor_as_module_complex(S, Ox, Oz)
    skew = purity.is_skew_pure(S, T, 0, r)
    parts = purity.decompose_pure(S, T, "skew", 0, r)
    return {
        "resolution_Ox": res.to_json(),
        "dual_Oz_cohomology": dual_oz,
        "tensor_Ox_Oz_cohomology": coh,
        "dual_tensor_module_terms": {str(k): [list(g) for g in gens] for k, gens in mc.term_generators().items()},
        "tensor_skew_pure_degree_0": skew.verdict,
        "decomposition": [{"stratum": _strat(s), "character": list(lam), "shift": k} for s, lam, k in parts],
        "altitude_equals_codim": all(altitude(S, s) == codim(S, s) for s in S.strata),
        "recessed": is_recessed(S),
        "middle_staggered_moderate": pv.is_moderate(S, r),
    }


# -- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="compact JSON output (default)")
    fmt.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="indented JSON output")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS, help="add wall-clock time to the report")
    ap = argparse.ArgumentParser(prog="stagger", parents=[common],
                                 description="Staggered sheaves on affine space with a diagonal torus action.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    def with_scenario(p):
        p.add_argument("scenario", nargs="?", help="scenario JSON file (default: the built-in affine 3-space example)")
        return p

    with_scenario(add("orbits", help="list strata with cod/alt/scod"))
    with_scenario(add("sstructure", help="recessed check and per-stratum data"))

    p = with_scenario(add("perversity", help="perversity operations"))
    p.add_argument("--kind", required=True, choices=[
        "baric-dual", "db-dual", "staggered-dual", "skew", "middle", "moderate-check", "monotone-check"])
    p.add_argument("--perversity", help="middle_staggered | middle_baric | zero | JSON map")
    p.add_argument("--type", default="staggered", choices=["baric", "db", "staggered"], help="for --kind middle")

    p = add("classify", help="semifocused/focused test of a cocharacter")
    p.add_argument("file", nargs="?", help="JSON file with 'upsilon', 'phi' and optional 'rank'")
    p.add_argument("--upsilon", help="JSON list of weight vectors")
    p.add_argument("--phi", help="JSON cocharacter")
    p.add_argument("--rank", type=int)

    p = with_scenario(add("compute", help="evaluate an object expression"))
    p.add_argument("--expr", required=True)

    p = with_scenario(add("membership", help="run one membership test"))
    p.add_argument("--expr", required=True)
    p.add_argument("--family", required=True, choices=list(purity.FAMILIES))
    p.add_argument("--n", type=int)
    p.add_argument("--w", type=int)
    p.add_argument("--r")
    p.add_argument("--q")
    p.add_argument("--p")

    p = with_scenario(add("purity", help="purity certificate and/or filtration"))
    p.add_argument("--expr", required=True)
    p.add_argument("--notion", required=True, choices=["baric", "skew"])
    p.add_argument("--w", type=int)
    p.add_argument("--r", default="middle_staggered")
    p.add_argument("--filtration", action="store_true")

    p = with_scenario(add("decompose", help="decompose a pure object into IC summands"))
    p.add_argument("--expr", required=True)
    p.add_argument("--notion", required=True, choices=["baric", "skew"])
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--r", default="middle_staggered")

    add("example-s12", help="recompute the worked example on affine 3-space")
    return ap


def dispatch(args) -> dict:
    if args.command == "classify":
        return cmd_classify(args)
    if args.command == "example-s12":
        return example_s12()
    sc = load_scenario(args.scenario)
    handler = {
        "orbits": cmd_orbits,
        "sstructure": cmd_sstructure,
        "perversity": cmd_perversity,
        "compute": cmd_compute,
        "membership": cmd_membership,
        "purity": cmd_purity,
        "decompose": cmd_decompose,
    }[args.command]
    return handler(sc, args)


def _dump(obj, pretty: bool) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        results = dispatch(args)
        code = 0
        report = {"command": args.command, "results": results}
    except StaggerError as exc:
        code = 1
        report = {"command": args.command, "error": exc.to_dict()}
    if getattr(args, "timing", False):
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    print(_dump(report, getattr(args, "pretty", False)), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
