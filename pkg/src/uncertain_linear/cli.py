"""Command-line front end.

Exit codes: 0 ok, 1 selftest failure, 2 input or syntax error,
3 unbound atom, 4 invalid proof, 5 oracle estimate outside tolerance.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

from . import formula as fm
from . import oracle, sequent, suites, truth
from .evaluator import EnvironmentFormatError, UnboundAtomError, evaluate, evaluate_report, load_environment

EXIT_OK, EXIT_SELFTEST, EXIT_INPUT, EXIT_UNBOUND, EXIT_INVALID_PROOF, EXIT_ORACLE = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _json_value(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def _tv_dict(tv: truth.TruthValue) -> dict:
    return {"strength": tv.strength, "count": _json_value(tv.count)}


def _emit(args, command: str, inputs: dict, outputs: dict, text_lines: list[str], started: float,
          seed=None):
    if args.json:
        report = {
            "command": command,
            "inputs": inputs,
            "outputs": outputs,
            "seed": seed,
            "wall_time": round(time.perf_counter() - started, 6) if args.timing else None,
        }
        print(json.dumps(report, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_parse(args) -> int:
    started = time.perf_counter()
    f = fm.parse(args.formula)
    if args.nnf:
        f = fm.nnf(f)
    text = fm.render(f)
    _emit(args, "parse", {"formula": args.formula, "nnf": args.nnf}, {"formula": text}, [text], started)
    return EXIT_OK


def cmd_eval(args) -> int:
    started = time.perf_counter()
    f = fm.parse(args.formula)
    env = load_environment(args.env)
    inputs = {"formula": args.formula, "env": str(args.env), "N": env.cfg.N}
    if args.report:
        rep = evaluate_report(f, env)
        _emit(args, "eval", inputs, {"value": _tv_dict(rep.value), "report": rep.to_dict()},
              rep.lines(), started)
    else:
        tv = evaluate(f, env)
        _emit(args, "eval", inputs, {"value": _tv_dict(tv)}, [str(tv)], started)
    return EXIT_OK


def cmd_check(args) -> int:
    started = time.perf_counter()
    proof = sequent.parse_proof(Path(args.proof).read_text(encoding="utf-8"))
    env = load_environment(args.env) if args.env else None
    result = sequent.check(proof)
    inputs = {"proof": str(args.proof), "env": str(args.env) if args.env else None}
    if not result.valid:
        v = result.failure
        outputs = {"valid": False, "failure": {
            "rule": v.rule, "path": v.path, "message": v.message,
            "expected": str(v.expected) if v.expected is not None else None,
            "found": str(v.found) if v.found is not None else None}}
        _emit(args, "check", inputs, outputs, ["invalid", str(v)], started)
        return EXIT_INVALID_PROOF
    lines = ["valid", f"conclusion: {result.derivation.conclusion}", "ledger:"] + result.ledger.lines()
    outputs = {"valid": True, "conclusion": str(result.derivation.conclusion),
               "ledger": result.ledger.to_dict()}
    if env is not None:
        annotated = sequent.tv_annotate(proof, env)
        lines.append("annotations:")
        rows = []
        for node in annotated.walk():
            depth = node.path.count("/")
            lines.append(f"  {'  ' * depth}{node.path} [{node.rule.value}] {node.sequent}  =  {node.value}")
            rows.append({"path": node.path, "rule": node.rule.value, "sequent": str(node.sequent),
                         "value": _tv_dict(node.value)})
        outputs["annotations"] = rows
    _emit(args, "check", inputs, outputs, lines, started)
    return EXIT_OK


def _row(label: str, est: oracle.McEstimate, target: float) -> tuple[str, bool]:
    ok = est.within(target)
    text = (f"{label:<8} {est.mean:.6f} +/- {est.std_error:.6f}  (trials {est.trials})  "
            f"formula {truth.format_number(target)}  {'PASS' if ok else 'FAIL'}")
    return text, ok


def cmd_oracle_indep(args) -> int:
    started = time.perf_counter()
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    if args.N != int(args.N):
        raise UsageError("--N must be a whole number of observations")
    u = oracle.Universe(int(args.N))
    est = oracle.mc_independence(args.na, args.pa, args.nb, args.pb, u, args.trials, args.seed,
                                 backend=args.backend)
    cfg = truth.UniverseConfig(u.N)
    a, b = truth.TruthValue(args.pa, args.na), truth.TruthValue(args.pb, args.nb)
    conj = truth.and_multiplicative(a, b, cfg)
    disj = truth.or_multiplicative(a, b, cfg)
    rows = [_row("conj p", est.conj_p, conj.strength), _row("conj n", est.conj_n, conj.count),
            _row("disj p", est.disj_p, disj.strength), _row("disj n", est.disj_n, disj.count)]
    ok = all(r[1] for r in rows)
    header = (f"oracle indep na={args.na} pa={args.pa} nb={args.nb} pb={args.pb} N={u.N} "
              f"trials={args.trials} seed={args.seed}")
    lines = [header] + [r[0] for r in rows] + ["PASS" if ok else "FAIL"]
    inputs = {"na": args.na, "pa": args.pa, "nb": args.nb, "pb": args.pb, "N": u.N,
              "trials": args.trials}
    outputs = {"estimates": est.to_dict(),
               "formula": {"conj": _tv_dict(conj), "disj": _tv_dict(disj)},
               "pass": ok}
    _emit(args, "oracle indep", inputs, outputs, lines, started, seed=args.seed)
    return EXIT_OK if ok else EXIT_ORACLE


def cmd_oracle_detector(args) -> int:
    started = time.perf_counter()
    if args.trials < 1 or args.ticks < 1:
        raise UsageError("--trials and --ticks must be at least 1")
    est = oracle.detector_sim(args.bt, args.bc, args.ticks, args.trials, args.seed, backend=args.backend)
    product = args.bt * args.bc
    row, ok = _row("joint", est.independent_joint, product)
    lines = [f"oracle detector bt={args.bt} bc={args.bc} ticks={args.ticks} trials={args.trials} "
             f"seed={args.seed}", row, f"min      {truth.format_number(est.combined_min)}",
             "PASS" if ok else "FAIL"]
    inputs = {"bt": args.bt, "bc": args.bc, "ticks": args.ticks, "trials": args.trials}
    outputs = {"estimates": est.to_dict(), "formula": {"product": product, "min": min(args.bt, args.bc)},
               "pass": ok}
    _emit(args, "oracle detector", inputs, outputs, lines, started, seed=args.seed)
    return EXIT_OK if ok else EXIT_ORACLE


def cmd_selftest(args) -> int:
    started = time.perf_counter()
    names = args.suite or list(suites.SUITES)
    results = [suites.run_suite(n) for n in names]
    ok = all(r.passed for r in results)
    lines = [r.line() for r in results] + [f"{sum(r.passed for r in results)}/{len(results)} suites passed"]
    _emit(args, "selftest", {"suites": names}, {"results": [r.to_dict() for r in results], "pass": ok},
          lines, started)
    return EXIT_OK if ok else EXIT_SELFTEST


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON run report")
    common.add_argument("--timing", action="store_true", help="record wall time in the JSON report")

    p = argparse.ArgumentParser(prog="ull", description="Uncertain linear logic toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", parents=[common], help="parse and render a formula")
    sp.add_argument("formula")
    sp.add_argument("--nnf", action="store_true", help="print the negation normal form")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("eval", parents=[common], help="evaluate a formula in an environment file")
    sp.add_argument("formula")
    sp.add_argument("env", type=Path)
    sp.add_argument("--report", action="store_true", help="show the value of every subformula")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("check", parents=[common], help="check a proof file")
    sp.add_argument("proof", type=Path)
    sp.add_argument("--env", type=Path, help="annotate every sequent with its truth value")
    sp.set_defaults(func=cmd_check)

    op = sub.add_parser("oracle", help="Monte Carlo checks of the heuristic formulas")
    osub = op.add_subparsers(dest="oracle_command", required=True)
    ip = osub.add_parser("indep", parents=[common], help="independent evidence samples")
    ip.add_argument("--na", type=int, required=True)
    ip.add_argument("--pa", type=float, required=True)
    ip.add_argument("--nb", type=int, required=True)
    ip.add_argument("--pb", type=float, required=True)
    ip.add_argument("--N", type=float, required=True)
    ip.add_argument("--trials", type=int, default=100_000)
    ip.add_argument("--seed", type=int, default=0)
    ip.add_argument("--backend", choices=["python", "compiled"])
    ip.set_defaults(func=cmd_oracle_indep)

    dp = osub.add_parser("detector", parents=[common], help="fuzzy detector model")
    dp.add_argument("--bt", type=float, required=True)
    dp.add_argument("--bc", type=float, required=True)
    dp.add_argument("--ticks", type=int, default=1000)
    dp.add_argument("--trials", type=int, default=1000)
    dp.add_argument("--seed", type=int, default=0)
    dp.add_argument("--backend", choices=["python", "compiled"])
    dp.set_defaults(func=cmd_oracle_detector)

    sp = sub.add_parser("selftest", parents=[common], help="run the built-in property suites")
    sp.add_argument("--suite", action="append", choices=list(suites.SUITES))
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (fm.FormulaSyntaxError, sequent.ProofSyntaxError, EnvironmentFormatError,
            oracle.OracleError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnboundAtomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNBOUND
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
