"""Command-line front end: ``ringlab {analyze,decompose,certify,solve} RING ...``.

Exit codes: 0 success or property holds, 1 property fails, 2 parse or usage
error, 3 precondition violation.  With ``--json`` every run prints one JSON
object on stdout and every error one JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__, analysis, oracle, usc
from .errors import (
    CapExceeded,
    InvalidExpr,
    NotBijective,
    NotUniquelyClean,
    ParseError,
    PreconditionViolated,
    RangeError,
    RingLabError,
    SemanticError,
)
from .parser import parse_element, parse_ring_expr, render
from .rings import Ring, make_ring
from .sylvester import LRProblem, solve_lr

EXIT_OK, EXIT_FAILS, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3

PROPERTY_ALIASES = {
    "clean": "clean",
    "uc": "uniquely_clean",
    "sc": "strongly_clean",
    "usc": "uniquely_strongly_clean",
    "abelian": "abelian",
    "boolean": "boolean",
    "local": "local",
    "bleached": "uniquely_bleached",
    "residue_z2": "residue_is_Z2",
    **{name: name for name in analysis.PREDICATES},
}

METHOD_KIND = {"theorem1": "strongly_clean", "comm2": "comm2", "signed": "signed"}
DECOMPOSERS = {
    "theorem1": usc.decompose_theorem1,
    "comm2": usc.comm2_decompose,
    "signed": usc.signed_decompose,
}
ELEMENT_KEYS = {"element", "e", "u", "a", "b", "idempotent"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("ring", help='ring expression, e.g. "T2(Z2 x Z2)"')
    common.add_argument("--json", action="store_true", help="emit a single JSON object")
    common.add_argument("--seed", type=int, default=0, help="seed for random element choice")

    parser = _Parser(prog="ringlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    sub.add_parser("analyze", parents=[common], help="decide every ring-class predicate")

    p = sub.add_parser("decompose", parents=[common], help="clean decomposition in T_n(R)")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--element", help="matrix literal such as [1,1;0]")
    which.add_argument("--random", type=int, metavar="K", help="decompose K random elements")
    p.add_argument("--method", choices=sorted(DECOMPOSERS), default="theorem1")
    p.add_argument("--verify", action="store_true", help="count expressions with the oracle")

    p = sub.add_parser("certify", parents=[common], help="decide a single predicate")
    p.add_argument("--property", required=True, choices=sorted(PROPERTY_ALIASES))
    p.add_argument("--witnesses", action="store_true", help="include a counterexample")

    p = sub.add_parser("solve", parents=[common], help="solve a*x - x*b = v")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--method", choices=["series", "brute"], default="series")
    return parser


# -- commands ------------------------------------------------------------------


def _render_witness(R: Ring, witness):
    if isinstance(witness, dict):
        return {k: (render(R, v) if k in ELEMENT_KEYS and isinstance(v, int)
                    else _render_witness(R, v)) for k, v in witness.items()}
    if isinstance(witness, list):
        return [_render_witness(R, w) for w in witness]
    return witness


def cmd_analyze(R: Ring, args):
    report = analysis.classify(R)
    result = {name: o.holds for name, o in report.outcomes.items()}
    witness = {name: _render_witness(R, o.witness)
               for name, o in report.outcomes.items() if o.witness is not None}
    return EXIT_OK, result, witness or None


def _oracle_witness(R: Ring, prop: str, witness: dict) -> dict:
    """Complete a uniqueness witness with every expression the oracle finds."""
    kind = {"clean": "clean", "uniquely_clean": "clean",
            "strongly_clean": "strongly_clean",
            "uniquely_strongly_clean": "strongly_clean"}.get(prop)
    if kind is None or "element" not in witness or "expressions" not in witness:
        return witness
    found = oracle.expressions(R, witness["element"], kind)
    return {"element": witness["element"],
            "expressions": [{"e": x.e, "u": x.u} for x in found]}


def cmd_certify(R: Ring, args):
    prop = PROPERTY_ALIASES[args.property]
    outcome = analysis.classify(R, properties=(prop,)).outcomes[prop]
    if outcome.holds is None:
        raise PreconditionViolated(f"{prop} undecided: {outcome.witness['skipped']}")
    witness = None
    if args.witnesses and outcome.witness is not None:
        witness = _render_witness(R, _oracle_witness(R, prop, outcome.witness))
    result = {"property": prop, "holds": outcome.holds}
    return (EXIT_OK if outcome.holds else EXIT_FAILS), result, witness


def _decompose_one(R: Ring, A: int, args) -> tuple[dict, bool]:
    expr = DECOMPOSERS[args.method](R, A)
    entry = {
        "A": render(R, A),
        "E": render(R, expr.e),
        "U": render(R, expr.u),
        "flags": {"commuting": expr.commuting,
                  "double_commutant": expr.double_commutant,
                  "signed": expr.signed},
    }
    agrees = True
    if args.verify:
        found = oracle.expressions(R, A, METHOD_KIND[args.method])
        entry["oracle_count"] = len(found)
        agrees = [x.pair for x in found] == [expr.pair]
        entry["oracle_agrees"] = agrees
    return entry, agrees


def cmd_decompose(R: Ring, args):
    if args.element is not None:
        entry, agrees = _decompose_one(R, parse_element(R, args.element), args)
        result = {"method": args.method, **entry}
    else:
        if args.random < 1:
            raise UsageError("--random needs a positive count")
        rng = np.random.default_rng(args.seed)
        picks = [int(v) for v in rng.integers(0, R.order, size=args.random)]
        entries = [_decompose_one(R, A, args) for A in picks]
        agrees = all(ok for _, ok in entries)
        result = {"method": args.method, "seed": args.seed,
                  "decompositions": [e for e, _ in entries]}
    return (EXIT_OK if agrees else EXIT_FAILS), result, None


def cmd_solve(R: Ring, args):
    a, b, v = (parse_element(R, t) for t in (args.a, args.b, args.v))
    problem = LRProblem.detect(R, a, b, v)
    x = solve_lr(problem, method=args.method)
    result = {"a": render(R, a), "b": render(R, b), "v": render(R, v),
              "mode": problem.mode, "method": args.method, "x": render(R, x)}
    return EXIT_OK, result, None


COMMANDS = {"analyze": cmd_analyze, "certify": cmd_certify,
            "decompose": cmd_decompose, "solve": cmd_solve}


# -- output --------------------------------------------------------------------


def _print_text(R: Ring, verb: str, result: dict, witness, out):
    print(f"ring: {R.expr} ({R.order} elements)", file=out)
    if verb == "analyze":
        for name, holds in result.items():
            print(f"  {name:<24} {_fmt(holds)}", file=out)
    elif verb == "certify":
        print(f"  {result['property']}: {_fmt(result['holds'])}", file=out)
    elif verb == "decompose":
        for entry in result.get("decompositions", [result]):
            line = f"  A = {entry['A']}  E = {entry['E']}, U = {entry['U']}"
            if "oracle_count" in entry:
                line += f"  oracle count {entry['oracle_count']}"
                if not entry["oracle_agrees"]:
                    line += " (DISAGREES)"
            print(line, file=out)
    elif verb == "solve":
        print(f"  {result['a']}*x - x*{result['b']} = {result['v']}", file=out)
        print(f"  x = {result['x']}  ({result['method']}, {result['mode']})", file=out)
    if witness:
        print(f"  witness: {json.dumps(witness)}", file=out)


def _fmt(value) -> str:
    return {True: "true", False: "false", None: "undecided"}[value]


def _error(exit_code: int, exc: BaseException, as_json: bool, err) -> int:
    if as_json:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc),
                          "exit_code": exit_code}), file=err)
    else:
        print(f"ringlab: error: {exc}", file=err)
    return exit_code


def run(argv=None, out=None, err=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    as_json = "--json" in argv
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        R = make_ring(parse_ring_expr(args.ring))
        code, result, witness = COMMANDS[args.verb](R, args)
    except (UsageError, ParseError, SemanticError, RangeError, InvalidExpr) as exc:
        return _error(EXIT_USAGE, exc, as_json, err)
    except (PreconditionViolated, NotUniquelyClean, NotBijective, CapExceeded) as exc:
        return _error(EXIT_PRECONDITION, exc, as_json, err)
    except RingLabError as exc:
        return _error(EXIT_PRECONDITION, exc, as_json, err)
    if args.json:
        report = {
            "ring": str(R.expr),
            "cardinality": R.order,
            "command": args.verb,
            "result": result,
            "witness": witness,
            "elapsed_ms": int((time.perf_counter() - started) * 1000),
            "version": __version__,
        }
        print(json.dumps(report), file=out)
    else:
        _print_text(R, args.verb, result, witness, out)
    return code


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:
        # --help / --version
        code = exc.code if isinstance(exc.code, int) else 0
    sys.exit(code)


if __name__ == "__main__":
    main()
