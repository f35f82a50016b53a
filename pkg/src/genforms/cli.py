"""Command line front end: ``eval``, ``check`` and ``mech`` subcommands.

Exit status is 0 on success, 1 when an identity or residual check fails and
2 on usage, parse or evaluation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import EvalError, GenFormsError, ParseError
from .exterior import Chart
from .gforms import GenForm
from .mechanics import ExtendedChart, verify_dynamics
from .suites import SUITES, SuiteConfig, run_suite
from .syntax import evaluate, format_ordform, format_ordvec, format_value, parse

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# options whose values may legitimately start with '-'
_SIGNED_OPTIONS = ("--k", "--H0", "--expr")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _nonzero_rational(text: str) -> Fraction:
    value = _rational(text)
    if value == 0:
        raise argparse.ArgumentTypeError("k must be nonzero")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=_nonzero_rational, default=Fraction(1), help="structure constant k (rational, nonzero)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    dim = argparse.ArgumentParser(add_help=False)
    dim.add_argument("--n", type=_positive_int, default=2, help="chart dimension")

    parser = argparse.ArgumentParser(prog="genforms", description="Exact calculus of generalized forms and vector fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common, dim], help="evaluate an expression")
    p_eval.add_argument("expr", nargs="?", help="expression; read from stdin when omitted")
    p_eval.add_argument("-f", "--file", help="read the expression from a file")

    p_check = sub.add_parser("check", parents=[common, dim], help="run a seeded identity suite")
    p_check.add_argument("--suite", required=True, choices=SUITES + ("all",))
    p_check.add_argument("--seed", type=_seed, default=0)
    p_check.add_argument("--trials", type=_positive_int, default=100)
    p_check.add_argument("--max-degree", type=int, default=2)
    p_check.add_argument("--max-terms", type=_positive_int, default=3)
    p_check.add_argument("--jobs", type=_positive_int, default=1, help="worker processes")

    p_mech = sub.add_parser("mech", parents=[common], help="solve I_V Omega = 0 for a constrained Hamiltonian")
    p_mech.add_argument("--m", type=_positive_int, default=1, help="degrees of freedom")
    p_mech.add_argument("--H0", required=True, help="Hamiltonian, polynomial in t, q1..qm, p1..pm")
    return parser


def _join_signed_values(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in _SIGNED_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


def _error(message: str, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps({"error": message}))
    else:
        print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def cmd_eval(args) -> int:
    if args.file:
        with open(args.file) as fh:
            source = fh.read()
    elif args.expr is not None:
        source = args.expr
    else:
        source = sys.stdin.read()
    chart = Chart(args.n, args.k)
    try:
        value = evaluate(parse(source), chart, source)
    except (ParseError, EvalError) as exc:
        return _error(str(exc), args.format)
    text = format_value(value)
    if args.format == "json":
        doc = {"n": chart.n, "k": str(chart.k), "value": text}
        if isinstance(value, GenForm):
            doc.update(kind="genform", degree=value.degree)
        else:
            doc.update(kind="genvec")
        print(json.dumps(doc))
    else:
        print(text)
    return EXIT_OK


def cmd_check(args) -> int:
    config = SuiteConfig(args.suite, args.n, args.k, args.seed, args.trials, args.max_degree, args.max_terms)
    report = run_suite(config, jobs=args.jobs)
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.to_text())
    return report.exit_code


def mech_document(report) -> dict:
    ext = report.chart
    names = ext.chart.names
    return {
        "m": ext.m,
        "H0": ext.H0.to_str(names),
        "theta": format_ordform(report.data.theta),
        "omega": format_ordform(report.data.omega),
        "Omega": format_value(report.data.Omega),
        "v1": format_ordvec(report.v1),
        "v0": report.v0.to_str(names),
        "lagrangian": report.lagrangian.to_str(names),
        "residuals": {
            "i_v1 omega": format_ordform(report.kernel_residual),
            "-2 v0 omega + i_v1(omega theta)": format_ordform(report.constraint_residual),
            "I_V Omega": format_value(report.contraction_residual),
            "2 v0 - lagrangian": report.lagrangian_residual.to_str(names),
        },
        "failures": report.failures,
        "ok": report.ok,
    }


def cmd_mech(args) -> int:
    try:
        ext = ExtendedChart.from_text(args.H0, args.m, args.k)
    except (ParseError, EvalError) as exc:
        return _error(f"cannot parse H0: {exc}", args.format)
    report = verify_dynamics(ext)
    doc = mech_document(report)
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        width = max(len(key) for key in doc["residuals"])
        for key in ("H0", "theta", "omega", "Omega", "v1", "v0", "lagrangian"):
            label = "2 v0 (lagrangian)" if key == "lagrangian" else key
            print(f"{label} = {doc[key]}")
        for key, value in doc["residuals"].items():
            print(f"residual {key:<{width}} : {value}")
        print("status = " + ("ok" if report.ok else "FAILED: " + "; ".join(report.failures)))
    return EXIT_OK if report.ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_signed_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    handlers = {"eval": cmd_eval, "check": cmd_check, "mech": cmd_mech}
    try:
        return handlers[args.command](args)
    except GenFormsError as exc:
        return _error(str(exc), getattr(args, "format", "text"))


if __name__ == "__main__":
    sys.exit(main())
