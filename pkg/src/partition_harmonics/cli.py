"""Command-line front end.

Usage:
    partition-harmonics partitions table --max 10 --oracle both --format csv
    partition-harmonics kernel expand --s 4 --format text
    partition-harmonics kernel tail --s 10
    partition-harmonics quadrature --s 6 --form reduced --rule trapezoid --evaluator direct
    partition-harmonics verify all --max-s 12
    partition-harmonics bench --max-s 12

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
Machine output goes to stdout (or ``--out``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
import warnings

from . import __version__, kernels
from .errors import CancellationRisk, PartitionHarmonicsError
from .kernel_series import (
    SUPPORTED_MAX_ORDER,
    build_kernel,
    exact_projection,
    extract_tail,
    format_kernel,
    kernel_at_half_pi,
    kernel_at_zero,
    recursion_step,
    term_count,
)
from .partitions import ENUMERATION_LIMIT, partitions_table
from .quadrature import (
    AMPLITUDE_LIMIT,
    QuadratureSpec,
    integrate_cos_form,
    integrate_full,
    integrate_general,
    integrate_reduced,
    integrate_sin_form,
)
from .trig_algebra import TrigPoly, to_json
from .verify import SUITE_ALIASES, SUITES, all_passed, resolve_threads, run_suite

__all__ = ["main", "build_parser", "bench"]

SCHEMA = 1


class Output:
    """Collects stdout text, warnings for the manifest and the exit status."""

    def __init__(self, args, argv):
        self.args = args
        self.argv = list(argv)
        self.warnings: list[str] = []
        self.chunks: list[str] = []
        self.status = 0
        self.started = time.perf_counter()

    def write(self, text: str) -> None:
        self.chunks.append(text if text.endswith("\n") else text + "\n")

    def warn(self, message: str) -> None:
        self.warnings.append(message)
        print(f"warning: {message}", file=sys.stderr)

    def manifest(self) -> dict:
        m = {
            "command": ["partition-harmonics", *self.argv],
            "version": __version__,
            "kernels": kernels.IMPLEMENTATION,
            "warnings": list(self.warnings),
        }
        if getattr(self.args, "timing", False):
            m["wall_time_s"] = time.perf_counter() - self.started
        return m

    def json(self, payload: dict) -> None:
        doc = {"schema": SCHEMA, "manifest": self.manifest(), **payload}
        self.write(json.dumps(doc, indent=2))

    def csv(self, header, rows) -> None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        self.write(buf.getvalue())

    def flush(self) -> None:
        text = "".join(self.chunks)
        if self.args.out:
            with open(self.args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


# -- parser ------------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {text}")
    return value


def _common(default_format: str = "text") -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "csv", "text"), default=default_format)
    p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    p.add_argument("--threads", type=_positive, default=1,
                   help="worker threads (PH_THREADS overrides)")
    p.add_argument("--timing", action="store_true", help="include wall time in JSON manifests")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="partition-harmonics",
        description="Partition numbers from harmonic integrals and exact kernel series.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    part = sub.add_parser("partitions", help="partition number tables")
    part_sub = part.add_subparsers(dest="action", required=True)
    table = part_sub.add_parser("table", parents=[common], help="p_0 .. p_N")
    table.add_argument("--max", type=_nonnegative, required=True, dest="max_n")
    table.add_argument("--oracle", choices=("euler", "enumerate", "both"), default="euler")

    kern = sub.add_parser("kernel", help="exact kernel series")
    kern_sub = kern.add_subparsers(dest="action", required=True)
    for name, text in (("expand", "full cosine series"), ("tail", "the s+1 top coefficients"),
                       ("info", "endpoint values and term count")):
        k = kern_sub.add_parser(name, parents=[common], help=text)
        k.add_argument("--s", type=_positive, required=True)

    quad = sub.add_parser("quadrature", parents=[common], help="evaluate an integral representation")
    quad.add_argument("--s", type=_positive, required=True)
    quad.add_argument("--m", type=_nonnegative)
    quad.add_argument("--form", choices=("reduced", "sin", "cos", "full", "general"), default="reduced")
    quad.add_argument("--rule", choices=("trapezoid", "gauss"), default="trapezoid")
    quad.add_argument("--nodes", type=_positive)
    quad.add_argument("--evaluator", choices=("direct", "series"))
    quad.add_argument("--json", action="store_true", help="same as --format json")
    quad.add_argument("--exact", action="store_true",
                      help="also report the exact coefficient-extraction value")
    quad.add_argument("--allow-cancellation", action="store_true",
                      help="evaluate beyond the certified float envelope")

    ver = sub.add_parser("verify", parents=[common], help="run verification suites")
    ver.add_argument("suite", choices=("all",) + SUITES + tuple(SUITE_ALIASES))
    ver.add_argument("--max-s", type=_positive, help="cap every suite's order range")
    ver.add_argument("--json", action="store_true", help="same as --format json")

    ben = sub.add_parser("bench", parents=[_common("csv")], help="timing table")
    ben.add_argument("--max-s", type=_positive, default=12)
    ben.add_argument("--repeat", type=_positive, default=3)
    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if getattr(args, "json", False):
        args.format = "json"
    if args.command == "partitions":
        if args.oracle != "euler" and args.max_n > ENUMERATION_LIMIT:
            parser.error(f"--max {args.max_n}: enumeration is limited to {ENUMERATION_LIMIT}")
    elif args.command == "kernel":
        if args.s > SUPPORTED_MAX_ORDER:
            parser.error(f"--s {args.s}: orders above {SUPPORTED_MAX_ORDER} are not supported")
        if args.action == "tail" and args.s < 3:
            parser.error(f"--s {args.s}: tails need s >= 3")
    elif args.command == "quadrature":
        if args.m is not None and args.form != "general":
            parser.error("--m is only valid with --form general")
        if args.form == "full":
            if args.evaluator == "series":
                parser.error("--evaluator series is unavailable with --form full (direct only)")
            if args.exact:
                parser.error("--exact is unavailable with --form full (no exact series)")
            args.evaluator = "direct"
        args.evaluator = args.evaluator or "series"
        if args.form == "general" and args.m is None:
            args.m = 0
        order = args.s + (args.m or 0)
        if order > SUPPORTED_MAX_ORDER:
            parser.error(f"--s/--m: kernel order {order} exceeds {SUPPORTED_MAX_ORDER}")
    elif args.command == "bench":
        if args.max_s > SUPPORTED_MAX_ORDER:
            parser.error(f"--max-s {args.max_s} exceeds {SUPPORTED_MAX_ORDER}")


# -- commands ----------------------------------------------------------------


def _cmd_partitions(args, out: Output) -> None:
    oracles = ("euler", "enumerate") if args.oracle == "both" else (args.oracle,)
    tables = {name: partitions_table(args.max_n, name).values for name in oracles}
    if args.oracle == "both" and tables["euler"] != tables["enumerate"]:
        out.status = 1
        print("error: oracles disagree", file=sys.stderr)
    n_range = range(args.max_n + 1)
    if args.format == "json":
        out.json({"max": args.max_n, "oracles": {k: list(v) for k, v in tables.items()}})
    elif args.format == "csv":
        header = ["n", *oracles] if len(oracles) > 1 else ["n", "p"]
        out.csv(header, [[n, *(tables[o][n] for o in oracles)] for n in n_range])
    else:
        width = len(str(max(tables[oracles[0]])))
        out.write("   n  " + "  ".join(o.rjust(width) for o in oracles))
        for n in n_range:
            out.write(f"{n:4d}  " + "  ".join(str(tables[o][n]).rjust(max(width, len(o)))
                                              for o in oracles))


def _cmd_kernel(args, out: Output) -> None:
    k = build_kernel(args.s)
    if args.action == "expand":
        if args.format == "json":
            out.json({"s": args.s, "series": to_json(k.series)})
        elif args.format == "csv":
            out.csv(["frequency", "coefficient"], k.coefficients.items())
        else:
            out.write(format_kernel(k))
    elif args.action == "tail":
        tail = extract_tail(k)
        if args.format == "json":
            out.json({"s": args.s, "frequencies": list(tail.frequencies), "coeffs": list(tail.coeffs)})
        elif args.format == "csv":
            out.csv(["j", "frequency", "coefficient"],
                    [(j, f, c) for j, (f, c) in enumerate(zip(tail.frequencies, tail.coeffs))])
        else:
            terms = " + ".join(f"{'' if c == 1 else c}cos {f}x" for f, c in zip(tail.frequencies, tail.coeffs))
            out.write(f"2({terms})")
    else:
        info = {"s": args.s, "at_zero": kernel_at_zero(k), "at_half_pi": kernel_at_half_pi(k),
                "terms": term_count(k), "max_frequency": k.max_freq}
        if args.format == "json":
            out.json(info)
        elif args.format == "csv":
            out.csv(list(info), [list(info.values())])
        else:
            for key, value in info.items():
                out.write(f"{key}: {value}")


def _exact_value(form: str, s: int, m: int | None):
    if form == "reduced":
        return exact_projection(s, s * s - 2 * s)
    if form in ("sin", "cos"):
        low = exact_projection(s, s * s - 2 * s)
        high = exact_projection(s, s * s + 2 * s)
        return low - high if form == "sin" else low + high
    if form == "general":
        order = s + m
        return exact_projection(order, order * order - 2 * s)
    return None


def _cmd_quadrature(args, out: Output) -> None:
    spec = QuadratureSpec(rule=args.rule, nodes=args.nodes, evaluator=args.evaluator,
                          check_envelope=not args.allow_cancellation)
    runners = {
        "reduced": lambda: integrate_reduced(args.s, spec),
        "sin": lambda: integrate_sin_form(args.s, spec),
        "cos": lambda: integrate_cos_form(args.s, spec),
        "full": lambda: integrate_full(args.s, spec),
        "general": lambda: integrate_general(args.s, args.m, spec),
    }
    result = None
    exact = None
    try:
        result = runners[args.form]()
    except CancellationRisk as exc:
        out.warn(f"CancellationRisk: {exc}")
        if args.form == "full":
            out.status = 1
            print("error: no exact path exists for --form full; "
                  "pass --allow-cancellation to evaluate anyway", file=sys.stderr)
            return
        args.exact = True
    if args.exact:
        exact = _exact_value(args.form, args.s, args.m)
    if result is not None and not result.trusted:
        out.warn(f"residual {result.residual:.3g} >= 0.25; result is untrusted")
    if args.format == "json":
        payload = {"result": result.to_dict() if result else None}
        if exact is not None:
            payload["exact"] = int(exact) if exact.denominator == 1 else str(exact)
        out.json(payload)
    elif args.format == "csv":
        header = ["form", "s", "m", "raw", "rounded", "residual", "rule", "nodes", "evaluator", "exact"]
        row = [args.form, args.s, "" if args.m is None else args.m]
        if result:
            row += [repr(result.raw), result.rounded, repr(result.residual), spec.rule,
                    result.nodes, spec.evaluator]
        else:
            row += ["", "", "", spec.rule, "", spec.evaluator]
        row.append("" if exact is None else str(exact))
        out.csv(header, [row])
    else:
        if result:
            out.write(f"{args.form}: p_{args.s} = {result.rounded} (raw {result.raw!r}, "
                      f"residual {result.residual:.3g}, {spec.rule}, {result.nodes} nodes, "
                      f"{spec.evaluator} evaluator)")
        if exact is not None:
            out.write(f"exact coefficient path: {exact}")


def _cmd_verify(args, out: Output) -> None:
    reports = run_suite(args.suite, args.max_s, resolve_threads(args.threads))
    ok = all_passed(reports)
    out.status = 0 if ok else 1
    if args.format == "json":
        out.json({"suite": args.suite, "max_s": args.max_s, "passed": ok,
                  "reports": [r.to_dict() for r in reports]})
    elif args.format == "csv":
        out.csv(["name", "params", "passed", "checks"],
                [[r.name, " ".join(f"{k}={v}" for k, v in r.params.items()),
                  r.passed, len(r.checks)] for r in reports])
    else:
        for r in reports:
            out.write(r.summary())
        failed = sum(not r.passed for r in reports)
        out.write(f"{len(reports) - failed}/{len(reports)} reports passed")


def _time_min(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def _build_from_scratch(s: int) -> TrigPoly:
    p = TrigPoly(cos={1: 2})
    for k in range(1, s):
        p = recursion_step(p, k)
    return p


RULE_LABELS = {"uniform_trapezoid": "trapezoid", "gauss_legendre": "gauss"}

BENCH_COLUMNS = [
    ("series", "uniform_trapezoid"),
    ("series", "gauss_legendre"),
    ("direct", "uniform_trapezoid"),
    ("direct", "gauss_legendre"),
]


def bench(max_s: int, repeat: int = 3) -> tuple[list[str], list[list]]:
    """Per-order wall times in seconds; quadrature beyond the float envelope is ``skipped``."""
    header = ["s", "build_kernel"] + [f"reduced_{ev}_{RULE_LABELS[rule]}" for ev, rule in BENCH_COLUMNS]
    rows = []
    for s in range(1, max_s + 1):
        row = [s, f"{_time_min(lambda: _build_from_scratch(s), repeat):.6f}"]
        build_kernel(s)
        for ev, rule in BENCH_COLUMNS:
            spec = QuadratureSpec(rule=rule, evaluator=ev)
            try:
                row.append(f"{_time_min(lambda: integrate_reduced(s, spec), repeat):.6f}")
            except CancellationRisk:
                row.append("skipped")
        rows.append(row)
    return header, rows


def _cmd_bench(args, out: Output) -> None:
    header, rows = bench(args.max_s, args.repeat)
    if any("skipped" in r for r in rows):
        out.warn(f"quadrature columns skipped where kernel amplitude exceeds {AMPLITUDE_LIMIT:.3g}")
    if args.format == "json":
        out.json({"columns": header, "rows": rows})
    else:
        out.csv(header, rows)


COMMANDS = {
    "partitions": _cmd_partitions,
    "kernel": _cmd_kernel,
    "quadrature": _cmd_quadrature,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args, argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            COMMANDS[args.command](args, out)
        for w in caught:
            out.warn(str(w.message))
    except PartitionHarmonicsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    out.flush()
    return out.status


if __name__ == "__main__":
    sys.exit(main())
