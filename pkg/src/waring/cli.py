"""Command line entry point: ``waring <command> -a 3,3,3 [-t 2] ...``.

Data goes to stdout (or --out); progress and errors go to stderr.
Exit status: 0 pass, 1 mathematical failure, 2 usage error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .apolarpoints import count_formula, enumerate_points, point_to_json
from .bounds import TABLE_SEQUENCES, bounds_table, table_to_csv, table_to_json
from .decomposer import DecompositionFailed, WaringDecomposition, decompose_monomial, verify_decomposition
from .exactpoly import DEFAULT_BUDGET, BudgetExhausted, to_fraction
from .generators import ExponentSeq, build_J
from .initialideal import (
    HF_MATRIX_BUDGET,
    groebner_initial_ideal,
    recursive_initial_ideal,
    staircase_degree,
    validate_theorem_pipeline,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

COMMANDS = ("points", "decompose", "verify", "bounds", "table", "check-initial", "validate")


class UsageError(ValueError):
    pass


@dataclass
class CliConfig:
    command: str
    exponents: list = field(default_factory=list)
    t: Fraction = Fraction(2)
    format: str = "json"
    prune: bool = False
    budget: int = DEFAULT_BUDGET
    hf_budget: int = HF_MATRIX_BUDGET
    max_attempts: int = 8
    timings: bool = False
    input: str | None = None
    figure: str | None = None
    quiet: bool = False


def _progress(cfg: CliConfig):
    start = time.perf_counter()

    def emit(msg: str):
        if not cfg.quiet:
            print(f"[{time.perf_counter() - start:7.1f}s] {msg}", file=sys.stderr, flush=True)

    return emit


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def _one_seq(cfg: CliConfig) -> ExponentSeq:
    if len(cfg.exponents) != 1:
        raise UsageError(f"'{cfg.command}' takes exactly one -a/--exponents")
    return cfg.exponents[0]


def _point_t(cfg: CliConfig) -> Fraction:
    if cfg.t == 0 or abs(cfg.t) == 1:
        raise UsageError(f"t must satisfy t != 0 and |t| != 1, got {cfg.t}")
    return cfg.t


def _cmd_points(cfg):
    a = _one_seq(cfg)
    pts = enumerate_points(a, _point_t(cfg))
    if cfg.format == "json":
        out = json.dumps(pts.to_json(), separators=(",", ":")) + "\n"
    elif cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"x{k}" for k in range(len(a))])
        w.writerows(point_to_json(p) for p in pts)
        out = buf.getvalue()
    else:
        lines = ["[" + " : ".join(point_to_json(p)) + "]" for p in pts]
        lines.append(f"# {len(pts)} points, {pts.distinct_count()} distinct, formula {count_formula(a)}")
        out = "\n".join(lines) + "\n"
    if cfg.figure:
        from .plotting import points_figure

        points_figure(pts.points, a.a, cfg.figure)
    status = EXIT_OK if pts.distinct_count() == count_formula(a) else EXIT_FAIL
    return status, out


def _render_decomposition(dec: WaringDecomposition, fmt: str) -> str:
    if fmt == "json":
        return _dump(dec.to_json())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda"] + [f"x{k}" for k in range(len(dec.a))])
        for lam, p in dec.terms:
            w.writerow([str(lam)] + point_to_json(p))
        return buf.getvalue()
    lines = [
        f"X^({','.join(map(str, dec.a))}), degree {dec.degree}, t = {dec.t}",
        f"terms: {dec.term_count} nonzero of {len(dec.lambdas)} (bound {dec.bound})",
        f"verified: {str(dec.verified).lower()}",
    ]
    for lam, p in dec.terms:
        lines.append(f"{lam}  *  (" + ", ".join(point_to_json(p)) + f")^{dec.degree}")
    return "\n".join(lines) + "\n"


def _cmd_decompose(cfg):
    a = _one_seq(cfg)
    t = _point_t(cfg)
    try:
        dec = decompose_monomial(a, t, max_attempts=cfg.max_attempts, prune=cfg.prune, progress=_progress(cfg))
    except DecompositionFailed as exc:
        print(f"waring: {exc}", file=sys.stderr)
        return EXIT_FAIL, ""
    return EXIT_OK, _render_decomposition(dec, cfg.format)


def _cmd_verify(cfg):
    if cfg.input is None:
        raise UsageError("verify needs a decomposition file (or - for stdin)")
    try:
        text = sys.stdin.read() if cfg.input == "-" else open(cfg.input).read()
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.input}: {exc}") from exc
    try:
        dec = WaringDecomposition.from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise UsageError(f"not JSON: {exc}") from exc
    ok = verify_decomposition(dec)
    report = {
        "exponents": list(dec.a),
        "degree": dec.degree,
        "term_count": dec.term_count,
        "bound": dec.bound,
        "within_bound": dec.term_count <= dec.bound,
        "verified": ok,
    }
    if cfg.format == "text":
        out = f"verified: {str(ok).lower()} ({dec.term_count} terms, bound {dec.bound})\n"
    else:
        out = _dump(report)
    return (EXIT_OK if ok else EXIT_FAIL), out


def _render_rows(rows, cfg):
    if cfg.format == "csv":
        return table_to_csv(rows)
    if cfg.format == "json":
        return table_to_json(rows) + "\n"
    width = max(len(r.label()) for r in rows) + 2 if rows else 10
    lines = [f"{'exponents':<{width}}{'UB_BT':>10}{'UB_CKOV':>10}{'UB_HM':>10}"]
    for r in rows:
        lines.append(f"{r.label():<{width}}{r.ub_bt:>10}{r.ub_ckov:>10}{r.ub_hm:>10}")
    return "\n".join(lines) + "\n"


def _cmd_bounds(cfg):
    rows = bounds_table([_one_seq(cfg)])
    if cfg.format == "json":
        return EXIT_OK, _dump(rows[0].to_json())
    return EXIT_OK, _render_rows(rows, cfg)


def _cmd_table(cfg):
    seqs = cfg.exponents or [ExponentSeq(a) for a in TABLE_SEQUENCES]
    rows = bounds_table(seqs)
    if cfg.figure:
        from .plotting import bounds_figure

        bounds_figure(rows, cfg.figure)
    return EXIT_OK, _render_rows(rows, cfg)


def _cmd_check_initial(cfg):
    a = _one_seq(cfg)
    t = _point_t(cfg)
    desc = a.descending()
    progress = _progress(cfg)
    progress(f"Groebner basis for ({desc}) at t = {t}")
    try:
        got = groebner_initial_ideal(build_J(desc, t).polys(), cfg.budget)
    except BudgetExhausted as exc:
        print(f"waring: {exc}", file=sys.stderr)
        return EXIT_BUDGET, ""
    want = recursive_initial_ideal(desc)
    deg = staircase_degree(want)
    report = {
        "exponents": list(a.a),
        "sorted_exponents": list(desc.a),
        "t": str(t),
        "groebner_initial": [list(g) for g in got.sorted_gens()],
        "predicted_initial": [list(g) for g in want.sorted_gens()],
        "match": got == want,
        "staircase_degree": deg,
        "count_formula": count_formula(a),
    }
    ok = report["match"] and deg == report["count_formula"]
    if cfg.format == "text":
        out = (
            f"in(J): {got.to_str()}\npredicted: {want.to_str()}\n"
            f"match: {str(report['match']).lower()}, degree {deg} vs formula {report['count_formula']}\n"
        )
    else:
        out = _dump(report)
    return (EXIT_OK if ok else EXIT_FAIL), out


def _cmd_validate(cfg):
    a = _one_seq(cfg)
    if cfg.t == 0:
        raise UsageError("t must be nonzero")
    progress = _progress(cfg)
    progress(f"validating ({a}) at t = {cfg.t}")
    report = validate_theorem_pipeline(a, cfg.t, cfg.budget, cfg.hf_budget)
    data = report.to_json()
    if not cfg.timings:
        data.pop("timings", None)
    else:
        for k, v in report.timings.items():
            progress(f"{k}: {v:.3f}s")
    if cfg.format == "text":
        steps = [
            ("points", report.points_match, f"{report.point_count} vs {report.count_formula}"),
            ("vanishing", report.generators_vanish, ""),
            ("apolarity", report.generators_apolar, ""),
            ("initial_ideal", report.initial_ideal_match, ""),
            ("hilbert", report.hilbert_match, f"stable value {report.hilbert_stable}"),
        ]
        lines = [f"{name}: {'skipped' if ok is None else ('pass' if ok else 'FAIL')} {extra}".rstrip() for name, ok, extra in steps]
        lines.append(f"overall: {'pass' if report.passed else 'FAIL'}")
        out = "\n".join(lines) + "\n"
    else:
        out = _dump(data)
    if report.partial:
        status = EXIT_FAIL if report.failed_steps() else EXIT_BUDGET
    else:
        status = EXIT_OK if report.passed else EXIT_FAIL
    return status, out


_HANDLERS = {
    "points": _cmd_points,
    "decompose": _cmd_decompose,
    "verify": _cmd_verify,
    "bounds": _cmd_bounds,
    "table": _cmd_table,
    "check-initial": _cmd_check_initial,
    "validate": _cmd_validate,
}


def run(cfg: CliConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, text for the data stream)."""
    if cfg.command not in _HANDLERS:
        raise UsageError(f"unknown command {cfg.command!r}")
    return _HANDLERS[cfg.command](cfg)


def _exponents_arg(text: str) -> ExponentSeq:
    try:
        return ExponentSeq.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _t_arg(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="waring", description="Exact real Waring decompositions of monomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-a", "--exponents", type=_exponents_arg, action="append", default=[],
                        help="comma-separated positive exponents, e.g. 3,3,3")
    common.add_argument("-t", "--param", dest="t", type=_t_arg, default=Fraction(2),
                        help="rational parameter t, integer or p/q (default 2)")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("-q", "--quiet", action="store_true", help="no progress on stderr")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max S-pair reductions")
    budget.add_argument("--hf-budget", type=int, default=HF_MATRIX_BUDGET, help="max Hilbert matrix entries")

    p = sub.add_parser("points", parents=[common], help="apolar point set")
    p.add_argument("--figure", help="save a 2D chart of the points (png/pdf/svg)")
    p = sub.add_parser("decompose", parents=[common], help="verified Waring decomposition")
    p.add_argument("--prune", action="store_true", help="drop terms with zero coefficient")
    p.add_argument("--max-attempts", type=int, default=8, help="number of t values to try")
    p = sub.add_parser("verify", parents=[common], help="re-check a decomposition JSON file")
    p.add_argument("input", help="decomposition file, or - for stdin")
    sub.add_parser("bounds", parents=[common], help="the three upper bounds for one sequence")
    p = sub.add_parser("table", parents=[common], help="bounds for several sequences (default: the comparison table)")
    p.add_argument("--figure", help="save a bar chart of the bounds")
    sub.add_parser("check-initial", parents=[common, budget], help="Groebner initial ideal vs prediction")
    p = sub.add_parser("validate", parents=[common, budget], help="full cross-check for one (a, t)")
    p.add_argument("--timings", action="store_true", help="include step timings in the report")
    return parser


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    fmt = ns.format or ("csv" if ns.command == "table" else "json")
    return CliConfig(
        command=ns.command,
        exponents=list(ns.exponents),
        t=ns.t,
        format=fmt,
        prune=getattr(ns, "prune", False),
        budget=getattr(ns, "budget", DEFAULT_BUDGET),
        hf_budget=getattr(ns, "hf_budget", HF_MATRIX_BUDGET),
        max_attempts=getattr(ns, "max_attempts", 8),
        timings=getattr(ns, "timings", False),
        input=getattr(ns, "input", None),
        figure=getattr(ns, "figure", None),
        quiet=ns.quiet,
    )


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = config_from_args(ns)
    try:
        status, out = run(cfg)
    except UsageError as exc:
        print(f"waring: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExhausted as exc:
        print(f"waring: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"waring: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if ns.out:
        with open(ns.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
