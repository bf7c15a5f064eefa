"""Command-line interface.

Subcommands: eval (one table), batch (CSV in, CSV out), sweep (overlap
range, CSV out), reproduce-tables (check against the embedded
reference grid), rank-agreement (compare orderings from a batch file),
bench (O(1) bounds vs O(J) exact timing).

Exit codes: 0 success, 1 usage error, 2 validation or data failure,
3 reference-grid check failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import IO, Sequence

from . import __version__
from .batch import (
    Reject,
    format_float,
    format_pvalue,
    read_table_csv,
    run_batch,
    write_batch_csv,
    write_rejects_csv,
)
from .bench import (
    DEFAULT_REPETITIONS,
    DEFAULT_SIZES,
    bounds_flat_within,
    exact_grows,
    large_scale_terms,
    run_bench,
)
from .bounds import error_bound_ub2, report
from .contingency import build_table, derive_stats, negate_consequent
from .errors import NegativeDependency
from .exact import make_term_engine
from .ranking import rank_agreement, rows_from_batch_csv
from .reftables import STATUS_ANNOTATED, STATUS_FAIL, check_rows
from .sweep import SweepSpec, run_sweep, write_sweep_csv

__all__ = ["main", "entry", "EXIT_OK", "EXIT_USAGE", "EXIT_DATA", "EXIT_REPRODUCTION"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_REPRODUCTION = 3


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="fisherbounds",
        description=(
            "Exact one-sided dependency p-values for 2x2 contingency tables"
            " and constant-time upper bounds with error guarantees."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a single table")
    for name in ("n", "mx", "ma", "mxa"):
        p_eval.add_argument(name, type=int)
    p_eval.add_argument("--k", type=int, default=3, help="exact leading terms")
    p_eval.add_argument(
        "--negate", action="store_true", help="evaluate the negated consequent"
    )
    p_eval.add_argument(
        "--no-exact", action="store_true", help="skip the O(J) exact evaluation"
    )
    p_eval.set_defaults(handler=_cmd_eval)

    p_batch = sub.add_parser("batch", help="evaluate a CSV of tables")
    p_batch.add_argument("input", help="CSV with header id,n,mx,ma,mxa")
    p_batch.add_argument("--k", type=int, default=3)
    p_batch.add_argument("--negate", action="store_true")
    p_batch.add_argument("--no-exact", action="store_true")
    p_batch.add_argument("--out", help="output CSV path (default stdout)")
    p_batch.add_argument("--rejects", help="rejected-rows CSV path")
    p_batch.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p_batch.set_defaults(handler=_cmd_batch)

    p_sweep = sub.add_parser("sweep", help="evaluate a range of overlap counts")
    for name in ("n", "mx", "ma", "mxa_lo", "mxa_hi"):
        p_sweep.add_argument(name, type=int)
    p_sweep.add_argument(
        "--k", type=int, default=3, help="extra bound order (>= 3) to tabulate"
    )
    p_sweep.add_argument("--no-exact", action="store_true")
    p_sweep.add_argument("--out", help="output CSV path (default stdout)")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_repro = sub.add_parser(
        "reproduce-tables", help="check computed values against the reference grid"
    )
    p_repro.add_argument(
        "--case", type=int, choices=(1, 2, 3), help="restrict to one margin case"
    )
    p_repro.add_argument(
        "--tolerance", type=float, help="override every per-column tolerance"
    )
    p_repro.set_defaults(handler=_cmd_reproduce)

    p_rank = sub.add_parser(
        "rank-agreement", help="compare rule orderings from a batch output file"
    )
    p_rank.add_argument("input", help="batch output CSV (needs p_fisher values)")
    p_rank.add_argument("--top", type=int, default=100, help="top-set size")
    p_rank.set_defaults(handler=_cmd_rank_agreement)

    p_bench = sub.add_parser("bench", help="time the bounds against the exact tail")
    p_bench.add_argument(
        "--sizes",
        default=",".join(str(s) for s in DEFAULT_SIZES),
        help="comma-separated data sizes",
    )
    p_bench.add_argument("--reps", type=int, default=DEFAULT_REPETITIONS)
    p_bench.set_defaults(handler=_cmd_bench)

    return parser


def _open_out(path: str | None):
    if path is None:
        return sys.stdout, False
    # newline="" keeps the csv module's LF terminators untranslated
    return open(path, "w", encoding="utf-8", newline=""), True


def _cmd_eval(args) -> int:
    t = build_table(args.n, args.mx, args.ma, args.mxa)
    if args.negate:
        t = negate_consequent(t)
    s = derive_stats(t)
    if not s.positive_dependency:
        raise NegativeDependency(
            f"no positive dependency at mxa={t.mxa}"
            f" (expected overlap {t.mx * t.ma / t.n:g}); --negate tests the"
            " opposite direction"
        )
    rep = report(t, k=args.k, include_exact=not args.no_exact)
    engine = make_term_engine(t)
    lines = [
        ("n", str(t.n)),
        ("mx", str(t.mx)),
        ("ma", str(t.ma)),
        ("mxa", str(t.mxa)),
        ("j", str(s.j)),
        ("terms", str(s.j + 1)),
        ("lift", format_float(s.lift)),
        ("leverage", format_float(s.leverage)),
        ("odds", format_float(s.odds_ratio)),
    ]
    if rep.p_fisher is not None:
        lines.append(("p_fisher", format_pvalue(rep.p_fisher)))
    lines += [
        ("ub1", format_pvalue(rep.ub1)),
        ("ub2", format_pvalue(rep.ub2)),
        (f"ub{rep.k_used}", format_pvalue(rep.ub_k)),
        ("err_bound_ub2", format_float(error_bound_ub2(engine))),
        (f"err_bound_ub{rep.k_used}", format_float(rep.error_bound)),
        ("chi2_p", format_float(rep.chi2.p_one_sided)),
        ("chi2_stat", format_float(rep.chi2.statistic)),
        ("min_expected", format_float(rep.chi2.min_expected)),
        ("rule_of_thumb_ok", str(rep.chi2.rule_of_thumb_ok).lower()),
        ("guarantee_ub1", str(rep.guarantee_ub1).lower()),
        ("guarantee_ub2", str(rep.guarantee_ub2).lower()),
        (
            "clamped",
            str(rep.ub1.clamped or rep.ub2.clamped or rep.ub_k.clamped).lower(),
        ),
    ]
    for key, value in lines:
        print(f"{key} = {value}")
    return EXIT_OK


def _reject_summary(results, out: IO[str]) -> None:
    rejects = [r for r in results if isinstance(r, Reject)]
    if not rejects:
        return
    by_reason: dict[str, int] = {}
    for r in rejects:
        by_reason[r.reason] = by_reason.get(r.reason, 0) + 1
    detail = ", ".join(f"{reason}={count}" for reason, count in sorted(by_reason.items()))
    print(
        f"rejected {len(rejects)} of {len(results)} rows ({detail});"
        " use --rejects to capture them",
        file=out,
    )


def _cmd_batch(args) -> int:
    rows = read_table_csv(args.input)
    results = run_batch(
        rows,
        k=args.k,
        negate=args.negate,
        include_exact=not args.no_exact,
        jobs=args.jobs,
    )
    out, close_out = _open_out(args.out)
    try:
        write_batch_csv(out, results)
    finally:
        if close_out:
            out.close()
    if args.rejects:
        with open(args.rejects, "w", encoding="utf-8", newline="") as fh:
            write_rejects_csv(fh, results)
    else:
        _reject_summary(results, sys.stderr)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    spec = SweepSpec(
        args.n,
        args.mx,
        args.ma,
        args.mxa_lo,
        args.mxa_hi,
        ks=(args.k,),
        include_exact=not args.no_exact,
    )
    points = run_sweep(spec)
    out, close_out = _open_out(args.out)
    try:
        write_sweep_csv(out, spec, points)
    finally:
        if close_out:
            out.close()
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    checks = check_rows(tolerance=args.tolerance, case=args.case)
    failed = 0
    annotated = 0
    for c in checks:
        t = c.row
        line = (
            f"n={t.n} mx={t.mx} ma={t.ma} mxa={t.mxa} {c.column}:"
            f" computed={c.computed:.8g} recorded={c.recorded:g} {c.status}"
        )
        if c.note:
            line += f"  ({c.note})"
        print(line)
        if c.status == STATUS_FAIL:
            failed += 1
        elif c.status == STATUS_ANNOTATED:
            annotated += 1
    rows = len(checks) // 5
    print(
        f"{rows} rows, {len(checks)} cells:"
        f" {len(checks) - failed - annotated} PASS, {annotated} ANNOTATED,"
        f" {failed} FAIL"
    )
    return EXIT_REPRODUCTION if failed else EXIT_OK


def _cmd_rank_agreement(args) -> int:
    rows = rows_from_batch_csv(args.input)
    agreement = rank_agreement(rows, args.top)
    print(f"rows = {agreement.row_count}")
    print(f"top_k = {agreement.top_k}")
    for p in agreement.pairs:
        print(
            f"{p.measure_a} vs {p.measure_b}:"
            f" top_overlap = {p.top_overlap:.4f}, spearman = {p.spearman:.6f}"
        )
    return EXIT_OK


def _cmd_bench(args) -> int:
    try:
        sizes = tuple(int(s) for s in args.sizes.split(",") if s.strip())
    except ValueError:
        raise ValueError(f"--sizes expects comma-separated integers, got {args.sizes!r}")
    results = run_bench(sizes, args.reps)
    if not results:
        return EXIT_OK
    header = f"{'n':>10} {'j':>8} {'terms':>8}" + "".join(
        f" {name:>12}" for name in ("exact", "ub1", "ub2", "ub3")
    )
    print(header)
    for r in results:
        cells = "".join(
            f" {r.seconds_per_call[name]:>12.3e}"
            for name in ("exact", "ub1", "ub2", "ub3")
        )
        print(f"{r.n:>10} {r.j:>8} {r.terms:>8}{cells}")
    print(f"exact terms for the n=1000000 benchmark shape: {large_scale_terms()}")
    if len(results) < 2:
        return EXIT_OK
    flat = bounds_flat_within(results)
    grows = exact_grows(results)
    print(f"bounds J-independent within 2x: {'yes' if flat else 'NO'}")
    print(f"exact time grows with J: {'yes' if grows else 'NO'}")
    return EXIT_OK if flat and grows else EXIT_DATA


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def entry() -> None:
    sys.exit(main(sys.argv[1:]))
