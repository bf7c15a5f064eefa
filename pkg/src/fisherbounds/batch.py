"""CSV batch evaluation with deterministic order and formatting.

Input rows carry the header id,n,mx,ma,mxa.  Each valid row becomes one
output row; invalid rows go to a rejects stream with a reason code, and
every input row lands in exactly one of the two.  Output row order
always matches input order, also under parallel evaluation, and floats
are printed with six significant digits, so batch output is a pure
function of batch input.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .bounds import ApproxReport, report
from .contingency import build_table, negate_consequent
from .errors import DegenerateMargin, MarginViolation

__all__ = [
    "BatchRecord",
    "Reject",
    "INPUT_HEADER",
    "OUTPUT_HEADER",
    "REJECT_HEADER",
    "read_table_csv",
    "run_batch",
    "write_batch_csv",
    "write_rejects_csv",
    "format_float",
    "format_pvalue",
]

INPUT_HEADER = ("id", "n", "mx", "ma", "mxa")
OUTPUT_HEADER = (
    "id", "n", "mx", "ma", "mxa", "j", "lift", "leverage", "odds",
    "p_fisher", "ub1", "ub2", "ubk", "k", "err_bound", "chi2_p",
    "min_expected", "guarantee_ub1", "guarantee_ub2", "clamped",
)
REJECT_HEADER = ("id", "reason", "detail")

REASON_BAD_ROW = "BAD_ROW"
REASON_MARGIN = "MARGIN_VIOLATION"
REASON_DEGENERATE = "DEGENERATE_MARGIN"
REASON_NONPOSITIVE = "NONPOSITIVE_DEPENDENCY"

_LN10 = math.log(10.0)


@dataclass(frozen=True, slots=True)
class BatchRecord:
    """One evaluated row: its input id, the evaluated table, and the report."""

    row_id: str
    report: ApproxReport

    @property
    def rank_keys(self) -> dict[str, float]:
        """Log-space ordering keys, finite even when linear values underflow."""
        r = self.report
        keys = {
            "ub1": r.ub1.raw_log,
            "ub2": r.ub2.raw_log,
            "ubk": r.ub_k.raw_log,
            "chi2_p": math.log(r.chi2.p_one_sided)
            if r.chi2.p_one_sided > 0.0
            else -math.inf,
        }
        if r.p_fisher is not None:
            keys["p_fisher"] = r.p_fisher.raw_log
        return keys


@dataclass(frozen=True, slots=True)
class Reject:
    row_id: str
    reason: str
    detail: str


def read_table_csv(path: str) -> list[tuple[str, list[str]]]:
    """Rows of an id,n,mx,ma,mxa file as (id, remaining fields) pairs.

    The header is mandatory; blank lines are skipped; field-count and
    value errors are left for run_batch to turn into rejects.  Rows
    without a usable id get one derived from their line number.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip().lower() for h in header) != INPUT_HEADER:
            raise ValueError(f"expected header {','.join(INPUT_HEADER)!r} in {path}")
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not f.strip() for f in row):
                continue
            row_id = row[0].strip() if row[0].strip() else f"line{line_no}"
            rows.append((row_id, [f.strip() for f in row[1:]]))
        return rows


def _evaluate(
    row_id: str,
    fields: Sequence[str],
    k: int,
    negate: bool,
    include_exact: bool,
) -> BatchRecord | Reject:
    try:
        if len(fields) != 4:
            raise ValueError
        n, mx, ma, mxa = (int(f) for f in fields)
    except ValueError:
        return Reject(row_id, REASON_BAD_ROW, "expected four integer counts")
    try:
        t = build_table(n, mx, ma, mxa)
    except DegenerateMargin as exc:
        return Reject(row_id, REASON_DEGENERATE, str(exc))
    except MarginViolation as exc:
        return Reject(row_id, REASON_MARGIN, str(exc))
    if negate:
        t = negate_consequent(t)
    if t.delta_counts <= 0:
        return Reject(
            row_id,
            REASON_NONPOSITIVE,
            f"leverage numerator {t.delta_counts} is not positive",
        )
    return BatchRecord(row_id, report(t, k=k, include_exact=include_exact))


def run_batch(
    rows: Iterable[tuple[str, Sequence[str]]],
    k: int = 3,
    negate: bool = False,
    include_exact: bool = True,
    jobs: int = 1,
) -> list[BatchRecord | Reject]:
    """Evaluate rows, preserving input order exactly.

    With negate, every table is replaced by its consequent negation
    before evaluation.  Rows whose (possibly negated) table shows no
    positive dependency are rejected.  jobs > 1 evaluates rows in a
    thread pool; results are reassembled in input order, so output is
    byte-identical to a sequential run.
    """
    work = list(rows)
    if jobs <= 1 or len(work) < 2:
        return [_evaluate(rid, f, k, negate, include_exact) for rid, f in work]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(
            pool.map(lambda w: _evaluate(w[0], w[1], k, negate, include_exact), work)
        )


def format_float(value: float) -> str:
    return f"{value:.6g}"


def format_pvalue(pv) -> str:
    """Six significant digits, synthesized from the log value when the
    probability underflows doubles so deep tails stay distinguishable."""
    if pv.linear_value > 0.0 or pv.raw_log == -math.inf:
        return f"{pv.linear_value:.6g}"
    exponent10 = pv.raw_log / _LN10
    exponent = math.floor(exponent10)
    mantissa = 10.0 ** (exponent10 - exponent)
    if round(mantissa, 5) >= 10.0:
        mantissa /= 10.0
        exponent += 1
    return f"{mantissa:.6g}e{exponent:+03d}"


def _output_row(rec: BatchRecord) -> list[str]:
    r = rec.report
    t = r.table
    s = r.stats
    any_clamped = r.ub1.clamped or r.ub2.clamped or r.ub_k.clamped
    return [
        rec.row_id,
        str(t.n),
        str(t.mx),
        str(t.ma),
        str(t.mxa),
        str(s.j),
        format_float(s.lift),
        format_float(s.leverage),
        format_float(s.odds_ratio),
        format_pvalue(r.p_fisher) if r.p_fisher is not None else "",
        format_pvalue(r.ub1),
        format_pvalue(r.ub2),
        format_pvalue(r.ub_k),
        str(r.k_used),
        format_float(r.error_bound),
        format_float(r.chi2.p_one_sided),
        format_float(r.chi2.min_expected),
        str(int(r.guarantee_ub1)),
        str(int(r.guarantee_ub2)),
        str(int(any_clamped)),
    ]


def write_batch_csv(out: IO[str], results: Iterable[BatchRecord | Reject]) -> int:
    """Write evaluated rows in order; rejects are skipped.  Returns the count."""
    # csv defaults to CRLF; the output contract is LF
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(OUTPUT_HEADER)
    written = 0
    for item in results:
        if isinstance(item, BatchRecord):
            writer.writerow(_output_row(item))
            written += 1
    return written


def write_rejects_csv(out: IO[str], results: Iterable[BatchRecord | Reject]) -> int:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(REJECT_HEADER)
    written = 0
    for item in results:
        if isinstance(item, Reject):
            writer.writerow([item.row_id, item.reason, item.detail])
            written += 1
    return written
