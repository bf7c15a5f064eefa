"""Rank-agreement analysis between the exact tail and its surrogates.

The question answered here: if rules are ordered by a constant-time
bound instead of the exact tail probability, does the ranking change?
Orderings are computed in log space so rows whose linear values
underflow still rank correctly, and ties break on the row id so every
ranking is a deterministic permutation.
"""

from __future__ import annotations

import csv
import math
import statistics
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .batch import OUTPUT_HEADER, BatchRecord

__all__ = [
    "MEASURES",
    "RankedRow",
    "rows_from_records",
    "rows_from_batch_csv",
    "ranking",
    "top_ids",
    "PairAgreement",
    "AgreementReport",
    "rank_agreement",
]

MEASURES = ("p_fisher", "ub1", "ub2", "ubk", "chi2_p")


@dataclass(frozen=True, slots=True)
class RankedRow:
    """A row id plus one monotone ordering key per measure."""

    row_id: str
    keys: dict[str, float]


def rows_from_records(records: Iterable[BatchRecord]) -> list[RankedRow]:
    return [RankedRow(rec.row_id, rec.rank_keys) for rec in records]


def _log10_key(field: str) -> float:
    """Ordering key recovered from a formatted probability.

    Values too small for doubles are serialized as mantissa/exponent
    text; splitting on the exponent marker keeps their order instead of
    collapsing them to zero through float parsing.
    """
    text = field.strip()
    if not text:
        raise ValueError("missing value")
    mantissa, sep, exponent = text.partition("e")
    if sep:
        m = float(mantissa)
        return math.log10(m) + int(exponent) if m > 0.0 else -math.inf
    value = float(text)
    return math.log10(value) if value > 0.0 else -math.inf


def rows_from_batch_csv(path: str) -> list[RankedRow]:
    """Ranked rows read back from a batch output file."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != OUTPUT_HEADER:
            raise ValueError(f"not a batch output file: {path}")
        index = {name: i for i, name in enumerate(OUTPUT_HEADER)}
        rows = []
        for row in reader:
            if not row:
                continue
            if not row[index["p_fisher"]].strip():
                raise ValueError(
                    "input lacks exact values; regenerate it without --no-exact"
                )
            keys = {m: _log10_key(row[index[m]]) for m in MEASURES}
            rows.append(RankedRow(row[index["id"]], keys))
        return rows


def ranking(rows: Sequence[RankedRow], measure: str) -> list[str]:
    """Row ids from most to least significant under one measure."""
    try:
        keyed = sorted((r.keys[measure], r.row_id) for r in rows)
    except KeyError:
        raise ValueError(f"measure {measure!r} not present in every row") from None
    return [row_id for _, row_id in keyed]


def top_ids(rows: Sequence[RankedRow], measure: str, k: int) -> tuple[str, ...]:
    return tuple(ranking(rows, measure)[:k])


@dataclass(frozen=True, slots=True)
class PairAgreement:
    measure_a: str
    measure_b: str
    top_overlap: float
    spearman: float


@dataclass(frozen=True, slots=True)
class AgreementReport:
    top_k: int
    row_count: int
    measures: tuple[str, ...]
    pairs: tuple[PairAgreement, ...]

    def pair(self, a: str, b: str) -> PairAgreement:
        wanted = frozenset((a, b))
        for p in self.pairs:
            if frozenset((p.measure_a, p.measure_b)) == wanted:
                return p
        raise KeyError(f"no pair {a!r}/{b!r}")


def _spearman(order_a: Sequence[str], order_b: Sequence[str]) -> float:
    if len(order_a) < 2:
        return 1.0
    position = {row_id: i for i, row_id in enumerate(order_a)}
    ranks_a = list(range(len(order_a)))
    ranks_b = [position[row_id] for row_id in order_b]
    return statistics.correlation(ranks_a, ranks_b)


def rank_agreement(
    rows: Sequence[RankedRow],
    top_k: int,
    measures: Sequence[str] = MEASURES,
) -> AgreementReport:
    """Pairwise top-k overlap and rank correlation across measures."""
    if top_k < 1:
        raise ValueError(f"top_k must be positive, got {top_k}")
    orders = {m: ranking(rows, m) for m in measures}
    effective = min(top_k, len(rows))
    pairs = []
    for a, b in combinations(measures, 2):
        if effective == 0:
            overlap = 1.0
        else:
            overlap = (
                len(set(orders[a][:effective]) & set(orders[b][:effective]))
                / effective
            )
        pairs.append(PairAgreement(a, b, overlap, _spearman(orders[a], orders[b])))
    return AgreementReport(top_k, len(rows), tuple(measures), tuple(pairs))
