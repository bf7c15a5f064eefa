"""Overlap sweeps: fixed margins, a range of overlap counts.

A sweep walks mxa over [mxa_lo, mxa_hi] with n, mx, ma held fixed and
evaluates the exact tail and the bound family at each point.  This is
the shape of a convergence study: as the overlap count grows past
independence, every bound closes onto the exact value from above.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Iterator

from .bounds import ub1, ub2, ub_k
from .contingency import ContingencyTable, build_table, derive_stats
from .errors import InvalidK, NegativeDependency
from .exact import exact_fisher, make_term_engine

__all__ = ["SweepSpec", "SweepPoint", "run_sweep", "sweep_header", "write_sweep_csv"]


@dataclass(frozen=True, slots=True)
class SweepSpec:
    """A validated sweep request.

    ks lists the extra bound orders to evaluate alongside ub1 and ub2;
    each must be at least 3 because orders 1 and 2 already have their
    own columns.  include_exact=False drops the exact column for speed.
    """

    n: int
    mx: int
    ma: int
    mxa_lo: int
    mxa_hi: int
    ks: tuple[int, ...] = (3,)
    include_exact: bool = True

    def __post_init__(self) -> None:
        if self.mxa_lo > self.mxa_hi:
            raise ValueError(
                f"empty sweep: mxa_lo={self.mxa_lo} exceeds mxa_hi={self.mxa_hi}"
            )
        for k in self.ks:
            if isinstance(k, bool) or not isinstance(k, int) or k < 3:
                raise InvalidK(
                    f"sweep k must be an integer >= 3, got {k!r};"
                    " orders 1 and 2 are always included"
                )
        lo = build_table(self.n, self.mx, self.ma, self.mxa_lo)
        build_table(self.n, self.mx, self.ma, self.mxa_hi)
        if lo.delta_counts <= 0:
            # delta_counts = n*mxa - mx*ma grows by n per unit of mxa
            first_ok = self.mx * self.ma // self.n + 1
            raise NegativeDependency(
                f"mxa={self.mxa_lo} gives no positive dependency for"
                f" n={self.n}, mx={self.mx}, ma={self.ma};"
                f" smallest admissible mxa is {first_ok}"
            )

    def tables(self) -> Iterator[ContingencyTable]:
        for mxa in range(self.mxa_lo, self.mxa_hi + 1):
            yield build_table(self.n, self.mx, self.ma, mxa)


@dataclass(frozen=True, slots=True)
class SweepPoint:
    table: ContingencyTable
    lift: float
    leverage: float
    odds_ratio: float
    terms: int
    p_fisher: float | None
    ub1: float
    ub2: float
    ub_ks: dict[int, float]


def run_sweep(spec: SweepSpec) -> list[SweepPoint]:
    points = []
    for t in spec.tables():
        s = derive_stats(t)
        engine = make_term_engine(t)
        points.append(
            SweepPoint(
                table=t,
                lift=s.lift,
                leverage=s.leverage,
                odds_ratio=s.odds_ratio,
                terms=s.j + 1,
                p_fisher=exact_fisher(engine).linear_value
                if spec.include_exact
                else None,
                ub1=ub1(engine).linear_value,
                ub2=ub2(engine).linear_value,
                ub_ks={k: ub_k(engine, k).linear_value for k in spec.ks},
            )
        )
    return points


def sweep_header(spec: SweepSpec) -> tuple[str, ...]:
    return (
        "mxa", "j", "terms", "lift", "leverage", "odds",
        "p_fisher", "ub1", "ub2", *(f"ub{k}" for k in spec.ks),
    )


def write_sweep_csv(out: IO[str], spec: SweepSpec, points: list[SweepPoint]) -> None:
    from .batch import format_float

    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(sweep_header(spec))
    for p in points:
        writer.writerow(
            [
                str(p.table.mxa),
                str(p.table.j),
                str(p.terms),
                format_float(p.lift),
                format_float(p.leverage),
                format_float(p.odds_ratio),
                format_float(p.p_fisher) if p.p_fisher is not None else "",
                format_float(p.ub1),
                format_float(p.ub2),
                *(format_float(p.ub_ks[k]) for k in spec.ks),
            ]
        )
