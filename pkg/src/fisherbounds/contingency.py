"""Validated 2x2 contingency tables and the quantities derived from them.

A table records how often an antecedent X and a consequent A hold among
n rows.  Four counts pin it down completely: n, m(X), m(A) and m(XA);
the remaining cells follow by subtraction and stay non-negative for any
valid input.  Everything downstream (the exact tail sum, the upper
bounds, the chi-square baseline) consumes these tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateMargin, MarginViolation

__all__ = [
    "ContingencyTable",
    "DerivedStats",
    "build_table",
    "derive_stats",
    "negate_consequent",
]


@dataclass(frozen=True, slots=True)
class ContingencyTable:
    """Counts of a 2x2 table: n rows, margins mx and ma, joint count mxa.

    The remaining cells are exposed as properties:

        mxna  = m(X, not A)      = mx - mxa
        mnxa  = m(not X, A)      = ma - mxa
        mnxna = m(not X, not A)  = n - mx - ma + mxa

    Margins must be non-degenerate (0 < mx < n, 0 < ma < n) and mxa must
    lie inside the Frechet bounds max(0, mx + ma - n) <= mxa <= min(mx, ma).
    Construction validates all of this; instances are immutable and safe
    to share across threads.
    """

    n: int
    mx: int
    ma: int
    mxa: int

    def __post_init__(self) -> None:
        n, mx, ma, mxa = self.n, self.mx, self.ma, self.mxa
        if not (0 < mx < n and 0 < ma < n):
            raise DegenerateMargin(
                f"margins must satisfy 0 < mx < n and 0 < ma < n, "
                f"got n={n}, mx={mx}, ma={ma}"
            )
        lo = mx + ma - n
        if lo < 0:
            lo = 0
        hi = mx if mx < ma else ma
        if not lo <= mxa <= hi:
            raise MarginViolation(
                f"mxa={mxa} outside [{lo}, {hi}] for n={n}, mx={mx}, ma={ma}"
            )

    @property
    def mxna(self) -> int:
        return self.mx - self.mxa

    @property
    def mnxa(self) -> int:
        return self.ma - self.mxa

    @property
    def mnxna(self) -> int:
        return self.n - self.mx - self.ma + self.mxa

    @property
    def delta_counts(self) -> int:
        """n*mxa - mx*ma, the leverage scaled by n**2.

        An exact integer; its sign classifies the dependency, so every
        sign decision in the package compares this against 0 rather than
        a rounded float.  It also equals mxa*mnxna - mxna*mnxa.
        """
        return self.n * self.mxa - self.mx * self.ma

    @property
    def j(self) -> int:
        """Number of tables more extreme than the observed one: min(mxna, mnxa)."""
        return self.mxna if self.mxna < self.mnxa else self.mnxa


@dataclass(frozen=True, slots=True)
class DerivedStats:
    """Relative frequencies and dependency measures of a table.

    lift is P(XA) / (P(X) P(A)) and leverage is P(XA) - P(X) P(A); a lift
    above 1 (leverage above 0) marks a positive dependency.  odds_ratio
    is +inf when an off-diagonal cell is empty.  expected holds the four
    counts n P(X) P(A), n P(X) P(not A), n P(not X) P(A) and
    n P(not X) P(not A) predicted under independence.
    """

    table: ContingencyTable
    x: float
    a: float
    lift: float
    leverage: float
    odds_ratio: float
    j: int
    expected: tuple[float, float, float, float]

    @property
    def min_expected(self) -> float:
        return min(self.expected)

    @property
    def positive_dependency(self) -> bool:
        """Exact integer sign test of the leverage."""
        return self.table.delta_counts > 0


def build_table(n: int, mx: int, ma: int, mxa: int) -> ContingencyTable:
    """Validate four counts and return the table they define."""
    for name, value in (("n", n), ("mx", mx), ("ma", ma), ("mxa", mxa)):
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    return ContingencyTable(n, mx, ma, mxa)


def derive_stats(t: ContingencyTable) -> DerivedStats:
    """Populate every derived quantity of a table.

    Ratios are taken as single float divisions of exact integer
    products, so each value carries one rounding step.
    """
    n = t.n
    off_diagonal = t.mxna * t.mnxa
    odds = (t.mxa * t.mnxna) / off_diagonal if off_diagonal else math.inf
    expected = (
        t.mx * t.ma / n,
        t.mx * (n - t.ma) / n,
        (n - t.mx) * t.ma / n,
        (n - t.mx) * (n - t.ma) / n,
    )
    return DerivedStats(
        table=t,
        x=t.mx / n,
        a=t.ma / n,
        lift=(n * t.mxa) / (t.mx * t.ma),
        leverage=t.delta_counts / (n * n),
        odds_ratio=odds,
        j=t.j,
        expected=expected,
    )


def negate_consequent(t: ContingencyTable) -> ContingencyTable:
    """Table of the rule X -> not A, keeping n and mx fixed.

    Applying it twice returns the original table, and the leverage flips
    sign exactly, so negative dependencies map to positive ones.
    Non-degenerate margins survive the complement, so this cannot raise.
    """
    return ContingencyTable(t.n, t.mx, t.n - t.ma, t.mx - t.mxa)
