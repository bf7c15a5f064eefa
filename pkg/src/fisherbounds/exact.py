"""Exact one-sided Fisher p-values via the hypergeometric tail sum.

The observed table contributes the point probability p_0 and each more
extreme table multiplies in one further ratio

    q_i = ((mxna - i + 1) (mnxa - i + 1)) / ((mxa + i) (mnxna + i)),

which falls strictly as i grows, giving

    p_F = p_0 (1 + q_1 + q_1 q_2 + ... + q_1 q_2 ... q_J).

The parenthesised sum runs in linear space with compensated summation;
all its terms lie in (0, 1], so scaling by p_0 only at the very end
keeps the accumulation well conditioned and immune to p_0 underflow.
Each q_i is one float division of two exact integer products, matching
the cancellation that derives the ratio in the first place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .contingency import ContingencyTable
from .errors import CapacityExceeded, NegativeDependency, OutOfRange
from .logfact import LogFactorialTable, shared_table

__all__ = [
    "PValue",
    "TermEngine",
    "make_term_engine",
    "exact_fisher",
    "exact_fisher_oracle",
    "ORACLE_CAP",
]


@dataclass(frozen=True, slots=True)
class PValue:
    """A probability held in log space with a linear view.

    raw_log is the log of the value as computed, before any clamping,
    and is the authoritative ranking key: it stays finite and ordered
    when the linear value underflows to 0.0, and it keeps the original
    magnitude when an upper bound exceeded 1 and was clamped.  After
    clamping log_value <= 0, linear_value = exp(log_value), and
    clamped implies linear_value == 1.0.
    """

    raw_log: float
    log_value: float
    linear_value: float
    clamped: bool
    terms_evaluated: int

    @classmethod
    def from_log(cls, raw_log: float, terms_evaluated: int) -> "PValue":
        if raw_log > 0.0:
            return cls(raw_log, 0.0, 1.0, True, terms_evaluated)
        return cls(raw_log, raw_log, math.exp(raw_log), False, terms_evaluated)


@dataclass(frozen=True, slots=True)
class TermEngine:
    """Per-table state of the term recurrence.

    log_p0 is ln p_0 of the observed table, log_pabs is the margin-only
    factor ln(ma! (n - ma)! / n!) shared by every term, and j counts the
    ratio steps available beyond the observed table.
    """

    table: ContingencyTable
    log_p0: float
    log_pabs: float
    j: int

    @property
    def positive_dependency(self) -> bool:
        return self.table.delta_counts > 0

    def ratio(self, i: int) -> float:
        """q_i as a single division of two exact integer products."""
        if not 1 <= i <= self.j:
            raise OutOfRange(f"i={i} outside 1..{self.j}")
        t = self.table
        return ((t.mxna - i + 1) * (t.mnxa - i + 1)) / ((t.mxa + i) * (t.mnxna + i))

    def ratios(self):
        """Yield q_1 .. q_J in order."""
        t = self.table
        mxa, mxna, mnxa, mnxna = t.mxa, t.mxna, t.mnxa, t.mnxna
        for i in range(1, self.j + 1):
            yield ((mxna - i + 1) * (mnxa - i + 1)) / ((mxa + i) * (mnxna + i))


def make_term_engine(
    t: ContingencyTable, tbl: LogFactorialTable | None = None
) -> TermEngine:
    """Build the engine for a table; tbl defaults to the shared table grown to n."""
    if tbl is None:
        tbl = shared_table(t.n)
    log_p0 = (
        tbl.log_binomial(t.mx, t.mxa)
        + tbl.log_binomial(t.n - t.mx, t.mnxna)
        - tbl.log_binomial(t.n, t.ma)
    )
    return TermEngine(t, log_p0, -tbl.log_binomial(t.n, t.ma), t.j)


def _kahan_partial(engine: TermEngine, count: int) -> tuple[float, float, float]:
    """Compensated sum of the first count partial products 1, q_1, q_1 q_2, ...

    Returns (sum, compensation, last product).  The upper-bound family
    reuses this exact accumulation order for its leading terms, so a
    bound with no tail left reproduces exact_fisher bit for bit.
    """
    total = 0.0
    comp = 0.0
    prod = 1.0
    ratios = engine.ratios()
    for i in range(count):
        if i > 0:
            prod *= next(ratios)
        y = prod - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total, comp, prod


def exact_fisher(engine: TermEngine) -> PValue:
    """Exact p_F of a positive dependency; costs O(J) ratio steps.

    The linear value underflows to 0.0 for extreme tables while raw_log
    stays finite, so ranking by significance keeps working.
    """
    if not engine.positive_dependency:
        raise NegativeDependency(
            "exact_fisher needs a positive dependency; negate the consequent first"
        )
    total, _, _ = _kahan_partial(engine, engine.j + 1)
    return PValue.from_log(engine.log_p0 + math.log(total), engine.j + 1)


ORACLE_CAP = 20_000


def exact_fisher_oracle(t: ContingencyTable, cap: int = ORACLE_CAP) -> Fraction:
    """p_F as an exact rational; no floating point anywhere.

    Each side's binomial coefficient starts from math.comb at the
    observed cell and advances along k with C(m, k+1) = C(m, k) (m - k)
    / (k + 1) in exact integer steps (the division is always exact).
    That recurrence runs over different quantities than the floating
    q_i path, so agreement between the two is a genuine cross-check.
    Cost grows quickly with n; the cap keeps requests honest.
    """
    if t.n > cap:
        raise CapacityExceeded(f"n={t.n} above oracle cap {cap}")
    mnx = t.n - t.mx
    cx = math.comb(t.mx, t.mxa)
    cnx = math.comb(mnx, t.mnxna)
    total = cx * cnx
    kx = t.mxa
    kn = t.mnxna
    for _ in range(t.j):
        cx = cx * (t.mx - kx) // (kx + 1)
        kx += 1
        cnx = cnx * (mnx - kn) // (kn + 1)
        kn += 1
        total += cx * cnx
    return Fraction(total, math.comb(t.n, t.ma))
