"""One-sided chi-square baseline for 2x2 tables.

The statistic for one degree of freedom reduces to

    n (n mxa - mx ma)^2 / (mx ma (n - mx) (n - ma)),

a single float division of exact integer products.  The one-sided
p-value is the standard normal upper tail at the signed square root of
the statistic, equivalent to halving the two-sided chi-square tail and
keeping the observed direction.  No continuity correction is applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .contingency import ContingencyTable, DerivedStats

__all__ = ["Chi2Result", "chi2_one_sided", "normal_upper_tail"]

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, slots=True)
class Chi2Result:
    """statistic >= 0; p_one_sided is 0.5 exactly at independence.

    rule_of_thumb_ok reports the classical applicability gate: the
    smallest expected cell count must reach 5.
    """

    statistic: float
    p_one_sided: float
    min_expected: float
    rule_of_thumb_ok: bool


def normal_upper_tail(z: float) -> float:
    """Q(z) = P(N(0,1) > z), via the complementary error function."""
    return 0.5 * math.erfc(z / _SQRT2)


def chi2_one_sided(t: ContingencyTable, s: DerivedStats) -> Chi2Result:
    """Signed-root chi-square p-value of a table.

    The sign comes from the integer leverage numerator, and the >= 5
    rule compares integer cell products against 5n, so neither decision
    depends on float rounding.
    """
    d = t.delta_counts
    numerator = t.n * d * d
    denominator = t.mx * t.ma * (t.n - t.mx) * (t.n - t.ma)
    statistic = numerator / denominator
    z = math.sqrt(statistic)
    if d < 0:
        z = -z
    smallest_product = min(
        t.mx * t.ma,
        t.mx * (t.n - t.ma),
        (t.n - t.mx) * t.ma,
        (t.n - t.mx) * (t.n - t.ma),
    )
    return Chi2Result(
        statistic=statistic,
        p_one_sided=normal_upper_tail(z),
        min_expected=s.min_expected,
        rule_of_thumb_ok=smallest_product >= 5 * t.n,
    )
