"""Exact tail evaluation against independent rational arithmetic."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from fisherbounds import (
    CapacityExceeded,
    NegativeDependency,
    OutOfRange,
    PValue,
    build_table,
    exact_fisher,
    exact_fisher_oracle,
    make_term_engine,
)

from conftest import iter_exhaustive, random_positive_tables


def _oracle_from_scratch(t) -> Fraction:
    """Tail sum with a fresh binomial per term; no shared recurrence."""
    total = 0
    for i in range(t.j + 1):
        total += math.comb(t.mx, t.mxa + i) * math.comb(t.n - t.mx, t.mnxa - i)
    return Fraction(total, math.comb(t.n, t.ma))


def _rel_error(pv: PValue, fr: Fraction) -> float:
    linear = float(fr)
    if linear >= 1e-300:
        return abs(pv.linear_value - linear) / linear
    log_fr = math.log(fr.numerator) - math.log(fr.denominator)
    return abs(pv.raw_log - log_fr) / abs(log_fr)


class TestPValue:
    def test_from_log_regular(self):
        pv = PValue.from_log(math.log(0.25), 3)
        assert pv.linear_value == pytest.approx(0.25, rel=1e-15)
        assert pv.log_value == pv.raw_log
        assert not pv.clamped
        assert pv.terms_evaluated == 3

    def test_from_log_clamps_above_one(self):
        pv = PValue.from_log(0.7, 1)
        assert pv.raw_log == 0.7
        assert pv.log_value == 0.0
        assert pv.linear_value == 1.0
        assert pv.clamped

    def test_deep_tail_keeps_log_information(self):
        t = build_table(5000, 2500, 2500, 2400)
        pv = exact_fisher(make_term_engine(t))
        assert pv.linear_value == 0.0
        assert math.isfinite(pv.raw_log)
        assert pv.raw_log < -1000.0
        assert not pv.clamped


class TestTermEngine:
    def test_point_probability_matches_rational(self):
        for t in [
            build_table(1000, 500, 500, 275),
            build_table(100, 30, 40, 20),
            build_table(57, 12, 33, 11),
        ]:
            engine = make_term_engine(t)
            p0 = (
                Fraction(math.comb(t.mx, t.mxa))
                * math.comb(t.n - t.mx, t.mnxa)
                / math.comb(t.n, t.ma)
            )
            assert math.exp(engine.log_p0) == pytest.approx(float(p0), rel=1e-12)

    def test_margin_factor_is_reciprocal_choose(self):
        t = build_table(200, 80, 90, 50)
        engine = make_term_engine(t)
        assert engine.log_pabs == pytest.approx(
            -math.log(math.comb(200, 90)), rel=1e-13
        )

    def test_ratio_matches_rational(self):
        t = build_table(100, 30, 40, 20)
        engine = make_term_engine(t)
        for i in range(1, engine.j + 1):
            expected = Fraction(
                (t.mxna - i + 1) * (t.mnxa - i + 1), (t.mxa + i) * (t.mnxna + i)
            )
            assert engine.ratio(i) == pytest.approx(float(expected), rel=1e-15)

    def test_ratios_generator_equals_indexed_access(self):
        t = build_table(80, 25, 30, 15)
        engine = make_term_engine(t)
        assert list(engine.ratios()) == [
            engine.ratio(i) for i in range(1, engine.j + 1)
        ]

    def test_ratio_index_bounds(self):
        engine = make_term_engine(build_table(100, 30, 40, 20))
        with pytest.raises(OutOfRange):
            engine.ratio(0)
        with pytest.raises(OutOfRange):
            engine.ratio(engine.j + 1)

    def test_ratios_strictly_decreasing(self):
        for t in iter_exhaustive(max_n=25, positive_only=True):
            qs = list(make_term_engine(t).ratios())
            assert all(b < a for a, b in zip(qs, qs[1:]))


class TestExactFisher:
    def test_refuses_nonpositive_dependency(self):
        for t in [build_table(100, 50, 50, 25), build_table(100, 50, 50, 10)]:
            with pytest.raises(NegativeDependency):
                exact_fisher(make_term_engine(t))

    def test_counts_every_term(self):
        t = build_table(1000, 200, 250, 60)
        pv = exact_fisher(make_term_engine(t))
        assert pv.terms_evaluated == t.j + 1 == 141

    def test_matches_oracle_on_small_tables(self):
        worst = 0.0
        for t in iter_exhaustive(max_n=20, positive_only=True):
            pv = exact_fisher(make_term_engine(t))
            worst = max(worst, _rel_error(pv, exact_fisher_oracle(t)))
        assert worst <= 1e-12

    def test_matches_oracle_on_random_tables(self):
        for t in random_positive_tables(200, 2000, seed=52):
            pv = exact_fisher(make_term_engine(t))
            assert _rel_error(pv, exact_fisher_oracle(t)) <= 1e-11


class TestOracle:
    def test_probabilities_sum_to_one_exactly(self):
        # the hypergeometric point masses over the full support add to 1
        for n in (7, 12, 19, 25):
            for mx in range(1, n):
                for ma in range(1, n):
                    lo = max(0, mx + ma - n)
                    hi = min(mx, ma)
                    total = sum(
                        math.comb(mx, i) * math.comb(n - mx, ma - i)
                        for i in range(lo, hi + 1)
                    )
                    assert Fraction(total, math.comb(n, ma)) == 1

    def test_recurrence_equals_independent_comb_sums(self):
        for t in iter_exhaustive(max_n=25, positive_only=True):
            assert exact_fisher_oracle(t) == _oracle_from_scratch(t)

    def test_recurrence_equals_independent_comb_sums_random(self):
        for t in random_positive_tables(200, 3000, seed=7):
            assert exact_fisher_oracle(t) == _oracle_from_scratch(t)

    def test_oracle_values_are_probabilities(self):
        for t in iter_exhaustive(max_n=15, positive_only=True):
            p = exact_fisher_oracle(t)
            assert 0 < p <= 1

    def test_capacity_cap(self):
        t = build_table(25000, 1000, 1000, 200)
        with pytest.raises(CapacityExceeded):
            exact_fisher_oracle(t)
        assert exact_fisher_oracle(t, cap=25000) > 0
