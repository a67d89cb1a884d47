"""Series reports: per-term checks, head/tail splits, p grids."""

import math
from fractions import Fraction

import pytest

from sweepout import (
    LogLogGauge,
    LogPowerGauge,
    PowerGauge,
    PreconditionError,
    RootValue,
)
from sweepout.schedules import (
    DirectInversionSchedule,
    LogInversionSchedule,
    WeightedLogInversionSchedule,
)
from sweepout.series import (
    default_p_grid,
    fixed_family_check,
    lemma_grid,
    lemma_series,
    theorem_a_series,
    theorem_b_grid,
    theorem_b_series,
)

F = Fraction


def toy_a():
    return DirectInversionSchedule(PowerGauge(F(1, 2)), 2)


def toy_b(j=1):
    return LogInversionSchedule(LogPowerGauge(j))


def toy_lemma():
    return WeightedLogInversionSchedule(LogPowerGauge(1), 1,
                                        LogPowerGauge(F(1, 3)))


class TestGrid:
    def test_default_grid(self):
        assert default_p_grid(4) == (F(2), F(3, 2), F(4, 3), F(5, 4))
        assert len(default_p_grid()) == 20
        assert default_p_grid()[-1] == F(21, 20)

    def test_grid_validation(self):
        with pytest.raises(PreconditionError):
            default_p_grid(0)


class TestTheoremASeries:
    def test_spot_row(self):
        rep = theorem_a_series(toy_a(), 10)
        row = rep.rows[1]
        assert row.u == 2
        assert row.term == 0.25
        assert row.bound == 513 / 2048
        assert row.ok

    def test_first_row_has_floor_slack(self):
        # M(1), R(1) and the witness all degenerate to 1 there
        rep = theorem_a_series(toy_a(), 3)
        assert rep.rows[0].term == 1.0
        assert rep.rows[0].bound == 2.0

    def test_terms_are_exactly_inverse_squares(self):
        # u**9 moduli against fractions with u**11 denominators
        s = toy_a()
        for u in range(1, 12):
            value = s.modulus(u) * s.insertion_fraction(u) ** 2
            assert value == F(1, u * u)

    def test_all_rows_pass_and_report_is_exact(self):
        rep = theorem_a_series(toy_a(), 200)
        assert rep.all_ok
        assert rep.meta["exact"]
        assert rep.failing() == []
        assert rep.partial_sum == pytest.approx(
            sum(1 / u ** 2 for u in range(1, 201)), rel=1e-12)

    def test_variant_and_u_max_validation(self):
        with pytest.raises(PreconditionError, match="theorem-a"):
            theorem_a_series(toy_b(), 5)
        with pytest.raises(PreconditionError):
            theorem_a_series(toy_a(), 0)


class TestTheoremBSeries:
    def test_partial_sum_at_p_two(self):
        rep = theorem_b_series(toy_b(), 2, 100)
        # 1/2 + 2/65536; the third term is 24 orders below the ulp
        assert rep.partial_sum == 0.500030517578125

    def test_growth_fit_is_exact_for_the_quartic(self):
        meta = theorem_b_series(toy_b(), 2, 100).meta
        assert meta["growth"] == "polynomial"
        assert meta["n_hat"] == 4
        assert meta["c"] == 1.0 and meta["C"] == 1.0
        assert meta["K"] == 1.0
        assert meta["tail_constant"] == 2.0

    def test_head_is_a_single_row_at_p_two(self):
        rep = theorem_b_series(toy_b(), 2, 100)
        assert rep.meta["split_point"] == 1.0
        assert rep.meta["head_cut"] == 1
        assert rep.rows[0].bound is None and rep.rows[0].ok
        assert rep.rows[1].bound == 0.5

    def test_sum_level_bounds(self):
        rep = theorem_b_series(toy_b(), 2, 100)
        assert rep.meta["phi_target"] == pytest.approx(math.log2(math.e))
        assert rep.meta["sum_vs_head"]
        assert rep.meta["sum_vs_phi"]
        assert rep.all_ok

    def test_small_exponent_stretches_the_head(self):
        rep = theorem_b_series(toy_b(), F(21, 20), 100)
        assert rep.meta["head_cut"] == 2
        assert rep.meta["K"] == 1.0
        assert rep.all_ok
        assert rep.meta["sum_vs_head"] and rep.meta["sum_vs_phi"]
        assert rep.partial_sum == pytest.approx(2.2963086354218034, rel=1e-12)

    def test_square_height_gauge(self):
        rep = theorem_b_series(toy_b(2), 2, 100)
        assert rep.meta["n_hat"] == 2
        assert rep.partial_sum == pytest.approx(0.6309205592551859, rel=1e-12)
        assert rep.all_ok

    def test_fractional_exponent_fit_stays_float(self):
        rep = theorem_b_series(toy_b(F(3, 2)), 2, 100)
        assert rep.meta["n_hat"] == pytest.approx(8 / 3, rel=1e-12)
        assert rep.meta["K"] == pytest.approx(1.0, abs=1e-9)
        assert rep.all_ok

    def test_doubly_exponential_height_goes_superpolynomial(self):
        rep = theorem_b_series(LogInversionSchedule(LogLogGauge()), 2, 100)
        assert rep.meta["growth"] == "superpolynomial"
        assert rep.partial_sum == 0.25
        assert rep.meta["phi_target"] == 1.0
        assert rep.all_ok
        assert rep.meta["sum_vs_head"] and rep.meta["sum_vs_phi"]

    def test_p_validation(self):
        for p in (1, 3, F(5, 2)):
            with pytest.raises(PreconditionError):
                theorem_b_series(toy_b(), p, 5)
        with pytest.raises(PreconditionError, match="theorem-b"):
            theorem_b_series(toy_a(), 2, 5)


class TestTheoremBGrid:
    def test_grid_summary(self):
        grid = theorem_b_grid(toy_b(), 100, 20)
        assert grid.k_p_independent
        assert grid.feed_ok
        assert grid.all_ok
        assert grid.a_prime == pytest.approx(2.0214065742, rel=1e-9)

    def test_feed_inequality_holds_rowwise(self):
        grid = theorem_b_grid(toy_b(), 60, 8)
        for rep in grid.reports:
            lifted = 2.0 * rep.partial_sum ** (1 / float(rep.p))
            assert lifted <= rep.meta["phi_target"] + grid.a_prime + 1e-12


class TestFixedFamily:
    def test_doubly_exponential_clears_every_exponent(self):
        rows = fixed_family_check(LogInversionSchedule(LogLogGauge()), 40)
        assert len(rows) == 60
        assert all(r["ok"] for r in rows)
        at_two = next(r for r in rows if r["n"] == 2 and r["p"] == 2)
        assert at_two["K"] == 2.0
        assert at_two["tail_constant"] == pytest.approx(4 / 9)
        assert at_two["partial_sum"] == 0.25

    def test_quartic_height_fails_the_eighth_power_premise(self):
        rows = fixed_family_check(toy_b(), 40)
        for n in (2, 4):
            sub = [r for r in rows if r["n"] == n]
            assert all(r["dominates"] and r["ok"] for r in sub)
        eighth = [r for r in rows if r["n"] == 8]
        assert not any(r["dominates"] for r in eighth)
        assert not any(r["ok"] for r in eighth)


class TestLemmaSeries:
    def test_cancellation_row_is_exact(self):
        s = toy_lemma()
        doubled = s.insertion_fraction(2) * 2
        value = s.modulus(2) * doubled.pow_fraction(F(2))
        assert value == RootValue(F(25, 64), 2, 3)
        assert not value > F(1, 2)

    def test_spot_row(self):
        rep = lemma_series(toy_lemma(), 2, 40)
        row = rep.rows[1]
        assert row.u == 2
        assert row.term == pytest.approx(0.4921566601151847, rel=1e-12)
        assert row.bound == 0.5
        assert row.ok

    def test_report_shape_at_p_two(self):
        rep = lemma_series(toy_lemma(), 2, 40)
        assert rep.all_ok
        assert rep.meta["growth"] == "polynomial"
        assert rep.meta["n_hat"] == 2
        assert rep.meta["K"] == 1.0
        assert rep.meta["tail_constant"] == 2.0
        assert rep.meta["head_bound"] == 1.0
        assert rep.meta["sum_vs_head"]

    def test_weight_one_terms_match_the_square_height_series(self):
        # u * 2**(-u**2) on both sides
        lem = lemma_series(toy_lemma(), 2, 100)
        b = theorem_b_series(toy_b(2), 2, 100)
        assert lem.partial_sum == b.partial_sum

    def test_float_rows_past_the_exact_cap(self):
        rep = lemma_series(toy_lemma(), F(11, 10), 100)
        assert rep.all_ok
        assert rep.partial_sum == pytest.approx(7.129554476814737, rel=1e-12)

    def test_grid_is_monotone_in_p(self):
        reports, monotone = lemma_grid(toy_lemma(), 40, 20)
        assert monotone
        assert all(r.all_ok for r in reports)
        assert reports[0].p == 2
        assert reports[-1].partial_sum == pytest.approx(14.343325851658792,
                                                        rel=1e-10)

    def test_validation(self):
        with pytest.raises(PreconditionError, match="lemma-14"):
            lemma_series(toy_a(), 2, 5)
        with pytest.raises(PreconditionError):
            lemma_series(toy_lemma(), 1, 5)
