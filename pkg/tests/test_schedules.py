"""Schedules: moduli, witness heights, insertion fractions, stage maps."""

from fractions import Fraction

import pytest

from sweepout import (
    ConfigError,
    GaugeGrowthError,
    LogLogGauge,
    LogPowerGauge,
    PowerGauge,
    PreconditionError,
    ResourceLimitError,
    RootValue,
    ScheduleValueError,
    TableGauge,
)
from sweepout.schedules import (
    DirectInversionSchedule,
    LogInversionSchedule,
    WeightedLogInversionSchedule,
    schedule_from_spec,
)

F = Fraction
HALF = F(1, 2)


def toy_a():
    return DirectInversionSchedule(PowerGauge(HALF), 2)


def toy_b():
    return LogInversionSchedule(LogPowerGauge(1))


def toy_lemma():
    return WeightedLogInversionSchedule(LogPowerGauge(1), 1,
                                        LogPowerGauge(F(1, 3)))


class TestDirectInversion:
    def test_moduli_are_ninth_powers(self):
        s = toy_a()
        assert [s.modulus(u) for u in (1, 2, 3, 4)] == \
            [1, 512, 19683, 262144]

    def test_witness_heights(self):
        s = toy_a()
        assert s.witness_value(1) == 1
        assert s.witness_value(2) == 64
        assert s.witness_value(3) == 729

    def test_insertion_fraction(self):
        s = toy_a()
        assert s.insertion_fraction(1) == 1
        assert s.insertion_fraction(2) == RootValue(1, 2, 2) / 64
        assert float(s.insertion_fraction(2)) == \
            pytest.approx(0.022097086912079608, rel=1e-15)

    def test_density_fills_modulus_exactly(self):
        s = toy_a()
        for u in (1, 2, 3):
            assert s.density_value(u) == s.modulus(u)
            assert s.exact_at(u)

    def test_sweepout_bound(self):
        s = toy_a()
        assert s.sweepout_bound(2) == RootValue(1, 2, 2) / 4
        assert float(s.sweepout_bound(2)) == pytest.approx(
            0.35355339059327373, rel=1e-15)

    def test_stage_bounds_and_lookup(self):
        s = toy_a()
        assert s.stage_bounds(1) == (0, 1)
        assert s.stage_bounds(2) == (1, 513)
        assert s.stage_bounds(3) == (513, 20196)
        for k, u in [(0, 1), (1, 2), (512, 2), (513, 3), (20195, 3),
                     (20196, 4)]:
            assert s.stage_of(k) == u, k

    def test_stage_indices_cover_residues(self):
        # each stage owns modulus(u) consecutive indices, so their
        # residues mod modulus(u) hit every class once
        s = toy_a()
        for u in (2, 3):
            lo, hi = s.stage_bounds(u)
            m = s.modulus(u)
            assert hi - lo == m
            assert sorted(k % m for k in range(lo, hi)) == list(range(m))

    def test_identity_gauge_cubes(self):
        s = DirectInversionSchedule(PowerGauge(1), 2)
        assert [s.modulus(u) for u in (1, 2, 3)] == [1, 8, 27]
        assert s.insertion_fraction(2) == RootValue(1, 2, 2) / 8

    def test_growth_guard(self):
        # x**q / phi(x) must be superlinear, so q = 1 cannot work against
        # any unbounded gauge and a = 2 cannot work against q = 1
        with pytest.raises(GaugeGrowthError):
            DirectInversionSchedule(PowerGauge(2), 1)
        with pytest.raises(GaugeGrowthError):
            DirectInversionSchedule(PowerGauge(HALF), 1)

    def test_table_gauge_falls_back_to_floats(self):
        s = DirectInversionSchedule(TableGauge([(1, 1), (2, 3), (4, 4)]), 2)
        assert s.modulus(1) == 1
        # inverse(8) is 12 up to bisection error; the float floor of
        # (almost 12)**2 / 8 lands one under the ideal 18
        assert s.modulus(2) == 17
        assert not s.exact_at(2)

    def test_rejects_bad_q(self):
        with pytest.raises(ConfigError):
            DirectInversionSchedule(PowerGauge(HALF), 0)
        with pytest.raises(ConfigError):
            DirectInversionSchedule(PowerGauge(HALF), 1.5)


class TestLogInversion:
    def test_moduli(self):
        s = toy_b()
        assert s.modulus(1) == 2
        assert s.modulus(2) == 65536
        assert s.modulus(3) == 2 ** 81

    def test_witness_and_fraction(self):
        s = toy_b()
        assert s.witness_value(1) == 2
        assert s.insertion_fraction(1) == HALF
        assert s.insertion_fraction(2) == RootValue(1, 2, 2) / 65536
        assert s.sweepout_bound(3) == RootValue(1, 3, 2) / 4

    def test_density_is_witness(self):
        s = toy_b()
        for u in (1, 2):
            assert s.density_value(u) == s.witness_value(u)
            assert s.exact_at(u)

    def test_stage_bounds(self):
        s = toy_b()
        assert s.stage_bounds(1) == (0, 2)
        assert s.stage_bounds(2) == (2, 65538)
        assert s.stage_of(1) == 1
        assert s.stage_of(2) == 2
        assert s.stage_of(65538) == 3

    def test_square_log_height(self):
        s = LogInversionSchedule(LogPowerGauge(2))
        assert [s.modulus(u) for u in (1, 2, 3)] == [2, 16, 512]

    def test_log_log_gauge(self):
        s = LogInversionSchedule(LogLogGauge())
        assert s.modulus(1) == 4
        assert s.modulus(2).bit_length() == 65537   # floor(2**(2**16))

    def test_irrational_height_uses_precise_floor(self):
        # j = 3/2 makes g = (u**4)**(2/3) irrational at u = 2
        s = LogInversionSchedule(LogPowerGauge(F(3, 2)))
        assert s.modulus(1) == 2 and s.exact_at(1)
        assert s.modulus(2) == 81 and not s.exact_at(2)

    def test_rejects_fast_gauges(self):
        with pytest.raises(GaugeGrowthError):
            LogInversionSchedule(LogPowerGauge(3))
        with pytest.raises(GaugeGrowthError):
            LogInversionSchedule(PowerGauge(HALF))

    def test_resource_cap(self):
        s = LogInversionSchedule(LogPowerGauge(1), max_bits=100)
        assert s.modulus(3) == 2 ** 81
        with pytest.raises(ResourceLimitError):
            s.modulus(4)


class TestWeightedLogInversion:
    def test_moduli(self):
        s = toy_lemma()
        assert [s.modulus(u) for u in (1, 2, 3)] == [2, 25, 1065]

    def test_weight_enters_density(self):
        s = toy_lemma()
        assert s.density_value(2) == RootValue(16, 4, 3)
        assert s.witness_value(2) == 16
        assert s.exact_at(2)

    def test_series_anchor(self):
        s = toy_lemma()
        term = s.modulus(2) * (2 * s.insertion_fraction(2)) ** 2
        assert term <= HALF
        assert float(s.insertion_fraction(2)) == \
            pytest.approx(0.0701538780193358, rel=1e-12)

    def test_higher_weight_exponent(self):
        s = WeightedLogInversionSchedule(LogPowerGauge(1), 2,
                                         LogPowerGauge(F(1, 3)))
        assert s.modulus(1) == 2
        assert s.modulus(2) == 512    # floor(2**8 * 2)

    def test_fallback_when_weight_is_inexact(self):
        s = WeightedLogInversionSchedule(LogPowerGauge(1), 1, LogLogGauge())
        assert [s.modulus(u) for u in (1, 2, 3)] == [2, 32, 1623]
        assert s.exact_at(2)
        assert not s.exact_at(3)      # floor(512 * log2(9)) via mpmath

    def test_rejects_bad_k(self):
        with pytest.raises(ConfigError):
            WeightedLogInversionSchedule(LogPowerGauge(1), 0,
                                         LogPowerGauge(F(1, 3)))


class TestStageValidation:
    def test_stage_indices_must_be_positive(self):
        s = toy_a()
        with pytest.raises(PreconditionError):
            s.stage(0)
        with pytest.raises(PreconditionError):
            s.stage_of(-1)
        with pytest.raises(PreconditionError):
            s.stage_bounds(0)

    def test_stages_are_cached(self):
        s = toy_a()
        assert s.stage(2) is s.stage(2)


class TestSpecGrammar:
    def test_variants_roundtrip(self):
        specs = [
            {"variant": "theorem-a", "q": 2,
             "gauge": {"type": "power", "a": 0.5}},
            {"variant": "theorem-b", "gauge": {"type": "log-power", "j": 1}},
            {"variant": "lemma-14", "k": 1,
             "gauge": {"type": "log-power", "j": 1},
             "psi": {"type": "log-power", "j": "1/3"}},
        ]
        for spec in specs:
            s = schedule_from_spec(spec)
            assert s.variant == spec["variant"]
            assert schedule_from_spec(s.spec()).spec() == s.spec()

    def test_passthrough(self):
        s = toy_a()
        assert schedule_from_spec(s) is s

    def test_rejects(self):
        gauge = {"type": "power", "a": 0.5}
        for bad in [
            "theorem-a",
            {},
            {"variant": "theorem-c", "gauge": gauge},
            {"variant": "theorem-a", "gauge": gauge},       # missing q
            {"variant": "theorem-a", "q": 2},               # missing gauge
            {"variant": "lemma-14", "k": 1, "gauge":
             {"type": "log-power", "j": 1}},                # missing psi
        ]:
            with pytest.raises(ConfigError):
                schedule_from_spec(bad)
