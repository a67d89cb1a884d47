"""Lattice functions, their mean values, and the witness density."""

from fractions import Fraction

import pytest

from sweepout.averages import sweepout_witness
from sweepout.construction import (IntervalChoice, PerturbationPlan,
                                   build_plan)
from sweepout.density import (LatticeFunction, WitnessDensity,
                              density_of_shift_set, stage_lattice_function,
                              witness_density)
from sweepout.errors import ConfigError, PreconditionError
from sweepout.exact import RootValue
from sweepout.gauges import IdentityYoung, PowerGauge, QuotientYoung
from sweepout.schedules import schedule_from_spec
from sweepout.sequences import BlockSequence, FileSequence


def brute_window_mean(fn, n):
    vals = [abs(float(fn.value_at(x))) for x in range(-n, n + 1)]
    return sum(vals) / (2 * n + 1)


def schedule_a():
    return schedule_from_spec({"variant": "theorem-a", "q": 2,
                               "gauge": {"type": "power", "a": 0.5}})


class TestConstruction:
    def test_periodic_classes_normalize(self):
        fn = LatticeFunction.periodic(6, {7: 2, -1: 3})
        assert fn.value_at(1) == 2
        assert fn.value_at(5) == 3
        assert fn.value_at(11) == 3
        assert fn.value_at(0) == 0
        assert fn.support_size() == 2

    def test_zero_values_dropped(self):
        fn = LatticeFunction.periodic(4, {0: 0, 1: Fraction(0), 2: 0.0})
        assert fn.support_size() == 0
        assert fn.exact_density() == 0

    def test_finite_points(self):
        fn = LatticeFunction.finite({-3: 1, 0: 2, 10: 1})
        assert fn.value_at(-3) == 1
        assert fn.value_at(3) == 0
        assert not fn.is_periodic

    def test_bad_period_rejected(self):
        with pytest.raises(ConfigError):
            LatticeFunction.periodic(0, {0: 1})

    def test_single_class(self):
        fn = LatticeFunction.single_class(512, 3, RootValue(2, 2, 2))
        assert fn.value_at(3) == RootValue(2, 2, 2)
        assert fn.value_at(515) == RootValue(2, 2, 2)
        assert fn.value_at(4) == 0


class TestDensities:
    def test_exact_density_rational(self):
        fn = LatticeFunction.periodic(8, {0: 1, 1: Fraction(1, 2), 5: -2})
        assert fn.exact_density() == Fraction(7, 16)

    def test_exact_density_single_root(self):
        v = RootValue(1, 2, 2)
        fn = LatticeFunction.periodic(4, {0: v, 2: v})
        assert fn.exact_density() == v / 2

    def test_mixed_roots_fall_back(self):
        fn = LatticeFunction.periodic(4, {0: RootValue(1, 2, 2),
                                          1: RootValue(1, 3, 2)})
        with pytest.raises(PreconditionError):
            fn.exact_density()
        value, exact = fn.mean_over_period()
        assert not exact
        assert value == pytest.approx((2 ** 0.5 + 3 ** 0.5) / 4)

    def test_root_next_to_rational_falls_back(self):
        fn = LatticeFunction.periodic(4, {0: RootValue(1, 2, 2), 1: 1})
        value, exact = fn.mean_over_period()
        assert not exact
        assert value == pytest.approx((2 ** 0.5 + 1) / 4)

    def test_finite_support_has_no_period_mean(self):
        fn = LatticeFunction.finite({0: 1})
        with pytest.raises(PreconditionError):
            fn.exact_density()

    def test_finite_density_periodic_matches_brute(self):
        fn = LatticeFunction.periodic(5, {1: 2, 3: Fraction(1, 3)})
        for n in (0, 1, 2, 4, 5, 17, 230):
            want = brute_window_mean(fn, n)
            assert float(fn.finite_density(n)) == pytest.approx(want)

    def test_finite_density_point_mass(self):
        fn = LatticeFunction.finite({-2: 3, 7: 1})
        assert fn.finite_density(1) == 0
        assert fn.finite_density(2) == Fraction(3, 5)
        assert fn.finite_density(7) == Fraction(4, 15)
        with pytest.raises(PreconditionError):
            fn.finite_density(-1)

    def test_finite_density_converges_to_exact(self):
        fn = LatticeFunction.periodic(7, {2: Fraction(3, 2)})
        target = fn.exact_density()
        drift = abs(fn.finite_density(7000) - target)
        assert drift < Fraction(1, 1000)


class TestComposition:
    def test_identity_keeps_values(self):
        fn = LatticeFunction.periodic(3, {0: Fraction(5, 2)})
        out = fn.apply(IdentityYoung())
        assert out.value_at(0) == Fraction(5, 2)
        assert out.period == 3

    def test_quotient_functional_exact(self):
        # x**2 / sqrt(x) at x = 4: 16 / 2 = 8
        fn = LatticeFunction.periodic(3, {1: 4})
        out = fn.apply(QuotientYoung(PowerGauge(Fraction(1, 2)), 2))
        assert out.value_at(1) == 8

    def test_float_values_pass_through_the_float_path(self):
        fn = LatticeFunction.periodic(3, {1: 2.5})
        out = fn.apply(IdentityYoung())
        value, exact = out.mean_over_period()
        assert not exact
        assert value == pytest.approx(2.5 / 3)


class TestWitnessDensity:
    """One inserted progression, Young-composed and averaged, fills its
    1/modulus share exactly unless the modulus was floored."""

    def test_direct_inversion_is_unit(self):
        sched = schedule_a()
        for u in (1, 2, 3):
            w = witness_density(sched, u)
            assert w.exact and w.is_unit and w.ok
            assert w.value == 1

    def test_log_inversion_is_unit(self):
        sched = schedule_from_spec({"variant": "theorem-b",
                                    "gauge": {"type": "log-power", "j": 1}})
        for u in (1, 2, 3):
            w = witness_density(sched, u)
            assert w.exact and w.is_unit and w.ok

    def test_weighted_schedule_floor_excess(self):
        sched = schedule_from_spec({
            "variant": "lemma-14", "k": 1,
            "gauge": {"type": "log-power", "j": 1},
            "psi": {"type": "log-power", "j": Fraction(1, 3)}})
        w1 = witness_density(sched, 1)
        assert w1.exact and w1.is_unit
        w2 = witness_density(sched, 2)
        assert w2.exact and not w2.is_unit and w2.ok
        assert w2.value == RootValue(Fraction(16, 25), 4, 3)
        assert w2.value > 1
        assert w2.value < Fraction(26, 25)
        w3 = witness_density(sched, 3)
        assert w3.exact and w3.ok
        assert w3.value == RootValue(Fraction(512, 1065), 9, 3)

    def test_float_fallback_stays_in_envelope(self):
        sched = schedule_from_spec({"variant": "theorem-b",
                                    "gauge": {"type": "log-power",
                                              "j": 1.5}})
        w = witness_density(sched, 2)
        assert not w.exact
        assert not w.is_unit
        assert w.ok
        assert w.value == pytest.approx(1.0067840075189178)

    def test_envelope_rejects_excess(self):
        bad = WitnessDensity(1, 10, Fraction(23, 20), True)
        assert not bad.ok
        low = WitnessDensity(1, 10, Fraction(9, 10), True)
        assert not low.ok

    def test_finite_window_tracks_the_unit_value(self):
        sched = schedule_a()
        for u in (1, 2):
            fn = stage_lattice_function(sched, u)
            composed = fn.apply(sched.density_functional)
            m = sched.modulus(u)
            drift = abs(Fraction(composed.finite_density(1000 * m)) - 1)
            assert drift < Fraction(1, 1000)

    def test_stage_function_shape(self):
        sched = schedule_a()
        fn = stage_lattice_function(sched, 2, residue=5)
        assert fn.period == 512
        assert fn.value_at(5) == sched.witness_value(2)
        assert fn.value_at(6) == 0
        assert fn.support_size() == 1


class TestShiftSetDensity:
    def schedule(self):
        return schedule_from_spec({"variant": "theorem-b",
                                   "gauge": {"type": "log-power", "j": 1}})

    def test_toy_plan_serves_every_shift(self):
        plan = build_plan(self.schedule(), BlockSequence(), 1)
        assert density_of_shift_set(plan, 1) == 1

    def test_starved_class_lowers_the_fraction(self):
        # almost everything even: shifts needing the odd class lose
        base = FileSequence(list(range(2, 59, 2)))
        k0 = IntervalChoice(k=0, u=1, n=4, residue=0, modulus=2, first=4,
                            insert_count=1, count_at_n=1, overlap=0)
        k1 = IntervalChoice(k=1, u=1, n=30, residue=1, modulus=2, first=31,
                            insert_count=1, count_at_n=14, overlap=0)
        plan = PerturbationPlan(self.schedule(), base, [k0, k1])
        wit = sweepout_witness(plan, 1)
        assert wit.per_shift_max == [2, Fraction(2, 31)]
        assert not wit.ok
        assert density_of_shift_set(plan, 1) == Fraction(1, 2)
