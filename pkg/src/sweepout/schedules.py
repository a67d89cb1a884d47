"""Stage schedules: the numbers that drive each interval choice.

A schedule maps a stage index u = 1, 2, ... to

    modulus(u)             the progression step used by every interval
                           assigned to stage u; also the period of the
                           stage's witness function
    witness_value(u)       the height placed on one residue class
    insertion_fraction(u)  the fraction of counted elements inserted
    density_value(u)       the stage functional applied to the height
    sweepout_bound(u)      the average the perturbed set must reach

Stage u owns modulus(u) consecutive interval indices, so the residues
of its indices cover every class mod modulus(u) exactly once.

Everything it can compute exactly it does (RootValue/Fraction); when a
stage needs an irrational exponent it falls back to mpmath at a
precision tracking the magnitude and flags the stage non-exact.
"""

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import (
    ConfigError,
    GaugeGrowthError,
    PreconditionError,
    ResourceLimitError,
    ScheduleValueError,
)
from .exact import RootValue
from .gauges import (
    DEFAULT_MAX_BITS,
    IdentityYoung,
    ProductYoung,
    QuotientYoung,
    _exp2_exact,
    dominated_by_log_square,
    gauge_from_spec,
)

VARIANTS = ("theorem-a", "theorem-b", "lemma-14")


@dataclass(frozen=True)
class StageNumbers:
    """Everything the interval construction needs about one stage."""
    u: int
    modulus: int
    witness: object       # RootValue on the exact path, float otherwise
    fraction: object      # insertion fraction, same convention
    density: object       # functional value at the witness height
    bound: object         # sweepout target, same convention
    exact: bool


class PerturbationSchedule:
    """Base: caching, stage index bookkeeping, the shared accessors."""

    variant = "abstract"

    def __init__(self, gauge, max_bits: int = DEFAULT_MAX_BITS):
        self.gauge = gauge
        self.max_bits = max_bits
        self._stages = {}
        self._prefix = [0]   # _prefix[u] = total indices of stages 1..u

    # -- per-stage numbers -------------------------------------------------

    def stage(self, u: int) -> StageNumbers:
        if u < 1:
            raise PreconditionError(f"stage index must be >= 1, got {u}")
        if u not in self._stages:
            st = self._compute(u)
            if st.modulus < 1:
                raise ScheduleValueError(
                    f"stage {u} computed modulus {st.modulus} < 1")
            self._stages[u] = st
        return self._stages[u]

    def _compute(self, u: int) -> StageNumbers:
        raise NotImplementedError

    def modulus(self, u: int) -> int:
        return self.stage(u).modulus

    def witness_value(self, u: int):
        return self.stage(u).witness

    def insertion_fraction(self, u: int):
        return self.stage(u).fraction

    def density_value(self, u: int):
        return self.stage(u).density

    def sweepout_bound(self, u: int):
        return self.stage(u).bound

    def exact_at(self, u: int) -> bool:
        return self.stage(u).exact

    # -- which intervals belong to which stage ------------------------------

    def stage_bounds(self, u: int):
        """Half-open range [lo, hi) of interval indices owned by stage u."""
        if u < 1:
            raise PreconditionError(f"stage index must be >= 1, got {u}")
        while len(self._prefix) <= u:
            w = len(self._prefix)
            self._prefix.append(self._prefix[-1] + self.modulus(w))
        return self._prefix[u - 1], self._prefix[u]

    def stage_of(self, k: int) -> int:
        """The stage owning interval index k (0-based)."""
        if k < 0:
            raise PreconditionError(f"interval index must be >= 0, got {k}")
        while self._prefix[-1] <= k:
            self.stage_bounds(len(self._prefix))
        return bisect_right(self._prefix, k)

    def spec(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return f"<schedule {self.variant} over {self.gauge!r}>"

    # -- shared fallback helper ---------------------------------------------

    def _floor_exp2_mp(self, y, g_hint: float) -> int:
        """floor(2**g) where g is the log-scale inverse at y, via mpmath."""
        if g_hint == math.inf or g_hint > self.max_bits:
            raise ResourceLimitError(
                f"stage modulus needs about 2**{g_hint} bits worth of digits")
        prec = max(64, int(g_hint) + 80)
        with mpmath.workprec(prec):
            g = self.gauge.log2_inverse_mp(y, prec)
            return int(mpmath.floor(mpmath.power(2, g)))


class DirectInversionSchedule(PerturbationSchedule):
    """Config variant "theorem-a": witness height from inverting the
    gauge at u**3; the density functional is the quotient x**q / phi(x),
    so the modulus floor(v**q / u**3) makes the witness density land at
    (just under) one."""

    variant = "theorem-a"

    def __init__(self, gauge, q, max_bits: int = DEFAULT_MAX_BITS):
        if q != int(q) or int(q) < 1:
            raise ConfigError(f"variant theorem-a needs integer q >= 1: {q}")
        super().__init__(gauge, max_bits)
        self.q = int(q)
        # rejects gauges growing too fast for the quotient to increase
        self.density_functional = QuotientYoung(gauge, self.q)

    def _compute(self, u: int) -> StageNumbers:
        y = u ** 3
        v = self.gauge.inverse_exact(y, self.max_bits)
        if v is None:
            fv = self.gauge.inverse(float(y))
            raw = fv ** self.q / y
            root_u = u ** (1.0 / self.q)
            return StageNumbers(u, max(1, math.floor(raw)), fv,
                                root_u / fv, raw, root_u / 4.0, False)
        v = v if isinstance(v, RootValue) else RootValue(v)
        raw = (v ** self.q) / y
        chk = self.density_functional.exact(v)
        if chk is not None and chk != raw:
            raise ScheduleValueError(
                f"density functional mismatch at stage {u}: {chk} != {raw}")
        root_u = RootValue(1, u, self.q)
        return StageNumbers(u, raw.floor(), v, root_u / v, raw,
                            root_u / 4, True)

    def spec(self) -> dict:
        return {"variant": self.variant, "q": self.q,
                "gauge": self.gauge.spec()}


class LogInversionSchedule(PerturbationSchedule):
    """Config variant "theorem-b": the gauge is inverted at u**4 on the
    log2 scale, so the witness height is 2**g with g at least u**2; the
    density functional is the identity."""

    variant = "theorem-b"

    def __init__(self, gauge, max_bits: int = DEFAULT_MAX_BITS):
        if not dominated_by_log_square(gauge):
            raise GaugeGrowthError(
                f"{gauge!r} is not dominated by the squared log; the "
                f"log-scale witness height would fall below u**2")
        super().__init__(gauge, max_bits)
        self.density_functional = IdentityYoung()

    def _log_height(self, u: int):
        """Exact log2 witness height as a Fraction, or None."""
        ge = self.gauge.log2_inverse_exact(u ** 4, self.max_bits)
        if isinstance(ge, RootValue):
            return ge.as_fraction() if ge.is_rational else None
        return None if ge is None else Fraction(ge)

    def _compute(self, u: int) -> StageNumbers:
        y = u ** 4
        g = self._log_height(u)
        if g is not None:
            if g < u * u:
                raise ScheduleValueError(
                    f"log witness height {g} below {u}**2 at stage {u}")
            pw = _exp2_exact(g, self.max_bits)
            pw = pw if isinstance(pw, RootValue) else RootValue(pw)
            root_u = RootValue(1, u, 2)
            return StageNumbers(u, pw.floor(), pw, root_u / pw, pw,
                                root_u / 4, True)
        gf = self.gauge.log2_inverse_float(y)
        if gf < u * u - 1e-9:
            raise ScheduleValueError(
                f"log witness height {gf} below {u}**2 at stage {u}")
        m = self._floor_exp2_mp(y, gf)
        v = math.inf if gf > 1023 else 2.0 ** gf
        frac = math.sqrt(u) * (0.0 if gf > 1074 else 2.0 ** -gf)
        return StageNumbers(u, m, v, frac, v, math.sqrt(u) / 4.0, False)

    def spec(self) -> dict:
        return {"variant": self.variant, "gauge": self.gauge.spec()}


class WeightedLogInversionSchedule(PerturbationSchedule):
    """Config variant "lemma-14": like the log-scale variant but the
    modulus carries an extra weight t = psi(2**g) from a second gauge,
    and the growth exponent is k + 1."""

    variant = "lemma-14"

    def __init__(self, gauge, k, psi, max_bits: int = DEFAULT_MAX_BITS):
        if k != int(k) or int(k) < 1:
            raise ConfigError(f"variant lemma-14 needs integer k >= 1: {k}")
        if not dominated_by_log_square(gauge):
            raise GaugeGrowthError(
                f"{gauge!r} is not dominated by the squared log")
        super().__init__(gauge, max_bits)
        self.k = int(k)
        self.psi = psi
        self.density_functional = ProductYoung(psi)

    def _compute(self, u: int) -> StageNumbers:
        y = u ** (self.k + 1)
        ge = self.gauge.log2_inverse_exact(y, self.max_bits)
        if isinstance(ge, RootValue):
            ge = ge.as_fraction() if ge.is_rational else None
        elif ge is not None:
            ge = Fraction(ge)
        t = None if ge is None else self.psi.value_log2_exact(ge)
        if ge is not None and t is not None:
            # height must at least keep up with the square root of the
            # inversion point, or the insertion fraction leaves (0, 1]
            if RootValue(1, y, 2) > ge:
                raise ScheduleValueError(
                    f"log witness height {ge} too small at stage {u}")
            pw = _exp2_exact(ge, self.max_bits)
            pw = pw if isinstance(pw, RootValue) else RootValue(pw)
            t = t if isinstance(t, RootValue) else RootValue(t)
            weighted = pw * t
            ratio = ((RootValue(u) ** self.k) / t).root(2)
            return StageNumbers(u, weighted.floor(), pw, ratio / pw,
                                weighted, ratio / 4, True)
        gf = self.gauge.log2_inverse_float(y)
        tf = self.psi.value_log2(gf)
        m = self._floor_weighted_mp(y, gf)
        v = math.inf if gf > 1023 else 2.0 ** gf
        ratio = math.sqrt(u ** self.k / tf)
        frac = ratio * (0.0 if gf > 1074 else 2.0 ** -gf)
        dens = math.inf if v == math.inf else v * tf
        return StageNumbers(u, m, v, frac, dens, ratio / 4.0, False)

    def _floor_weighted_mp(self, y, g_hint: float) -> int:
        if g_hint == math.inf or g_hint > self.max_bits:
            raise ResourceLimitError(
                f"stage modulus needs about 2**{g_hint} bits worth of digits")
        prec = max(64, int(g_hint) + 80)
        with mpmath.workprec(prec):
            g = self.gauge.log2_inverse_mp(y, prec)
            t = mpmath.mpf(self.psi.value_log2(float(g)))
            return int(mpmath.floor(mpmath.power(2, g) * t))

    def spec(self) -> dict:
        return {"variant": self.variant, "k": self.k,
                "gauge": self.gauge.spec(), "psi": self.psi.spec()}


# ---------------------------------------------------------------------------
# config grammar
# ---------------------------------------------------------------------------


def schedule_from_spec(spec) -> PerturbationSchedule:
    if isinstance(spec, PerturbationSchedule):
        return spec
    if not isinstance(spec, dict) or "variant" not in spec:
        raise ConfigError(
            f"schedule spec must be a dict with 'variant': {spec!r}")
    variant = spec["variant"]
    if variant not in VARIANTS:
        raise ConfigError(f"unknown variant {variant!r} (one of {VARIANTS})")
    if "gauge" not in spec:
        raise ConfigError(f"variant {variant} needs a 'gauge'")
    gauge = gauge_from_spec(spec["gauge"])
    if variant == "theorem-a":
        if "q" not in spec:
            raise ConfigError("variant theorem-a needs 'q'")
        return DirectInversionSchedule(gauge, spec["q"])
    if variant == "theorem-b":
        return LogInversionSchedule(gauge)
    if "k" not in spec or "psi" not in spec:
        raise ConfigError("variant lemma-14 needs 'k' and 'psi'")
    return WeightedLogInversionSchedule(gauge, spec["k"],
                                        gauge_from_spec(spec["psi"]))
