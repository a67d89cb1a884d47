"""Orlicz gauges, Young functionals, and the modular integral.

A gauge is a function phi on the positive reals with phi(x) = 1 for
x <= 1, strictly increasing past a kind-specific point, and unbounded.
Built-in kinds:

    power      phi(x) = x**a
    log-power  phi(x) = max(1, log2(x)**j)
    log-log    phi(x) = max(1, log2(log2(x)))
    log-chain  continuous iterated-log chain (counts how many base-2
               logs it takes to fall below 2, plus the fractional part)
    table      piecewise linear through user supplied points
    unit       phi == 1 everywhere; bounded, so degenerate.  Kept only
               to exercise failure paths in the verification suites.

All logarithms are base 2, so inverses of the log kinds land on powers
of two and stay exactly representable.  Two inverse conventions exist
because every gauge is flat on an initial segment: ``inverse`` is the
left endpoint convention (inverse(1) = 1), while the ``*_exact``
formula inverses return the right endpoint of the flat region, which
is what the block schedules consume.
"""

import math
from bisect import bisect_right
from fractions import Fraction

import mpmath

from .errors import (ConfigError, GaugeDomainError, GaugeGrowthError,
                     ResourceLimitError)
from .exact import RootValue, _log2_int

#: bit-size guard for materialized powers of two
DEFAULT_MAX_BITS = 1 << 22
WITNESS_MAX_BITS = 1 << 26   # witnesses may be big, not astronomical


def _f_log2(x) -> float:
    """log2 that survives integers beyond float range."""
    if isinstance(x, int):
        return _log2_int(x)
    if isinstance(x, Fraction):
        return _log2_int(x.numerator) - _log2_int(x.denominator)
    return math.log2(x)


def _exp2_exact(e, max_bits: int):
    """2**e as an int, Fraction or RootValue; None if e is irrational."""
    if isinstance(e, RootValue):
        if not e.is_rational:
            return None
        e = e.as_fraction()
    e = Fraction(e)
    if abs(e.numerator) > max_bits:
        raise ResourceLimitError(
            f"2**({e}) needs about {abs(e.numerator) // e.denominator} bits "
            f"(cap {max_bits})")
    if e.denominator == 1:
        n = e.numerator
        return 1 << n if n >= 0 else Fraction(1, 1 << -n)
    if e.numerator >= 0:
        return RootValue(1, 1 << e.numerator, e.denominator)
    return RootValue(1, Fraction(1, 1 << -e.numerator), e.denominator)


def _check_positive(x):
    if x <= 0:
        raise GaugeDomainError(f"gauge evaluated at non-positive {x}")


def _power_of_two_log(x):
    """log2(x) as an int for x an integral power of two >= 1, else None."""
    if isinstance(x, RootValue):
        if not x.is_rational:
            return None
        x = x.as_fraction()
    if isinstance(x, Fraction):
        if x.denominator != 1:
            return None
        x = x.numerator
    if isinstance(x, int) and x >= 1 and x & (x - 1) == 0:
        return x.bit_length() - 1
    return None


def _rational_value(x):
    """x as a Fraction when it is exactly rational, else None."""
    if isinstance(x, RootValue):
        return x.as_fraction() if x.is_rational else None
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return None


# ---------------------------------------------------------------------------
# gauge kinds
# ---------------------------------------------------------------------------


class OrliczGauge:
    """Common interface; concrete kinds override the formula methods."""

    kind = "abstract"
    #: strictly increasing for x >= strict_from (flat at 1 below)
    strict_from = 1
    #: declared growth attribute: inverse grows faster than any polynomial
    superpolynomial_inverse = False

    # -- evaluation ----------------------------------------------------

    def value(self, x) -> float:
        """phi(x) as a float.  Total for x > 0."""
        raise NotImplementedError

    def value_exact(self, x):
        """phi(x) as Fraction/RootValue where representable, else None."""
        return None

    def value_log2_exact(self, m):
        """phi(2**m) exactly, for m an int/Fraction/RootValue; None if not."""
        return None

    def value_log2(self, m) -> float:
        """phi(2**m) as a float, safe for m too large for 2.0**m."""
        m = float(m)
        if m <= 0:
            return 1.0
        if m <= 1000:
            return self.value(2.0 ** m)
        return math.inf

    # -- inversion -----------------------------------------------------

    def inverse(self, y: float) -> float:
        """Smallest x with phi(x) = y; inverse(1) = 1."""
        if y < 1:
            raise GaugeDomainError(f"gauge inverse below 1: {y}")
        if y == 1:
            return 1.0
        return self._inverse_formula(y)

    def _inverse_formula(self, y: float) -> float:
        raise NotImplementedError

    def inverse_exact(self, y, max_bits: int = DEFAULT_MAX_BITS):
        """Formula inverse (right endpoint at y = 1), exact or None."""
        return None

    def log2_inverse_exact(self, y, max_bits: int = DEFAULT_MAX_BITS):
        """log2 of the formula inverse, exact or None."""
        return None

    def log2_inverse_float(self, y) -> float:
        """log2 of the formula inverse, as a float (never overflows)."""
        raise NotImplementedError

    def log2_inverse_mp(self, y, prec: int):
        """log2 of the formula inverse at ``prec`` bits (mpmath)."""
        raise NotImplementedError

    # -- growth --------------------------------------------------------

    def unbounded_witness(self, bound: int) -> int:
        """Some integer x with phi(x) > bound."""
        raise NotImplementedError

    def spec(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return f"<gauge {self.kind}>"


class PowerGauge(OrliczGauge):
    """phi(x) = x**a for x > 1, with rational a > 0."""

    kind = "power"
    strict_from = 1

    def __init__(self, a):
        a = Fraction(a)
        if a <= 0:
            raise ConfigError(f"power gauge needs a > 0, got {a}")
        self.a = a

    def value(self, x) -> float:
        _check_positive(x)
        if x <= 1:
            return 1.0
        e = float(self.a) * _f_log2(x)
        return math.inf if e > 1023 else 2.0 ** e

    def value_exact(self, x):
        if isinstance(x, RootValue):
            return x.pow_fraction(self.a) if x > 1 else Fraction(1)
        x = Fraction(x)
        _check_positive(x)
        if x <= 1:
            return Fraction(1)
        return RootValue(x).pow_fraction(self.a)

    def value_log2_exact(self, m):
        if not isinstance(m, RootValue):
            m = Fraction(m)
            if m <= 0:
                return Fraction(1)
        e = m * self.a
        if isinstance(e, RootValue):
            if not e.is_rational:
                return None
            e = e.as_fraction()
        return _exp2_exact(e, DEFAULT_MAX_BITS)

    def value_log2(self, m) -> float:
        m = float(m)
        if m <= 0:
            return 1.0
        e = float(self.a) * m
        return math.inf if e > 1023 else 2.0 ** e

    def _inverse_formula(self, y: float) -> float:
        e = _f_log2(y) / float(self.a)
        return math.inf if e > 1023 else 2.0 ** e

    def inverse_exact(self, y, max_bits: int = DEFAULT_MAX_BITS):
        y = Fraction(y)
        if y < 1:
            raise GaugeDomainError(f"gauge inverse below 1: {y}")
        return RootValue(y).pow_fraction(1 / self.a)

    def log2_inverse_exact(self, y, max_bits: int = DEFAULT_MAX_BITS):
        return None  # log2(y**(1/a)) is irrational off powers of two

    def log2_inverse_float(self, y) -> float:
        return _f_log2(y) / float(self.a)

    def log2_inverse_mp(self, y, prec: int):
        with mpmath.workprec(prec):
            return mpmath.log(mpmath.mpf(y), 2) / mpmath.mpf(
                self.a.numerator) * self.a.denominator

    def unbounded_witness(self, bound: int) -> int:
        k = -(-self.a.denominator // self.a.numerator)  # ceil(1/a)
        return (bound + 2) ** k

    def spec(self) -> dict:
        return {"type": "power", "a": str(self.a)}


class LogPowerGauge(OrliczGauge):
    """phi(x) = max(1, log2(x)**j) with rational j > 0."""

    kind = "log-power"
    strict_from = 2
    superpolynomial_inverse = True

    def __init__(self, j):
        j = Fraction(j)
        if j <= 0:
            raise ConfigError(f"log-power gauge needs j > 0, got {j}")
        self.j = j

    def value(self, x) -> float:
        _check_positive(x)
        if x <= 1:
            return 1.0
        l = _f_log2(x)
        return max(1.0, l ** float(self.j)) if l > 0 else 1.0

    def value_exact(self, x):
        # exact at powers of two, and trivially on the flat segment
        m = _power_of_two_log(x)
        if m is not None:
            return self.value_log2_exact(m)
        r = _rational_value(x)
        if r is not None and 0 < r <= self.strict_from:
            return Fraction(1)
        return None

    def value_log2_exact(self, m):
        if not isinstance(m, RootValue):
            m = Fraction(m)
            if m <= 0:
                return Fraction(1)
            m = RootValue(m)
        v = m.pow_fraction(self.j)
        if v <= 1:
            return Fraction(1)
        return v.as_fraction() if v.is_rational else v

    def value_log2(self, m) -> float:
        m = float(m)
        if m <= 0:
            return 1.0
        return max(1.0, m ** float(self.j))

    def _inverse_formula(self, y: float) -> float:
        e = y ** (1 / float(self.j))
        return math.inf if e > 1023 else 2.0 ** e

    def inverse_exact(self, y, max_bits: int = DEFAULT_MAX_BITS):
        e = self.log2_inverse_exact(y, max_bits)
        return _exp2_exact(e, max_bits) if e is not None else None

    def log2_inverse_exact(self, y, max_bits: int = DEFAULT_MAX_BITS):
        y = Fraction(y)
        if y < 1:
            raise GaugeDomainError(f"gauge inverse below 1: {y}")
        e = RootValue(y).pow_fraction(1 / self.j)
        return e.as_fraction() if e.is_rational else e

    def log2_inverse_float(self, y) -> float:
        return float(y) ** (1 / float(self.j))

    def log2_inverse_mp(self, y, prec: int):
        with mpmath.workprec(prec):
            return mpmath.power(mpmath.mpf(y),
                                mpmath.mpf(self.j.denominator) / self.j.numerator)

    def unbounded_witness(self, bound: int) -> int:
        k = -(-self.j.denominator // self.j.numerator)
        bits = (bound + 2) ** k
        if bits > WITNESS_MAX_BITS:
            raise ResourceLimitError(
                f"witness for bound {bound} needs {bits} bits")
        return 1 << bits

    def spec(self) -> dict:
        return {"type": "log-power", "j": str(self.j)}


class LogLogGauge(OrliczGauge):
    """phi(x) = max(1, log2(log2(x)))."""

    kind = "log-log"
    strict_from = 4
    superpolynomial_inverse = True

    def value(self, x) -> float:
        _check_positive(x)
        if x <= 2:
            return 1.0
        l = _f_log2(x)
        return max(1.0, math.log2(l))

    def value_exact(self, x):
        m = _power_of_two_log(x)
        if m is not None:
            return self.value_log2_exact(m)
        r = _rational_value(x)
        if r is not None and 0 < r <= self.strict_from:
            return Fraction(1)
        return None

    def value_log2_exact(self, m):
        # phi(2**m) = max(1, log2(m)); exact when m is a power of two
        if isinstance(m, RootValue):
            if not m.is_rational:
                return None
            m = m.as_fraction()
        if isinstance(m, Fraction):
            if m.denominator != 1:
                return None
            m = int(m)
        if isinstance(m, int) and m >= 1 and m & (m - 1) == 0:
            return Fraction(max(1, m.bit_length() - 1))
        return None

    def value_log2(self, m) -> float:
        m = float(m)
        return max(1.0, math.log2(m)) if m > 1 else 1.0

    def _inverse_formula(self, y: float) -> float:
        e = 2.0 ** y
        return math.inf if e > 1023 else 2.0 ** e

    def inverse_exact(self, y, max_bits: int = DEFAULT_MAX_BITS):
        e = self.log2_inverse_exact(y, max_bits)
        return _exp2_exact(e, max_bits) if e is not None else None

    def log2_inverse_exact(self, y, max_bits: int = DEFAULT_MAX_BITS):
        y = Fraction(y)
        if y < 1:
            raise GaugeDomainError(f"gauge inverse below 1: {y}")
        return _exp2_exact(y, max_bits)

    def log2_inverse_float(self, y) -> float:
        e = float(y)
        return math.inf if e > 1023 else 2.0 ** e

    def log2_inverse_mp(self, y, prec: int):
        with mpmath.workprec(prec):
            return mpmath.power(2, mpmath.mpf(y))

    def unbounded_witness(self, bound: int) -> int:
        bits = 1 << (bound + 2)
        if bits > WITNESS_MAX_BITS:
            raise ResourceLimitError(
                f"witness for bound {bound} needs {bits} bits")
        return 1 << bits

    def spec(self) -> dict:
        return {"type": "log-log"}


class LogChainGauge(OrliczGauge):
    """Iterated-log chain: count base-2 logs down into [1, 2), keep the rest.

    On [1, 2) the value is 1 + log2(x); each further tower level adds 1.
    Continuous and strictly increasing on all of [1, inf), but grows
    slower than every fixed iterate of log.
    """

    kind = "log-chain"
    strict_from = 1
    superpolynomial_inverse = True

    def value(self, x) -> float:
        _check_positive(x)
        if isinstance(x, int):
            if x <= 1:
                return 1.0
            t, depth = _f_log2(x), 1   # ints are >= 2 here: first log safe
        else:
            x = float(x)
            if x <= 1:
                return 1.0
            t, depth = x, 0
        while t >= 2:
            t = math.log2(t)
            depth += 1
        return depth + 1 + math.log2(t)

    def value_exact(self, x):
        m = _power_of_two_log(x)
        if m is not None:
            return self.value_log2_exact(m)
        r = _rational_value(x)
        if r is not None and 0 < r <= self.strict_from:
            return Fraction(1)
        return None

    def value_log2_exact(self, m):
        # exact when the exponent telescopes through powers of two
        # down to exactly 1 (m in a tower 1, 2, 4, 16, 65536, ...)
        if isinstance(m, RootValue):
            if not m.is_rational:
                return None
            m = m.as_fraction()
        m = Fraction(m)
        if m <= 0:
            return Fraction(1)
        if m < 1:
            return 1 + m          # x = 2**m sits in (1, 2)
        if m.denominator != 1:
            return None
        t, depth = int(m), 1
        while t >= 2:
            if t & (t - 1):
                return None
            t, depth = t.bit_length() - 1, depth + 1
        return Fraction(depth + 1)

    def value_log2(self, m) -> float:
        m = float(m)
        if m <= 0:
            return 1.0
        if m < 1:
            return 1.0 + m        # x = 2**m sits in (1, 2)
        t, depth = m, 1
        while t >= 2:
            t = math.log2(t)
            depth += 1
        return depth + 1 + math.log2(t)

    def _inverse_formula(self, y: float) -> float:
        depth = math.floor(y)
        t = y - depth
        for _ in range(depth):
            if t > 1023:
                return math.inf
            t = 2.0 ** t
        return t

    def inverse_exact(self, y, max_bits: int = DEFAULT_MAX_BITS):
        if isinstance(y, Fraction) and y.denominator != 1:
            return None
        y = int(y)
        if y < 1:
            raise GaugeDomainError(f"gauge inverse below 1: {y}")
        t = 1
        for _ in range(y - 1):
            if t > max_bits:
                raise ResourceLimitError(
                    f"chain inverse of {y} exceeds {max_bits} bits")
            t = 1 << t
        return t

    def log2_inverse_exact(self, y, max_bits: int = DEFAULT_MAX_BITS):
        if isinstance(y, Fraction) and y.denominator != 1:
            return None
        y = int(y)
        if y < 1:
            raise GaugeDomainError(f"gauge inverse below 1: {y}")
        return 0 if y == 1 else self.inverse_exact(y - 1, max_bits)

    def log2_inverse_float(self, y) -> float:
        x = self._inverse_formula(float(y))
        return math.log2(x) if x != math.inf else math.inf

    def log2_inverse_mp(self, y, prec: int):
        with mpmath.workprec(prec):
            yy = mpmath.mpf(y)
            depth = int(mpmath.floor(yy))
            t = yy - depth
            for _ in range(depth - 1):
                t = mpmath.power(2, t)
            return t

    def unbounded_witness(self, bound: int) -> int:
        return self.inverse_exact(bound + 2, max_bits=WITNESS_MAX_BITS)

    def spec(self) -> dict:
        return {"type": "log-chain"}


class TableGauge(OrliczGauge):
    """Piecewise linear through (x, y) points, extrapolated past the end.

    Points must start at (1, 1) and be strictly increasing in both
    coordinates; the final slope carries the gauge to infinity.
    Inversion is by bisection to 1e-12 relative error.
    """

    kind = "table"
    strict_from = 1

    def __init__(self, points):
        pts = [(Fraction(str(x)) if isinstance(x, float) else Fraction(x),
                Fraction(str(y)) if isinstance(y, float) else Fraction(y))
               for x, y in points]
        if not pts or pts[0] != (1, 1):
            raise ConfigError("table gauge must start at (1, 1)")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x1 <= x0 or y1 <= y0:
                raise ConfigError("table gauge points must strictly increase")
        if len(pts) < 2:
            raise ConfigError("table gauge needs at least two points")
        self.points = pts
        self._xs = [float(x) for x, _ in pts]

    def value(self, x) -> float:
        _check_positive(x)
        x = float(x)
        if x <= 1:
            return 1.0
        i = bisect_right(self._xs, x) - 1
        i = min(i, len(self.points) - 2)
        (x0, y0), (x1, y1) = self.points[i], self.points[i + 1]
        slope = (y1 - y0) / (x1 - x0)
        return float(y0) + float(slope) * (x - float(x0))

    def _inverse_formula(self, y: float) -> float:
        lo, hi = 1.0, 2.0
        while self.value(hi) < y:
            lo, hi = hi, hi * 2
        for _ in range(200):
            mid = (lo + hi) / 2
            if self.value(mid) < y:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-12 * hi:
                break
        return (lo + hi) / 2

    def log2_inverse_float(self, y) -> float:
        return math.log2(self._inverse_formula(float(y)))

    def log2_inverse_mp(self, y, prec: int):
        return mpmath.mpf(self.log2_inverse_float(y))

    def unbounded_witness(self, bound: int) -> int:
        (x0, y0), (x1, y1) = self.points[-2], self.points[-1]
        slope = (y1 - y0) / (x1 - x0)
        x = x1 + (bound + 1 - y1) / slope + 1
        return max(2, math.ceil(x))

    def spec(self) -> dict:
        return {"type": "table",
                "points": [[str(x), str(y)] for x, y in self.points]}


class UnitGauge(OrliczGauge):
    """phi == 1.  Bounded, hence not a usable gauge; failure-path prop."""

    kind = "unit"
    strict_from = math.inf

    def value(self, x) -> float:
        _check_positive(x)
        return 1.0

    def value_exact(self, x):
        _check_positive(x)
        return Fraction(1)

    def value_log2_exact(self, m):
        return Fraction(1)

    def value_log2(self, m) -> float:
        return 1.0

    def inverse(self, y: float) -> float:
        if y == 1:
            return 1.0
        raise GaugeDomainError("unit gauge has no inverse above 1")

    def inverse_exact(self, y, max_bits: int = DEFAULT_MAX_BITS):
        if y == 1:
            return 1
        raise GaugeDomainError("unit gauge has no inverse above 1")

    def log2_inverse_exact(self, y, max_bits: int = DEFAULT_MAX_BITS):
        if y == 1:
            return 0
        raise GaugeDomainError("unit gauge has no inverse above 1")

    def unbounded_witness(self, bound: int) -> int:
        raise GaugeGrowthError("unit gauge is bounded")

    def spec(self) -> dict:
        return {"type": "unit"}


# ---------------------------------------------------------------------------
# config grammar
# ---------------------------------------------------------------------------

GAUGE_KINDS = ("power", "log-power", "log-log", "log-chain", "table", "unit")


def _as_fraction(v):
    # JSON floats like 0.5 come through their decimal repr to stay exact
    if isinstance(v, float):
        return Fraction(str(v))
    return Fraction(v)


def gauge_from_spec(spec) -> OrliczGauge:
    """Build a gauge from its config dict, e.g. {"type":"power","a":0.5}."""
    if isinstance(spec, OrliczGauge):
        return spec
    if not isinstance(spec, dict) or "type" not in spec:
        raise ConfigError(f"gauge spec must be a dict with a 'type': {spec!r}")
    kind = spec["type"]
    try:
        if kind == "power":
            return PowerGauge(_as_fraction(spec["a"]))
        if kind == "log-power":
            return LogPowerGauge(_as_fraction(spec["j"]))
        if kind == "log-log":
            return LogLogGauge()
        if kind == "log-chain":
            return LogChainGauge()
        if kind == "table":
            return TableGauge(spec["points"])
        if kind == "unit":
            return UnitGauge()
    except KeyError as e:
        raise ConfigError(f"gauge spec {kind!r} missing field {e}") from None
    raise ConfigError(f"unknown gauge type {kind!r} (one of {GAUGE_KINDS})")


# ---------------------------------------------------------------------------
# Young functionals
# ---------------------------------------------------------------------------


class YoungFunctional:
    """Composite integrand Phi applied to |values|; Phi(0) = 0 throughout."""

    form = "abstract"

    def __call__(self, v) -> float:
        raise NotImplementedError

    def exact(self, v):
        """Phi(|v|) as Fraction/RootValue where representable, else None."""
        return None


class IdentityYoung(YoungFunctional):
    """Phi(x) = x; the plain L1 integrand."""

    form = "identity"

    def __call__(self, v) -> float:
        return abs(float(v))

    def exact(self, v):
        if isinstance(v, RootValue):
            return v
        if isinstance(v, (int, Fraction)):
            return Fraction(abs(v))
        return None


class ProductYoung(YoungFunctional):
    """Phi(x) = x * phi(x)."""

    form = "x*phi"

    def __init__(self, gauge: OrliczGauge):
        self.gauge = gauge

    def __call__(self, v) -> float:
        v = abs(float(v))
        return 0.0 if v == 0 else v * self.gauge.value(v)

    def exact(self, v):
        if isinstance(v, RootValue):
            ph = self.gauge.value_exact(v)
            return v * ph if ph is not None else None
        if not isinstance(v, (int, Fraction)):
            return None
        v = Fraction(abs(v))
        if v == 0:
            return Fraction(0)
        if v <= 1:
            return v
        ph = self.gauge.value_exact(v)
        if ph is None:
            return None
        out = RootValue(v) * ph
        return out.as_fraction() if out.is_rational else out


class QuotientYoung(YoungFunctional):
    """Phi(x) = x**q / phi(x), for q with x**(q-1)/phi(x) eventually rising."""

    form = "x^q/phi"

    def __init__(self, gauge: OrliczGauge, q):
        self.gauge = gauge
        self.q = Fraction(q)
        if self.q < 1:
            raise ConfigError(f"quotient functional needs q >= 1, got {q}")
        self.growth_threshold = _quotient_growth_threshold(gauge, self.q)

    def __call__(self, v) -> float:
        v = abs(float(v))
        return 0.0 if v == 0 else v ** float(self.q) / self.gauge.value(v)

    def exact(self, v):
        if isinstance(v, RootValue):
            ph = self.gauge.value_exact(v)
            return v.pow_fraction(self.q) / ph if ph is not None else None
        if not isinstance(v, (int, Fraction)):
            return None
        v = Fraction(abs(v))
        if v == 0:
            return Fraction(0)
        ph = Fraction(1) if v <= 1 else self.gauge.value_exact(v)
        if ph is None:
            return None
        out = RootValue(v).pow_fraction(self.q) / ph
        return out.as_fraction() if out.is_rational else out


def _quotient_growth_threshold(gauge: OrliczGauge, q: Fraction) -> float:
    """Sampled check that x**(q-1)/phi(x) is eventually increasing.

    Returns the sample point past which the ratio rose monotonically;
    raises if the ratio was still falling at the end of the grid.
    """
    e = float(q - 1)
    xs = [2.0 ** (k / 4) for k in range(0, 121)]  # [1, 2^30]
    ratios = [x ** e / gauge.value(x) for x in xs]
    last_drop = 0
    for i in range(1, len(ratios)):
        if ratios[i] < ratios[i - 1]:
            last_drop = i
    if last_drop >= len(ratios) - 1:
        raise GaugeGrowthError(
            f"x**(q-1)/phi(x) still falling at x={xs[-1]:.3g} "
            f"for q={q}, gauge {gauge.kind}")
    return xs[last_drop]


# ---------------------------------------------------------------------------
# modular integral
# ---------------------------------------------------------------------------


def orlicz_integral(functional: YoungFunctional, f):
    """Integral of Phi(|f|) over [0, 1) for a step function f.

    Returns an exact Fraction when every piece contributes a rational
    value under ``functional.exact``; falls back to floats otherwise.
    """
    pieces = [(ln, v) for ln, v in f.pieces() if v != 0]
    exacts = [functional.exact(v) for _, v in pieces]
    if all(e is not None and (isinstance(e, Fraction) or e.is_rational)
           for e in exacts):
        total = Fraction(0)
        for (ln, _), e in zip(pieces, exacts):
            if isinstance(e, RootValue):
                e = e.as_fraction()
            total += Fraction(ln) * e
        return total
    return math.fsum(float(ln) * functional(v) for ln, v in pieces)


# ---------------------------------------------------------------------------
# sampled growth comparisons (declared attributes, not theorems)
# ---------------------------------------------------------------------------


def dominated_by_power(gauge: OrliczGauge, q, hi: float = 1e9,
                       samples: int = 60) -> bool:
    """Sampled: phi(x)/x**q ends up falling monotonically on a log grid.

    The ratio may rise at small x (log powers do); it must fall strictly
    over the back half of the grid and end below where it started.
    """
    e = float(Fraction(q))
    lo = max(2.0, gauge.strict_from if gauge.strict_from != math.inf else 2.0)
    xs = [lo * (hi / lo) ** (k / (samples - 1)) for k in range(samples)]
    ratios = [gauge.value(x) / x ** e for x in xs]
    half = len(ratios) // 2
    tail = ratios[half:]
    return all(b < a for a, b in zip(tail, tail[1:])) \
        and ratios[-1] < ratios[0]


def dominated_by_log_square(gauge: OrliczGauge, hi: float = 1e9,
                            samples: int = 60) -> bool:
    """Sampled: phi(x) <= log2(x)**2 from the gauge's strict region on."""
    lo = max(4.0, float(gauge.strict_from)) if gauge.strict_from != math.inf \
        else 4.0
    xs = [lo * (hi / lo) ** (k / (samples - 1)) for k in range(samples)]
    return all(gauge.value(x) <= math.log2(x) ** 2 + 1e-12 for x in xs)
