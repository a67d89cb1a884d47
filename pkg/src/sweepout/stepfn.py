"""Piecewise constant functions on [0, 1) with exact Fraction breakpoints.

Measures and integrals are exact rational arithmetic (float values are
converted through Fraction, which is exact for binary floats); only
p-th powers for non-integer p go through floating point.
"""

from bisect import bisect_right
from fractions import Fraction

from .errors import PreconditionError

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _merge_breaks(a, b):
    """Sorted union of two sorted strictly increasing lists."""
    if a is b or a == b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x == y:
            out.append(x)
            i += 1
            j += 1
        elif x < y:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def _build(breaks, values) -> "StepFunction":
    # internal fast path: partition already known valid
    f = StepFunction.__new__(StepFunction)
    f.breaks = breaks
    f.values = values
    f._fbreaks = None
    f._fpieces = None
    return f


class StepFunction:
    """breaks[0]=0 < breaks[1] < ... < breaks[m]=1; values[i] on
    [breaks[i], breaks[i+1])."""

    __slots__ = ("breaks", "values", "_fbreaks", "_fpieces")

    def __init__(self, breaks, values):
        breaks = [_frac(b) for b in breaks]
        if len(breaks) != len(values) + 1:
            raise PreconditionError("need len(breaks) == len(values) + 1")
        if breaks[0] != 0 or breaks[-1] != 1:
            raise PreconditionError("breaks must span [0, 1]")
        if any(b >= c for b, c in zip(breaks, breaks[1:])):
            raise PreconditionError("breaks must strictly increase")
        self.breaks = breaks
        self.values = list(values)
        self._fbreaks = None
        self._fpieces = None

    # -- construction --------------------------------------------------

    @classmethod
    def constant(cls, v) -> "StepFunction":
        return cls([ZERO, ONE], [v])

    @classmethod
    def indicator(cls, lo, hi, value=1) -> "StepFunction":
        lo, hi = _frac(lo), _frac(hi)
        if not (0 <= lo < hi <= 1):
            raise PreconditionError(f"bad indicator interval [{lo}, {hi})")
        breaks = [ZERO, lo, hi, ONE]
        values = [0, value, 0]
        if lo == 0:
            breaks, values = breaks[1:], values[1:]
        if hi == 1:
            breaks, values = breaks[:-1], values[:-1]
        return cls(breaks, values)

    @classmethod
    def from_pairs(cls, pairs) -> "StepFunction":
        """pairs: [(length, value)] with lengths summing to 1."""
        breaks, values = [ZERO], []
        for length, v in pairs:
            breaks.append(breaks[-1] + _frac(length))
            values.append(v)
        if breaks[-1] != 1:
            raise PreconditionError(f"piece lengths sum to {breaks[-1]}, not 1")
        return cls(breaks, values)

    # -- queries ---------------------------------------------------------

    def pieces(self):
        for i, v in enumerate(self.values):
            yield self.breaks[i + 1] - self.breaks[i], v

    def value_at(self, x):
        if isinstance(x, float):
            if not 0.0 <= x < 1.0:
                raise PreconditionError(f"point {x} outside [0, 1)")
            if self._fbreaks is None:
                self._fbreaks = [float(b) for b in self.breaks]
            i = bisect_right(self._fbreaks, x, 1, len(self._fbreaks) - 1) - 1
        else:
            x = _frac(x)
            if not 0 <= x < 1:
                raise PreconditionError(f"point {x} outside [0, 1)")
            i = bisect_right(self.breaks, x, 1, len(self.breaks) - 1) - 1
        return self.values[i]

    def piece_count(self) -> int:
        return len(self.values)

    # -- refinement and pointwise algebra ----------------------------------

    def _values_on(self, merged):
        # merged must contain every break of self
        values = []
        j = 0
        breaks, vals = self.breaks, self.values
        for b in merged[:-1]:
            while breaks[j + 1] <= b:
                j += 1
            values.append(vals[j])
        return values

    def refine_to(self, breaks) -> "StepFunction":
        """Same function on a finer partition containing ``breaks``."""
        nb = [_frac(b) for b in breaks]
        if any(x >= y for x, y in zip(nb, nb[1:])):
            nb = sorted(set(nb))
        if nb and (nb[0] < 0 or nb[-1] > 1):
            raise PreconditionError("refinement points outside [0, 1]")
        merged = _merge_breaks(self.breaks, nb)
        if len(merged) == len(self.breaks):
            return self
        return _build(merged, self._values_on(merged))

    def zip_with(self, other: "StepFunction", fn) -> "StepFunction":
        if self.breaks is other.breaks or self.breaks == other.breaks:
            return _build(self.breaks,
                          [fn(x, y)
                           for x, y in zip(self.values, other.values)])
        merged = _merge_breaks(self.breaks, other.breaks)
        return _build(merged, [fn(x, y)
                               for x, y in zip(self._values_on(merged),
                                               other._values_on(merged))])

    def map(self, fn) -> "StepFunction":
        return _build(self.breaks, [fn(v) for v in self.values])

    def __add__(self, other):
        if isinstance(other, StepFunction):
            return self.zip_with(other, lambda x, y: x + y)
        return self.map(lambda v: v + other)

    def __sub__(self, other):
        if isinstance(other, StepFunction):
            return self.zip_with(other, lambda x, y: x - y)
        return self.map(lambda v: v - other)

    def __mul__(self, c):
        return self.map(lambda v: v * c)

    __rmul__ = __mul__

    def __abs__(self):
        return self.map(abs)

    def positive_part(self) -> "StepFunction":
        return self.map(lambda v: v if v > 0 else 0)

    def negative_part(self) -> "StepFunction":
        return self.map(lambda v: -v if v < 0 else 0)

    def simplify(self) -> "StepFunction":
        """Merge adjacent pieces with equal values."""
        breaks, values = [ZERO], []
        for length, v in self.pieces():
            if values and v == values[-1]:
                breaks[-1] += length
            else:
                breaks.append(breaks[-1] + length)
                values.append(v)
        return _build(breaks, values)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        a, b = self.simplify(), other.simplify()
        return a.breaks == b.breaks and a.values == b.values

    __hash__ = None

    # -- measures, norms ---------------------------------------------------

    def measure_where(self, pred) -> Fraction:
        return sum((ln for ln, v in self.pieces() if pred(v)), ZERO)

    def integral(self) -> Fraction:
        """Signed integral, exact (floats converted exactly)."""
        return sum((ln * _frac(v) for ln, v in self.pieces()), ZERO)

    def integral_over(self, lo, hi) -> Fraction:
        """Signed integral over [lo, hi), exact."""
        lo, hi = _frac(lo), _frac(hi)
        total = ZERO
        for i, v in enumerate(self.values):
            a, b = max(self.breaks[i], lo), min(self.breaks[i + 1], hi)
            if a < b:
                total += (b - a) * _frac(v)
        return total

    def l1_norm(self) -> Fraction:
        return sum((ln * abs(_frac(v)) for ln, v in self.pieces()), ZERO)

    def lp_modular(self, p: float) -> float:
        """Integral of |f|**p (float powering, exact measures)."""
        if self._fpieces is None:
            self._fpieces = [(float(ln), abs(float(v)))
                             for ln, v in self.pieces()]
        return float(sum(ln * v ** p for ln, v in self._fpieces))

    def lp_norm(self, p: float) -> float:
        return self.lp_modular(p) ** (1.0 / p)

    def sup_norm(self) -> float:
        return max(abs(float(v)) for v in self.values)

    def __repr__(self):
        ps = ", ".join(f"{float(ln):.4g}:{v}" for ln, v in self.pieces())
        return f"<StepFunction {ps}>"
