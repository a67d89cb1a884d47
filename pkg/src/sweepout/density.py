"""Lattice functions on the integers and their mean values.

A stage's inserted progression, viewed as a function on the integers,
is the witness value on one residue class and zero elsewhere.  Pushing
it through the stage's density functional and averaging over a period
must give exactly 1 when nothing was lost to rounding, and can exceed 1
by at most 1/modulus when the modulus was rounded down.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, PreconditionError
from .exact import RootValue

_RATIONAL = (int, Fraction)


def _sum_abs(pairs):
    """Sum of multiplicity * |value| with exactness tracking.

    Exact while the irrational part uses a single distinct value and no
    rational mass sits next to it; anything messier falls back to float.
    Returns (total, exact).
    """
    rational = Fraction(0)
    root = None
    root_mult = 0
    loose = 0.0
    exact = True
    for v, mult in pairs:
        if mult == 0:
            continue
        if isinstance(v, RootValue) and v.is_rational:
            v = v.as_fraction()
        if isinstance(v, _RATIONAL):
            rational += Fraction(abs(v)) * mult
        elif isinstance(v, RootValue):
            if root is None or root == v:
                root = v
                root_mult += mult
            else:
                exact = False
                loose += float(v) * mult
        else:
            exact = False
            loose += abs(float(v)) * mult
    if exact:
        if root is None:
            return rational, True
        if rational == 0:
            return root * root_mult, True
        exact = False
    total = float(rational) + loose
    if root is not None:
        total += float(root) * root_mult
    return total, False


def _congruent_count(c: int, period: int, n: int) -> int:
    """Integers x in [-n, n] with x congruent to c mod period."""
    return (n - c) // period + (n + c) // period + 1


class LatticeFunction:
    """Values on the integers, periodic or finitely supported.

    Periodic functions carry one value per occupied residue class;
    finitely supported ones carry one value per point.  Zero values are
    dropped at construction either way.
    """

    def __init__(self, values: dict, period=None):
        if period is not None and period < 1:
            raise ConfigError(f"period must be >= 1, got {period}")
        self.period = period
        cleaned = {}
        for key, v in values.items():
            if isinstance(v, _RATIONAL) and v == 0:
                continue
            if isinstance(v, float) and v == 0.0:
                continue
            cleaned[key % period if period else key] = v
        self.values = cleaned

    @classmethod
    def periodic(cls, period: int, values: dict) -> "LatticeFunction":
        return cls(values, period=period)

    @classmethod
    def single_class(cls, period: int, residue: int,
                     value) -> "LatticeFunction":
        return cls({residue: value}, period=period)

    @classmethod
    def finite(cls, points: dict) -> "LatticeFunction":
        return cls(points, period=None)

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    def value_at(self, x: int):
        key = x % self.period if self.is_periodic else x
        return self.values.get(key, 0)

    def support_size(self) -> int:
        """Occupied classes per period, or occupied points."""
        return len(self.values)

    # -- averaging ----------------------------------------------------------

    def mean_over_period(self):
        """Mean of |values| over one period as (value, exact)."""
        if not self.is_periodic:
            raise PreconditionError(
                "finitely supported functions average to zero; "
                "use finite_density for a window value")
        total, exact = _sum_abs((v, 1) for v in self.values.values())
        return total / self.period, exact

    def exact_density(self):
        """Mean of |values| over one period; the natural density of the
        mass.  Finitely supported functions have none worth reporting."""
        value, exact = self.mean_over_period()
        if not exact:
            raise PreconditionError(
                "period values do not admit an exact sum")
        return value

    def finite_density(self, n: int):
        """Mean of |values| over the window [-n, n], exact when the
        values allow it."""
        if n < 0:
            raise PreconditionError(f"window needs n >= 0, got {n}")
        if self.is_periodic:
            pairs = ((v, _congruent_count(c, self.period, n))
                     for c, v in self.values.items())
        else:
            pairs = ((v, 1) for x, v in self.values.items()
                     if -n <= x <= n)
        total, _exact = _sum_abs(pairs)
        return total / (2 * n + 1)

    # -- composition ---------------------------------------------------------

    def apply(self, functional) -> "LatticeFunction":
        """Push every value through a Young-type functional, exactly
        where the functional can, in floats where it cannot."""
        out = {}
        for key, v in self.values.items():
            w = functional.exact(v)
            if w is None:
                w = functional(float(v))
            out[key] = w
        return LatticeFunction(out, period=self.period)

    def __repr__(self):
        shape = (f"mod {self.period}" if self.is_periodic
                 else f"{len(self.values)} points")
        return f"<lattice function {shape}, {len(self.values)} values>"


# ---------------------------------------------------------------------------
# witness density
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessDensity:
    """Mean of the Young-composed stage witness over one period."""
    u: int
    modulus: int
    value: object        # Fraction, RootValue, or float
    exact: bool

    @property
    def is_unit(self) -> bool:
        return self.exact and self.value == 1

    @property
    def ok(self) -> bool:
        """1 <= value < 1 + 1/modulus, the floor-rounding envelope."""
        lo, hi = 1, Fraction(self.modulus + 1, self.modulus)
        if self.exact:
            return lo <= self.value < hi
        return lo - 1e-9 <= self.value < hi + 1e-9


def stage_lattice_function(schedule, u: int,
                           residue: int = 0) -> LatticeFunction:
    """The stage witness on one residue class mod the stage modulus."""
    return LatticeFunction.single_class(
        schedule.modulus(u), residue, schedule.witness_value(u))


def witness_density(schedule, u: int) -> WitnessDensity:
    """Compose the stage witness with the stage's density functional
    and average over a period."""
    fn = stage_lattice_function(schedule, u)
    composed = fn.apply(schedule.density_functional)
    value, exact = composed.mean_over_period()
    return WitnessDensity(u, schedule.modulus(u), value, exact)


def density_of_shift_set(plan, u: int) -> Fraction:
    """Fraction of residue classes whose sweepout maximum clears the
    stage bound; 1 means every shift is reached."""
    from .averages import sweepout_witness
    wit = sweepout_witness(plan, u)
    bound = plan.schedule.sweepout_bound(u)
    good = sum(1 for mx in wit.per_shift_max if not mx < bound)
    return Fraction(good, len(wit.per_shift_max))
