"""Ergodic averages along sequence prefixes and the sweep-out witness.

Two model systems are enough to exercise every finite inequality in
the package: the shift on the integers, paired with lattice functions,
and one irrational circle rotation, paired with step functions.  An
average normalizes by the element count of a prefix, by default the
prefix being summed; passing a different sequence as the normalizer
divides a perturbed sum by the unperturbed count instead, which is the
convention the witness bounds are stated in.

The witness computation never enumerates sequence elements.  Each
interval contributes a vector of residue-class counts at its doubled
endpoint, and the per-shift maxima come straight from those vectors,
so plans whose endpoints have thousands of digits stay cheap.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import EmptyPrefixError, PreconditionError
from .exact import RootValue

_RATIONAL = (int, Fraction)

# -- model dynamical systems ---------------------------------------------

#: rotation angle, a 32-digit rational pin of sqrt(2) - 1; orbits are
#: exact in that model, which is all the finite checks need
ROTATION_ALPHA = Fraction(isqrt(2 * 10 ** 64), 10 ** 32) - 1


class ShiftSystem:
    """The integers shifting by one; points are integers."""

    kind = "integer-shift"

    def orbit_value(self, f, x: int, m: int):
        return f.value_at(x + m)

    def spec(self) -> dict:
        return {"kind": self.kind}


class RotationSystem:
    """Rotation of [0, 1) by a fixed angle; points are fractions."""

    kind = "circle-rotation"

    def __init__(self, alpha=ROTATION_ALPHA):
        alpha = Fraction(alpha)
        if not 0 < alpha < 1:
            raise PreconditionError(f"rotation angle must sit in (0, 1), got {alpha}")
        self.alpha = alpha

    def orbit_value(self, f, x, m: int):
        return f.value_at((Fraction(x) + m * self.alpha) % 1)

    def spec(self) -> dict:
        return {"kind": self.kind, "alpha": str(self.alpha)}


# -- exact-friendly summation ----------------------------------------------


def _sum_weighted(pairs):
    """Sum of value * multiplicity with exactness tracking.

    Mirrors the density module's accumulator but keeps signs.  Exact
    while any irrational mass uses a single distinct root value with no
    rational mass beside it; anything messier falls back to float.
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
            if v != 0:
                rational += Fraction(v) * mult
        elif isinstance(v, RootValue):
            if root is None or root == v:
                root = v
                root_mult += mult
            else:
                exact = False
                loose += float(v) * mult
        else:
            exact = False
            loose += float(v) * mult
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


def _divide(total, denom: int):
    if isinstance(total, _RATIONAL):
        return Fraction(total) / denom
    return total / denom


def _larger(candidate, incumbent) -> bool:
    # RootValue refuses comparisons against values <= 0
    try:
        return candidate > incumbent
    except ValueError:
        return float(candidate) > float(incumbent)


# -- averages over prefixes --------------------------------------------------


def average_along(sequence, system, f, x, cutoff: int, normalizer=None):
    """Average f over the orbit points T^m x for m in the prefix [1, cutoff).

    The divisor is the normalizer's element count below the cutoff when
    one is given, the summed sequence's own count otherwise.  Shift
    averages of periodic lattice functions run on residue-class counts
    and stay exact; everything else enumerates the prefix.
    """
    if cutoff < 1:
        raise PreconditionError(f"cutoff must be >= 1, got {cutoff}")
    hits = sequence.count(cutoff)
    if hits == 0:
        raise EmptyPrefixError(f"no sequence elements below {cutoff}")
    counter = sequence if normalizer is None else normalizer
    denom = counter.count(cutoff)
    if denom == 0:
        raise EmptyPrefixError(f"normalizing prefix is empty below {cutoff}")

    if isinstance(system, ShiftSystem) and getattr(f, "is_periodic", False):
        vec = sequence.residue_counts(cutoff, f.period)
        total, _ = _sum_weighted(
            (f.value_at(x + c), vec[c]) for c in range(f.period) if vec[c])
        return _divide(total, denom)
    if isinstance(system, ShiftSystem):
        # finite support: walk the point masses instead of the prefix
        total, _ = _sum_weighted(
            (v, 1) for p, v in f.values.items()
            if 1 <= p - x < cutoff and (p - x) in sequence)
        return _divide(total, denom)

    total = Fraction(0)
    for m in sequence.elements_in(1, cutoff):
        total += system.orbit_value(f, x, m)
    return _divide(total, denom)


def max_average(sequence, system, f, x, cutoffs, normalizer=None):
    """Max of average_along over an ascending nonempty set of cutoffs."""
    cuts = list(cutoffs)
    if not cuts:
        raise PreconditionError("cutoff set must be nonempty")
    if any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise PreconditionError("cutoff set must be strictly ascending")
    best = None
    for cutoff in cuts:
        value = average_along(sequence, system, f, x, cutoff,
                              normalizer=normalizer)
        if best is None or _larger(value, best):
            best = value
    return best


# -- the sweep-out witness ----------------------------------------------------


@dataclass(frozen=True)
class SweepoutWitness:
    """Per-shift maximal averages of the stage witness function.

    per_shift_max[t] is the best average any interval of the block
    offers to shifts congruent to t, already scaled by the witness
    value; achieved is the worst of those, and the block passes when
    even the worst shift clears the bound.
    """

    u: int
    modulus: int
    witness: object
    bound: object
    per_shift_max: list
    per_k_floor: list
    achieved: object
    exact: bool
    ok: bool


def _block_intervals(plan, u: int):
    schedule = plan.schedule
    lo, hi = schedule.stage_bounds(u)
    chosen = [ch for ch in plan.intervals if ch.u == u]
    if not chosen:
        raise PreconditionError(f"plan does not cover block u={u}")
    if len(chosen) != hi - lo:
        raise PreconditionError(
            f"plan covers block u={u} only partially "
            f"({len(chosen)} of {hi - lo} intervals)")
    return chosen


def sweepout_witness(plan, u: int) -> SweepoutWitness:
    """Worst-shift maximal average of the block-u witness function.

    The witness function is the block's witness value on the zero
    class mod modulus(u).  For a shift t the only orbit points that
    score are the perturbed elements congruent to -t, so each interval
    k in the block contributes its class counts at 2 n_k divided by
    the perturbed count there.  Requires every interval of the block
    to satisfy the size condition (perturbed count at the doubled
    endpoint at most four times the base count at the endpoint).
    """
    chosen = _block_intervals(plan, u)
    schedule = plan.schedule
    pert = plan.perturbed()
    base = plan.sequence
    modulus = schedule.modulus(u)

    denoms = []
    for ch in chosen:
        d = pert.count(2 * ch.n)
        if d > 4 * base.count(ch.n):
            raise PreconditionError(
                f"size condition fails at k={ch.k}: perturbed count {d} "
                f"exceeds four times the base count {base.count(ch.n)}")
        denoms.append(d)

    best = [Fraction(0)] * modulus
    for ch, denom in zip(chosen, denoms):
        vec = pert.residue_counts(2 * ch.n, modulus)
        for c in range(modulus):
            if vec[c]:
                ratio = Fraction(vec[c], denom)
                if ratio > best[c]:
                    best[c] = ratio

    witness = schedule.witness_value(u)
    bound = schedule.sweepout_bound(u)
    exact = schedule.exact_at(u)
    if not exact:
        witness = float(witness)
        bound = float(bound)

    def scaled(ratio):
        if ratio == 0:
            return Fraction(0) if exact else 0.0
        return witness * ratio

    per_shift = [scaled(best[(-t) % modulus]) for t in range(modulus)]
    floor = min(best)
    achieved = scaled(floor)
    # term-by-term floor: each interval all by itself already clears
    # the bound on its own class, because the insertion count was a
    # ceiling of fraction * count and the denominator is within 4x
    per_k = [scaled(Fraction(ch.insert_count, 4 * ch.count_at_n))
             for ch in chosen]
    ok = floor > 0 and not achieved < bound
    return SweepoutWitness(u=u, modulus=modulus, witness=witness,
                           bound=bound, per_shift_max=per_shift,
                           per_k_floor=per_k, achieved=achieved,
                           exact=exact, ok=ok)


def smallest_qualifying_u(plan):
    """Smallest fully covered block whose intervals all meet the size
    condition, or None when no block qualifies."""
    pert = plan.perturbed()
    base = plan.sequence
    schedule = plan.schedule
    u = 1
    while True:
        lo, hi = schedule.stage_bounds(u)
        if hi > plan.k_max + 1:
            return None
        if all(pert.count(2 * ch.n) <= 4 * base.count(ch.n)
               for ch in plan.intervals[lo:hi]):
            return u
        u += 1
