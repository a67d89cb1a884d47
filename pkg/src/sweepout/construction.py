"""Interval selection and the perturbed sequence it produces.

Each interval k picks a left endpoint n so that [n, 2n) ends exactly at
a density record of the base sequence, then inserts a short arithmetic
progression (step = the stage modulus, one residue class per interval).
Four exact constraints gate every choice:

    disjointness       n > 2 * previous n
    capacity           insert_count * modulus < n     (strengthened: the
                       whole progression then fits inside [n, 2n))
    three-fold growth  count(2n) <= 3 * count(n)
    predecessor sum    fraction * count(n) > sum of earlier count(n_j)

All bookkeeping is closed form; nothing enumerates the base sequence,
so plans stay exact when the endpoints have thousands of bits.
"""

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ConfigError, PreconditionError, SearchBudgetExhausted
from .exact import RootValue
from .sequences import BaseSequence, sequence_from_spec
from .schedules import PerturbationSchedule, schedule_from_spec

CANDIDATE_TRIES = 4096        # record candidates examined per interval
ELEMENTS_INLINE_CAP = 10000   # larger progressions serialize as triples


def _as_root(x) -> RootValue:
    if isinstance(x, RootValue):
        return x
    if isinstance(x, float):
        return RootValue(Fraction(x))
    return RootValue(x)


# ---------------------------------------------------------------------------
# arithmetic progression counting
# ---------------------------------------------------------------------------


def ap_count_in(first: int, step: int, count: int, lo: int, hi: int) -> int:
    """Members of {first + i*step : 0 <= i < count} inside [lo, hi)."""
    if hi <= lo or count <= 0:
        return 0
    i0 = 0 if lo <= first else -(-(lo - first) // step)
    i1 = -(-(hi - first) // step)          # smallest i with member >= hi
    return max(0, min(count, i1) - min(count, max(i0, 0)))


def ap_count_congruent(first: int, step: int, count: int,
                       r: int, m: int) -> int:
    """Members of the progression congruent to r mod m, exact."""
    if count <= 0:
        return 0
    g = gcd(step, m)
    if (r - first) % g:
        return 0
    mm = m // g
    i0 = ((r - first) // g * pow(step // g, -1, mm)) % mm if mm > 1 else 0
    if i0 >= count:
        return 0
    return (count - 1 - i0) // mm + 1


def ap_residue_spread(first: int, step: int, count: int, m: int) -> list:
    """spread[c] = members congruent to c mod m, for every class c."""
    out = [0] * m
    g = gcd(step, m)
    period = m // g
    full, rem = divmod(count, period)
    c = first % m
    for i in range(period):
        out[c] += full + (1 if i < rem else 0)
        c = (c + step) % m
    return out


# ---------------------------------------------------------------------------
# plan records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntervalChoice:
    """One chosen interval [n, 2n) and its inserted progression."""
    k: int
    u: int
    n: int
    residue: int         # k mod modulus: the class the progression fills
    modulus: int
    first: int           # smallest progression member, inside [n, n+modulus)
    insert_count: int
    count_at_n: int      # base elements below n
    overlap: int         # progression members already in the base sequence

    @property
    def last(self) -> int:
        return self.first + (self.insert_count - 1) * self.modulus

    @property
    def added(self) -> int:
        """Genuinely new elements this interval contributes."""
        return self.insert_count - self.overlap

    def elements(self):
        return range(self.first, self.last + 1, self.modulus)


@dataclass(frozen=True)
class CheckpointRow:
    """The perturbation ratio measured just before the next interval."""
    k: int
    u: int
    upto: int            # counts are over [1, upto)
    delta: int           # inserted-and-new elements below upto
    count: int           # base elements below upto
    ratio: Fraction
    tail: bool = False   # the closing row at 2 * n_last


@dataclass(frozen=True)
class ConstraintCheck:
    k: int
    name: str
    ok: bool
    detail: str


# ---------------------------------------------------------------------------
# selection
# ---------------------------------------------------------------------------


def _min_count(prev_sum: int, fraction: RootValue) -> int:
    """Smallest count with fraction * count > prev_sum."""
    if prev_sum == 0:
        return 1
    c = (_as_root(prev_sum) / fraction).floor() + 1
    return c


def select_interval(sequence: BaseSequence, k: int, u: int, modulus: int,
                    fraction, prev_sum: int, prev_n: int) -> IntervalChoice:
    """Choose the k-th interval against the four constraints.

    The left endpoint is half an even density-record candidate, so the
    interval ends exactly on a record of the counting ratio.
    """
    fraction = _as_root(fraction)
    c_min = _min_count(prev_sum, fraction)
    start = sequence.jump_to_half_count(c_min)
    start_after = max(start - 1, 4 * prev_n)
    reason = "record-supply"      # overwritten by any real rejection;
    parity_only = True            # parity skips alone report as such
    for tries, (m, _r) in enumerate(
            sequence.record_candidates(start_after=start_after)):
        if tries >= CANDIDATE_TRIES:
            break
        if m % 2:
            if parity_only:
                reason = "even-endpoint"
            continue
        n = m // 2
        cn = sequence.count(n)
        if prev_sum > 0 and not fraction * cn > prev_sum:
            reason, parity_only = "predecessor-sum", False
            continue
        insert = (fraction * cn).ceil()
        if not insert * modulus < n:
            reason, parity_only = "capacity", False
            continue
        if sequence.count(2 * n) > 3 * cn:
            reason, parity_only = "three-fold-growth", False
            continue
        residue = k % modulus
        first = n + (residue - n) % modulus
        overlap = sequence.count_congruent_in(
            first, first + (insert - 1) * modulus + 1, residue, modulus)
        return IntervalChoice(k, u, n, residue, modulus, first, insert,
                              cn, overlap)
    raise SearchBudgetExhausted(
        f"no admissible interval for k={k} within {CANDIDATE_TRIES} "
        f"candidates", constraint=reason)


def build_plan(schedule: PerturbationSchedule, sequence: BaseSequence,
               k_max: int) -> "PerturbationPlan":
    if k_max < 0:
        raise PreconditionError(f"k_max must be >= 0, got {k_max}")
    intervals = []
    prev_sum = 0
    prev_n = 0
    for k in range(k_max + 1):
        u = schedule.stage_of(k)
        ch = select_interval(sequence, k, u, schedule.modulus(u),
                             schedule.insertion_fraction(u), prev_sum, prev_n)
        intervals.append(ch)
        prev_sum += ch.count_at_n
        prev_n = ch.n
    return PerturbationPlan(schedule, sequence, intervals)


# ---------------------------------------------------------------------------
# the plan
# ---------------------------------------------------------------------------


class PerturbationPlan:
    """Chosen intervals plus everything derived from them."""

    def __init__(self, schedule, sequence, intervals):
        self.schedule = schedule
        self.sequence = sequence
        self.intervals = list(intervals)
        if not self.intervals:
            raise PreconditionError("a plan needs at least one interval")
        self._n_list = [ch.n for ch in self.intervals]
        # cumulative inserted-and-new elements after each whole interval
        self._cum_added = []
        total = 0
        for ch in self.intervals:
            total += ch.added
            self._cum_added.append(total)

    @property
    def k_max(self) -> int:
        return self.intervals[-1].k

    def interval(self, k: int) -> IntervalChoice:
        return self.intervals[k]

    def stages_covered(self):
        return sorted({ch.u for ch in self.intervals})

    # -- perturbation counting ----------------------------------------------

    def delta_count(self, upto: int) -> int:
        """Inserted-and-new elements in [1, upto), exact."""
        i = bisect_right(self._n_list, upto) - 1
        if i < 0:
            return 0
        total = self._cum_added[i - 1] if i > 0 else 0
        ch = self.intervals[i]
        if upto > ch.last:
            return self._cum_added[i]
        inside = ap_count_in(ch.first, ch.modulus, ch.insert_count, 1, upto)
        if inside == 0:
            return total
        ov = self.sequence.count_congruent_in(
            ch.first, min(ch.last + 1, upto), ch.residue, ch.modulus)
        return total + inside - ov

    def perturbation_ratio(self, upto: int) -> Fraction:
        return Fraction(self.delta_count(upto), self.sequence.count(upto))

    def checkpoints(self) -> list:
        """One row per interval with a successor, plus the tail row."""
        rows = []
        for ch, nxt in zip(self.intervals, self.intervals[1:]):
            upto = nxt.n - 1
            delta = self.delta_count(upto)
            cnt = self.sequence.count(upto)
            rows.append(CheckpointRow(ch.k, ch.u, upto, delta, cnt,
                                      Fraction(delta, cnt)))
        last = self.intervals[-1]
        upto = 2 * last.n
        delta = self.delta_count(upto)
        cnt = self.sequence.count(upto)
        rows.append(CheckpointRow(last.k, last.u, upto, delta, cnt,
                                  Fraction(delta, cnt), tail=True))
        return rows

    def perturbed(self) -> "PerturbedSequence":
        return PerturbedSequence(self.sequence, self)

    # -- constraint re-verification ------------------------------------------

    def constraint_report(self) -> list:
        """Re-check the four constraints per interval, from scratch."""
        out = []
        prev_sum = 0
        prev_n = 0
        for ch in self.intervals:
            frac = _as_root(self.schedule.insertion_fraction(ch.u))
            ok = ch.k == 0 or ch.n > 2 * prev_n
            out.append(ConstraintCheck(
                ch.k, "disjointness", ok, f"{ch.n} > 2*{prev_n}"))
            ok = ch.insert_count * ch.modulus < ch.n
            out.append(ConstraintCheck(
                ch.k, "capacity", ok,
                f"{ch.insert_count}*{ch.modulus} < {ch.n}"))
            c2 = self.sequence.count(2 * ch.n)
            ok = c2 <= 3 * ch.count_at_n
            out.append(ConstraintCheck(
                ch.k, "three-fold-growth", ok,
                f"{c2} <= 3*{ch.count_at_n}"))
            ok = prev_sum == 0 or frac * ch.count_at_n > prev_sum
            out.append(ConstraintCheck(
                ch.k, "predecessor-sum", ok,
                f"fraction*{ch.count_at_n} > {prev_sum}"))
            prev_sum += ch.count_at_n
            prev_n = ch.n
        return out

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        records = []
        for ch in self.intervals:
            rec = {
                "k": ch.k,
                "u": ch.u,
                "n_k": ch.n,
                "residue": ch.residue,
                "insert_count": ch.insert_count,
                "first": ch.first,
                "step": ch.modulus,
                "elements": (list(ch.elements())
                             if ch.insert_count <= ELEMENTS_INLINE_CAP
                             else None),
            }
            records.append(rec)
        return {
            "schedule": self.schedule.spec(),
            "sequence": self.sequence.spec(),
            "k_max": self.k_max,
            "intervals": records,
        }

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def __repr__(self):
        return (f"<plan k_max={self.k_max} over {self.sequence.kind}, "
                f"{self.schedule.variant}>")


def plan_from_dict(data: dict) -> PerturbationPlan:
    """Rebuild a plan from its serialized form, recomputing caches."""
    try:
        schedule = schedule_from_spec(data["schedule"])
        sequence = sequence_from_spec(data["sequence"])
        records = data["intervals"]
    except KeyError as e:
        raise ConfigError(f"plan dict is missing {e}") from None
    intervals = []
    for rec in records:
        n = rec["n_k"]
        first = rec["first"]
        step = rec["step"]
        insert = rec["insert_count"]
        overlap = sequence.count_congruent_in(
            first, first + (insert - 1) * step + 1, rec["residue"], step)
        intervals.append(IntervalChoice(
            rec["k"], rec["u"], n, rec["residue"], step, first, insert,
            sequence.count(n), overlap))
    return PerturbationPlan(schedule, sequence, intervals)


def load_plan(path) -> PerturbationPlan:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ConfigError(f"bad plan file {path}: {e}") from None
    return plan_from_dict(data)


# ---------------------------------------------------------------------------
# the perturbed sequence
# ---------------------------------------------------------------------------


class PerturbedSequence(BaseSequence):
    """Base sequence with the plan's progressions unioned in.

    Counting stays closed form: progressions contribute by the
    progression-counting helpers, their members already present in the
    base sequence are subtracted per interval.
    """

    kind = "perturbed"

    def __init__(self, base: BaseSequence, plan: PerturbationPlan):
        self.base = base
        self.plan = plan

    def count(self, n: int) -> int:
        return self.base.count(n) + self.plan.delta_count(n)

    def elements_in(self, lo: int, hi: int) -> list:
        got = set(self.base.elements_in(lo, hi))
        for ch in self.plan.intervals:
            if ch.first >= hi or ch.last < lo:
                continue
            i0 = 0 if lo <= ch.first else -(-(lo - ch.first) // ch.modulus)
            start = ch.first + i0 * ch.modulus
            got.update(range(start, min(ch.last + 1, hi), ch.modulus))
        return sorted(got)

    def element(self, i: int) -> int:
        raise PreconditionError("perturbed sequences are counted, "
                                "not indexed")

    def count_congruent_in(self, lo: int, hi: int, r: int, m: int) -> int:
        r %= m
        total = self.base.count_congruent_in(lo, hi, r, m)
        for ch in self.plan.intervals:
            if ch.first >= hi or ch.last < lo:
                continue
            a, b = max(lo, ch.first), min(hi, ch.last + 1)
            # progression members in [a, b) congruent to r mod m
            i0 = 0 if a <= ch.first else -(-(a - ch.first) // ch.modulus)
            i1 = min(ch.insert_count, -(-(b - ch.first) // ch.modulus))
            if i1 <= i0:
                continue
            sub_first = ch.first + i0 * ch.modulus
            total += ap_count_congruent(sub_first, ch.modulus, i1 - i0, r, m)
            if ch.overlap:
                if ch.modulus % m == 0:
                    if ch.first % m == r:
                        total -= self._overlap_in(ch, a, b)
                else:
                    total -= sum(1 for s in self._overlap_elements(ch, a, b)
                                 if s % m == r)
        return total

    def residue_counts(self, hi: int, m: int) -> list:
        out = self.base.residue_counts(hi, m)
        for ch in self.plan.intervals:
            if ch.first >= hi:
                continue
            inside = ap_count_in(ch.first, ch.modulus, ch.insert_count, 1, hi)
            if inside == 0:
                continue
            spread = ap_residue_spread(ch.first, ch.modulus, inside, m)
            for c in range(m):
                out[c] += spread[c]
            if ch.overlap:
                if ch.modulus % m == 0:
                    out[ch.first % m] -= self._overlap_in(ch, 1, hi)
                else:
                    for s in self._overlap_elements(ch, 1, hi):
                        out[s % m] -= 1
        return out

    # -- overlap attribution --------------------------------------------------
    #
    # When the query modulus divides the progression step, every overlap
    # element shares one class and the base counter answers in closed
    # form.  Cross-modulus queries must look at individual elements, so
    # they are only honoured while the spanned stretch stays enumerable.

    def _overlap_in(self, ch: IntervalChoice, a: int, b: int) -> int:
        """Overlap elements within [a, b), closed form."""
        a, b = max(a, ch.first), min(b, ch.last + 1)
        if b <= a:
            return 0
        if a == ch.first and b == ch.last + 1:
            return ch.overlap
        return self.base.count_congruent_in(a, b, ch.residue, ch.modulus)

    def _overlap_elements(self, ch: IntervalChoice, lo: int, hi: int) -> list:
        a, b = max(lo, ch.first), min(hi, ch.last + 1)
        if b <= a:
            return []
        spanned = self.base.count(b) - self.base.count(max(a, 1))
        if spanned > ELEMENTS_INLINE_CAP:
            raise PreconditionError(
                f"interval k={ch.k}: overlap attribution across moduli "
                f"would enumerate {spanned} base elements")
        return [s for s in self.base.elements_in(a, b)
                if (s - ch.first) % ch.modulus == 0]

    def record_candidates(self, start_after: int = 0):
        raise PreconditionError("density records live on the base sequence")

    def jump_to_ratio(self, threshold):
        raise PreconditionError("density records live on the base sequence")

    def jump_to_half_count(self, c_min):
        raise PreconditionError("density records live on the base sequence")

    def spec(self) -> dict:
        return {"kind": self.kind, "base": self.base.spec()}
