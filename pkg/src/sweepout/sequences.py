"""Strictly increasing integer sequences with exact counting functions.

Everything downstream (interval selection, perturbation counting, the
witness averages) consumes only two things from a base sequence: the
prefix counting function and residue-class counts.  Both are closed
forms here, never enumerations, so they stay exact at scales where
the elements themselves have thousands of bits.

Kinds:

    squares          1, 4, 9, 16, ...
    synthetic-block  short blocks [2**(j*j), 2**(j*j) + j), a zero
                     density stand-in with trivially countable gaps
    integers         1, 2, 3, ... (not zero density; averaging only)
    file-defined     loaded from a dump, one integer per line
"""

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import ConfigError, PreconditionError, SearchBudgetExhausted


def count_congruent(lo: int, hi: int, r: int, m: int) -> int:
    """|{x in [lo, hi) : x == r mod m}|, exact for any integers, m >= 1."""
    if hi <= lo:
        return 0
    t0 = -(-(lo - r) // m)
    t1 = -(-(hi - r) // m)
    return t1 - t0


@dataclass(frozen=True)
class DensityRecordPoint:
    """A prefix-minimal point of the counting ratio |S(m)|/m."""
    m: int
    ratio: Fraction


# ---------------------------------------------------------------------------
# sequence kinds
# ---------------------------------------------------------------------------


class BaseSequence:
    """Shared interface; counting is exact and cheap in every kind."""

    kind = "abstract"
    zero_density = True   # declared, spot-checked by tests, not proven

    # -- core counting ---------------------------------------------------

    def count(self, n: int) -> int:
        """How many elements fall in [1, n)."""
        raise NotImplementedError

    def element(self, i: int) -> int:
        """The i-th element, 1-based."""
        raise NotImplementedError

    def elements_in(self, lo: int, hi: int) -> list:
        """Ascending elements in [lo, hi)."""
        raise NotImplementedError

    def __contains__(self, x: int) -> bool:
        return x >= 1 and bool(self.elements_in(x, x + 1))

    def ratio(self, m: int) -> Fraction:
        return Fraction(self.count(m), m)

    # -- residue classes ---------------------------------------------------

    def count_congruent_in(self, lo: int, hi: int, r: int, m: int) -> int:
        """How many elements in [lo, hi) are congruent to r mod m."""
        raise NotImplementedError

    def residue_counts(self, hi: int, m: int) -> list:
        """counts[c] = number of elements in [1, hi) congruent to c mod m."""
        return [self.count_congruent_in(1, hi, c, m) for c in range(m)]

    # -- density records ---------------------------------------------------
    #
    # A record candidate is an m where the ratio |S(m)|/m is minimal over
    # every earlier prefix that already contains an element (the empty
    # prefix has ratio 0 and would shadow everything).  Candidates sit
    # just before the count next jumps, so per kind they admit closed
    # forms, and their ratios decrease monotonically, which makes the
    # jump helpers below exact binary searches / short scans.

    def record_candidates(self, start_after: int = 0):
        """Yield (m, ratio) record candidates with m > start_after."""
        raise NotImplementedError

    def jump_to_ratio(self, threshold: Fraction) -> int:
        """Smallest record candidate m with ratio(m) <= threshold."""
        raise NotImplementedError

    def jump_to_half_count(self, c_min: int) -> int:
        """Smallest record candidate m with count(m // 2) >= c_min."""
        raise NotImplementedError

    def spec(self) -> dict:
        return {"kind": self.kind}

    def __repr__(self):
        return f"<sequence {self.kind}>"


class SquareSequence(BaseSequence):
    """Perfect squares.  count(n) = isqrt(n - 1) for n >= 1."""

    kind = "squares"

    def count(self, n: int) -> int:
        if n < 1:
            raise PreconditionError(f"count needs n >= 1, got {n}")
        return isqrt(n - 1)

    def element(self, i: int) -> int:
        return i * i

    def elements_in(self, lo: int, hi: int) -> list:
        if hi <= lo:
            return []
        y0 = isqrt(max(lo - 1, 0)) + 1   # smallest y with y*y >= lo
        y1 = isqrt(hi - 1)               # largest y with y*y < hi
        return [y * y for y in range(y0, y1 + 1)]

    def count_congruent_in(self, lo: int, hi: int, r: int, m: int) -> int:
        if hi <= lo:
            return 0
        y0 = isqrt(max(lo - 1, 0)) + 1
        y1 = isqrt(hi - 1)
        r %= m
        return sum(count_congruent(y0, y1 + 1, t, m)
                   for t in range(m) if t * t % m == r)

    def residue_counts(self, hi: int, m: int) -> list:
        y1 = isqrt(hi - 1)
        out = [0] * m
        for t in range(m):
            out[t * t % m] += count_congruent(1, y1 + 1, t, m)
        return out

    # candidates: m = (c+1)**2 with count(m) = c, ratio c/(c+1)**2
    def record_candidates(self, start_after: int = 0):
        c = max(1, isqrt(max(start_after - 1, 0)))
        while (c + 1) ** 2 <= start_after:
            c += 1
        while True:
            yield (c + 1) ** 2, Fraction(c, (c + 1) ** 2)
            c += 1

    def jump_to_ratio(self, threshold: Fraction) -> int:
        lo, hi = 1, 2
        while Fraction(hi, (hi + 1) ** 2) > threshold:
            hi *= 2
        while lo < hi:
            mid = (lo + hi) // 2
            if Fraction(mid, (mid + 1) ** 2) <= threshold:
                hi = mid
            else:
                lo = mid + 1
        return (lo + 1) ** 2

    def jump_to_half_count(self, c_min: int) -> int:
        # count(t*t // 2) >= c_min needs t*t >= 2*c_min**2 + 2, so the
        # answer is pinned up to floor-division slack; fix up locally.
        t = max(2, isqrt(2 * c_min * c_min))
        while self.count(t * t // 2) < c_min:
            t += 1
        while t > 2 and self.count((t - 1) ** 2 // 2) >= c_min:
            t -= 1
        return t * t


class BlockSequence(BaseSequence):
    """Blocks [2**(j*j), 2**(j*j) + j) for j = 1, 2, ...

    Zero density with huge clean gaps; there are only j(j+1)/2 elements
    below the (j+1)-th block, so per-element work stays trivial even
    when the elements have millions of bits.
    """

    kind = "synthetic-block"

    @staticmethod
    def _block(j: int):
        start = 1 << (j * j)
        return start, start + j

    def _block_index_below(self, n: int) -> int:
        """Largest j whose block starts strictly below n (0 if none)."""
        if n <= 2:
            return 0
        j = isqrt((n - 1).bit_length() - 1)  # 2**(j*j) <= n-1
        while (1 << ((j + 1) ** 2)) < n:
            j += 1
        return j

    def count(self, n: int) -> int:
        if n < 1:
            raise PreconditionError(f"count needs n >= 1, got {n}")
        j = self._block_index_below(n)
        if j == 0:
            return 0
        full = (j - 1) * j // 2
        start, end = self._block(j)
        return full + min(n - start, j)

    def element(self, i: int) -> int:
        j = 1
        while j * (j + 1) // 2 < i:
            j += 1
        offset = i - (j - 1) * j // 2 - 1
        return (1 << (j * j)) + offset

    def elements_in(self, lo: int, hi: int) -> list:
        if hi <= lo:
            return []
        out = []
        j = max(1, self._block_index_below(max(lo, 2)))
        while True:
            start, end = self._block(j)
            if start >= hi:
                break
            out.extend(range(max(start, lo), min(end, hi)))
            j += 1
        return out

    def count_congruent_in(self, lo: int, hi: int, r: int, m: int) -> int:
        if hi <= lo:
            return 0
        r %= m
        total = 0
        j = max(1, self._block_index_below(max(lo, 2)))
        while True:
            start, end = self._block(j)
            if start >= hi:
                break
            total += count_congruent(max(start, lo), min(end, hi), r, m)
            j += 1
        return total

    def residue_counts(self, hi: int, m: int) -> list:
        out = [0] * m
        j = 1
        while True:
            start, end = self._block(j)
            if start >= hi:
                break
            base = start % m
            for off in range(min(end, hi) - start):
                out[(base + off) % m] += 1
            j += 1
        return out

    # candidates: m = 2**(j*j) for j >= 2, count = T(j-1), ratio drops fast
    def record_candidates(self, start_after: int = 0):
        j = 2
        while (1 << (j * j)) <= start_after:
            j += 1
        while True:
            m = 1 << (j * j)
            yield m, Fraction((j - 1) * j // 2, m)
            j += 1

    def jump_to_ratio(self, threshold: Fraction) -> int:
        j = 2
        while Fraction((j - 1) * j // 2, 1 << (j * j)) > threshold:
            j += 1
        return 1 << (j * j)

    def jump_to_half_count(self, c_min: int) -> int:
        j = 2
        # count at half the block start is the same full-blocks total
        while (j - 1) * j // 2 < c_min:
            j += 1
        return 1 << (j * j)


class IntegerSequence(BaseSequence):
    """All positive integers; full density, only used to drive averages."""

    kind = "integers"
    zero_density = False

    def count(self, n: int) -> int:
        if n < 1:
            raise PreconditionError(f"count needs n >= 1, got {n}")
        return n - 1

    def element(self, i: int) -> int:
        return i

    def elements_in(self, lo: int, hi: int) -> list:
        return list(range(max(lo, 1), max(hi, 1)))

    def count_congruent_in(self, lo: int, hi: int, r: int, m: int) -> int:
        return count_congruent(max(lo, 1), max(hi, 1), r, m)

    def record_candidates(self, start_after: int = 0):
        raise PreconditionError("integers are not zero density")

    jump_to_ratio = record_candidates
    jump_to_half_count = record_candidates


class FileSequence(BaseSequence):
    """Explicit ascending list, desk scale; every query is a bisect/scan."""

    kind = "file-defined"

    def __init__(self, elements, path=None):
        elems = list(elements)
        if not elems:
            raise ConfigError("file-defined sequence is empty")
        if elems[0] < 1:
            raise ConfigError("sequence elements must be >= 1")
        if any(b <= a for a, b in zip(elems, elems[1:])):
            raise ConfigError("sequence elements must strictly increase")
        self.elems = elems
        self.path = path

    def count(self, n: int) -> int:
        if n < 1:
            raise PreconditionError(f"count needs n >= 1, got {n}")
        return bisect_left(self.elems, n)

    def element(self, i: int) -> int:
        return self.elems[i - 1]

    def elements_in(self, lo: int, hi: int) -> list:
        return self.elems[bisect_left(self.elems, lo):
                          bisect_left(self.elems, hi)]

    def count_congruent_in(self, lo: int, hi: int, r: int, m: int) -> int:
        r %= m
        return sum(1 for s in self.elements_in(lo, hi) if s % m == r)

    def record_candidates(self, start_after: int = 0):
        # ratio is i/m for element(i) < m <= element(i+1); minimal at the
        # right end, so candidates are the elements themselves (count one
        # less there) -- keep only the running minima
        best = None
        for i, s in enumerate(self.elems):
            if i == 0:
                continue
            r = Fraction(i, s)
            if best is None or r < best:
                best = r
                if s > start_after:
                    yield s, r

    def jump_to_ratio(self, threshold: Fraction) -> int:
        for m, r in self.record_candidates():
            if r <= threshold:
                return m
        # past the last element the ratio keeps falling
        n = len(self.elems)
        m = -(-n // threshold) if threshold > 0 else None
        if m is None:
            raise SearchBudgetExhausted("no record below threshold 0",
                                        constraint="ratio-threshold")
        return max(int(m), self.elems[-1] + 1)

    def jump_to_half_count(self, c_min: int) -> int:
        for m, _ in self.record_candidates():
            if self.count(m // 2) >= c_min:
                return m
        raise SearchBudgetExhausted(
            f"file sequence has no record with count(m/2) >= {c_min}",
            constraint="half-count")

    def spec(self) -> dict:
        out = {"kind": self.kind}
        if self.path is not None:
            out["path"] = str(self.path)
        return out


# ---------------------------------------------------------------------------
# record search
# ---------------------------------------------------------------------------

DEFAULT_RECORD_CEILING = 10 ** 24


def find_density_record(seq: BaseSequence, threshold,
                        ceiling: int = DEFAULT_RECORD_CEILING
                        ) -> DensityRecordPoint:
    """A prefix-minimal m with count(m)/m <= threshold.

    Returns the record candidate ending the first counting stretch
    that dips under the threshold; the ratio there is below every
    earlier nonempty prefix (the degenerate empty prefix, ratio 0, is
    not competed against).  Smaller qualifying points can exist inside
    the stretch; candidates are what the jump helpers can locate
    without enumeration.  Raises SearchBudgetExhausted when the first
    qualifying candidate sits above ``ceiling``.
    """
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise PreconditionError("threshold must be positive")
    if not seq.zero_density:
        raise PreconditionError(f"{seq.kind} is not declared zero density")
    if threshold >= 1:
        return DensityRecordPoint(1, Fraction(0))
    m = seq.jump_to_ratio(threshold)
    if m > ceiling:
        raise SearchBudgetExhausted(
            f"first record with ratio <= {threshold} is {m} > ceiling "
            f"{ceiling}", constraint="ratio-threshold")
    point = DensityRecordPoint(m, seq.ratio(m))
    _check_halving_bound(seq, point)
    return point


def _check_halving_bound(seq: BaseSequence, p: DensityRecordPoint):
    # count(m//2)/(m//2) <= 3*count(m)/m holds for every m >= 2
    half = p.m // 2
    if half >= 1:
        assert Fraction(seq.count(half), half) <= 3 * p.ratio, \
            f"halving bound failed at record {p.m}"


# ---------------------------------------------------------------------------
# dump / load
# ---------------------------------------------------------------------------


def dump_sequence(elements, path, limit: int = None):
    """Write one decimal integer per line (ascending input assumed)."""
    with open(path, "w", encoding="utf-8") as fh:
        for i, x in enumerate(elements):
            if limit is not None and i >= limit:
                break
            fh.write(f"{x}\n")


def load_sequence(path) -> FileSequence:
    with open(path, encoding="utf-8") as fh:
        try:
            elems = [int(line) for line in fh if line.strip()]
        except ValueError as e:
            raise ConfigError(f"bad sequence line in {path}: {e}") from None
    return FileSequence(elems, path=path)


# ---------------------------------------------------------------------------
# config grammar
# ---------------------------------------------------------------------------

SEQUENCE_KINDS = ("squares", "synthetic-block", "integers", "file-defined")


def sequence_from_spec(spec) -> BaseSequence:
    if isinstance(spec, BaseSequence):
        return spec
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"sequence spec must be a dict with 'kind': {spec!r}")
    kind = spec["kind"]
    if kind == "squares":
        return SquareSequence()
    if kind == "synthetic-block":
        return BlockSequence()
    if kind == "integers":
        return IntegerSequence()
    if kind == "file-defined":
        if "path" not in spec:
            raise ConfigError("file-defined sequence spec needs 'path'")
        return load_sequence(spec["path"])
    raise ConfigError(f"unknown sequence kind {kind!r} "
                      f"(one of {SEQUENCE_KINDS})")
