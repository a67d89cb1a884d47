"""Exact arithmetic for numbers of the form coef * rad**(1/idx).

Interval selection and the verification suites compare counts against
bounds like sqrt(2)/64 or (4/3)**(1/2)/16.  Doing that in floating
point would make the checks depend on rounding, so this module keeps
such values symbolically and compares them by cross-powering, which is
exact for positive reals.
"""

# ---------------------------------------------------------------------------
# integer roots
# ---------------------------------------------------------------------------

import math
from fractions import Fraction


def nth_root_floor(n: int, d: int) -> int:
    """Largest integer x with x**d <= n, for n >= 0 and d >= 1."""
    if d < 1:
        raise ValueError("root index must be >= 1")
    if n < 0:
        raise ValueError("negative radicand")
    if d == 1 or n < 2:
        return n
    # Newton iteration on integers, seeded from the bit length.
    x = 1 << ((n.bit_length() + d - 1) // d)
    while True:
        y = ((d - 1) * x + n // x ** (d - 1)) // d
        if y >= x:
            break
        x = y
    while x ** d > n:
        x -= 1
    while (x + 1) ** d <= n:
        x += 1
    return x


def _log2_int(n: int) -> float:
    """log2 of a positive integer that may exceed float range."""
    if n <= 0:
        raise ValueError("log2 of non-positive integer")
    shift = n.bit_length() - 53
    if shift <= 0:
        return math.log2(n)
    return math.log2(n >> shift) + shift


def log2_value(v) -> float:
    """log2 of a positive int, Fraction, or RootValue.

    Safe for values whose magnitude leaves float range in either
    direction, where ``math.log2(float(v))`` would see inf or 0.
    """
    if isinstance(v, RootValue):
        c, r = v.coef, v.rad
        return (_log2_int(c.numerator) - _log2_int(c.denominator)
                + (_log2_int(r.numerator) - _log2_int(r.denominator)) / v.idx)
    v = Fraction(v)
    if v <= 0:
        raise ValueError(f"log2 of non-positive value {v}")
    return _log2_int(v.numerator) - _log2_int(v.denominator)


# ---------------------------------------------------------------------------
# symbolic positive reals
# ---------------------------------------------------------------------------


class RootValue:
    """Immutable positive real ``coef * rad**(1/idx)``.

    ``coef`` and ``rad`` are positive Fractions, ``idx`` a positive int.
    Closed under multiplication, division, integer powers and integer
    roots.  Comparisons against ints, Fractions and other RootValues are
    exact.  ``floor``/``ceil`` are exact even when the value does not
    fit in a float.
    """

    __slots__ = ("coef", "rad", "idx")

    def __init__(self, coef, rad=1, idx: int = 1):
        coef = Fraction(coef)
        rad = Fraction(rad)
        idx = int(idx)
        if coef <= 0 or rad <= 0:
            raise ValueError("RootValue parts must be positive")
        if idx < 1:
            raise ValueError("root index must be >= 1")
        if rad == 1:
            idx = 1
        else:
            coef, rad, idx = _reduce(coef, rad, idx)
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "rad", rad)
        object.__setattr__(self, "idx", idx)

    def __setattr__(self, name, value):
        raise AttributeError("RootValue is immutable")

    # -- exactness ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.idx == 1

    def as_fraction(self) -> Fraction:
        if self.idx != 1:
            raise ValueError(f"{self!r} is irrational")
        return self.coef * self.rad

    def power_fraction(self, e: int = None) -> Fraction:
        """self**idx as an exact Fraction (or self**e for a multiple e)."""
        if e is None:
            e = self.idx
        if e % self.idx:
            raise ValueError("exponent must be a multiple of idx")
        return self.coef ** e * self.rad ** (e // self.idx)

    # -- arithmetic --------------------------------------------------------

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        l = math.lcm(self.idx, other.idx)
        rad = self.rad ** (l // self.idx) * other.rad ** (l // other.idx)
        return RootValue(self.coef * other.coef, rad, l)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other._reciprocal()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self._reciprocal()

    def _reciprocal(self) -> "RootValue":
        return RootValue(1 / self.coef, 1 / self.rad, self.idx)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return RootValue(1)
        if k < 0:
            return self._reciprocal() ** (-k)
        whole, part = divmod(k, self.idx)
        return RootValue(self.coef ** k * self.rad ** whole,
                         self.rad ** part if part else 1,
                         self.idx)

    def root(self, d: int) -> "RootValue":
        """Positive d-th root."""
        if d < 1:
            raise ValueError("root index must be >= 1")
        if d == 1:
            return self
        # coef * rad**(1/idx) == (coef**idx * rad)**(1/idx)
        return RootValue(1, self.coef ** self.idx * self.rad, self.idx * d)

    def pow_fraction(self, e) -> "RootValue":
        e = Fraction(e)
        if e <= 0:
            raise ValueError("exponent must be positive")
        return (self ** e.numerator).root(e.denominator)

    # -- comparisons -------------------------------------------------------

    def _cmp(self, other) -> int:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        l = math.lcm(self.idx, other.idx)
        a = self.power_fraction(l)
        b = other.power_fraction(l)
        if a < b:
            return -1
        if a > b:
            return 1
        return 0

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    __hash__ = None

    # -- rounding ----------------------------------------------------------

    def floor(self) -> int:
        # value**idx == coef**idx * rad == p/q, so floor(value) is the
        # largest f with f**idx * q <= p.
        pq = self.power_fraction()
        p, q = pq.numerator, pq.denominator
        d = self.idx
        f = nth_root_floor(p // q, d)
        while (f + 1) ** d * q <= p:
            f += 1
        while f > 0 and f ** d * q > p:
            f -= 1
        return f

    def ceil(self) -> int:
        f = self.floor()
        if f == 0:
            return 1          # value sits in (0, 1)
        return f if self == f else f + 1

    # -- conversions -------------------------------------------------------

    def __float__(self) -> float:
        c, r = self.coef, self.rad
        e = (_log2_int(c.numerator) - _log2_int(c.denominator)
             + (_log2_int(r.numerator) - _log2_int(r.denominator)) / self.idx)
        if e > 1023:
            return math.inf
        return 2.0 ** e

    def __repr__(self):
        if self.idx == 1:
            return f"RootValue({self.coef * self.rad})"
        return f"RootValue({self.coef}, {self.rad}, {self.idx})"

    def __str__(self):
        if self.idx == 1:
            return str(self.coef * self.rad)
        return f"{self.coef}*{self.rad}^(1/{self.idx})"


def _coerce(x):
    if isinstance(x, RootValue):
        return x
    if isinstance(x, (int, Fraction)):
        return RootValue(x) if x > 0 else _nonpositive(x)
    return NotImplemented


def _nonpositive(x):
    raise ValueError(f"cannot represent non-positive value {x}")


def _reduce(coef: Fraction, rad: Fraction, idx: int):
    """Lower the index when rad is a perfect power."""
    changed = True
    while changed and idx > 1:
        changed = False
        for p in _prime_divisors(idx):
            rn = nth_root_floor(rad.numerator, p)
            if rn ** p != rad.numerator:
                continue
            rd = nth_root_floor(rad.denominator, p)
            if rd ** p != rad.denominator:
                continue
            rad = Fraction(rn, rd)
            idx //= p
            changed = True
            break
    if rad == 1 or idx == 1:
        coef, rad, idx = coef * rad, Fraction(1), 1
    return coef, rad, idx


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
