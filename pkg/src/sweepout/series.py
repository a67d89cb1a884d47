"""Per-term and partial-sum checks for the three convergence estimates.

Each schedule variant rests on one series staying summable.  The rows
of a report pin the term-wise inequality that the summability argument
uses, exactly where the schedule is exact; the partial sums and their
comparison bounds are reported as floats, since the sums themselves
are only ever compared against generous constants.

Terms are always evaluated in log2 space, so gauges whose inversion
grows past float range simply contribute underflowed zeros instead of
overflowing.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, ResourceLimitError
from .exact import RootValue, log2_value
from .gauges import _exp2_exact

#: sample ceiling for the growth-exponent fit
FIT_SAMPLE_MAX = 64

#: stages past this use float cancellation rows; the exact comparisons
#: power roots up to their index and the integers get slow beyond here
EXACT_CANCEL_MAX = 64


def default_p_grid(n_max: int = 20):
    """The exponents 1 + 1/n for n = 1..n_max, largest first."""
    if n_max < 1:
        raise PreconditionError(f"grid size must be >= 1, got {n_max}")
    return tuple(Fraction(n + 1, n) for n in range(1, n_max + 1))


@dataclass(frozen=True)
class SeriesRow:
    u: int
    term: float
    bound: object        # float, or None when only the sum is bounded
    ok: bool


@dataclass(frozen=True)
class SeriesReport:
    variant: str
    p: object            # Fraction, or None for the exponent-free series
    rows: tuple
    partial_sum: float
    comparison_bound: float
    meta: dict

    @property
    def all_ok(self) -> bool:
        return all(row.ok for row in self.rows)

    def failing(self):
        return [row.u for row in self.rows if not row.ok]


def _require_variant(schedule, expected: str):
    if schedule.variant != expected:
        raise PreconditionError(
            f"needs a {expected} schedule, got {schedule.variant}")


# -- growth exponent access ---------------------------------------------------


def _inversion_power(schedule) -> int:
    return 4 if schedule.variant == "theorem-b" else schedule.k + 1


def _log_height_exact(schedule, u: int):
    """g(u) as a Fraction when the gauge inverts exactly, else None."""
    try:
        ge = schedule.gauge.log2_inverse_exact(u ** _inversion_power(schedule),
                                               schedule.max_bits)
    except ResourceLimitError:
        return None
    if isinstance(ge, RootValue):
        return ge.as_fraction() if ge.is_rational else None
    return None if ge is None else Fraction(ge)


def _log_height_float(schedule, u: int) -> float:
    return schedule.gauge.log2_inverse_float(u ** _inversion_power(schedule))


def _split_point(schedule, p: float) -> float:
    """N with g(N) = 1/(p - 1), through the gauge on the log2 scale."""
    return schedule.gauge.value_log2(1.0 / (p - 1.0)) ** (
        1.0 / _inversion_power(schedule))


def _fit_growth(schedule, u_max: int) -> dict:
    """Fit g(u) ~ c..C * u**n over the sampled range.

    Returns a dict with "kind" either "polynomial" (with n_hat, c, C, K
    = c/C, exact Fractions when the heights are) or "superpolynomial"
    (slope keeps rising or the heights leave float range).
    """
    hi = min(u_max, FIT_SAMPLE_MAX)
    if hi < 4:
        hi = 4
    lo = max(2, hi // 2)
    g_hi = _log_height_float(schedule, hi)
    g_lo = _log_height_float(schedule, lo)
    if not (math.isfinite(g_hi) and math.isfinite(g_lo)):
        return {"kind": "superpolynomial"}
    slope = (math.log(g_hi) - math.log(g_lo)) / (math.log(hi) - math.log(lo))
    mid = max(2, (lo + hi) // 2)
    g_mid = _log_height_float(schedule, mid)
    slope_lo = (math.log(g_mid) - math.log(g_lo)) / (math.log(mid) - math.log(lo))
    if slope - slope_lo > 0.25:
        return {"kind": "superpolynomial"}
    n_hat = round(slope) if abs(slope - round(slope)) < 1e-9 else slope
    lo_ratio = hi_ratio = None
    for u in range(1, hi + 1):
        if isinstance(n_hat, int):
            ge = _log_height_exact(schedule, u)
            ratio = ge / u ** n_hat if ge is not None else \
                _log_height_float(schedule, u) / u ** n_hat
        else:
            ratio = _log_height_float(schedule, u) / u ** n_hat
        lo_ratio = ratio if lo_ratio is None or ratio < lo_ratio else lo_ratio
        hi_ratio = ratio if hi_ratio is None or ratio > hi_ratio else hi_ratio
    k_const = lo_ratio / hi_ratio
    return {"kind": "polynomial", "n_hat": n_hat, "c": lo_ratio,
            "C": hi_ratio, "K": k_const}


def _geometric_tail(k_const) -> float:
    """Sum of r / 2**(K r) over r >= 1, the closed form x/(1-x)**2."""
    x = 2.0 ** -float(k_const)
    if x >= 1.0:
        return math.inf
    return x / (1.0 - x) ** 2


def _from_log2(e: float) -> float:
    if e > 1023:
        return math.inf
    return 2.0 ** e if e > -1100 else 0.0


# -- the exponent-free series (quotient-density variant) ----------------------


def theorem_a_series(schedule, u_max: int) -> SeriesReport:
    """Per-term check M(u) R(u)**q <= 1/u**2 + u / w(u)**q.

    w(u) is the stage witness height; the second summand absorbs the
    unit the modulus floor may have dropped.  Exact wherever the stage
    is exact.
    """
    _require_variant(schedule, "theorem-a")
    if u_max < 1:
        raise PreconditionError(f"u_max must be >= 1, got {u_max}")
    q = schedule.q
    rows = []
    total = 0.0
    total_bound = 0.0
    exact_all = True
    for u in range(1, u_max + 1):
        m = schedule.modulus(u)
        fraction = schedule.insertion_fraction(u)
        wq = None
        if schedule.exact_at(u):
            wq = schedule.witness_value(u) ** q
            if isinstance(wq, RootValue):
                wq = wq.as_fraction() if wq.is_rational else None
            else:
                wq = Fraction(wq)
        if wq is not None:
            value = m * fraction ** q
            bound = Fraction(1, u * u) + Fraction(u) / wq
            ok = not value > bound
        else:
            exact_all = False
            value = m * float(fraction) ** q
            bound = 1.0 / u ** 2 + u / float(schedule.witness_value(u)) ** q
            ok = value <= bound
        rows.append(SeriesRow(u, float(value), float(bound), ok))
        total += float(value)
        total_bound += float(bound)
    return SeriesReport("theorem-a", None, tuple(rows), total, total_bound,
                        {"q": q, "u_max": u_max, "exact": exact_all})


# -- the log-height series ----------------------------------------------------


def _series_terms(schedule, p, u_max: int, weight: int):
    """Terms u**weight / 2**(g(u)(p-1)) as floats, in log2 space."""
    pf = float(p)
    terms = []
    for u in range(1, u_max + 1):
        e = weight * math.log2(u) - _log_height_float(schedule, u) * (pf - 1.0)
        terms.append(2.0 ** e if e > -1100 else 0.0)
    return terms


def _phi_target(schedule, p) -> float:
    y = 1.0 / (float(p) - 1.0)
    if y > 700:
        return math.inf
    return schedule.gauge.value(math.exp(y))


def theorem_b_series(schedule, p, u_max: int = 100) -> SeriesReport:
    """Head/tail split of the series u / 2**(g(u)(p-1)).

    The head of length N**alpha is bounded by N**(2 alpha); the tail is
    dominated term by term through g(u)(p-1) >= K u, with K fitted from
    the growth of g.  Rows carry the tail domination (head rows pass
    vacuously); the summary checks the two sum-level bounds.
    """
    _require_variant(schedule, "theorem-b")
    if not 1 < Fraction(p) <= 2:
        raise PreconditionError(f"p must sit in (1, 2], got {p}")
    big_p = Fraction(p)
    pf = float(p)
    terms = _series_terms(schedule, p, u_max, weight=1)
    total = math.fsum(terms)

    fit = _fit_growth(schedule, u_max)
    split = _split_point(schedule, pf)
    if fit["kind"] == "polynomial":
        n_hat = fit["n_hat"]
        alpha = n_hat / (n_hat - 1) if isinstance(n_hat, int) else \
            n_hat / (n_hat - 1.0)
        k_const = fit["K"]
    else:
        # slope keeps rising, so the quadratic floor of the height is a
        # safe stand-in for the fit; the family check sharpens this
        n_hat = None
        alpha = 2.0
        cut = math.floor(split ** alpha)
        candidates = [_log_height_float(schedule, u) * (pf - 1.0) / u
                      for u in range(cut + 1, u_max + 1)]
        k_const = min(candidates) if candidates else math.inf
    tail_a = _geometric_tail(k_const)
    head_bound = float(split) ** (2 * float(alpha))
    phi = _phi_target(schedule, p)

    cut = math.floor(split ** float(alpha))
    rows = []
    for u in range(1, u_max + 1):
        if u <= cut:
            rows.append(SeriesRow(u, terms[u - 1], None, True))
            continue
        if isinstance(k_const, (int, Fraction)):
            ge = _log_height_exact(schedule, u)
        else:
            ge = None
        if ge is not None:
            ok = ge * (big_p - 1) >= Fraction(k_const) * u
        else:
            ok = _log_height_float(schedule, u) * (pf - 1.0) >= \
                float(k_const) * u
        dominated = u * 2.0 ** (-float(k_const) * u)
        rows.append(SeriesRow(u, terms[u - 1], dominated, ok))

    sum_vs_head = total <= head_bound + tail_a
    sum_vs_phi = total <= phi + tail_a
    meta = {"u_max": u_max, "growth": fit["kind"], "n_hat": n_hat,
            "c": None if fit["kind"] != "polynomial" else float(fit["c"]),
            "C": None if fit["kind"] != "polynomial" else float(fit["C"]),
            "K": float(k_const), "tail_constant": tail_a,
            "split_point": split, "head_cut": cut,
            "head_bound": head_bound, "phi_target": phi,
            "sum_vs_head": sum_vs_head, "sum_vs_phi": sum_vs_phi}
    return SeriesReport("theorem-b", big_p, tuple(rows), total,
                        head_bound + tail_a, meta)


@dataclass(frozen=True)
class GridReport:
    reports: tuple
    k_p_independent: bool
    a_prime: float
    feed_ok: bool

    @property
    def all_ok(self) -> bool:
        return (self.feed_ok and
                all(r.all_ok and r.meta["sum_vs_head"] and r.meta["sum_vs_phi"]
                    for r in self.reports))


def theorem_b_grid(schedule, u_max: int = 100, n_max: int = 20) -> GridReport:
    """Run the series over the default p grid and derive the feed
    constant for the extrapolation hypothesis.

    The feed constant A' turns the sum bound into the shape the
    extrapolation step consumes: 2 (partial sum)**(1/p) <= phi + A'.
    """
    reports = tuple(theorem_b_series(schedule, p, u_max)
                    for p in default_p_grid(n_max))
    ks = {r.meta["K"] for r in reports}
    a_prime = 0.0
    for r in reports:
        pf = float(r.p)
        lifted = 2.0 * (r.meta["head_bound"] + r.meta["tail_constant"]) ** (1 / pf)
        a_prime = max(a_prime, lifted - r.meta["phi_target"])
    a_prime = max(a_prime, 0.0)
    feed_ok = all(
        2.0 * r.partial_sum ** (1 / float(r.p)) <=
        r.meta["phi_target"] + a_prime
        for r in reports)
    return GridReport(reports, len(ks) == 1, a_prime, feed_ok)


def fixed_family_check(schedule, u_max: int = 40, n_values=(2, 4, 8),
                       n_max: int = 20):
    """The limiting argument replayed at fixed exponents.

    For each n, provided the height dominates u**n past the split, the
    sum obeys the bound with alpha(n) = n/(n-1).  Returns rows of
    (n, p, K, tail constant, pass).
    """
    rows = []
    for n in n_values:
        alpha = n / (n - 1)
        for p in default_p_grid(n_max):
            pf = float(p)
            terms = _series_terms(schedule, p, u_max, weight=1)
            total = math.fsum(terms)
            split = _split_point(schedule, pf)
            cut = math.floor(split ** alpha)
            tail = range(cut + 1, u_max + 1)
            dominates = all(
                _log_height_float(schedule, u) >= float(u) ** n for u in tail)
            k_const = min((u ** (n - 1) * (pf - 1.0) for u in tail),
                          default=math.inf)
            tail_a = _geometric_tail(k_const)
            head_bound = split ** (2 * alpha)
            ok = dominates and total <= head_bound + tail_a
            rows.append({"n": n, "p": p, "K": k_const, "tail_constant": tail_a,
                         "head_bound": head_bound, "partial_sum": total,
                         "dominates": dominates, "ok": ok})
    return rows


# -- the weighted series ------------------------------------------------------


def lemma_series(schedule, p, u_max: int = 40) -> SeriesReport:
    """Cancellation rows M(u)(2R(u))**p <= 4 u**k / 2**(g(u)(p-1)),
    with the sum of the right sides bounded by the usual split."""
    _require_variant(schedule, "lemma-14")
    if not 1 < Fraction(p) <= 2:
        raise PreconditionError(f"p must sit in (1, 2], got {p}")
    big_p = Fraction(p)
    pf = float(p)
    k = schedule.k
    terms = _series_terms(schedule, p, u_max, weight=k)
    total = math.fsum(terms)

    rows = []
    for u in range(1, u_max + 1):
        ge = _log_height_exact(schedule, u) if u <= EXACT_CANCEL_MAX else None
        if ge is not None and schedule.exact_at(u):
            doubled = schedule.insertion_fraction(u) * 2
            value = schedule.modulus(u) * doubled.pow_fraction(big_p)
            denom = _exp2_exact(ge * (big_p - 1), schedule.max_bits)
            bound = Fraction(4 * u ** k) / denom
            ok = not value > bound
            rows.append(SeriesRow(u, float(value), float(bound), ok))
        else:
            # log2-space floats; the modulus alone can dwarf float
            # range here.  Rounding slack only, the floor in the
            # modulus always leaves real room below the bound.
            lg_value = log2_value(schedule.modulus(u)) + pf * (
                1.0 + log2_value(schedule.insertion_fraction(u)))
            lg_bound = 2.0 + k * math.log2(u) - \
                _log_height_float(schedule, u) * (pf - 1.0)
            ok = lg_value <= lg_bound + 1e-9
            rows.append(SeriesRow(u, _from_log2(lg_value),
                                  _from_log2(lg_bound), ok))

    fit = _fit_growth(schedule, u_max)
    split = _split_point(schedule, pf)
    if fit["kind"] == "polynomial":
        n_hat = fit["n_hat"]
        alpha = float(n_hat) / (float(n_hat) - 1.0)
        k_const = fit["K"]
    else:
        n_hat = None
        alpha = 2.0
        cut = math.floor(split ** alpha)
        candidates = [_log_height_float(schedule, u) * (pf - 1.0) / u
                      for u in range(cut + 1, u_max + 1)]
        k_const = min(candidates) if candidates else math.inf
    tail_a = _geometric_tail(k_const)
    head_bound = float(split) ** ((k + 1) * alpha)
    phi = _phi_target(schedule, p)
    meta = {"u_max": u_max, "k": k, "growth": fit["kind"], "n_hat": n_hat,
            "K": float(k_const), "tail_constant": tail_a,
            "split_point": split, "head_bound": head_bound,
            "phi_target": phi,
            "sum_vs_head": total <= head_bound + tail_a}
    return SeriesReport("lemma-14", big_p, tuple(rows), total,
                        head_bound + tail_a, meta)


def lemma_grid(schedule, u_max: int = 40, n_max: int = 20):
    """Reports over the p grid; sums must be monotone in p."""
    reports = tuple(lemma_series(schedule, p, u_max)
                    for p in default_p_grid(n_max))
    ordered = sorted(reports, key=lambda r: r.p)
    monotone = all(a.partial_sum >= b.partial_sum - 1e-15
                   for a, b in zip(ordered, ordered[1:]))
    return reports, monotone
