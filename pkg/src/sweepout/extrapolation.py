"""Tracing an L1 bound out of a family of near-L1 norm bounds.

A positive sublinear operator that obeys a p-norm bound with constant
phi(e^(1/(p-1))) for every p just above 1 also obeys an L1 bound with
an explicit constant.  The proof disassembles the function into level
sets, applies the p-norm bound to each piece at its own exponent, and
reassembles.  This module replays that argument on concrete step
functions, one displayed inequality per step, and computes the
constant.

Measures and plain integrals are exact rationals; anything touching a
power of e is necessarily floating point, so those comparisons carry a
relative tolerance far below the slack the argument itself provides.
"""

import math
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

import mpmath

from .errors import GaugeGrowthError, PreconditionError
from .series import default_p_grid
from .stepfn import StepFunction, _build

E = math.e
E2 = math.e ** 2
E3 = math.e ** 3

#: p grid is {1 + 1/n : n <= depth}, so the hypothesis window is (1, 2]
DEFAULT_GRID_DEPTH = 20

REL_TOL = 1e-9


def _leq(lhs: float, rhs: float) -> bool:
    return lhs <= rhs + REL_TOL * max(abs(lhs), abs(rhs), 1e-6)


# -- operators ----------------------------------------------------------------


class OperatorHandle:
    """A declared-positive, declared-sublinear operator on step functions.

    The callback must return a step function; outputs are expected to
    live on a fixed refinement so repeated application stays finite.
    Declarations are trusted for the trace and spot-checked by
    ``sampled_invariants``.
    """

    def __init__(self, apply_fn, name: str, positive: bool = True,
                 sublinear: bool = True, sup_bounded: bool = True):
        self._apply = apply_fn
        self.name = name
        self.declared = {"positive": positive, "sublinear": sublinear,
                         "sup-bounded": sup_bounded}

    def __call__(self, f: StepFunction) -> StepFunction:
        out = self._apply(f)
        if not isinstance(out, StepFunction):
            raise PreconditionError(
                f"operator {self.name} returned {type(out).__name__}")
        return out

    def sampled_invariants(self, seed: int = 0, trials: int = 8) -> dict:
        """Spot-check sublinearity and positivity on random pairs."""
        rng = random.Random(seed)
        sublinear = positive = True
        for _ in range(trials):
            f = random_step_function(rng, max_pieces=8, magnitude=8)
            g = random_step_function(rng, max_pieces=8, magnitude=8)
            lhs = abs(self(f + g))
            rhs = abs(self(f)) + abs(self(g))
            gap = lhs.zip_with(rhs, lambda a, b: float(a) - float(b))
            sublinear &= max(gap.values) <= 1e-9
            tf = self(abs(f))
            positive &= min(float(v) for v in tf.values) >= -1e-9
        return {"sublinear": sublinear, "positive": positive}


def identity_operator() -> OperatorHandle:
    return OperatorHandle(lambda f: f, "identity")


def doubled_identity_operator() -> OperatorHandle:
    """Sublinear and positive, but twice too big for a flat gauge."""
    return OperatorHandle(lambda f: f * 2, "doubled-identity")


def dyadic_averaging_operator(level: int = 10) -> OperatorHandle:
    """Conditional expectation onto the dyadic grid with 2**level blocks."""
    if not 0 <= level <= 16:
        raise PreconditionError(f"dyadic level must sit in [0, 16], got {level}")
    blocks = 1 << level
    cuts = [Fraction(i, blocks) for i in range(blocks + 1)]

    def apply(f: StepFunction) -> StepFunction:
        # blocks interior to a piece average to that piece's value;
        # only blocks straddling a cut need exact arithmetic
        out = [None] * blocks
        mixed = defaultdict(Fraction)
        for i, v in enumerate(f.values):
            lo = f.breaks[i] * blocks
            hi = f.breaks[i + 1] * blocks
            first = math.ceil(lo)
            last = math.floor(hi)
            if first < last:
                out[first:last] = [v] * (last - first)
            if lo < first:
                k = first - 1
                mixed[k] += (min(hi, Fraction(first)) - lo) * Fraction(v)
            if hi > last and last >= first:
                mixed[last] += (hi - last) * Fraction(v)
        for k, s in mixed.items():
            out[k] = s
        return _build(cuts, out)

    return OperatorHandle(apply, f"dyadic-average-{blocks}")


def random_step_function(rng: random.Random, max_pieces: int = 64,
                         magnitude: int = 1000, grid: int = 4096,
                         value_den: int = 16) -> StepFunction:
    """A step function with random rational breaks and values."""
    pieces = rng.randint(1, max_pieces)
    cuts = sorted(rng.sample(range(1, grid), pieces - 1))
    breaks = [Fraction(0)] + [Fraction(c, grid) for c in cuts] + [Fraction(1)]
    values = [Fraction(rng.randint(-magnitude * value_den,
                                   magnitude * value_den), value_den)
              for _ in range(pieces)]
    return StepFunction(breaks, values)


# -- the hypothesis on the p grid ----------------------------------------------


@dataclass(frozen=True)
class HypothesisRow:
    p: Fraction
    lhs: float
    rhs: float
    ok: bool


@dataclass(frozen=True)
class HypothesisReport:
    operator: str
    rows: tuple

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def failing(self):
        return [r.p for r in self.rows if not r.ok]


def check_hypothesis(operator: OperatorHandle, f: StepFunction, gauge,
                     p_grid=None) -> HypothesisReport:
    """Per-p check of |Tf|_p <= phi(e^(1/(p-1))) |f|_p."""
    if p_grid is None:
        p_grid = default_p_grid(DEFAULT_GRID_DEPTH)
    for p in p_grid:
        if not 1 < Fraction(p) <= 2:
            raise PreconditionError(f"grid exponent {p} outside (1, 2]")
    tf = operator(f)
    rows = []
    for p in p_grid:
        pf = float(p)
        lhs = tf.lp_norm(pf)
        rhs = gauge.value(math.exp(1.0 / (pf - 1.0))) * f.lp_norm(pf)
        rows.append(HypothesisRow(Fraction(p), lhs, rhs, _leq(lhs, rhs)))
    return HypothesisReport(operator.name, tuple(rows))


# -- the explicit constant ------------------------------------------------------


def admissibility_constant(gauge, hi: float = 1e9, samples: int = 80) -> float:
    """Fitted c with phi(x) <= c sqrt(x) on a log grid.

    The square-root envelope is what keeps the small-measure series
    below.  A ratio still climbing at the end of the grid means no c
    exists.
    """
    xs = [hi ** (k / (samples - 1)) for k in range(samples)]
    ratios = [gauge.value(x) / math.sqrt(x) for x in xs]
    back = ratios[3 * samples // 4:]
    if all(b > a for a, b in zip(back, back[1:])):
        raise GaugeGrowthError(
            f"no sqrt envelope: phi(x)/sqrt(x) still rising at x={xs[-1]:.3g}")
    return max(1.0, max(ratios))


def small_case_constant(gauge) -> float:
    """a = sum over n >= 0 of e^(n+1) phi(e^n) e^(-2n).

    Dominates the small-measure levels no matter how the mass falls.
    """
    admissibility_constant(gauge)
    total, n = 0.0, 0
    while True:
        term = E ** (n + 1) * gauge.value(E ** n) * E ** (-2 * n)
        total += term
        n += 1
        if term < 1e-16:
            return total
        if n > 600:
            raise GaugeGrowthError("small-measure series fails to converge")


def constant_A_phi(gauge) -> float:
    """The L1-bound constant 2a + 2a' + 8 e^3 phi(2), with a = a'."""
    return 4.0 * small_case_constant(gauge) + 8.0 * E3 * gauge.value(2)


# -- certified level sets -------------------------------------------------------


@lru_cache(maxsize=None)
def _e_bracket(n: int):
    """Rationals lo < e**n < hi, about 1e-40 apart, for exact placing."""
    if n == 0:
        return Fraction(1), Fraction(1)
    with mpmath.workdps(80):
        base = int(mpmath.floor(mpmath.e ** n * mpmath.mpf(10) ** 40))
    return Fraction(base - 1, 10 ** 40), Fraction(base + 2, 10 ** 40)


def _level_of(v: Fraction) -> int:
    """The n with e**n <= v < e**(n+1), certified through the brackets."""
    if v < 1:
        raise PreconditionError(f"level sets need values >= 1, got {v}")
    n = max(0, int(math.log(float(v))))
    for _ in range(64):
        _, hi_n = _e_bracket(n)
        lo_up, hi_up = _e_bracket(n + 1)
        if n > 0 and v < hi_n:
            lo_n, _ = _e_bracket(n)
            if v > lo_n:
                break        # ambiguous: inside the bracket
            n -= 1
            continue
        if v >= hi_up:
            n += 1
            continue
        if v > lo_up:
            break            # ambiguous against the upper boundary
        return n
    raise PreconditionError(
        f"value {v} sits too close to a power of e to certify its level")


# -- the decomposition trace ----------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    name: str
    lhs: float
    rhs: float
    ok: bool


@dataclass(frozen=True)
class DecompositionTrace:
    operator: str
    g_plus: StepFunction
    g_minus: StepFunction
    plus_levels: tuple           # (n, measure) for nonempty level sets
    minus_levels: tuple
    steps: tuple
    a_phi: float
    constant: float              # the full L1 constant
    budget: float                # constant + 4 e^3 * growth integral
    final_lhs: float

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps)

    @property
    def first_failure(self):
        for s in self.steps:
            if not s.ok:
                return s.name
        return None


def _growth_integral(h: StepFunction, gauge) -> float:
    """Integral of h*phi(h) over the pieces where h > 0."""
    total = 0.0
    for ln, v in h.pieces():
        if v > 0:
            total += float(ln) * float(v) * gauge.value(float(v))
    return total


def _level_indicators(g: StepFunction):
    """Split [0,1) into the level sets of g; g must be >= 1."""
    levels = {}
    for i, v in enumerate(g.values):
        levels.setdefault(_level_of(Fraction(v)), []).append(i)
    out = {}
    for n, idxs in sorted(levels.items()):
        chi = [0] * len(g.values)
        for i in idxs:
            chi[i] = 1
        out[n] = StepFunction(g.breaks, chi)
    return out


def _branch_steps(operator, g, gauge, a_phi, tag):
    """The level-set half of the proof, for one of g+ or g-.

    Returns (steps, integral of |Tg| as a Fraction, growth integral).
    """
    steps = []
    chis = _level_indicators(g)
    measures = {n: chi.integral() for n, chi in chis.items()}

    total = sum(measures.values())
    steps.append(TraceStep(f"{tag}-levels-cover", float(total), 1.0,
                           total == 1))

    # sandwich, certified piece by piece through the rational brackets
    low_ok = up_ok = True
    low_ratio = 0.0
    up_ratio = 0.0
    for v in g.values:
        v = Fraction(v)
        n = _level_of(v)
        _, hi_n = _e_bracket(n)
        lo_up, _ = _e_bracket(n + 1)
        low_ok &= v >= 1 if n == 0 else v >= hi_n
        up_ok &= v <= lo_up
        low_ratio = max(low_ratio, E ** n / float(v))
        up_ratio = max(up_ratio, float(v) / E ** (n + 1))
    steps.append(TraceStep(f"{tag}-sandwich-lower", low_ratio, 1.0, low_ok))
    steps.append(TraceStep(f"{tag}-sandwich-upper", up_ratio, 1.0, up_ok))

    tg = abs(operator(g))
    t_chis = {n: abs(operator(chi)) for n, chi in chis.items()}

    # pointwise disassembly |Tg| <= sum e^(n+1) |T chi_n|
    envelope = reduce(lambda acc, item: acc + item[1] * (E ** (item[0] + 1)),
                      t_chis.items(),
                      StepFunction.constant(0.0))
    gap = tg.zip_with(envelope, lambda a, b: (float(a), float(b)))
    worst = max(gap.values, key=lambda ab: ab[0] - ab[1])
    steps.append(TraceStep(f"{tag}-pointwise-disassembly", worst[0], worst[1],
                           all(_leq(a, b) for a, b in gap.values)))

    int_tg = tg.integral()
    int_chis = {n: t.integral() for n, t in t_chis.items()}
    rhs_int = sum(E ** (n + 1) * float(m) for n, m in int_chis.items())
    steps.append(TraceStep(f"{tag}-integral-disassembly", float(int_tg),
                           rhs_int, _leq(float(int_tg), rhs_int)))

    # per-level Hoelder plus the hypothesis at p_n = 1 + 1/n
    en_terms = {}
    for n, m in sorted(measures.items()):
        t_int = float(int_chis[n])
        if n == 0:
            steps.append(TraceStep(f"{tag}-level-0-direct", t_int, 1.0,
                                   _leq(t_int, 1.0)))
            en_terms[0] = E * gauge.value(1.0)
            continue
        pn = 1.0 + 1.0 / n
        norm = t_chis[n].lp_norm(pn)
        steps.append(TraceStep(f"{tag}-level-{n}-hoelder", t_int, norm,
                               _leq(t_int, norm)))
        target = gauge.value(E ** n) * float(m) ** (n / (n + 1))
        steps.append(TraceStep(f"{tag}-level-{n}-hypothesis", norm, target,
                               _leq(norm, target)))
        en_terms[n] = E ** (n + 1) * gauge.value(E ** n) * \
            float(m) ** (n / (n + 1))

    en_sum = sum(en_terms.values())
    steps.append(TraceStep(f"{tag}-en-sum", float(int_tg), en_sum,
                           _leq(float(int_tg), en_sum)))

    # split the levels at m(E_n) against e^(-2(n+1))
    small_sum = majorant_sum = large_sum = linear_sum = 0.0
    for n, m in measures.items():
        if float(m) < math.exp(-2.0 * (n + 1)):
            small_sum += en_terms[n]
            majorant_sum += E ** (n + 1) * gauge.value(E ** n) * E ** (-2 * n)
        else:
            large_sum += en_terms[n]
            linear_sum += E ** (n + 1) * gauge.value(E ** n) * float(m)
    steps.append(TraceStep(f"{tag}-small-vs-majorant", small_sum, majorant_sum,
                           _leq(small_sum, majorant_sum)))
    steps.append(TraceStep(f"{tag}-majorant-vs-a", majorant_sum, a_phi,
                           _leq(majorant_sum, a_phi)))
    growth = _growth_integral(g, gauge)
    steps.append(TraceStep(f"{tag}-large-pullout", large_sum,
                           E2 * linear_sum, _leq(large_sum, E2 * linear_sum)))
    steps.append(TraceStep(f"{tag}-large-absorb", E2 * linear_sum,
                           E3 * growth, _leq(E2 * linear_sum, E3 * growth)))

    branch_rhs = a_phi + E3 * growth
    steps.append(TraceStep(f"{tag}-branch-bound", float(int_tg), branch_rhs,
                           _leq(float(int_tg), branch_rhs)))
    return steps, int_tg, growth, tuple(sorted(measures.items()))


def trace_conclusion(operator: OperatorHandle, f: StepFunction,
                     gauge) -> DecompositionTrace:
    """Replay the decomposition on f and check each displayed inequality."""
    a_phi = small_case_constant(gauge)
    big_a = constant_A_phi(gauge)
    half = Fraction(1, 2)

    g_plus = f.positive_part().map(lambda v: Fraction(v) * half + 1)
    g_minus = f.negative_part().map(lambda v: Fraction(v) * half + 1)

    plus_steps, int_plus, growth_plus, plus_levels = _branch_steps(
        operator, g_plus, gauge, a_phi, "plus")
    minus_steps, int_minus, growth_minus, minus_levels = _branch_steps(
        operator, g_minus, gauge, a_phi, "minus")
    steps = plus_steps + minus_steps

    t_half = abs(operator(f * half))
    int_half = t_half.integral()
    steps.append(TraceStep("half-split", float(int_half),
                           float(int_plus + int_minus),
                           int_half <= int_plus + int_minus))

    lifted = abs(f).map(lambda v: Fraction(v) * half + 1)
    growth_lifted = _growth_integral(lifted, gauge)
    steps.append(TraceStep(
        "growth-merge", growth_plus + growth_minus, 2.0 * growth_lifted,
        _leq(growth_plus + growth_minus, 2.0 * growth_lifted)))

    # case split of the lifted integrand at |f|/2 against 1
    big_lhs = big_rhs = small_lhs = 0.0
    small_measure = Fraction(0)
    for ln, v in abs(f).pieces():
        v = Fraction(v)
        halved = v * half + 1
        if v > 2:
            big_lhs += float(ln) * float(halved) * gauge.value(float(halved))
            big_rhs += float(ln) * float(v) * gauge.value(float(v))
        else:
            small_lhs += float(ln) * float(halved) * gauge.value(float(halved))
            small_measure += ln
    phi_two = gauge.value(2)
    steps.append(TraceStep("big-values", big_lhs, big_rhs,
                           _leq(big_lhs, big_rhs)))
    steps.append(TraceStep("small-values", small_lhs,
                           2.0 * phi_two * float(small_measure),
                           _leq(small_lhs, 2.0 * phi_two * float(small_measure))))

    growth_f = _growth_integral(abs(f), gauge)
    steps.append(TraceStep(
        "tail-combined", 2.0 * E3 * growth_lifted,
        2.0 * E3 * growth_f + 4.0 * E3 * phi_two,
        _leq(2.0 * E3 * growth_lifted, 2.0 * E3 * growth_f + 4.0 * E3 * phi_two)))

    tf = abs(operator(f))
    int_tf = tf.integral()
    steps.append(TraceStep("doubling", float(int_tf), 2.0 * float(int_half),
                           int_tf <= 2 * int_half))

    budget = big_a + 4.0 * E3 * growth_f
    steps.append(TraceStep("conclusion", float(int_tf), budget,
                           _leq(float(int_tf), budget)))

    return DecompositionTrace(
        operator=operator.name,
        g_plus=g_plus, g_minus=g_minus,
        plus_levels=plus_levels, minus_levels=minus_levels,
        steps=tuple(steps),
        a_phi=a_phi, constant=big_a, budget=budget,
        final_lhs=float(int_tf))
