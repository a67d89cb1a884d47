"""Command-line front end: build plans, dump sequences, run the suites.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for
configuration or resource problems.  Reports are canonical JSON, so a
rerun with the same config (seed included) is byte-identical.
"""

import argparse
import math
import random
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from .averages import (RotationSystem, ShiftSystem, average_along,
                       smallest_qualifying_u, sweepout_witness)
from .config import PRESETS, load_config, preset_config
from .construction import build_plan, load_plan
from .density import (density_of_shift_set, stage_lattice_function,
                      witness_density)
from .errors import (ConfigError, GaugeGrowthError, MissingPlanError,
                     ResourceLimitError, SweepoutError)
from .extrapolation import (check_hypothesis, constant_A_phi,
                            admissibility_constant,
                            dyadic_averaging_operator, identity_operator,
                            random_step_function, small_case_constant,
                            trace_conclusion)
from .density import LatticeFunction
from .reporting import Check, Report, render_csv, write_report
from .sequences import dump_sequence
from .series import (default_p_grid, lemma_grid, theorem_a_series,
                     theorem_b_grid)
from .stepfn import StepFunction

SUITES = ("perturbation", "density", "sweepout", "series", "yano", "all")

#: lemma grids power exact roots per term; past this they crawl
LEMMA_SERIES_U_MAX = 40


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------


def _suite_perturbation(cfg, plan):
    checks = []
    for c in plan.constraint_report():
        checks.append(Check(f"constraint-k={c.k}-{c.name}", c.detail, None,
                            c.ok))
    # dilution is promised at the pre-insertion cuts n_{k+1}-1; the tail
    # row sits right after the last insertion and is figure data only
    rows = [row for row in plan.checkpoints() if not row.tail]
    for row in rows:
        bound = 2 * plan.schedule.insertion_fraction(row.u)
        checks.append(Check(f"checkpoint-k={row.k}-ratio", row.ratio, bound,
                            not row.ratio > bound))
    ratios = [row.ratio for row in rows]
    if ratios:
        checks.append(Check(
            "checkpoint-ratios-nonincreasing", ratios[-1], ratios[0],
            all(a >= b for a, b in zip(ratios, ratios[1:]))))

    # closed-form counting against plain enumeration, when enumerable
    upto = 2 * plan.intervals[-1].n
    merged_size = plan.sequence.count(upto) + plan.delta_count(upto)
    if merged_size <= cfg.element_cap:
        merged = plan.perturbed().elements_in(1, upto)
        inserted = len(merged) - plan.sequence.count(upto)
        checks.append(Check("count-oracle", plan.delta_count(upto), inserted,
                            plan.delta_count(upto) == inserted))
    return checks, plan


def _suite_density(cfg, schedule):
    checks = []
    witnesses = []
    for u in range(1, cfg.u_max + 1):
        w = witness_density(schedule, u)
        witnesses.append(w)
        envelope = Fraction(w.modulus + 1, w.modulus)
        checks.append(Check(f"density-u={u}-envelope", w.value, envelope,
                            w.ok))
        if w.is_unit:
            checks.append(Check(f"density-u={u}-unit-value", w.value, 1,
                                True))
        if w.modulus <= 10 ** 6:
            fn = stage_lattice_function(schedule, u).apply(
                schedule.density_functional)
            drift = abs(float(fn.finite_density(1000 * w.modulus))
                        - float(w.value))
            checks.append(Check(f"density-u={u}-finite-drift", drift, 1e-3,
                                drift <= 1e-3))
    return checks, witnesses


def _suite_sweepout(cfg, plan):
    checks = []
    u_star = smallest_qualifying_u(plan)
    checks.append(Check("size-condition-smallest-u", u_star,
                        max(plan.stages_covered()), u_star is not None))
    if u_star is None:
        return checks, None
    wit = sweepout_witness(plan, u_star)
    checks.append(Check(f"sweepout-u={u_star}", wit.achieved, wit.bound,
                        wit.ok))
    dens = density_of_shift_set(plan, u_star)
    checks.append(Check(f"shift-set-density-u={u_star}", dens, 1, dens == 1))
    for u in plan.stages_covered():
        lo, hi = plan.schedule.stage_bounds(u)
        if hi - 1 > plan.k_max:
            continue       # stage only partially built
        m = plan.schedule.modulus(u)
        residues = sorted(ch.residue for ch in plan.intervals if ch.u == u)
        checks.append(Check(f"residue-coverage-u={u}", len(set(residues)), m,
                            residues == list(range(m))))
    return checks, wit


def _suite_series(cfg, schedule):
    checks = []
    if schedule.variant == "theorem-a":
        rep = theorem_a_series(schedule, cfg.series_u_max)
        for row in rep.rows:
            checks.append(Check(f"term-u={row.u}", row.term, row.bound,
                                row.ok))
        checks.append(Check("partial-sum", rep.partial_sum,
                            rep.comparison_bound,
                            rep.partial_sum <= rep.comparison_bound))
        return checks, [rep]
    if schedule.variant == "theorem-b":
        grid = theorem_b_grid(schedule, cfg.series_u_max, cfg.grid_depth)
        for rep in grid.reports:
            checks.append(Check(f"sum-p={rep.p}", rep.partial_sum,
                                rep.comparison_bound,
                                rep.all_ok and rep.meta["sum_vs_head"]))
            feed_lhs = 2.0 * rep.partial_sum ** (1.0 / float(rep.p))
            feed_rhs = rep.meta["phi_target"] + grid.a_prime
            checks.append(Check(f"feed-p={rep.p}", feed_lhs, feed_rhs,
                                feed_lhs <= feed_rhs + 1e-9))
        ks = [rep.meta["K"] for rep in grid.reports]
        checks.append(Check("tail-constant-p-independent", min(ks), max(ks),
                            grid.k_p_independent))
        return checks, list(grid.reports)
    reports, monotone = lemma_grid(
        schedule, min(cfg.series_u_max, LEMMA_SERIES_U_MAX), cfg.grid_depth)
    for rep in reports:
        checks.append(Check(f"sum-p={rep.p}", rep.partial_sum,
                            rep.comparison_bound,
                            rep.all_ok and rep.meta["sum_vs_head"]))
    ordered = sorted(reports, key=lambda r: r.p)
    checks.append(Check("sums-monotone-in-p", ordered[-1].partial_sum,
                        ordered[0].partial_sum, monotone))
    return checks, list(reports)


def _signed_example() -> StepFunction:
    return StepFunction([0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1],
                        [3, 0, -5, 0])


def _suite_yano(cfg, schedule):
    gauge = schedule.gauge
    try:
        c = admissibility_constant(gauge)
    except GaugeGrowthError as e:
        # the tracer needs the sqrt envelope; report and stop here
        return [Check("sqrt-envelope-constant", str(e), None, False)], None
    checks = [Check("sqrt-envelope-constant", c, None, True)]
    a_phi = small_case_constant(gauge)
    big_a = constant_A_phi(gauge)
    checks.append(Check("small-measure-constant", a_phi, None, True))
    checks.append(Check("l1-constant", big_a, 8 * math.e ** 3,
                        big_a >= 8 * math.e ** 3))

    grid = default_p_grid(cfg.grid_depth)
    example = _signed_example()
    rng = random.Random(cfg.seed)
    funcs = [random_step_function(rng) for _ in range(cfg.suite_functions)]
    example_trace = None
    for op in (identity_operator(), dyadic_averaging_operator(10)):
        tr = trace_conclusion(op, example, gauge)
        example_trace = tr
        checks.append(Check(f"{op.name}-example-trace", tr.final_lhs,
                            tr.budget, tr.ok))
        hyp = sum(1 for f in funcs
                  if check_hypothesis(op, f, gauge, grid).all_ok)
        checks.append(Check(f"{op.name}-hypothesis-suite", hyp, len(funcs),
                            hyp == len(funcs)))
        traced = sum(1 for f in funcs if trace_conclusion(op, f, gauge).ok)
        checks.append(Check(f"{op.name}-trace-suite", traced, len(funcs),
                            traced == len(funcs)))
    return checks, example_trace


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _out_dir(cfg) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_construct(cfg) -> int:
    plan = build_plan(cfg.build_schedule(), cfg.build_sequence(), cfg.k_max)
    out = _out_dir(cfg)
    plan.save(out / "plan.json")
    upto = 2 * plan.intervals[-1].n
    total = plan.sequence.count(upto) + plan.delta_count(upto)
    if total > cfg.element_cap:
        raise ResourceLimitError(
            f"dumping {total} elements breaks the element_cap constraint "
            f"({cfg.element_cap}); raise it or lower k_max")
    dump_sequence(plan.perturbed().elements_in(1, upto), out / "elements.txt")
    print(f"plan: {out / 'plan.json'} ({plan.k_max + 1} intervals, "
          f"stages {plan.stages_covered()})")
    print(f"elements: {out / 'elements.txt'} ({total} lines)")
    return 0


def _resolve_plan(cfg, plan_arg):
    path = Path(plan_arg) if plan_arg else Path(cfg.out) / "plan.json"
    if not path.exists():
        raise MissingPlanError(f"no plan at {path}; run construct first")
    return load_plan(path)


def cmd_verify(cfg, suite: str, plan_arg, figures: bool) -> int:
    schedule = cfg.build_schedule()
    plan = None
    if suite in ("perturbation", "sweepout", "all"):
        plan = _resolve_plan(cfg, plan_arg)
    checks = []
    payloads = {}
    if suite in ("perturbation", "all"):
        got, payloads["perturbation"] = _suite_perturbation(cfg, plan)
        checks += got
    if suite in ("density", "all"):
        got, payloads["density"] = _suite_density(cfg, schedule)
        checks += got
    if suite in ("sweepout", "all"):
        got, payloads["sweepout"] = _suite_sweepout(cfg, plan)
        checks += got
    if suite in ("series", "all"):
        got, payloads["series"] = _suite_series(cfg, schedule)
        checks += got
    if suite in ("yano", "all"):
        got, payloads["yano"] = _suite_yano(cfg, schedule)
        checks += got

    report = Report(suite, tuple(checks))
    out = _out_dir(cfg)
    write_report(report, out / f"report-{suite}.json")
    for c in checks:
        print(c.line())
    s = report.summary()
    print(f"{s['passed']}/{s['checks']} checks passed; "
          f"report-{suite}.json written to {out}")
    if figures:
        _render_figures(payloads, out)
    return 0 if report.all_pass else 1


def _render_figures(payloads, out: Path):
    from . import plots

    if payloads.get("perturbation") is not None:
        plots.save_checkpoint_figure(payloads["perturbation"],
                                     out / "checkpoints.png")
    if payloads.get("density"):
        plots.save_density_figure(payloads["density"], out / "density.png")
    if payloads.get("sweepout") is not None:
        plots.save_sweepout_figure(payloads["sweepout"], out / "sweepout.png")
    if payloads.get("series"):
        plots.save_series_figure(payloads["series"], out / "series.png")
    if payloads.get("yano") is not None:
        plots.save_trace_figure(payloads["yano"], out / "trace.png")


def _average_function(name: str, system: str):
    if name == "one":
        if system == "shift":
            return LatticeFunction.periodic(1, {0: 1})
        return StepFunction.constant(1)
    if name == "delta":
        if system != "shift":
            raise ConfigError("delta averages run on the shift system")
        return LatticeFunction.finite({0: 1})
    if name == "half":
        if system == "shift":
            return LatticeFunction.periodic(2, {0: 1})
        return StepFunction([0, Fraction(1, 2), 1], [1, 0])
    raise ConfigError(f"unknown function {name!r} (one, delta, half)")


def cmd_average(cfg, args) -> int:
    plan = None
    plan_path = Path(args.plan) if args.plan else Path(cfg.out) / "plan.json"
    if plan_path.exists():
        plan = load_plan(plan_path)
    sequence = plan.perturbed() if plan else cfg.build_sequence()

    system = ShiftSystem() if args.system == "shift" else RotationSystem()
    f = _average_function(args.function, args.system)
    x = int(args.x) if args.system == "shift" else Fraction(args.x)

    if args.cutoffs:
        cutoffs = sorted(int(t) for t in args.cutoffs.split(","))
    elif plan:
        cutoffs = [2 * ch.n for ch in plan.intervals]
    else:
        raise ConfigError("no plan found; pass --cutoffs explicitly")

    rows = []
    for n in cutoffs:
        avg = average_along(sequence, system, f, x, n)
        rows.append((n, sequence.count(n), float(avg)))
    out = _out_dir(cfg)
    csv_path = out / "averages.csv"
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(render_csv(rows, "N,count,average"))
    print(f"averages: {csv_path} ({len(rows)} rows)")
    if not args.no_figures:
        from . import plots
        plots.save_average_figure(rows, out / "averages.png")
    return 0


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--config", help="path to a JSON run configuration")
    p.add_argument("--preset", choices=sorted(PRESETS),
                   help="use a shipped configuration instead of --config")
    p.add_argument("--out", help="output directory (default from config)")
    p.add_argument("--u-max", type=int, dest="u_max",
                   help="override the block range cap")
    p.add_argument("--k-max", type=int, dest="k_max",
                   help="override the interval count cap")
    p.add_argument("--seed", type=int, help="override the RNG seed")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sweepout",
        description="build perturbation plans and verify the inequality "
                    "suites behind them")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct",
                       help="select intervals and dump the perturbed set")
    _add_common(c)

    v = sub.add_parser("verify", help="run a verification suite")
    _add_common(v)
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--plan", help="plan file (default: <out>/plan.json)")
    v.add_argument("--no-figures", action="store_true",
                   help="skip figure rendering")

    a = sub.add_parser("average", help="orbit averages along the sequence")
    _add_common(a)
    a.add_argument("--system", choices=("shift", "rotation"),
                   default="shift")
    a.add_argument("--function", choices=("one", "delta", "half"),
                   default="one")
    a.add_argument("--x", default="0", help="orbit start point")
    a.add_argument("--cutoffs", help="comma-separated N values")
    a.add_argument("--plan", help="plan file (default: <out>/plan.json)")
    a.add_argument("--no-figures", action="store_true")
    return p


def _load_config(args):
    if args.config and args.preset:
        raise ConfigError("pass either --config or --preset, not both")
    if args.config:
        cfg = load_config(args.config)
    else:
        cfg = preset_config(args.preset or "theorem-a")
    overrides = {}
    for name in ("u_max", "k_max", "seed", "out"):
        v = getattr(args, name, None)
        if v is not None:
            overrides[name] = v
    return replace(cfg, **overrides) if overrides else cfg


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        if args.command == "construct":
            return cmd_construct(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite, args.plan,
                              not args.no_figures)
        return cmd_average(cfg, args)
    except SweepoutError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
