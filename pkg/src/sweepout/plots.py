"""Figure output for the report path.

Everything renders through the Agg backend straight to files; there is
no interactive mode.  Figures carry fixed metadata so reruns do not
churn bytes gratuitously.
"""

import matplotlib

matplotlib.use("Agg")

from matplotlib import pyplot as plt

_META = {"Software": "sweepout"}


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_META)
    plt.close(fig)


def save_checkpoint_figure(plan, path):
    """Perturbation ratio at each checkpoint against 2 R(u)."""
    rows = plan.checkpoints()
    xs = [row.upto for row in rows]
    ys = [float(row.ratio) for row in rows]
    bounds = [2.0 * float(plan.schedule.insertion_fraction(row.u))
              for row in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.loglog(xs, ys, "o-", label="ratio")
    ax.loglog(xs, bounds, "s--", label="2 R(u)")
    ax.set_xlabel("N")
    ax.set_ylabel("inserted / base count")
    ax.set_title("checkpoint perturbation ratios")
    ax.legend()
    _finish(fig, path)


def save_density_figure(witnesses, path):
    """Witness density per block with the floor envelope."""
    us = [w.u for w in witnesses]
    vals = [float(w.value) for w in witnesses]
    tops = [1.0 + 1.0 / w.modulus for w in witnesses]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(us, vals, "o-", label="density")
    ax.plot(us, tops, "s--", label="1 + 1/M(u)")
    ax.axhline(1.0, color="gray", lw=0.8)
    ax.set_xlabel("u")
    ax.set_ylabel("mean over one period")
    ax.set_title("stage witness density")
    ax.set_xticks(us)
    ax.legend()
    _finish(fig, path)


def save_sweepout_figure(witness, path):
    """Per-shift maxima against the stage bound."""
    ys = [float(v) for v in witness.per_shift_max]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(range(len(ys)), ys, ".", label="per-shift max")
    ax.axhline(float(witness.bound), color="red", ls="--", label="bound")
    ax.set_xlabel(f"shift class mod {witness.modulus}")
    ax.set_ylabel("max average")
    ax.set_title(f"sweep-out witness, u={witness.u}")
    ax.legend()
    _finish(fig, path)


def save_series_figure(reports, path):
    """Per-term rows for a single report, sums over p for a grid."""
    if not isinstance(reports, (list, tuple)):
        reports = [reports]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    if len(reports) == 1 and reports[0].p is None:
        rep = reports[0]
        xs = [row.u for row in rep.rows]
        ax.semilogy(xs, [max(row.term, 1e-300) for row in rep.rows],
                    ".", label="term")
        ax.semilogy(xs, [row.bound for row in rep.rows], "-", lw=0.8,
                    label="bound")
        ax.set_xlabel("u")
        ax.set_title(f"{rep.variant} per-term series")
    else:
        ps = [float(rep.p) for rep in reports]
        ax.plot(ps, [rep.partial_sum for rep in reports], "o-",
                label="partial sum")
        ax.plot(ps, [rep.comparison_bound for rep in reports], "s--",
                label="bound")
        ax.set_xlabel("p")
        ax.set_title(f"{reports[0].variant} sums over the p grid")
    ax.legend()
    _finish(fig, path)


def save_trace_figure(trace, path):
    """Each traced inequality as an lhs/rhs pair, in proof order."""
    names = [s.name for s in trace.steps]
    lhs = [max(s.lhs, 1e-12) for s in trace.steps]
    rhs = [max(s.rhs, 1e-12) for s in trace.steps]
    xs = range(len(names))
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    ax.semilogy(xs, rhs, "s", label="rhs", color="tab:gray")
    ax.semilogy(xs, lhs, ".", label="lhs",
                color="tab:blue" if trace.ok else "tab:red")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, rotation=90, fontsize=6)
    ax.set_title(f"decomposition trace, T = {trace.operator}")
    ax.legend()
    _finish(fig, path)


def save_average_figure(rows, path):
    """Averages against the cutoff; rows are (N, count, average)."""
    xs = [row[0] for row in rows]
    ys = [row[2] for row in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.semilogx(xs, ys, "o-")
    ax.set_xlabel("N")
    ax.set_ylabel("average")
    ax.set_title("orbit averages along the sequence")
    _finish(fig, path)
