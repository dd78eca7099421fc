"""Mesh-refinement accuracy measurement.

Runs a problem with a known exact solution across a ladder of meshes,
measures L1 and Linf errors of one variable at the stopping time, and
reports the observed orders from successive log ratios.  For spatial
orders above the accuracy of the time integrator, the Courant number
shrinks with resolution so the temporal error refines at least as fast
as the spatial one and never pollutes the measurement.

Errors are taken on zone point values: the staggered components are
interpolated to centers at the full design order of the scheme, then
compared with the exact point solution over the interior.
"""

import csv
import math
import os
from dataclasses import dataclass

import numpy as np

from .. import timestep
from . import problems
from .driver import RunOptions, run


@dataclass(frozen=True)
class ConvergenceRow:
    """One refinement level: errors plus orders against the previous row."""

    resolution: tuple
    l1: float
    l1_order: float       # None on the first row
    linf: float
    linf_order: float     # None on the first row


def measured_orders(resolutions, errors):
    """Observed orders from successive error ratios.

    ``resolutions`` may be ints or tuples (the first axis count is what
    scales); the first entry has no predecessor so its order is None.
    Exact for errors behaving as C*h^r: the returned values equal r to
    rounding.
    """
    ns = [float(r[0] if isinstance(r, (tuple, list)) else r)
          for r in resolutions]
    errs = [float(e) for e in errors]
    if len(ns) != len(errs):
        raise ValueError("resolutions and errors must pair up")
    out = [None]
    for i in range(1, len(ns)):
        ratio = ns[i] / ns[i - 1]
        if ratio <= 1.0:
            raise ValueError("resolutions must be strictly increasing")
        if errs[i] == 0.0:
            out.append(math.inf)
        else:
            out.append(math.log(errs[i - 1] / errs[i]) / math.log(ratio))
    return out


def refinement_cfl(order, cfl0, ratio):
    """Courant number for a mesh ``ratio`` times finer than the base.

    Orders up to the time integrator's own accuracy keep the Courant
    number fixed.  Beyond that, every mesh doubling also shrinks the
    step by the extra factor that makes temporal error refine at the
    spatial rate, compounded continuously for non-doubling ratios.
    """
    if ratio <= 0:
        raise ValueError("ratio must be positive")
    doublings = math.log2(ratio)
    return cfl0 * (timestep.refine_factor(order) ** doublings) * ratio


def converge(problem, order, resolutions, variable=None, cfl0=None,
             riemann="llf", refine_dt=True, progress=None):
    """Error table over a resolution ladder.

    ``problem`` is a catalog name or ProblemSetup with an exact
    solution.  ``resolutions`` is an increasing list of ints (or
    per-axis tuples).  Returns a list of ConvergenceRow.  Repeated
    invocations produce identical tables; there is no nondeterminism in
    the update.
    """
    setup = problems.setup(problem) if isinstance(problem, str) else problem
    if setup.exact is None:
        raise ValueError(
            f"{setup.name} has no exact solution to measure errors against")
    var = variable or setup.error_variable

    base = float(resolutions[0] if not isinstance(resolutions[0],
                                                  (tuple, list))
                 else resolutions[0][0])
    l1s, linfs, res_used = [], [], []
    for res in resolutions:
        n = float(res if not isinstance(res, (tuple, list)) else res[0])
        cfl_base = cfl0 if cfl0 is not None else setup.cfl
        cfl = (refinement_cfl(order, cfl_base, n / base)
               if refine_dt else cfl_base)
        result = run(setup, RunOptions(order=order, resolution=res,
                                       cfl=cfl, riemann=riemann,
                                       quicklook=False))
        ci = result.system.component_names.index(var)
        view = result.scheme.zone_point_view(result.state)
        exact = setup.exact(result.grid, result.system, result.state.time)
        diff = np.abs(view[ci] - exact[ci])[result.grid.interior()]
        l1s.append(float(diff.mean()))
        linfs.append(float(diff.max()))
        res_used.append(tuple(result.grid.shape))
        if progress is not None:
            progress(f"{setup.name} order {order} {result.grid.shape}: "
                     f"L1={l1s[-1]:.6e}  Linf={linfs[-1]:.6e}")

    o1 = measured_orders(resolutions, l1s)
    oinf = measured_orders(resolutions, linfs)
    return [ConvergenceRow(res_used[i], l1s[i], o1[i], linfs[i], oinf[i])
            for i in range(len(res_used))]


def format_table(rows):
    """Human-readable convergence table."""
    dim = len(rows[0].resolution)
    lines = [f"{'mesh':>12}  {'L1 error':>13}  {'L1 order':>9}  "
             f"{'Linf error':>13}  {'Linf order':>10}"]
    for r in rows:
        mesh = "x".join(str(n) for n in r.resolution)
        if dim >= 2 and len(set(r.resolution)) == 1:
            mesh = f"{r.resolution[0]}^{dim}"
        o1 = f"{r.l1_order:9.3f}" if r.l1_order is not None else "        -"
        oi = (f"{r.linf_order:10.3f}" if r.linf_order is not None
              else "         -")
        lines.append(f"{mesh:>12}  {r.l1:13.6e}  {o1}  {r.linf:13.6e}  {oi}")
    return "\n".join(lines)


def write_report(rows, out_dir, title):
    """Delimited table plus a log-log error figure in ``out_dir``."""
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "convergence.csv")
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["resolution", "l1", "l1_order", "linf", "linf_order"])
        for r in rows:
            w.writerow(["x".join(str(n) for n in r.resolution),
                        f"{r.l1:.16e}",
                        "" if r.l1_order is None else f"{r.l1_order:.6f}",
                        f"{r.linf:.16e}",
                        "" if r.linf_order is None
                        else f"{r.linf_order:.6f}"])

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = np.array([r.resolution[0] for r in rows], dtype=float)
    l1 = np.array([r.l1 for r in rows])
    linf = np.array([r.linf for r in rows])
    fig, ax = plt.subplots(figsize=(5.2, 4.2), dpi=110)
    ax.loglog(ns, l1, "o-", label="L1")
    ax.loglog(ns, linf, "s--", label="Linf")
    if len(rows) >= 2 and rows[-1].l1_order is not None:
        slope = rows[-1].l1_order
        ref = l1[0] * (ns / ns[0]) ** (-round(slope))
        ax.loglog(ns, ref, "k:", label=f"slope {-round(slope)}")
    ax.set_xlabel("zones per axis")
    ax.set_ylabel("error")
    ax.set_title(title)
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    png_path = os.path.join(out_dir, "convergence.png")
    fig.savefig(png_path)
    plt.close(fig)
    return csv_path, png_path
