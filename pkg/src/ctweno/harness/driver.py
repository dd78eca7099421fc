"""Run a cataloged problem to its stopping time with full telemetry.

The driver owns everything around the core update: Courant-limited step
selection, per-step health checks (positivity, finiteness, divergence),
the plain-text run log, grid dumps at requested intervals, and summary
diagnostics such as conservation drift and throughput.  A run that goes
bad raises RunAbort carrying the step, time and first offending zone so
failures are diagnosable instead of silent.
"""

import csv
import math
import os
import time as _time
from dataclasses import dataclass, field, replace

import numpy as np

from .. import mesh, timestep
from ..pcp import PcpError, PcpStepper
from ..scheme import Scheme
from ..systems import PrimitiveRecoveryError
from . import problems
from .dumpio import write_dump


class RunAbort(RuntimeError):
    """A run stopped early; carries where and why."""

    def __init__(self, reason, step, time, zone=None):
        loc = f" at zone {tuple(zone)}" if zone is not None else ""
        super().__init__(
            f"run aborted at step {step}, t={time:.6g}{loc}: {reason}")
        self.reason = reason
        self.step = step
        self.time = time
        self.zone = tuple(zone) if zone is not None else None


@dataclass
class RunOptions:
    """Knobs a run accepts on top of the problem's own defaults.

    ``pcp`` is "auto" (do what the problem asks), "on" or "off".
    ``dump_every`` is a simulation-time interval; dumps are written only
    when ``out`` names a directory.  ``log`` is an optional callable
    receiving each formatted telemetry line.
    """

    order: int = None
    resolution: object = None
    riemann: str = "llf"
    pcp: object = "auto"
    cfl: float = None
    t_end: float = None
    out: str = None
    dump_every: float = None
    max_steps: int = None
    p_min: float = 1e-3
    characteristic: object = None
    log: object = None
    quicklook: bool = True


@dataclass
class RunResult:
    """Final state plus everything measured along the way."""

    problem: str
    order: int
    grid: object
    system: object
    scheme: object
    state: object
    steps: int
    wall_seconds: float
    zones_per_sec: float
    rows: list
    diagnostics: dict
    dumps: list = field(default_factory=list)
    log_path: str = None


def _want_pcp(setup, choice):
    if choice in (None, "auto"):
        return setup.pcp
    if isinstance(choice, str):
        return choice.lower() == "on"
    return bool(choice)


def _totals(grid, system, state):
    """Volume integrals of the conserved density and energy (fluids)."""
    if not system.uses_zone_update:
        return None, None
    inter = grid.interior()
    dv = float(np.prod(grid.spacing))
    names = system.component_names
    mass = float(state.zones[names.index("rho" if "rho" in names else "dens")]
                 [inter].sum() * dv)
    energy = float(state.zones[names.index("energy")][inter].sum() * dv)
    return mass, energy


def _first_bad_zone(grid, state):
    """Index of the first non-finite interior entry, or None."""
    inter = grid.interior()
    core = state.zones[(slice(None),) + inter]
    if not np.isfinite(core).all():
        flat = np.argwhere(~np.isfinite(core))[0]
        return tuple(int(i) for i in flat[1:])
    for fam in state.faces.values():
        for ax, arr in enumerate(fam):
            inner = arr[grid.interior(grid.face_stagger(ax))]
            if not np.isfinite(inner).all():
                return tuple(int(i) for i in np.argwhere(
                    ~np.isfinite(inner))[0])
    return None


def _fluid_mins(system, scheme, state, floor):
    """Minimum density and pressure over the interior, or (None, None)."""
    if not system.uses_zone_update:
        return None, None
    zones = scheme.face_consistent_zones(state)
    inter = (slice(None),) + scheme.grid.interior()
    prim = system.cons_to_prim(zones[inter], floor=floor)
    return float(prim[0].min()), float(prim[4].min())


def _div_stats(grid, state):
    """Largest |div| over interior faces and the largest |B| to scale it."""
    if "b" not in state.faces:
        return 0.0, 0.0
    faces = state.faces["b"]
    div = mesh.discrete_divergence(grid, faces)
    d = float(np.abs(div[grid.interior()]).max())
    bmax = max(float(np.abs(f[grid.interior(grid.face_stagger(ax))]).max())
               for ax, f in enumerate(faces))
    return d, bmax


def _format_row(row):
    def num(v, fmt):
        return fmt.format(v) if v is not None else "      -    "
    return (f"{row['step']:6d}  {row['t']:.8e}  {row['dt']:.6e}  "
            + num(row["min_rho"], "{:.5e}") + "  "
            + num(row["min_p"], "{:.5e}") + "  "
            + f"{row['theta_lt1']:7d}  {row['max_divb']:.5e}")


LOG_HEADER = ("# step  t               dt            min_rho      "
              "min_p        theta<1  max|divB|")


def _dump_channels(grid, system, scheme, state):
    """Zone-centered interior channels for a grid dump."""
    zones = scheme.face_consistent_zones(state)
    inter = grid.interior()
    ch = {}
    for i, name in enumerate(system.component_names):
        ch[name] = np.ascontiguousarray(zones[i][inter])
    if system.uses_zone_update:
        prim = system.cons_to_prim(zones[(slice(None),) + inter], floor=True)
        ch["prs"] = np.ascontiguousarray(prim[4])
    return ch


def _quicklook(path, grid, channels):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    name = "rho" if "rho" in channels else (
        "dens" if "dens" in channels else "bz")
    data = channels[name]
    if data.ndim == 3:
        data = data[:, :, data.shape[2] // 2]
    fig, ax = plt.subplots(figsize=(5.4, 4.6), dpi=110)
    ext = (grid.lo[0], grid.hi[0], grid.lo[1], grid.hi[1])
    im = ax.imshow(data.T, origin="lower", extent=ext, aspect="auto",
                   cmap="viridis")
    fig.colorbar(im, ax=ax, label=name)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def run(problem, options=None, **overrides):
    """Integrate a problem to its stopping time.

    ``problem`` is a catalog name or a ProblemSetup.  Keyword overrides
    are applied on top of ``options``.  Returns a RunResult; raises
    RunAbort when the solution loses positivity or finiteness.
    """
    opts = options or RunOptions()
    if overrides:
        opts = replace(opts, **overrides)
    setup = problems.setup(problem) if isinstance(problem, str) else problem

    order = opts.order or setup.order
    grid, system, state, tc = setup.build(opts.resolution, order)
    t_end = tc.t_end if opts.t_end is None else float(opts.t_end)
    cfl = tc.cfl if opts.cfl is None else float(opts.cfl)
    hook = (setup.ghost_hook_for(grid, system)
            if setup.ghost_hook_for is not None else None)
    scheme = Scheme(grid, system, order, riemann=opts.riemann, bc=setup.bc,
                    characteristic=opts.characteristic, ghost_hook=hook)
    protect = _want_pcp(setup, opts.pcp)
    if protect and not system.uses_zone_update:
        raise ValueError(
            "positivity protection applies to fluid systems only")
    stepper = PcpStepper(scheme, p_min=opts.p_min) if protect else None
    integ = timestep.Integrator(scheme, pcp=stepper)

    out_dir = opts.out
    log_lines = []
    log_path = None
    dumps = []
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        log_path = os.path.join(out_dir, "run_log.txt")

    def emit(line):
        log_lines.append(line)
        if opts.log is not None:
            opts.log(line)

    emit(LOG_HEADER)

    def dump(idx):
        if not out_dir:
            return
        ch = _dump_channels(grid, system, scheme, state)
        path = os.path.join(out_dir, f"{setup.name}_{idx:04d}.ict")
        write_dump(path, ch, grid.spacing, state.time)
        dumps.append(path)
        return ch

    mass0, energy0 = _totals(grid, system, state)
    nzones = int(np.prod(grid.shape))
    rows = []
    min_rho_run = math.inf
    min_p_run = math.inf
    max_divb_norm = 0.0
    theta_fracs = []
    next_dump = (opts.dump_every if opts.dump_every else math.inf)
    dump_idx = 0
    if out_dir and opts.dump_every:
        dump(dump_idx)
        dump_idx += 1

    step = 0
    eps_t = 1e-12 * max(1.0, abs(t_end))
    wall0 = _time.perf_counter()
    while t_end - state.time > eps_t:
        if opts.max_steps is not None and step >= opts.max_steps:
            break
        try:
            rhs0 = scheme.full_rhs(state, want_fluxes=protect,
                                   guarded=protect)
        except PrimitiveRecoveryError as exc:
            raise RunAbort(str(exc), step, state.time) from exc
        dt = timestep.cfl_dt(grid, rhs0.max_speeds, cfl)
        if not math.isfinite(dt) or dt <= 0.0:
            raise RunAbort(f"non-positive time step {dt}", step, state.time)
        dt = min(dt, t_end - state.time)
        try:
            state = integ.advance(state, dt, rhs0=rhs0)
        except (PrimitiveRecoveryError, PcpError) as exc:
            raise RunAbort(str(exc), step, state.time) from exc
        step += 1

        bad = _first_bad_zone(grid, state)
        if bad is not None:
            raise RunAbort("non-finite state detected", step, state.time,
                           zone=bad)
        try:
            min_rho, min_p = _fluid_mins(system, scheme, state,
                                         floor=protect)
        except PrimitiveRecoveryError as exc:
            raise RunAbort(str(exc), step, state.time) from exc
        divb, bmax = _div_stats(grid, state)
        if bmax > 0.0:
            max_divb_norm = max(
                max_divb_norm, divb * min(grid.spacing) / bmax)
        lowered = (integ.last_pcp_stats or {}).get("lowered", 0)
        theta_fracs.append(lowered / nzones)
        if min_rho is not None:
            min_rho_run = min(min_rho_run, min_rho)
            min_p_run = min(min_p_run, min_p)

        row = {"step": step, "t": state.time, "dt": dt,
               "min_rho": min_rho, "min_p": min_p,
               "theta_lt1": int(lowered), "max_divb": divb,
               "max_b": bmax}
        rows.append(row)
        emit(_format_row(row))

        if state.time >= next_dump - eps_t:
            dump(dump_idx)
            dump_idx += 1
            next_dump += opts.dump_every

    wall = _time.perf_counter() - wall0
    massf, energyf = _totals(grid, system, state)

    final_channels = dump(dump_idx) if out_dir else None
    if out_dir:
        with open(log_path, "w") as fh:
            fh.write("\n".join(log_lines) + "\n")
        with open(os.path.join(out_dir, "steps.csv"), "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=["step", "t", "dt", "min_rho",
                                               "min_p", "theta_lt1",
                                               "max_divb", "max_b"])
            w.writeheader()
            w.writerows(rows)
        if opts.quicklook and final_channels:
            _quicklook(os.path.join(out_dir, f"{setup.name}_final.png"),
                       grid, final_channels)

    def drift(a, b):
        if a is None:
            return None
        return abs(b - a) / max(abs(a), 1e-300)

    diagnostics = {
        "t_final": state.time,
        "mass_initial": mass0, "mass_final": massf,
        "energy_initial": energy0, "energy_final": energyf,
        "mass_drift": drift(mass0, massf),
        "energy_drift": drift(energy0, energyf),
        "min_rho_run": None if math.isinf(min_rho_run) else min_rho_run,
        "min_p_run": None if math.isinf(min_p_run) else min_p_run,
        "max_divb_norm": max_divb_norm,
        "theta_frac_avg": (sum(theta_fracs) / len(theta_fracs)
                           if theta_fracs else 0.0),
        "protected": protect,
        "has_inflow": hook is not None,
    }
    return RunResult(
        problem=setup.name, order=order, grid=grid, system=system,
        scheme=scheme, state=state, steps=step, wall_seconds=wall,
        zones_per_sec=(nzones * step / wall if wall > 0 and step else 0.0),
        rows=rows, diagnostics=diagnostics, dumps=dumps, log_path=log_path)


def bench(problem, order=None, resolution=None, steps=5, options=None,
          **overrides):
    """Measure zones updated per second over a few fixed steps.

    One untimed step absorbs compilation and cache warmup; the reported
    figure is interior zones times timed steps over the wall time of the
    timed stretch.  Throughput is informational, not a contract.
    """
    opts = options or RunOptions()
    if overrides:
        opts = replace(opts, **overrides)
    setup = problems.setup(problem) if isinstance(problem, str) else problem
    order = order or opts.order or setup.order
    grid, system, state, tc = setup.build(resolution or opts.resolution,
                                          order)
    hook = (setup.ghost_hook_for(grid, system)
            if setup.ghost_hook_for is not None else None)
    scheme = Scheme(grid, system, order, riemann=opts.riemann, bc=setup.bc,
                    characteristic=opts.characteristic, ghost_hook=hook)
    protect = _want_pcp(setup, opts.pcp)
    stepper = PcpStepper(scheme, p_min=opts.p_min) if protect else None
    integ = timestep.Integrator(scheme, pcp=stepper)
    cfl = tc.cfl if opts.cfl is None else float(opts.cfl)

    def one_step():
        nonlocal state
        rhs0 = scheme.full_rhs(state, want_fluxes=protect, guarded=protect)
        dt = timestep.cfl_dt(grid, rhs0.max_speeds, cfl)
        state = integ.advance(state, dt, rhs0=rhs0)

    one_step()
    t0 = _time.perf_counter()
    for _ in range(steps):
        one_step()
    elapsed = _time.perf_counter() - t0
    nzones = int(np.prod(grid.shape))
    return {
        "problem": setup.name, "order": order,
        "resolution": tuple(grid.shape), "steps": steps,
        "seconds": elapsed,
        "zones_per_sec": nzones * steps / elapsed if elapsed > 0 else 0.0,
    }
