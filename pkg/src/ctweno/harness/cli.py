"""Command-line front end.

    ctweno run --config run.ini [--order N] [--pcp on|off] ...
    ctweno converge --problem alfvenWave --order 5 --levels 3
    ctweno bench --problem mhdOrszagTang --order 5
    ctweno weno selftest
    ctweno problems

Run telemetry goes to stdout and, when an output directory is set, to
run_log.txt inside it along with grid dumps, a steps.csv table and a
quicklook figure of the final state.
"""

import sys

import click

from .. import weno
from . import problems
from .config import load_config, parse_resolution
from .converge import converge as _converge
from .converge import format_table, write_report
from .driver import RunAbort, RunOptions, bench as _bench, run as _run


@click.group()
def main():
    """High-order structured-mesh solver for curl-pair systems."""


@main.command("problems")
def list_problems():
    """List the cataloged problem names."""
    for name in problems.problem_names():
        s = problems.setup(name)
        mesh = "x".join(str(n) for n in s.resolution)
        click.echo(f"{name:16s} {s.system_name:5s} {mesh:>12s}  "
                   f"order {s.order}  t_end {s.t_end:g}")


@main.command("run")
@click.option("--config", "config_path", type=click.Path(exists=True),
              help="INI config file; flags below override it.")
@click.option("--problem", help="Catalog problem name.")
@click.option("--order", type=int, help="Spatial order: 3, 5, 7 or 9.")
@click.option("--pcp", type=click.Choice(["on", "off", "auto"]),
              help="Positivity protection (default: problem's choice).")
@click.option("--riemann", type=click.Choice(["llf", "hll"]),
              help="Multidimensional Riemann solver flavor.")
@click.option("--out", type=click.Path(), help="Output directory.")
@click.option("--resolution", help="Zones per axis: N or NxM or NxMxK.")
@click.option("--t-end", type=float, help="Override stopping time.")
@click.option("--cfl", type=float, help="Override Courant number.")
@click.option("--dump-every", type=float,
              help="Simulation-time interval between grid dumps.")
@click.option("--max-steps", type=int, help="Hard cap on step count.")
@click.option("--quiet", is_flag=True, help="Suppress per-step lines.")
def run_cmd(config_path, problem, order, pcp, riemann, out, resolution,
            t_end, cfl, dump_every, max_steps, quiet):
    """Integrate one problem to its stopping time."""
    if config_path:
        try:
            name, opts = load_config(config_path)
        except ValueError as exc:
            raise click.ClickException(str(exc))
    else:
        name, opts = None, RunOptions()
    if problem:
        name = problem
    if name is None:
        raise click.ClickException("give --problem or a --config with one")
    if order is not None:
        opts.order = order
    if pcp is not None:
        opts.pcp = pcp
    if riemann is not None:
        opts.riemann = riemann
    if out is not None:
        opts.out = out
    if resolution is not None:
        try:
            opts.resolution = parse_resolution(resolution)
        except ValueError as exc:
            raise click.ClickException(str(exc))
    if t_end is not None:
        opts.t_end = t_end
    if cfl is not None:
        opts.cfl = cfl
    if dump_every is not None:
        opts.dump_every = dump_every
    if max_steps is not None:
        opts.max_steps = max_steps
    if not quiet:
        opts.log = click.echo

    try:
        result = _run(name, opts)
    except (RunAbort, ValueError) as exc:
        raise click.ClickException(str(exc))

    d = result.diagnostics
    click.echo(f"{result.problem}: {result.steps} steps to "
               f"t={d['t_final']:.6g} in {result.wall_seconds:.2f} s "
               f"({result.zones_per_sec:.3g} zones/s)")
    if d["mass_drift"] is not None:
        click.echo(f"  mass drift {d['mass_drift']:.3e}, "
                   f"energy drift {d['energy_drift']:.3e}, "
                   f"min rho {d['min_rho_run']:.3e}, "
                   f"min p {d['min_p_run']:.3e}")
    click.echo(f"  max normalized divergence {d['max_divb_norm']:.3e}")
    if result.log_path:
        click.echo(f"  outputs under {opts.out}")


@main.command("converge")
@click.option("--problem", required=True, help="Problem with an exact "
              "solution (cedPlaneWave, alfvenWave).")
@click.option("--order", type=int, required=True)
@click.option("--levels", type=int, default=3, show_default=True,
              help="Number of meshes, each doubling the base.")
@click.option("--base", type=int, default=None,
              help="Zones per axis on the coarsest mesh.")
@click.option("--variable", default=None,
              help="Component to measure (default: problem's choice).")
@click.option("--cfl", type=float, default=None)
@click.option("--out", type=click.Path(), default=None,
              help="Directory for convergence.csv and convergence.png.")
def converge_cmd(problem, order, levels, base, variable, cfl, out):
    """Measure L1/Linf orders over a ladder of meshes."""
    if base is None:
        base = 16
    resolutions = [base * (2 ** i) for i in range(levels)]
    try:
        rows = _converge(problem, order, resolutions, variable=variable,
                         cfl0=cfl, progress=click.echo)
    except (RunAbort, ValueError) as exc:
        raise click.ClickException(str(exc))
    click.echo(format_table(rows))
    if out:
        csv_path, png_path = write_report(
            rows, out, f"{problem}, order {order}")
        click.echo(f"wrote {csv_path} and {png_path}")


@main.command("bench")
@click.option("--problem", required=True)
@click.option("--order", type=int, required=True)
@click.option("--resolution", default=None)
@click.option("--steps", type=int, default=5, show_default=True)
def bench_cmd(problem, order, resolution, steps):
    """Measure zones updated per second (informational)."""
    res = parse_resolution(resolution) if resolution else None
    try:
        out = _bench(problem, order=order, resolution=res, steps=steps)
    except (RunAbort, ValueError) as exc:
        raise click.ClickException(str(exc))
    mesh = "x".join(str(n) for n in out["resolution"])
    click.echo(f"{out['problem']} order {out['order']} on {mesh}: "
               f"{out['zones_per_sec']:.4g} zones/s "
               f"({out['steps']} steps, {out['seconds']:.3f} s)")


@main.group("weno")
def weno_group():
    """Reconstruction-kernel utilities."""


@weno_group.command("selftest")
@click.option("--tolerance", type=float, default=1e-11, show_default=True)
def weno_selftest(tolerance):
    """Check every kernel against its polynomial exactness budget."""
    worst = weno.self_check(verbose=click.echo)
    if worst > tolerance:
        click.echo(f"FAIL: worst error {worst:.3e} above {tolerance:g}")
        sys.exit(1)
    click.echo(f"ok: worst error {worst:.3e}")


if __name__ == "__main__":
    main()
