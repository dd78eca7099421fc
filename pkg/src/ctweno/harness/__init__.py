"""Problem catalog, run/convergence drivers, dump output and the CLI."""

from .problems import ProblemSetup, TimeControl, problem_names, setup
from .driver import RunAbort, RunOptions, RunResult, bench, run
from .converge import ConvergenceRow, converge, measured_orders
from .dumpio import read_dump, write_dump

__all__ = [
    "ProblemSetup", "TimeControl", "problem_names", "setup",
    "RunAbort", "RunOptions", "RunResult", "bench", "run",
    "ConvergenceRow", "converge", "measured_orders",
    "read_dump", "write_dump",
]
