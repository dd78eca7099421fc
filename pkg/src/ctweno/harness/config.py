"""Plain-text run configuration.

A config file is INI-style text with one section per module:

    [harness]
    problem = mhdOrszagTang   ; catalog name (required)
    resolution = 192x192      ; N or NxM or NxMxK; default: the problem's
    t_end = 0.5               ; stop earlier or later than the default
    dump_every = 0.1          ; simulation-time interval between grid dumps
    out = results/ot          ; output directory for log, dumps, figures
    max_steps = 200000        ; hard cap on step count

    [scheme]
    order = 5                 ; 3, 5, 7 or 9
    riemann = llf             ; llf or hll
    characteristic = auto     ; auto, on or off

    [pcp]
    enabled = auto            ; auto (problem default), on or off
    p_min = 1e-3              ; pressure margin used by repairs

    [timestep]
    cfl = 0.4                 ; Courant number; default: the problem's

Every key is optional except harness.problem.  Unknown sections or keys
are rejected so typos fail loudly rather than silently running with a
default.
"""

import configparser

from .driver import RunOptions

_KNOWN = {
    "harness": {"problem", "resolution", "t_end", "dump_every", "out",
                "max_steps"},
    "scheme": {"order", "riemann", "characteristic"},
    "pcp": {"enabled", "p_min"},
    "timestep": {"cfl"},
}


def parse_resolution(text):
    """\"64\" -> 64, \"64x48\" -> (64, 48), \"64x48x32\" -> a 3-tuple."""
    parts = str(text).lower().replace("*", "x").split("x")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"bad resolution {text!r}; use N or NxM or NxMxK")
    if any(n <= 0 for n in nums) or len(nums) > 3:
        raise ValueError(f"bad resolution {text!r}; use N or NxM or NxMxK")
    return nums[0] if len(nums) == 1 else tuple(nums)


def _tristate(text, name):
    val = text.strip().lower()
    if val in ("auto",):
        return None
    if val in ("on", "true", "yes", "1"):
        return True
    if val in ("off", "false", "no", "0"):
        return False
    raise ValueError(f"{name} must be auto, on or off; got {text!r}")


def load_config(path):
    """Parse a config file into (problem_name, RunOptions)."""
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    with open(path) as fh:
        cp.read_file(fh)

    for section in cp.sections():
        if section not in _KNOWN:
            raise ValueError(f"unknown config section [{section}]")
        for key in cp[section]:
            if key not in _KNOWN[section]:
                known = ", ".join(sorted(_KNOWN[section]))
                raise ValueError(
                    f"unknown key {key!r} in [{section}]; known: {known}")

    if not cp.has_option("harness", "problem"):
        raise ValueError("config needs problem = <name> under [harness]")

    opts = RunOptions()
    h = cp["harness"]
    problem = h.get("problem")
    if h.get("resolution") is not None:
        opts.resolution = parse_resolution(h.get("resolution"))
    if h.get("t_end") is not None:
        opts.t_end = h.getfloat("t_end")
    if h.get("dump_every") is not None:
        opts.dump_every = h.getfloat("dump_every")
    if h.get("out") is not None:
        opts.out = h.get("out")
    if h.get("max_steps") is not None:
        opts.max_steps = h.getint("max_steps")

    if cp.has_section("scheme"):
        s = cp["scheme"]
        if s.get("order") is not None:
            opts.order = s.getint("order")
        if s.get("riemann") is not None:
            opts.riemann = s.get("riemann").strip().lower()
        if s.get("characteristic") is not None:
            opts.characteristic = _tristate(s.get("characteristic"),
                                            "scheme.characteristic")

    if cp.has_section("pcp"):
        p = cp["pcp"]
        if p.get("enabled") is not None:
            tri = _tristate(p.get("enabled"), "pcp.enabled")
            opts.pcp = "auto" if tri is None else ("on" if tri else "off")
        if p.get("p_min") is not None:
            opts.p_min = p.getfloat("p_min")

    if cp.has_section("timestep"):
        t = cp["timestep"]
        if t.get("cfl") is not None:
            opts.cfl = t.getfloat("cfl")

    return problem, opts
