"""Catalog of ready-to-run problem setups.

Each setup knows its physics system, domain, default mesh and stopping
time, and provides an initializer that fills zone point values together
with *exact* face averages of the staggered fields.  For the
magnetohydrodynamic problems the in-plane face averages come from corner
circulations of a vector potential, so the initial discrete divergence
vanishes to round-off; uniform fields are written directly; smooth
electromagnetic beams use Gauss-Legendre quadrature along each face.

Unit conventions follow the systems: ideal MHD is in Gaussian units
(magnetic pressure B^2/8pi), relativistic MHD is rationalized with c = 1,
and the electromagnetic problems set eps0 = mu0 = 1 so the vacuum speed
of light is 1 (for the micrometer-scale beam problems, one time unit is
the light travel time over one micrometer).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .. import mesh, weno
from ..scheme import StaggeredState
from ..systems import get_system
from ..systems.ced import Maxwell

SQRT4PI = math.sqrt(4.0 * math.pi)
EIGHT_PI = 8.0 * math.pi


# ----------------------------------------------------------------------
# face-average construction helpers

def potential_faces_2d(grid, az):
    """Exact face averages of the in-plane field curling from ``az``.

    ``az`` is a vectorized callable of (x, y).  The average of the
    normal component over a face equals the difference of the potential
    at the face's two corners divided by the face length, so the
    discrete divergence of the result telescopes to zero.
    Returns padded arrays (bx, by) staggered along x and y.
    """
    xf = grid.axis_coords(0, staggered=True)
    yf = grid.axis_coords(1, staggered=True)
    corners = np.broadcast_to(np.asarray(az(xf[:, None], yf[None, :]),
                                         dtype=float),
                              (xf.size, yf.size))
    dx, dy = grid.spacing
    bx = (corners[:, 1:] - corners[:, :-1]) / dy
    by = -(corners[1:, :] - corners[:-1, :]) / dx
    return bx, by


def quadrature_faces_2d(grid, fx, fy, npts=6):
    """Face averages of a smooth planar field by Gauss-Legendre rule.

    ``fx`` and ``fy`` are vectorized callables of (x, y) giving the two
    components.  Each face average integrates the normal component over
    the face's transverse extent with an ``npts``-point rule, exact for
    polynomials up to degree 2*npts - 1.
    """
    nodes, wts = np.polynomial.legendre.leggauss(npts)
    dx, dy = grid.spacing
    xf = grid.axis_coords(0, staggered=True)
    yc = grid.axis_coords(1)
    xc = grid.axis_coords(0)
    yf = grid.axis_coords(1, staggered=True)

    bx = np.zeros((xf.size, yc.size))
    for q, w in zip(nodes, wts):
        bx += 0.5 * w * fx(xf[:, None], (yc + 0.5 * q * dy)[None, :])
    by = np.zeros((xc.size, yf.size))
    for q, w in zip(nodes, wts):
        by += 0.5 * w * fy((xc + 0.5 * q * dx)[:, None], yf[None, :])
    return bx, by


def _sinc(t):
    return np.sinc(t / np.pi)


# ----------------------------------------------------------------------
# setup containers

@dataclass(frozen=True)
class TimeControl:
    """Stopping time and Courant number a run starts from."""

    t_end: float
    cfl: float = 0.4


@dataclass
class ProblemSetup:
    """A named, fully specified initial/boundary value problem.

    ``initialize(grid, system)`` returns a StaggeredState whose face
    arrays hold exact face averages and whose zone rows hold point
    values.  ``exact(grid, system, t)``, when the solution is known,
    returns the pointwise conserved state at time t on the padded zone
    layout.  ``ghost_hook_for(grid, system)`` builds the callback that
    writes prescribed inflow bands after each geometric ghost fill.
    """

    name: str
    system_name: str
    domain: tuple                 # (lo tuple, hi tuple)
    resolution: tuple
    order: int
    t_end: float
    initialize: callable
    bc: object = "periodic"
    cfl: float = 0.4
    pcp: bool = False
    error_variable: str = "by"
    system_for: callable = None   # (grid) -> system instance
    exact: callable = None        # (grid, system, t) -> padded zones
    ghost_hook_for: callable = None
    params: dict = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.resolution)

    def normalized_resolution(self, resolution=None):
        if resolution is None:
            return self.resolution
        if isinstance(resolution, (int, np.integer)):
            return (int(resolution),) * self.dim
        res = tuple(int(n) for n in resolution)
        if len(res) != self.dim:
            raise ValueError(
                f"{self.name} is {self.dim}d; got resolution {resolution}")
        return res

    def grid_for(self, resolution=None, order=None):
        order = order or self.order
        res = self.normalized_resolution(resolution)
        lo, hi = self.domain
        return mesh.GridSpec(res, lo, hi, 2 * weno.ghost_zones(order))

    def build(self, resolution=None, order=None):
        """Grid, system, initialized state and time control, ready to run."""
        grid = self.grid_for(resolution, order)
        system = self.system_for(grid)
        state = self.initialize(grid, system)
        return grid, system, state, TimeControl(self.t_end, self.cfl)


# ----------------------------------------------------------------------
# electromagnetic wave and beams

def ced_plane_wave():
    """Plane-polarized vacuum wave along the main diagonal of a cube.

    Unit-speed propagation along (1,1,1)/sqrt(3) with E, B and the wave
    vector mutually orthogonal and |E| = |B|; one full period spans the
    periodic box, so after t = (wavelength)/c the exact solution is the
    initial state again.  Face averages of the sinusoid are closed-form
    (transverse sinc factors), and both stagger families come out
    divergence-free to round-off because the polarizations are exactly
    orthogonal to the wave vector.
    """
    kvec = 2.0 * math.pi * np.array([1.0, 1.0, 1.0])
    omega = float(np.linalg.norm(kvec))
    e_pol = np.array([1.0, -1.0, 0.0]) / math.sqrt(2.0)
    b_pol = np.array([1.0, 1.0, -2.0]) / math.sqrt(6.0)

    def phases(grid, t, stag_axis=None):
        cs = [grid.axis_coords(a, staggered=(a == stag_axis))
              for a in range(3)]
        pts = np.meshgrid(*cs, indexing="ij")
        return sum(kvec[a] * pts[a] for a in range(3)) - omega * t

    def exact(grid, system, t):
        ph = phases(grid, t)
        zones = np.empty((6,) + ph.shape)
        zones[0:3] = e_pol[:, None, None, None] * np.cos(ph)
        zones[3:6] = b_pol[:, None, None, None] * np.cos(ph)
        return zones

    def initialize(grid, system):
        state = StaggeredState.zeros(grid, system)
        state.zones[:] = exact(grid, system, 0.0)
        sp = grid.spacing
        for fam, pol in (("d", e_pol), ("b", b_pol)):
            for ax in range(3):
                area = 1.0
                for tr in range(3):
                    if tr != ax:
                        area *= _sinc(kvec[tr] * sp[tr] / 2.0)
                state.faces[fam][ax][:] = (pol[ax] * area
                                           * np.cos(phases(grid, 0.0, ax)))
        return state

    return ProblemSetup(
        name="cedPlaneWave",
        system_name="ced",
        domain=((-0.5, -0.5, -0.5), (0.5, 0.5, 0.5)),
        resolution=(64, 64, 64),
        order=5,
        t_end=2.0 * math.pi / omega,
        initialize=initialize,
        bc="periodic",
        cfl=0.3,
        error_variable="by",
        system_for=lambda grid: Maxwell(eps=1.0, mu=1.0),
        exact=exact,
        params={"eps": 1.0, "mu": 1.0, "amplitude": 1.0,
                "period": 2.0 * math.pi / omega},
    )


def _gaussian_beam_setup(name, domain, resolution, order, t_end,
                         eps_lo, eps_hi, taper_zones, wavelength,
                         center, sigma, params):
    """Shared construction for the dielectric-slab beam problems.

    A compact transverse-magnetic wave packet (out-of-plane B, in-plane
    D) travels at 45 degrees toward the permittivity step at x = 0.  The
    packet is a Gaussian envelope on a locally plane wave built inside a
    uniform-permittivity region.  To keep the initial electric flux
    density exactly charge-free it derives from a stream function,
    D = curl(psi z), whose leading behavior is the plane-wave relation
    D = sqrt(eps) * (z x khat) * B_z; face averages then come from
    corner circulation of psi and are solenoidal to round-off.
    """
    khat = np.array([1.0, 1.0]) / math.sqrt(2.0)
    that = np.array([-khat[1], khat[0]])     # z x khat
    kmag = 2.0 * math.pi / wavelength
    eps_src = eps_lo if center[0] < 0 else eps_hi
    d_amp = math.sqrt(eps_src)
    s2 = sigma * sigma

    def local_frame(x, y):
        rx, ry = x - center[0], y - center[1]
        xi = khat[0] * rx + khat[1] * ry
        eta = that[0] * rx + that[1] * ry
        env = np.exp(-(xi * xi + eta * eta) / (2.0 * s2))
        return xi, eta, env

    def envelope_wave(x, y):
        xi, _, env = local_frame(x, y)
        return env * np.cos(kmag * xi)

    def psi(x, y):
        xi, _, env = local_frame(x, y)
        return -(d_amp / kmag) * env * np.sin(kmag * xi)

    def d_components(x, y):
        # exact partials of psi: D = (d psi/dy, -d psi/dx)
        xi, eta, env = local_frame(x, y)
        sin_k, cos_k = np.sin(kmag * xi), np.cos(kmag * xi)
        grad = []
        for a in range(2):
            env_a = -env * (xi * khat[a] + eta * that[a]) / s2
            grad.append(-(d_amp / kmag) * (env_a * sin_k
                                           + env * kmag * cos_k * khat[a]))
        return grad[1], -grad[0]

    def system_for(grid):
        width = taper_zones * grid.spacing[0]

        def eps_map(x, y):
            ramp = np.clip((x / width) + 0.5, 0.0, 1.0)
            return eps_lo + (eps_hi - eps_lo) * ramp + 0.0 * y

        return Maxwell(eps=eps_map, mu=1.0)

    def initialize(grid, system):
        state = StaggeredState.zeros(grid, system)
        xc, yc = grid.zone_centers()
        dx_pt, dy_pt = d_components(xc, yc)
        state.zones[0] = dx_pt
        state.zones[1] = dy_pt
        state.zones[5] = envelope_wave(xc, yc)
        dxf, dyf = potential_faces_2d(grid, psi)
        state.faces["d"][0][:] = dxf
        state.faces["d"][1][:] = dyf
        return state

    return ProblemSetup(
        name=name,
        system_name="ced",
        domain=domain,
        resolution=resolution,
        order=order,
        t_end=t_end,
        initialize=initialize,
        bc="outflow",
        cfl=0.4,
        error_variable="bz",
        system_for=system_for,
        params=params,
    )


def ced_refraction():
    """Compact beam refracting into a denser dielectric half-space.

    The permittivity ramps from 1 (x < 0) to 2.25 (x > 0), a refractive
    index of 1.5, so a packet incident at 45 degrees refracts to the
    Snell angle of about 28.1 degrees and partially reflects.  Lengths
    are micrometers; the stopping time is the light travel time that
    4e-14 seconds corresponds to.
    """
    t_end = 4.0e-14 * 2.99792458e14  # seconds times c in micrometers/s
    return _gaussian_beam_setup(
        name="cedRefraction",
        domain=((-5.0, -2.5), (8.0, 7.0)),
        resolution=(1300, 900),
        order=5,
        t_end=t_end,
        eps_lo=1.0, eps_hi=2.25, taper_zones=2.0,
        wavelength=1.0, center=(-2.5, 0.0), sigma=0.9,
        params={"eps_lo": 1.0, "eps_hi": 2.25, "incidence_deg": 45.0,
                "refraction_deg": math.degrees(math.asin(
                    math.sin(math.radians(45.0)) / 1.5))},
    )


def ced_tir():
    """Compact beam totally reflecting inside a dense dielectric.

    The slab at x <= 0 has permittivity 4 (index 2, critical angle 30
    degrees) and tapers to 1 over a quarter of a zone width; the packet
    hits the interface at 45 degrees, beyond critical, and reflects
    completely.  The in-slab wavelength resolves to about 30 zones on
    the default mesh.
    """
    t_end = 5.0e-14 * 2.99792458e14
    return _gaussian_beam_setup(
        name="cedTIR",
        domain=((-6.0, -2.5), (1.0, 6.0)),
        resolution=(700, 850),
        order=7,
        t_end=t_end,
        eps_lo=4.0, eps_hi=1.0, taper_zones=0.25,
        wavelength=0.3, center=(-3.0, -0.5), sigma=0.7,
        params={"eps_lo": 4.0, "eps_hi": 1.0, "incidence_deg": 45.0,
                "critical_deg": 30.0},
    )


# ----------------------------------------------------------------------
# ideal MHD problems

def _fluid_state(grid, system, prim, az=None, faces=None):
    """Conserved state from pointwise primitives plus exact face data.

    ``prim`` is (nvar, padded) pointwise.  ``az`` builds the in-plane
    face averages by corner circulation; ``faces`` supplies explicit
    per-axis arrays (for uniform or three-dimensional fields).
    """
    state = StaggeredState.zeros(grid, system)
    state.zones[:] = system.prim_to_cons(prim)
    if az is not None:
        bx, by = potential_faces_2d(grid, az)
        state.faces["b"][0][:] = bx
        state.faces["b"][1][:] = by
    if faces is not None:
        for ax, arr in enumerate(faces):
            state.faces["b"][ax][:] = arr
    return state


def mhd_orszag_tang():
    """Orszag-Tang vortex in Gaussian units.

    Periodic [0,2]^2 box, gamma 5/3, density gamma^2 and pressure gamma
    everywhere (unit sound speed), counter-rotating velocity shears and
    a two-mode magnetic field from the potential
    A_z = -(sqrt(4 pi)/2 pi)(cos 2 pi x + 2 cos pi y); the standard
    transition to two-dimensional MHD turbulence by t = 1.
    """
    gamma = 5.0 / 3.0
    amp = SQRT4PI / (2.0 * math.pi)

    def az(x, y):
        return -amp * (np.cos(2.0 * math.pi * x) + 2.0 * np.cos(math.pi * y))

    def initialize(grid, system):
        x, y = grid.zone_centers()
        prim = np.zeros((8,) + x.shape)
        prim[0] = gamma * gamma
        prim[1] = -np.sin(math.pi * y)
        prim[2] = np.sin(math.pi * x)
        prim[4] = gamma
        prim[5] = SQRT4PI * np.sin(math.pi * y)
        prim[6] = -SQRT4PI * np.sin(2.0 * math.pi * x)
        return _fluid_state(grid, system, prim, az=az)

    return ProblemSetup(
        name="mhdOrszagTang",
        system_name="mhd",
        domain=((0.0, 0.0), (2.0, 2.0)),
        resolution=(256, 256),
        order=9,
        t_end=1.0,
        initialize=initialize,
        bc="periodic",
        system_for=lambda grid: get_system("mhd", gamma=gamma),
        params={"gamma": gamma, "rho": gamma * gamma, "p": gamma},
    )


def mhd_rotor():
    """Dense spinning cylinder threaded by a uniform field.

    Ambient fluid at rest with unit density and pressure; a ten-times
    denser rotor of radius 0.1 spins with edge speed 1, joined to the
    ambient state by a linear taper six zones wide (the taper tracks the
    mesh, per the original prescription).  B = 2.5 along x.  The launch
    of torsional waves is the classic robustness check for keeping the
    field divergence-free.
    """
    gamma = 1.4
    b0, r0, rho_in, v_edge = 2.5, 0.1, 10.0, 1.0

    def initialize(grid, system):
        x, y = grid.zone_centers()
        r = np.hypot(x, y)
        r1 = r0 + 6.0 * grid.spacing[0]
        ramp = np.clip((r1 - r) / (r1 - r0), 0.0, 1.0)
        prim = np.zeros((8,) + x.shape)
        prim[0] = 1.0 + (rho_in - 1.0) * ramp
        # uniform angular velocity inside r0, linear decay to rest at r1
        omega = v_edge / r0
        vphi = np.where(r <= r0, omega * r, v_edge * ramp)
        rsafe = np.maximum(r, 1e-300)
        prim[1] = -vphi * y / rsafe
        prim[2] = vphi * x / rsafe
        prim[4] = 1.0
        prim[5] = b0
        return _fluid_state(grid, system, prim, az=lambda xx, yy: b0 * yy)

    return ProblemSetup(
        name="mhdRotor",
        system_name="mhd",
        domain=((-0.5, -0.5), (0.5, 0.5)),
        resolution=(256, 256),
        order=7,
        t_end=0.29,
        initialize=initialize,
        bc="outflow",
        system_for=lambda grid: get_system("mhd", gamma=gamma),
        params={"gamma": gamma, "b0": b0, "r0": r0, "rho_rotor": rho_in,
                "rho_ambient": 1.0, "p": 1.0, "v_edge": v_edge,
                "taper_zones": 6},
    )


def _mhd_blast(name, dim, resolution, p_in, b0, t_end):
    """Central overpressure in a strongly magnetized quiet medium.

    Unit density at rest, ambient pressure 0.1, pressure ``p_in`` inside
    radius 0.1, uniform field ``b0`` along x.  The plasma beta away from
    the hot spot is tiny, so the run needs positivity protection.
    """
    gamma = 1.4
    p_out, r_in = 0.1, 0.1

    def initialize(grid, system):
        coords = grid.zone_centers()
        r = np.sqrt(sum(c * c for c in coords))
        prim = np.zeros((8,) + r.shape)
        prim[0] = 1.0
        prim[4] = np.where(r < r_in, p_in, p_out)
        prim[5] = b0
        if dim == 2:
            return _fluid_state(grid, system, prim,
                                az=lambda xx, yy: b0 * yy)
        state = _fluid_state(grid, system, prim)
        state.faces["b"][0][:] = b0
        return state

    return ProblemSetup(
        name=name,
        system_name="mhd",
        domain=((-0.5,) * dim, (0.5,) * dim),
        resolution=resolution,
        order=5,
        t_end=t_end,
        initialize=initialize,
        bc="outflow",
        pcp=True,
        system_for=lambda grid: get_system("mhd", gamma=gamma),
        params={"gamma": gamma, "p_in": p_in, "p_out": p_out,
                "r_in": r_in, "b0": b0},
    )


def mhd_blast_1():
    """Three-dimensional blast: pressure 1000 in a field of strength 100."""
    return _mhd_blast("mhdBlastI", 3, (300, 300, 300),
                      p_in=1000.0, b0=100.0, t_end=0.01)


def mhd_blast_2():
    """Planar blast: pressure 10000 in a field of strength 1000."""
    return _mhd_blast("mhdBlastII", 2, (400, 400),
                      p_in=10000.0, b0=1000.0, t_end=0.001)


def mhd_jet(variant):
    """Magnetized Mach 800 jet injected into a quiet ambient medium.

    The domain [-0.5,0.5] x [0,1.5] holds a static medium with density
    0.1*gamma, unit pressure and a vertical field of strength ``b_a``;
    the jet enters through the inlet |x| < 0.05 at the bottom with
    density gamma and vertical speed 800.  Variants I/II/III raise the
    field so the ambient plasma beta drops from 1e-2 to 1e-4.
    """
    gamma = 1.4
    b_a = {"I": math.sqrt(200.0), "II": math.sqrt(2000.0),
           "III": math.sqrt(20000.0)}[variant]
    inlet_half_width, v_jet = 0.05, 800.0
    jet_prim = np.array([gamma, 0.0, v_jet, 0.0, 1.0, 0.0, b_a, 0.0])

    def initialize(grid, system):
        x, _ = grid.zone_centers()
        prim = np.zeros((8,) + x.shape)
        prim[0] = 0.1 * gamma
        prim[4] = 1.0
        prim[6] = b_a
        return _fluid_state(grid, system, prim,
                            az=lambda xx, yy: -b_a * xx)

    def ghost_hook_for(grid, system):
        g = grid.nghost
        xc = grid.axis_coords(0)
        xf = grid.axis_coords(0, staggered=True)
        zone_band = np.abs(xc) < inlet_half_width
        face_band = np.abs(xf) < inlet_half_width
        u_jet = system.prim_to_cons(jet_prim[:, None])[:, 0]

        def hook(state):
            # prescribed inflow over the inlet, written after the
            # geometric fill so the rest of the bottom stays outflow
            state.zones[:, zone_band, :g] = u_jet[:, None, None]
            state.faces["b"][0][face_band, :g] = 0.0
            state.faces["b"][1][zone_band, :g + 1] = b_a

        return hook

    return ProblemSetup(
        name=f"mhdJet{variant}",
        system_name="mhd",
        domain=((-0.5, 0.0), (0.5, 1.5)),
        resolution=(400, 600),
        order=7,
        t_end=0.002,
        initialize=initialize,
        bc=(("outflow", "outflow"), ("inflow", "outflow")),
        pcp=True,
        system_for=lambda grid: get_system("mhd", gamma=gamma),
        ghost_hook_for=ghost_hook_for,
        params={"gamma": gamma, "b_a": b_a, "rho_ambient": 0.1 * gamma,
                "rho_jet": gamma, "v_jet": v_jet,
                "inlet_half_width": inlet_half_width,
                "beta_ambient": 1.0 / (b_a * b_a / (EIGHT_PI))},
    )


def alfven_wave():
    """Circularly polarized torsional wave riding a diagonal field.

    An exact nonlinear MHD solution: uniform density and pressure, mean
    field along the box diagonal with unit torsional-wave speed, and a
    rotating transverse perturbation that advects rigidly along the
    field.  Smooth, genuinely two-dimensional, and periodic, which makes
    it the accuracy benchmark for the coupled zone and face update.
    """
    gamma = 5.0 / 3.0
    eps_amp = 0.2
    b_long = SQRT4PI          # torsional speed b/sqrt(4 pi rho) = 1
    p0, rho0 = 1.0, 1.0
    omega = 2.0 * math.pi * math.sqrt(2.0)
    diag = 1.0 / math.sqrt(2.0)

    def prim_at(grid, t):
        x, y = grid.zone_centers()
        ph = 2.0 * math.pi * (x + y) - omega * t
        cph, sph = np.cos(ph), np.sin(ph)
        prim = np.zeros((8,) + x.shape)
        prim[0] = rho0
        prim[1] = eps_amp * diag * cph
        prim[2] = -eps_amp * diag * cph
        prim[3] = -eps_amp * sph
        prim[4] = p0
        prim[5] = b_long * diag - eps_amp * b_long * diag * cph
        prim[6] = b_long * diag + eps_amp * b_long * diag * cph
        prim[7] = eps_amp * b_long * sph
        return prim

    def exact(grid, system, t):
        return system.prim_to_cons(prim_at(grid, t))

    def az(x, y):
        lin = b_long * diag * (y - x)
        c1 = -eps_amp * b_long / (2.0 * math.pi * math.sqrt(2.0))
        return lin + c1 * np.sin(2.0 * math.pi * (x + y))

    def initialize(grid, system):
        return _fluid_state(grid, system, prim_at(grid, 0.0), az=az)

    return ProblemSetup(
        name="alfvenWave",
        system_name="mhd",
        domain=((0.0, 0.0), (1.0, 1.0)),
        resolution=(64, 64),
        order=5,
        t_end=0.2,
        initialize=initialize,
        bc="periodic",
        cfl=0.3,
        error_variable="by",
        system_for=lambda grid: get_system("mhd", gamma=gamma),
        exact=exact,
        params={"gamma": gamma, "amplitude": eps_amp, "wave_speed": 1.0,
                "rho": rho0, "p": p0},
    )


# ----------------------------------------------------------------------
# relativistic MHD problems

def rmhd_blast():
    """Relativistic blast: a hot light core exploding into near-vacuum.

    Density 1e-2 and unit pressure inside radius 0.8, density 1e-4 and
    pressure 5e-4 outside radius 1, joined by linear tapers, in a
    uniform horizontal field of 0.1 with gamma = 4/3.  The expanding
    shell is strongly magnetized, which is the stress test for the
    protected update in the relativistic solver.
    """
    gamma = 4.0 / 3.0
    rho_in, rho_out = 1.0e-2, 1.0e-4
    p_in, p_out = 1.0, 5.0e-4
    r_in, r_out, b0 = 0.8, 1.0, 0.1

    def taper(r, inner, outer):
        w = np.clip((r_out - r) / (r_out - r_in), 0.0, 1.0)
        return outer + (inner - outer) * w

    def initialize(grid, system):
        x, y = grid.zone_centers()
        r = np.hypot(x, y)
        prim = np.zeros((8,) + x.shape)
        prim[0] = taper(r, rho_in, rho_out)
        prim[4] = taper(r, p_in, p_out)
        prim[5] = b0
        return _fluid_state(grid, system, prim,
                            az=lambda xx, yy: b0 * yy)

    return ProblemSetup(
        name="rmhdBlast",
        system_name="rmhd",
        domain=((-6.0, -6.0), (6.0, 6.0)),
        resolution=(512, 512),
        order=5,
        t_end=4.0,
        initialize=initialize,
        bc="outflow",
        pcp=True,
        system_for=lambda grid: get_system("rmhd", gamma=gamma),
        params={"gamma": gamma, "rho_in": rho_in, "rho_out": rho_out,
                "p_in": p_in, "p_out": p_out, "r_in": r_in,
                "r_out": r_out, "b0": b0},
    )


def rmhd_orszag_tang():
    """Relativistic Orszag-Tang vortex on a [0, 2 pi]^2 box.

    Unit density, pressure 10, rotation speeds 0.99/sqrt(2) of light,
    gamma = 4/3, field from A_z = -(cos(2x)/2 + cos y).  Run to
    t = 2.818127 for the early vortex and 6.8558 for the late, fully
    tangled stage.
    """
    gamma = 4.0 / 3.0
    vamp = 0.99 / math.sqrt(2.0)

    def az(x, y):
        return -(np.cos(2.0 * x) / 2.0 + np.cos(y))

    def initialize(grid, system):
        x, y = grid.zone_centers()
        prim = np.zeros((8,) + x.shape)
        prim[0] = 1.0
        prim[1] = -vamp * np.sin(y)
        prim[2] = vamp * np.sin(x)
        prim[4] = 10.0
        prim[5] = np.sin(y)
        prim[6] = -np.sin(2.0 * x)
        return _fluid_state(grid, system, prim, az=az)

    return ProblemSetup(
        name="rmhdOrszagTang",
        system_name="rmhd",
        domain=((0.0, 0.0), (2.0 * math.pi, 2.0 * math.pi)),
        resolution=(512, 512),
        order=7,
        t_end=2.818127,
        initialize=initialize,
        bc="periodic",
        system_for=lambda grid: get_system("rmhd", gamma=gamma),
        params={"gamma": gamma, "rho": 1.0, "p": 10.0, "v_amp": vamp,
                "t_late": 6.8558},
    )


def rmhd_shock_cloud():
    """Strong right-moving shock overrunning a thirty-fold denser cloud.

    The pre/post shock states sit across x = 0.05; the left state flows
    in through the left boundary while everything else leaves freely.
    A circular cloud of radius 0.15 at (0.25, 0.5) shares the ambient
    state except for its density of 30.
    """
    gamma = 5.0 / 3.0
    left = np.array([3.86859, 0.68, 0.0, 0.0, 1.25115,
                     0.0, 0.84981, -0.84981])
    right = np.array([1.0, 0.0, 0.0, 0.0, 0.05,
                      0.0, 0.16106, 0.16106])
    x_shock, cloud_center, cloud_r, rho_cloud = 0.05, (0.25, 0.5), 0.15, 30.0

    def by_antiderivative(x):
        # integral of the piecewise-constant B_y from the left edge,
        # giving exact per-face segment means through the jump
        byl, byr = left[6], right[6]
        return np.where(x < x_shock, byl * x,
                        byl * x_shock + byr * (x - x_shock))

    def initialize(grid, system):
        x, y = grid.zone_centers()
        ahead = x >= x_shock
        prim = np.where(ahead, right[:, None, None], left[:, None, None])
        prim = prim * np.ones((8,) + x.shape)
        in_cloud = np.hypot(x - cloud_center[0],
                            y - cloud_center[1]) < cloud_r
        prim[0] = np.where(in_cloud, rho_cloud, prim[0])
        return _fluid_state(grid, system, prim,
                            az=lambda xx, yy: -by_antiderivative(xx)
                            + 0.0 * yy)

    def ghost_hook_for(grid, system):
        g = grid.nghost
        u_left = system.prim_to_cons(left[:, None])[:, 0]

        def hook(state):
            state.zones[:, :g, :] = u_left[:, None, None]
            state.faces["b"][0][:g + 1, :] = left[5]
            state.faces["b"][1][:g, :] = left[6]

        return hook

    return ProblemSetup(
        name="rmhdShockCloud",
        system_name="rmhd",
        domain=((-0.2, 0.0), (1.2, 1.0)),
        resolution=(560, 400),
        order=9,
        t_end=1.2,
        initialize=initialize,
        bc=(("inflow", "outflow"), ("outflow", "outflow")),
        pcp=True,
        system_for=lambda grid: get_system("rmhd", gamma=gamma),
        ghost_hook_for=ghost_hook_for,
        params={"gamma": gamma, "rho_left": left[0], "vx_left": left[1],
                "p_left": left[4], "rho_cloud": rho_cloud,
                "cloud_radius": cloud_r, "x_shock": x_shock},
    )


# ----------------------------------------------------------------------
# catalog

_CATALOG = {
    "cedPlaneWave": ced_plane_wave,
    "cedRefraction": ced_refraction,
    "cedTIR": ced_tir,
    "mhdOrszagTang": mhd_orszag_tang,
    "mhdRotor": mhd_rotor,
    "mhdBlastI": mhd_blast_1,
    "mhdBlastII": mhd_blast_2,
    "mhdJetI": lambda: mhd_jet("I"),
    "mhdJetII": lambda: mhd_jet("II"),
    "mhdJetIII": lambda: mhd_jet("III"),
    "alfvenWave": alfven_wave,
    "rmhdBlast": rmhd_blast,
    "rmhdOrszagTang": rmhd_orszag_tang,
    "rmhdShockCloud": rmhd_shock_cloud,
}

_LOWER = {k.lower(): k for k in _CATALOG}


def problem_names():
    """Canonical catalog names, stable order."""
    return list(_CATALOG)


def setup(name):
    """Fresh ProblemSetup for a catalog name (case-insensitive)."""
    key = _LOWER.get(str(name).lower())
    if key is None:
        known = ", ".join(_CATALOG)
        raise ValueError(f"unknown problem {name!r}; known: {known}")
    return _CATALOG[key]()
