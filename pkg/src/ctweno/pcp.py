"""Positivity protection for the coupled zone/face update.

The high-order update can leave zones whose density or pressure is no
longer physical once the staggered field is folded back in.  This module
wraps one forward-Euler application in a safety layer built from three
pieces:

* a first-order companion scheme on the same layout: local
  Lax-Friedrichs (or HLL) interface fluxes between zone-adjacent states
  whose staggered-family components are replaced by face averages, plus
  a first-order multidimensional LLF edge driver for the face update;
* a conservative energy repair for zones where installing the updated
  face averages pushes the pressure negative: the magnetic-energy
  excess is pulled in through the bounding faces from neighbours that
  can afford it, weighted by their squared pressure margin, and the
  transfer balances identically.  Zones with no viable donor, or
  transfers that would break a donor, fall back to a direct energy
  reset that pins the pressure at its pre-replacement value; that reset
  is the one non-conservative path and is reported per step;
* per-zone blending weights theta between the high-order and the
  first-order operators.  A face blends with the smaller theta of the
  two zones it separates and an edge with the smallest of its four, so
  the blend stays conservative and divergence-preserving for every
  theta field.

A protected step starts from theta = 1 everywhere, tests each zone of
the candidate with its face-averaged field installed, drops theta by a
half where the test fails and repeats.  At theta = 0 the update is the
repaired first-order scheme, which keeps positivity under the usual
CFL bound, so the loop terminates; a zone still failing there means
the step size violated that bound and the step aborts loudly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import mesh, riemann2d
from .scheme import StaggeredState
from .systems.mhd import EIGHT_PI


def _ax(ndim, axis, s):
    """Index tuple selecting ``s`` along one axis, everything else full."""
    idx = [slice(None)] * ndim
    idx[axis] = s
    return tuple(idx)


class PcpError(RuntimeError):
    """A protected step failed even at theta = 0 (step size too large)."""


@dataclass
class ThetaField:
    """Per-zone blending weights on the padded zone layout, in [0, 1].

    ``face_min`` and ``edge_min`` derive the weights used by faces and
    edges: the minimum over the adjacent zones, which keeps every
    blended flux shared exactly between its two zones and every blended
    edge driver shared between its four.
    """

    grid: mesh.GridSpec
    values: np.ndarray

    @classmethod
    def ones(cls, grid):
        return cls(grid, np.ones(grid.padded()))

    def face_min(self, axis):
        v = self.values
        n = v.shape[axis]
        out = np.ones(self.grid.padded(self.grid.face_stagger(axis)))
        out[_ax(v.ndim, axis, slice(1, n))] = np.minimum(
            v[_ax(v.ndim, axis, slice(0, n - 1))],
            v[_ax(v.ndim, axis, slice(1, n))])
        return out

    def edge_min(self, orientation):
        v = self.values
        grid = self.grid
        st = mesh.edge_stagger_of(grid, orientation)
        out = np.ones(grid.padded(st))
        axes = [k for k in range(grid.dim) if st[k]]
        m = None
        for oa in (0, 1):
            for ob in (0, 1):
                sl = [slice(None)] * grid.dim
                for k, o in zip(axes, (oa, ob)):
                    sl[k] = slice(o, v.shape[k] - 1 + o)
                view = v[tuple(sl)]
                m = view if m is None else np.minimum(m, view)
        tgt = [slice(None)] * grid.dim
        for k in axes:
            tgt[k] = slice(1, v.shape[k])
        out[tuple(tgt)] = m
        return out

    def lowered(self):
        """Number of interior zones blending away from the high-order side."""
        g = self.grid.nghost
        win = tuple(slice(g, n + g) for n in self.grid.shape)
        return int(np.count_nonzero(self.values[win] < 1.0))


@dataclass
class LoOperators:
    """First-order companion operators plus repair bookkeeping.

    ``fluxes`` holds one (nvar, padded face layout) array per axis and
    ``ebars`` one padded edge array per orientation.  ``s5`` is the
    direct energy-reset source, nonzero only in zones the conservative
    repair could not cover.  The raw forward-Euler results are kept for
    the repair algebra: ``u_tilde`` (zone update), ``faces_new`` (face
    update) and ``u_check`` (zone update with face averages installed,
    the state admissibility is judged on).
    """

    fluxes: list
    ebars: dict
    prim: np.ndarray
    s5: np.ndarray
    u_tilde: np.ndarray | None = None
    u_check: np.ndarray | None = None
    faces_new: list | None = None
    troubled: np.ndarray | None = None
    alpha_applied: bool = False


@dataclass
class BlendedOperators:
    """Theta-weighted combination of high- and low-order operators."""

    fluxes: list
    ebars: dict
    source5: np.ndarray  # energy-row zone source, already per unit time


class PcpStepper:
    """Protected forward-Euler steps for one scheme.

    ``p_min`` is the pressure margin floor used when choosing repair
    donors; zones at or below it never give energy away.
    """

    def __init__(self, scheme, p_min=1e-3):
        system = scheme.system
        if len(system.families) != 1:
            raise ValueError(
                "positivity protection needs a system with exactly one "
                f"staggered family; {system.name} has {len(system.families)}")
        self.scheme = scheme
        self.grid = scheme.grid
        self.system = system
        self.family = system.families[0]
        self.p_min = float(p_min)
        # energy density per unit field squared: Gaussian units for the
        # non-relativistic system, rationalised otherwise
        self._mag = 1.0 / EIGHT_PI if system.name == "mhd" else 0.5
        self._conservative_fix = system.name == "mhd"
        self._interior_mask = np.zeros(self.grid.padded(), dtype=bool)
        self._interior_mask[self.grid.interior()] = True
        self.last_stats = None

    # ------------------------------------------------------------------
    # first-order companion operators

    def _replaced(self, zones, faces):
        """Zone array with the family mirrors set to bracketing face means."""
        out = zones.copy()
        means = mesh.face_means_to_zones(self.grid, faces)
        base = self.family.comps.start
        for axis in range(self.grid.dim):
            out[base + axis] = means[axis]
        return out

    def _lo_flux(self, u, prim, axis):
        """Interface flux between adjacent zone states along one axis."""
        system = self.system
        f = system.flux(u, axis, prim=prim)
        lo, hi = system.signal_speeds(u, axis, prim=prim)
        dim = self.grid.dim
        n = u.shape[1 + axis]
        zl = _ax(dim, axis, slice(0, n - 1))
        zr = _ax(dim, axis, slice(1, n))
        L = (slice(None),) + zl
        R = (slice(None),) + zr
        out = np.zeros((u.shape[0],)
                       + self.grid.padded(self.grid.face_stagger(axis)))
        mid = (slice(None),) + _ax(dim, axis, slice(1, n))
        if self.scheme.riemann == "hll":
            sl = np.minimum(np.minimum(lo[zl], lo[zr]), 0.0)
            sr = np.maximum(np.maximum(hi[zl], hi[zr]), 0.0)
            width = sr - sl
            width = np.where(width > 0.0, width, 1.0)
            out[mid] = (sr * f[L] - sl * f[R]
                        + sl * sr * (u[R] - u[L])) / width
        else:
            amax = np.maximum(np.abs(lo), np.abs(hi))
            s = np.maximum(amax[zl], amax[zr])
            out[mid] = 0.5 * (f[L] + f[R]) - 0.5 * s * (u[R] - u[L])
        return out

    def _lo_edges(self, u, prim, faces):
        """First-order LLF edge drivers on every orientation."""
        grid = self.grid
        dim = grid.dim
        drivers = self.system.edge_drivers(u, prim)[0]
        amax = []
        for axis in range(dim):
            lo, hi = self.system.signal_speeds(u, axis, prim=prim)
            amax.append(np.maximum(np.abs(lo), np.abs(hi)))

        out = {}
        for c in (range(3) if dim == 3 else (2,)):
            a, b = (c + 1) % 3, (c + 2) % 3
            na, nb = u.shape[1 + a], u.shape[1 + b]

            def zview(arr, da, db):
                sl = [slice(None)] * dim
                sl[a] = slice(da, na - 1 + da)
                sl[b] = slice(db, nb - 1 + db)
                return arr[tuple(sl)]

            def fview(arr, sa, sb):
                sl = [slice(None)] * dim
                sl[a] = sa
                sl[b] = sb
                return arr[tuple(sl)]

            # right/up mean the higher zone index along a/b
            sab = np.maximum(amax[a], amax[b])
            speed = np.maximum(
                np.maximum(zview(sab, 1, 1), zview(sab, 0, 1)),
                np.maximum(zview(sab, 0, 0), zview(sab, 1, 0)))
            q = riemann2d.EdgeRiemannInput(
                e_ru=zview(drivers[c], 1, 1),
                e_lu=zview(drivers[c], 0, 1),
                e_ld=zview(drivers[c], 0, 0),
                e_rd=zview(drivers[c], 1, 0),
                b_nu=fview(faces[a], slice(1, na), slice(1, nb)),
                b_nd=fview(faces[a], slice(1, na), slice(0, nb - 1)),
                b_tr=fview(faces[b], slice(1, na), slice(1, nb)),
                b_tl=fview(faces[b], slice(0, na - 1), slice(1, nb)))
            ev = riemann2d.edge_electric_field(
                q, riemann2d.WaveSpeeds.symmetric(speed), mode="llf")

            earr = np.zeros(grid.padded(mesh.edge_stagger_of(grid, c)))
            win = [slice(None)] * dim
            win[a] = slice(1, na)
            win[b] = slice(1, nb)
            earr[tuple(win)] = ev
            out[c] = earr
        return out

    def _flux_div(self, fluxes):
        """Zone tendencies from interface fluxes (valid off the pad border)."""
        grid = self.grid
        du = np.zeros((self.system.nvar,) + grid.padded())
        for axis, f in enumerate(fluxes):
            n = f.shape[1 + axis]
            hi = (slice(None),) + _ax(grid.dim, axis, slice(1, n))
            lo = (slice(None),) + _ax(grid.dim, axis, slice(0, n - 1))
            du -= (f[hi] - f[lo]) / grid.spacing[axis]
        return du

    def lo_operators(self, state, dt, filled=False):
        """First-order operators and repair source for one Euler step.

        Unless ``filled`` says the ghost bands are already current they
        are refreshed here.  The returned object carries the raw
        first-order forward-Euler results so the repair algebra and the
        tests can inspect them.
        """
        if not filled:
            self.scheme.fill_ghosts(state)
        grid = self.grid
        faces = state.faces[self.family.name]
        u_rep = self._replaced(state.zones, faces)
        prim = self.system.cons_to_prim(u_rep)

        lo = LoOperators(
            fluxes=[self._lo_flux(u_rep, prim, ax) for ax in range(grid.dim)],
            ebars=self._lo_edges(u_rep, prim, faces),
            prim=prim,
            s5=np.zeros(grid.padded()))
        db = self.scheme.ct_rhs(lo.ebars)
        lo.u_tilde = u_rep + dt * self._flux_div(lo.fluxes)
        lo.faces_new = [faces[ax] + dt * db[ax] for ax in range(grid.dim)]
        lo.u_check = self._replaced(lo.u_tilde, lo.faces_new)
        lo.troubled = self._interior_mask & ~self.system.pcp_admissible(
            lo.u_check)
        if lo.troubled.any():
            self.energy_fix(lo.troubled, lo, dt)
        return lo

    # ------------------------------------------------------------------
    # energy repair

    def energy_fix(self, troubled, lo, dt):
        """Repair zones whose installed face averages broke the pressure.

        The excess magnetic energy of the face-averaged field over the
        zone-updated one is exactly the amount the zone energy must gain
        for its pressure to survive the replacement.  Where possible it
        is routed in through the zone's faces, each face carrying a
        share proportional to the squared pressure margin of the
        neighbour behind it, so the books balance zone by zone.  The
        transfer is dropped wholesale if it drives any interior zone
        inadmissible; those zones and zones without donors get the
        energy directly through ``s5`` instead.
        """
        grid = self.grid
        dim = grid.dim
        base = self.family.comps.start
        bsl = slice(base, base + 3)
        excess = self._mag * (
            np.einsum("i...,i...->...", lo.u_check[bsl], lo.u_check[bsl])
            - np.einsum("i...,i...->...", lo.u_tilde[bsl], lo.u_tilde[bsl]))
        # only an energy shortfall is repairable; anything else (negative
        # density, say) is a step-size failure the blend loop will surface
        fix = troubled & (excess > 0.0)
        if not fix.any():
            return
        if not self._conservative_fix:
            lo.s5[fix] = excess[fix]
            return

        margin = np.maximum(lo.prim[4] - self.p_min, 0.0) ** 2
        shape = margin.shape
        wminus, wplus = [], []
        denom = np.zeros(shape)
        for axis in range(dim):
            n = shape[axis]
            wm = np.zeros(shape)
            wp = np.zeros(shape)
            # donor behind the hi face is the next zone up, and vice versa
            wm[_ax(dim, axis, slice(0, n - 1))] = \
                margin[_ax(dim, axis, slice(1, n))]
            wp[_ax(dim, axis, slice(1, n))] = \
                margin[_ax(dim, axis, slice(0, n - 1))]
            wminus.append(wm)
            wplus.append(wp)
            denom += wm + wp

        has_donor = fix & (denom > 0.0)
        direct = fix & ~has_donor
        lo.s5[direct] = excess[direct]
        if not has_donor.any():
            return

        safe = np.where(denom > 0.0, denom, 1.0)
        bracket = np.zeros(shape)
        for axis in range(dim):
            bracket += (wminus[axis] + wplus[axis]) / grid.spacing[axis]
        alpha = np.zeros(shape)
        alpha[has_donor] = (excess[has_donor] * denom[has_donor]
                            / (dt * bracket[has_donor]))

        deltas = []
        for axis in range(dim):
            n = shape[axis]
            darr = np.zeros(grid.padded(grid.face_stagger(axis)))
            darr[_ax(dim, axis, slice(1, n + 1))] -= \
                (wminus[axis] / safe) * alpha
            darr[_ax(dim, axis, slice(0, n))] += (wplus[axis] / safe) * alpha
            self._wrap_add(darr, axis)
            deltas.append(darr)

        du5 = np.zeros(shape)
        for axis, darr in enumerate(deltas):
            n = darr.shape[axis]
            du5 -= (darr[_ax(dim, axis, slice(1, n))]
                    - darr[_ax(dim, axis, slice(0, n - 1))]) \
                / grid.spacing[axis]
        u2 = lo.u_tilde.copy()
        u2[4] += dt * du5
        chk = lo.u_check.copy()
        chk[4] = u2[4]
        ok = self.system.pcp_admissible(chk) | direct | ~self._interior_mask
        if ok.all():
            for axis in range(dim):
                lo.fluxes[axis][4] += deltas[axis]
            lo.u_tilde = u2
            lo.u_check = chk
            lo.alpha_applied = True
        else:
            lo.s5[fix] = excess[fix]

    def _wrap_add(self, farr, axis):
        """Merge the two images of a periodic boundary face.

        A transfer scattered onto face index g by a zone on one side and
        onto index n+g by its wrapped neighbour lands on the same
        physical face; both images must carry the sum for the update and
        its donors to stay consistent.
        """
        lo_kind, hi_kind = self.scheme.bc[axis]
        if lo_kind != "periodic" or hi_kind != "periodic":
            return
        g = self.grid.nghost
        n = self.grid.shape[axis]
        dim = self.grid.dim
        tot = farr[_ax(dim, axis, g)] + farr[_ax(dim, axis, n + g)]
        farr[_ax(dim, axis, g)] = tot
        farr[_ax(dim, axis, n + g)] = tot

    # ------------------------------------------------------------------
    # blending

    def hybridize(self, hi, lo, theta, dt):
        """Blend the two operator sets under one theta field.

        ``hi`` is a scheme evaluation made with ``want_fluxes``; the
        returned operators drop into the same forward-Euler shell as
        either ingredient.  The direct energy reset rides along as a
        zone source scaled by (1 - theta), so it is only fully active
        where the update is fully first-order.
        """
        fluxes = []
        for axis in range(self.grid.dim):
            tf = theta.face_min(axis)[None]
            fluxes.append(tf * hi.fluxes[axis] + (1.0 - tf) * lo.fluxes[axis])
        ebars = {}
        hi_e = hi.e_bar[self.family.name]
        for c, e_lo in lo.ebars.items():
            te = theta.edge_min(c)
            ebars[c] = te * hi_e[c] + (1.0 - te) * e_lo
        source5 = (1.0 - theta.values) * lo.s5 / dt
        return BlendedOperators(fluxes=fluxes, ebars=ebars, source5=source5)

    def _apply(self, state, ops, dt):
        """Forward-Euler application of blended operators to the interior."""
        grid = self.grid
        du = self._flux_div(ops.fluxes)
        du[4] += ops.source5
        db = self.scheme.ct_rhs(ops.ebars)

        zones = state.zones.copy()
        izone = (slice(None),) + grid.interior()
        zones[izone] += dt * du[izone]

        g = grid.nghost
        faces = []
        for axis, farr in enumerate(state.faces[self.family.name]):
            new = farr.copy()
            win = tuple(slice(g, n + g + (1 if k == axis else 0))
                        for k, n in enumerate(grid.shape))
            new[win] += dt * db[axis][win]
            faces.append(new)
        return zones, faces

    # ------------------------------------------------------------------
    # the protected step

    def pcp_forward_euler(self, state, dt, rhs=None, theta0=None):
        """One protected forward-Euler step of size dt.

        Returns the new state and the final ThetaField; counters for the
        step land in ``last_stats``.  ``rhs`` may pass in a scheme
        evaluation made with ``want_fluxes`` to avoid recomputing it.
        """
        scheme = self.scheme
        if rhs is None or rhs.fluxes is None:
            rhs = scheme.full_rhs(state, want_fluxes=True, guarded=True)
        lo = self.lo_operators(state, dt, filled=True)
        theta = theta0 if theta0 is not None else ThetaField.ones(self.grid)
        mesh.fill_ghosts(theta.values, self.grid, scheme.bc)

        zones = faces = None
        rounds = 0
        for _ in range(4):
            ops = self.hybridize(rhs, lo, theta, dt)
            zones, faces = self._apply(state, ops, dt)
            chk = self._replaced(zones, faces)
            fails = self._interior_mask & ~self.system.pcp_admissible(chk)
            if not fails.any():
                break
            if theta.values[fails].min() <= 0.0:
                raise PcpError(self._diagnose(state, fails, chk, dt))
            theta.values[fails] = np.maximum(theta.values[fails] - 0.5, 0.0)
            mesh.fill_ghosts(theta.values, self.grid, scheme.bc)
            rounds += 1
        else:
            raise PcpError("blending loop failed to settle")

        vol = float(np.prod(self.grid.spacing))
        interior = self.grid.interior()
        injected = float(
            ((1.0 - theta.values) * lo.s5)[interior].sum()) * vol
        self.last_stats = {
            "troubled": int(np.count_nonzero(lo.troubled[interior])),
            "lowered": theta.lowered(),
            "rounds": rounds,
            "energy_reset": injected,
            "alpha_pass": lo.alpha_applied,
        }
        new = StaggeredState(self.grid, zones,
                             {self.family.name: faces},
                             state.time + dt)
        return new, theta

    def _diagnose(self, state, fails, chk, dt):
        idx = np.argwhere(fails)
        first = tuple(int(i) for i in idx[0])
        return (f"{idx.shape[0]} zone(s) inadmissible at theta = 0, first at "
                f"index {first} (density {float(chk[0][first]):.4e}, energy "
                f"{float(chk[4][first]):.4e}); time {state.time:.6g}, "
                f"dt {dt:.4e} likely exceeds the positivity CFL bound")
