"""High-order staggered update with exact divergence bookkeeping.

The state carried here is deliberately lopsided.  Most components live as
point values at zone centers and advance through a conservative
flux-split reconstruction sweep.  The components of a curl-driven vector
field instead live as area averages on the faces they are normal to, and
advance through circulations of edge-averaged driver fields, so the
face-registered discrete divergence never changes.  Zone-centered copies
of the face components are derived, never integrated.

One right-hand-side evaluation runs a fixed pipeline:

1. reconstruct every face field transversally, keeping the face-center
   point value and the values at the midpoints of the face's edges;
2. interpolate the face-center values along each normal to get the
   zone-centered mirror of the staggered field;
3. form the zone point values of the edge driver (the electric field, or
   minus the magnetizing field for the electric-displacement family) and
   interpolate them to the four corners abutting each edge;
4. gather the stored edge-midpoint face values as the transverse field
   jumps seen by that edge;
5. advance the zone components with an upwinded flux-difference sweep,
   split against the largest signal speed of each grid line;
6. combine steps 3 and 4 into one stabilized driver value per edge via a
   multidimensional Riemann fan (single-speed or four-speed);
7. average those point values along each edge, which is the identity in
   two dimensions, and difference the edge averages into face tendencies.

Ghost zones are filled exactly once per evaluation, before step 1.
"""

from dataclasses import dataclass

import numpy as np

from . import mesh, riemann2d, weno
from .systems.ced import Maxwell


@dataclass
class StaggeredState:
    """Zone point values plus face-averaged staggered families.

    ``zones`` has shape (nvar, *padded).  ``faces`` maps a family name to
    one array per axis, staggered along that axis.  The zone entries that
    mirror staggered components are scratch space; the face arrays are
    authoritative.
    """

    grid: mesh.GridSpec
    zones: np.ndarray
    faces: dict
    time: float = 0.0

    @classmethod
    def zeros(cls, grid, system):
        faces = {fam.name: mesh.face_arrays(grid) for fam in system.families}
        return cls(grid, mesh.zone_array(grid, system.nvar), faces, 0.0)

    def copy(self):
        faces = {k: [f.copy() for f in v] for k, v in self.faces.items()}
        return StaggeredState(self.grid, self.zones.copy(), faces, self.time)


@dataclass
class SchemeRhs:
    """Tendencies from one evaluation, all on padded layouts.

    ``du_dt`` is valid on interior zones; ``db_dt`` on interior faces
    (including the upper boundary face); ``e_num`` and ``e_bar`` on the
    edges bounding those faces.  Ghost entries are zero.
    ``max_speeds`` holds the largest signal speed seen along each axis,
    the quantity a CFL condition needs.  ``fluxes`` is filled only on
    request: the per-axis interface flux arrays of the zone sweep, which
    the positivity layer blends against first-order fluxes.
    """

    du_dt: np.ndarray
    e_num: dict
    e_bar: dict
    db_dt: dict
    max_speeds: tuple = ()
    fluxes: list | None = None


def _axis_of(name):
    """Cartesian axis of a two-letter vector component name, else None.

    Scalars like ``energy`` must not match even though they end in a
    coordinate letter; their reflection parity is always even.
    """
    if len(name) == 2:
        return {"x": 0, "y": 1, "z": 2}.get(name[1], None)
    return None


def _to_lines(arr, axis):
    """View components of (nc, *spatial) as lines along one spatial axis."""
    mv = np.moveaxis(arr, 1 + axis, -1)
    return np.ascontiguousarray(mv).reshape(arr.shape[0], -1, mv.shape[-1]), \
        mv.shape


def _from_lines(flat, mvshape, axis):
    return np.moveaxis(flat.reshape(mvshape), -1, 1 + axis)


class Scheme:
    """Pipeline configuration bound to one grid and one physics system.

    order:   formal accuracy of every reconstruction (3, 5, 7 or 9).
    riemann: 'llf' uses one symmetric speed per edge and per line;
             'hll' keeps four directional edge speeds.
    bc:      a single kind applied everywhere, or per-axis (lo, hi)
             pairs drawn from periodic/outflow/reflect/inflow.
    characteristic: reconstruct the zone sweep in local characteristic
             variables (defaults to whatever the system supports).
    ghost_hook: called with the state after the geometric ghost fill,
             for inflow bands and other prescribed boundary data.
    """

    def __init__(self, grid, system, order, riemann="llf", bc="periodic",
                 characteristic=None, ghost_hook=None):
        if riemann not in ("llf", "hll"):
            raise ValueError(f"riemann must be 'llf' or 'hll'; got {riemann!r}")
        self.grid = grid
        self.system = system
        self.order = order
        self.riemann = riemann
        self.ghost_hook = ghost_hook
        self.characteristic = (system.has_characteristics
                               if characteristic is None else characteristic)
        if self.characteristic and not system.has_characteristics:
            raise ValueError(
                f"{system.name} has no characteristic decomposition")

        self.gz = weno.ghost_zones(order)
        self.hw = weno.flux_window(order)
        if grid.nghost < 2 * self.gz:
            raise ValueError(f"order {order} needs nghost >= {2 * self.gz}")
        self.bc = self._normalize_bc(bc)

        dim = grid.dim
        # window of zones around the interior that every consumer reads;
        # everything zone-derived is computed on this core view only
        g = grid.nghost
        self._core = tuple(slice(g - self.gz, n + g + self.gz)
                           for n in grid.shape)
        self._pad = g - self.gz

        # components mirrored from faces, and those the zone sweep owns
        mirror = {}
        for fam in system.families:
            base = fam.comps.start
            for ax in range(dim):
                mirror[base + ax] = (fam.name, ax)
        self.mirror_comps = mirror
        self.zone_comps = [c for c in range(system.nvar) if c not in mirror]

        # reflection parity of each zone component along each axis
        self._parity = []
        for name in system.component_names:
            ax = _axis_of(name)
            self._parity.append(tuple(-1.0 if k == ax else 1.0
                                      for k in range(dim)))

        if isinstance(system, Maxwell):
            zc = grid.zone_centers()
            core_zc = [c[self._core] for c in zc]
            self._aux = {"eps": system.eps_at(core_zc),
                         "mu": system.mu_at(core_zc)}
        else:
            self._aux = {}

    # ------------------------------------------------------------------
    # plumbing

    def _normalize_bc(self, bc):
        if isinstance(bc, str):
            return tuple(((bc, bc),) * self.grid.dim)
        bc = tuple(tuple(p) for p in bc)
        if len(bc) != self.grid.dim:
            raise ValueError("bc needs one (lo, hi) pair per axis")
        return bc

    def new_state(self):
        return StaggeredState.zeros(self.grid, self.system)

    def fill_ghosts(self, state):
        """The one geometric ghost fill; mutates the state's ghost bands."""
        g = self.grid
        for c in range(self.system.nvar):
            mesh.fill_ghosts(state.zones[c], g, self.bc,
                             signs=self._parity[c])
        for fam in self.system.families:
            for ax, arr in enumerate(state.faces[fam.name]):
                comp = fam.comps.start + ax
                mesh.fill_ghosts(arr, g, self.bc,
                                 stagger=g.face_stagger(ax),
                                 signs=self._parity[comp])
        if self.ghost_hook is not None:
            self.ghost_hook(state)

    def _core_view(self, arr, stagger=None):
        """Slice a padded array down to the core working window."""
        dim = self.grid.dim
        stagger = stagger or (False,) * dim
        lead = arr.ndim - dim
        idx = (slice(None),) * lead + tuple(
            slice(s.start, s.stop + (1 if st else 0))
            for s, st in zip(self._core, stagger))
        return arr[idx]

    def _embed(self, core_arr, stagger=None, lead=0):
        """Zero-pad a core array back out to the full padded layout."""
        dim = self.grid.dim
        stagger = stagger or (False,) * dim
        shape = core_arr.shape[:lead] + self.grid.padded(stagger)
        out = np.zeros(shape)
        idx = (slice(None),) * lead + tuple(
            slice(s.start, s.stop + (1 if st else 0))
            for s, st in zip(self._core, stagger))
        out[idx] = core_arr
        return out

    def _clip(self, arr, stagger, lead=0):
        """Zero everything outside the valid window of ``arr``.

        Staggered axes keep the upper boundary entry: a wall face is a
        real face and its tendency must survive the clip.
        """
        g = self.grid.nghost
        out = np.zeros_like(arr)
        win = (slice(None),) * lead + tuple(
            slice(g, n + g + (1 if st else 0))
            for n, st in zip(self.grid.shape, stagger))
        out[win] = arr[win]
        return out

    def _edge_stagger(self, orientation):
        return mesh.edge_stagger_of(self.grid, orientation)

    def _edge_shape(self, orientation):
        gz, dim = self.gz, self.grid.dim
        st = self._edge_stagger(orientation)
        return tuple(n + 2 * gz + (1 if s else 0)
                     for n, s in zip(self.grid.shape, st))

    @staticmethod
    def _slab(src, edge_shape, offs):
        """View of src on the inner edge slab, shifted by offs per axis.

        Edge entry (i, j, ...) reads src[i + offs, ...]; the outermost
        edge layer is dropped so every shift stays in bounds.
        """
        idx = tuple(slice(1 + o, n - 1 + o) for o, n in zip(offs, edge_shape))
        return src[idx]

    # ------------------------------------------------------------------
    # step 1: transverse reconstruction of each face array

    def step1_reconstruct_faces(self, face_list, linear=False):
        """Per-axis dicts of face point values on the full padded layout.

        Each dict holds 'center' plus ((transverse axis, 'lo'|'hi')) keys
        for the values at the midpoints of the face's bounding edges.
        """
        dim = self.grid.dim
        out = []
        for ax, arr in enumerate(face_list):
            if dim == 2:
                t = 1 - ax
                data = np.moveaxis(arr, t, -1)[None]
                mom = weno.segment_moments(data, self.order, linear)
                back = lambda a, t=t: np.moveaxis(a, -1, t)
                out.append({"center": back(mom[0, 0]),
                            (t, "lo"): back(mom[0, 1]),
                            (t, "hi"): back(mom[0, 2])})
            else:
                t1, t2 = [k for k in range(3) if k != ax]
                data = np.moveaxis(arr, ax, 0)
                mom = weno.face_moments(data, self.order, linear)
                back = lambda m, ax=ax: np.moveaxis(m, 0, ax)
                out.append({"center": back(mom[:, 0]),
                            (t1, "lo"): back(mom[:, 1]),
                            (t1, "hi"): back(mom[:, 2]),
                            (t2, "lo"): back(mom[:, 3]),
                            (t2, "hi"): back(mom[:, 4])})
        return out

    # ------------------------------------------------------------------
    # step 2: zone-centered mirrors of the staggered components

    def step2_zone_point_fields(self, face_pts, face_list, linear=False):
        """Zone mirrors: high-order where windows fit, face means outside.

        Returns one padded zone array per axis component.  The face-mean
        fallback only survives in the outermost ghost shell, beyond every
        window any interior update reads.
        """
        grid = self.grid
        mirrors = []
        for ax in range(grid.dim):
            f = face_list[ax]
            lo = [slice(None)] * grid.dim
            hi = [slice(None)] * grid.dim
            lo[ax] = slice(0, f.shape[ax] - 1)
            hi[ax] = slice(1, f.shape[ax])
            base = 0.5 * (f[tuple(lo)] + f[tuple(hi)])

            centers = face_pts[ax]["center"]
            flat, mvshape = _to_lines(centers[None], ax)
            interp = weno.center_from_faces(flat, self.order, linear)
            nz = mvshape[-1] - 1
            zone = _from_lines(interp[:, 0, :, :nz], mvshape[:-1] + (nz,), ax)

            box = tuple(self._core)
            base[box] = zone[0][box]
            mirrors.append(base)
        return mirrors

    # ------------------------------------------------------------------
    # step 3: corner candidates of a zone-centered edge driver

    def step3_edge_centered_E(self, e_zone, orientation, linear=False):
        """Four per-edge driver candidates from the abutting zones.

        ``e_zone`` is the core zone array of the driver component aligned
        with the edge.  Returns (e_ru, e_lu, e_ld, e_rd) on the core edge
        layout: the right-up zone evaluates its reconstruction at the
        corner (-1/2, -1/2) of its local frame, and so on around the edge.
        Arrays are zero on the outermost edge layer.
        """
        dim = self.grid.dim
        c = orientation
        if dim == 2:
            corners = weno.corner_values(e_zone[None], self.order, linear)[0]
            ch = {"mm": corners[0], "pm": corners[1],
                  "mp": corners[2], "pp": corners[3]}
            pa = 0
        else:
            t1, _ = [k for k in range(3) if k != c]
            data = np.moveaxis(e_zone, c, 0)
            corners = weno.corner_values(data, self.order, linear)
            back = lambda arr: np.moveaxis(arr, 0, c)
            ch = {"mm": back(corners[:, 0]), "pm": back(corners[:, 1]),
                  "mp": back(corners[:, 2]), "pp": back(corners[:, 3])}
            pa = 0 if (c + 1) % 3 == t1 else 1

        a, b = (c + 1) % 3, (c + 2) % 3
        eshape = self._edge_shape(c)
        off_a = [0] * dim
        off_b = [0] * dim
        off_a[a] = -1
        off_b[b] = -1
        ch_lu = "pm" if pa == 0 else "mp"
        ch_rd = "mp" if pa == 0 else "pm"

        full = lambda slab: self._embed_slab(slab, eshape)
        e_ru = full(self._slab(ch["mm"], eshape, [0] * dim))
        e_lu = full(self._slab(ch[ch_lu], eshape, off_a))
        e_rd = full(self._slab(ch[ch_rd], eshape, off_b))
        e_ld = full(self._slab(ch["pp"], eshape,
                               [oa + ob for oa, ob in zip(off_a, off_b)]))
        return e_ru, e_lu, e_ld, e_rd

    @staticmethod
    def _embed_slab(slab, edge_shape):
        out = np.zeros(edge_shape)
        out[tuple(slice(1, n - 1) for n in edge_shape)] = slab
        return out

    # ------------------------------------------------------------------
    # step 4: transverse face-field values seen by each edge

    def step4_edge_B_jumps(self, face_pts, orientation):
        """Edge-midpoint face values around each edge of one orientation.

        Returns (b_nu, b_nd, b_tr, b_tl) on the core edge layout: the
        first transverse component approached from above and below, and
        the second approached from right and left, in the cyclic frame of
        the edge direction.  Zero on the outermost edge layer.
        """
        dim = self.grid.dim
        c = orientation
        a, b = (c + 1) % 3, (c + 2) % 3
        eshape = self._edge_shape(c)

        def gather(comp_axis, free_axis, side, shift):
            src = face_pts[comp_axis][(free_axis, side)]
            src = self._core_view(src, self.grid.face_stagger(comp_axis))
            offs = [0] * dim
            offs[free_axis] = shift
            return self._embed_slab(self._slab(src, eshape, offs), eshape)

        b_nu = gather(a, b, "lo", 0)
        b_nd = gather(a, b, "hi", -1)
        b_tr = gather(b, a, "lo", 0)
        b_tl = gather(b, a, "hi", -1)
        return b_nu, b_nd, b_tr, b_tl

    # ------------------------------------------------------------------
    # step 5: flux-difference sweep for the zone-owned components

    def _split_fluxes(self, u, prim, speeds, axis, linear):
        """Upwinded interface fluxes along one axis, on face positions.

        Returns (nvar, *core with axis staggered).  Splitting uses the
        largest absolute signal speed of each grid line.
        """
        sys = self.system
        f = sys.flux(u, axis, **self._flux_extra(prim))
        lo, hi = speeds[axis]
        amax = np.maximum(np.abs(lo), np.abs(hi))

        fl, mvshape = _to_lines(f, axis)
        ul, _ = _to_lines(u, axis)
        al = np.ascontiguousarray(
            np.moveaxis(amax, axis, -1)).reshape(1, fl.shape[1], -1)
        alpha = al.max(axis=-1, keepdims=True)
        fp = 0.5 * (fl + alpha * ul)
        fm = 0.5 * (fl - alpha * ul)

        nvar, nl, n = fl.shape
        fhat = np.zeros((nvar, nl, n + 1))
        if self.characteristic:
            self._char_interface(fp, fm, ul, axis, fhat, linear)
        else:
            ip = weno.interface_values(fp, self.order, linear)
            im = weno.interface_values(fm, self.order, linear)
            fhat[:, :, 1:n] = ip[:, 0, :, :-1] + im[:, 1, :, 1:]

        stag_shape = mvshape[:-1] + (n + 1,)
        out = np.moveaxis(fhat.reshape(stag_shape), -1, 1 + axis)
        return out

    def _char_interface(self, fp, fm, ul, axis, fhat, linear):
        """Characteristic-space reconstruction, one window per interface."""
        h = self.hw
        w = 2 * h + 1
        nvar, nl, n = fp.shape
        p0, p1 = h, n - 2 - h          # inclusive window-center range
        m = p1 - p0 + 1
        if m <= 0:
            raise ValueError("line too short for characteristic windows")

        uref = 0.5 * (ul[:, :, p0:p1 + 1] + ul[:, :, p0 + 1:p1 + 2])
        _, rmat, lmat = self.system.eigensystem(uref, axis)

        wp = np.stack([fp[:, :, p0 - h + d:p1 - h + d + 1]
                       for d in range(w)], axis=-1)
        wm = np.stack([fm[:, :, p0 + 1 - h + d:p1 + 1 - h + d + 1]
                       for d in range(w)], axis=-1)
        cp = np.einsum("lmab,blmw->almw", lmat, wp)
        cm = np.einsum("lmab,blmw->almw", lmat, wm)

        rp = weno.interface_values(cp.reshape(nvar, nl * m, w),
                                   self.order, linear)
        rm = weno.interface_values(cm.reshape(nvar, nl * m, w),
                                   self.order, linear)
        ch = (rp[:, 0, :, h] + rm[:, 1, :, h]).reshape(nvar, nl, m)
        fhat[:, :, p0 + 1:p1 + 2] = np.einsum("lmab,blm->alm", rmat, ch)

    def step5_zone_rhs(self, u, prim, speeds, linear=False, keep_fluxes=False):
        """Tendency of the zone point values on the core layout.

        With ``keep_fluxes`` the per-axis interface flux arrays are
        returned alongside the tendency; the positivity layer blends
        them with its first-order counterparts.
        """
        du = np.zeros_like(u)
        if not self.zone_comps and not keep_fluxes:
            return du
        kept = []
        for axis in range(self.grid.dim):
            fhat = self._split_fluxes(u, prim, speeds, axis, linear)
            if keep_fluxes:
                kept.append(fhat)
            lo = [slice(None)] * self.grid.dim
            hi = [slice(None)] * self.grid.dim
            lo[axis] = slice(0, fhat.shape[1 + axis] - 1)
            hi[axis] = slice(1, fhat.shape[1 + axis])
            du -= (fhat[(slice(None),) + tuple(hi)]
                   - fhat[(slice(None),) + tuple(lo)]) / self.grid.spacing[axis]
        if keep_fluxes:
            return du, kept
        return du

    # ------------------------------------------------------------------
    # step 6: one stabilized driver value per edge

    def _edge_speeds(self, speeds, orientation):
        """Directional wave bounds at each edge, pooled from abutting zones."""
        dim = self.grid.dim
        c = orientation
        a, b = (c + 1) % 3, (c + 2) % 3
        eshape = self._edge_shape(c)

        def pool(zarr, reduce):
            views = []
            for oa in (0, -1):
                for ob in (0, -1):
                    offs = [0] * dim
                    offs[a] = oa
                    offs[b] = ob
                    views.append(self._slab(zarr, eshape, offs))
            out = views[0]
            for v in views[1:]:
                out = reduce(out, v)
            return out

        lo_a, hi_a = speeds[a]
        lo_b, hi_b = speeds[b]
        if self.riemann == "llf":
            amax = np.maximum(np.maximum(np.abs(lo_a), np.abs(hi_a)),
                              np.maximum(np.abs(lo_b), np.abs(hi_b)))
            return riemann2d.WaveSpeeds.symmetric(pool(amax, np.maximum))
        return riemann2d.WaveSpeeds(s_l=pool(lo_a, np.minimum),
                                    s_r=pool(hi_a, np.maximum),
                                    s_d=pool(lo_b, np.minimum),
                                    s_u=pool(hi_b, np.maximum))

    def step6_edge_E_num(self, cands, jumps, espeeds):
        """Resolved edge driver from candidates, jumps and wave bounds."""
        eshape = cands[0].shape
        slab = tuple(slice(1, n - 1) for n in eshape)
        q = riemann2d.EdgeRiemannInput(
            e_ru=cands[0][slab], e_lu=cands[1][slab],
            e_ld=cands[2][slab], e_rd=cands[3][slab],
            b_nu=jumps[0][slab], b_nd=jumps[1][slab],
            b_tr=jumps[2][slab], b_tl=jumps[3][slab])
        e = riemann2d.edge_electric_field(q, espeeds, mode=self.riemann)
        return self._embed_slab(e, eshape)

    # ------------------------------------------------------------------
    # step 7: pointwise edge values -> edge line averages

    def step7_edge_average(self, e_num, orientation, linear=False):
        """Average the point values along each edge of one orientation.

        Two-dimensional edges normal to the plane are points, so the
        average is the value itself.
        """
        if self.grid.dim == 2:
            return e_num
        c = orientation
        flat, mvshape = _to_lines(e_num[None], c)
        avg = weno.line_average(flat, self.order, linear)
        return _from_lines(avg[:, 0], mvshape, c)[0]

    # ------------------------------------------------------------------
    # constrained-transport circulation of the edge averages

    def ct_rhs(self, e_bars):
        """Face tendencies from edge averages of one family's driver.

        ``e_bars`` maps edge orientation to the core edge array.  Each
        face component a changes by minus the circulation of the driver
        around that face: with (a, b, c) a cyclic triple, the difference
        of the c-aligned averages along b minus the difference of the
        b-aligned averages along c, scaled by the respective spacings.
        The same stencil telescopes in the divergence, which therefore
        never changes.
        """
        dim = self.grid.dim
        sp = self.grid.spacing
        out = []

        def ddiff(arr, axis):
            lo = [slice(None)] * dim
            hi = [slice(None)] * dim
            lo[axis] = slice(0, arr.shape[axis] - 1)
            hi[axis] = slice(1, arr.shape[axis])
            return arr[tuple(hi)] - arr[tuple(lo)]

        for a in range(dim):
            b, c = (a + 1) % 3, (a + 2) % 3
            if dim == 2:
                # only the out-of-plane orientation bounds in-plane faces
                ec = e_bars[2]
                t = 1 - a
                sign = -1.0 if a == 0 else 1.0
                out.append(sign * ddiff(ec, t) / sp[t])
            else:
                term_c = ddiff(e_bars[c], b) / sp[b]
                term_b = ddiff(e_bars[b], c) / sp[c]
                out.append(-(term_c - term_b))
        return out

    # ------------------------------------------------------------------
    # orchestration

    def _flux_extra(self, prim):
        if self._aux:
            return self._aux
        return {"prim": prim}

    def full_rhs(self, state, linear=False, want_fluxes=False,
                 guarded=False):
        """Evaluate every tendency of the coupled update once.

        Fills ghosts, reconstructs faces, installs zone mirrors, runs the
        zone sweep for the components it owns, resolves every edge of
        every staggered family, and differences the edge averages into
        face tendencies.  Admissibility failures inside the physics
        callbacks propagate to the caller, except under ``guarded``:
        there the primitive recovery floors bad zones instead, because a
        caller that blends and re-tests the update (the positivity
        layer) only needs finite candidate fluxes, and the installed
        high-order point mirrors may leave admissibility even when the
        state itself is sound.
        """
        sys = self.system
        grid = self.grid
        dim = grid.dim
        self.fill_ghosts(state)

        face_pts = {}
        u = state.zones.copy()
        for fam in sys.families:
            pts = self.step1_reconstruct_faces(state.faces[fam.name], linear)
            face_pts[fam.name] = pts
            mirrors = self.step2_zone_point_fields(
                pts, state.faces[fam.name], linear)
            for ax in range(dim):
                u[fam.comps.start + ax] = mirrors[ax]

        ucore = self._core_view(u)
        if self._aux:
            prim = sys.cons_to_prim(ucore, **self._aux)
            drivers = sys.edge_drivers(ucore, **self._aux)
        else:
            prim = sys.cons_to_prim(ucore, floor=guarded)
            drivers = sys.edge_drivers(ucore, prim)
        speeds = [sys.signal_speeds(ucore, ax, **self._flux_extra(prim))
                  for ax in range(dim)]

        fhats = None
        if want_fluxes:
            du_core, fhats = self.step5_zone_rhs(ucore, prim, speeds, linear,
                                                 keep_fluxes=True)
        else:
            du_core = self.step5_zone_rhs(ucore, prim, speeds, linear)

        orientations = range(3) if dim == 3 else (2,)
        e_num, e_bar, db_dt = {}, {}, {}
        for fi, fam in enumerate(sys.families):
            e_num[fam.name] = {}
            e_bar[fam.name] = {}
            for c in orientations:
                cands = self.step3_edge_centered_E(drivers[fi][c], c, linear)
                jumps = self.step4_edge_B_jumps(face_pts[fam.name], c)
                espd = self._edge_speeds(speeds, c)
                en = self.step6_edge_E_num(cands, jumps, espd)
                e_num[fam.name][c] = en
                e_bar[fam.name][c] = self.step7_edge_average(en, c, linear)
            db = self.ct_rhs(e_bar[fam.name])
            db_dt[fam.name] = [
                self._clip(self._embed(db[ax], grid.face_stagger(ax)),
                           grid.face_stagger(ax))
                for ax in range(dim)]

        interior = grid.interior()
        du = np.zeros_like(state.zones)
        gz = self.gz
        inner = tuple(slice(gz, gz + n) for n in grid.shape)
        du[(slice(None),) + interior] = du_core[(slice(None),) + inner]

        embed_edges = lambda d: {
            c: self._clip(self._embed(arr, self._edge_stagger(c)),
                          self._edge_stagger(c))
            for c, arr in d.items()}
        radii = tuple(float(np.maximum(np.abs(lo), np.abs(hi)).max())
                      for lo, hi in speeds)
        fluxes = None
        if fhats is not None:
            fluxes = [self._clip(self._embed(fh, grid.face_stagger(ax), lead=1),
                                 grid.face_stagger(ax), lead=1)
                      for ax, fh in enumerate(fhats)]
        return SchemeRhs(du_dt=du,
                         e_num={k: embed_edges(v) for k, v in e_num.items()},
                         e_bar={k: embed_edges(v) for k, v in e_bar.items()},
                         db_dt=db_dt,
                         max_speeds=radii,
                         fluxes=fluxes)

    # ------------------------------------------------------------------
    # output/admissibility view

    def face_consistent_zones(self, state):
        """Zone array with mirror components set to bracketing face means.

        This is the conservative, staggered-consistent view used for
        admissibility checks and output files; the high-order mirrors
        used inside the update are recomputed from faces every stage
        and never read here.
        """
        out = state.zones.copy()
        for fam in self.system.families:
            means = mesh.face_means_to_zones(self.grid,
                                             state.faces[fam.name])
            for ax in range(self.grid.dim):
                out[fam.comps.start + ax] = means[ax]
        return out

    def zone_point_view(self, state, linear=False):
        """Zone array with mirror components at design-order point values.

        Error measurements against an exact point solution need the
        staggered components expressed as zone-center point values at the
        same order as the update itself, so this runs the face
        reconstruction and center interpolation of steps 1-2 (filling
        ghosts first) and installs the results.  Valid on the interior.
        """
        self.fill_ghosts(state)
        out = state.zones.copy()
        for fam in self.system.families:
            pts = self.step1_reconstruct_faces(state.faces[fam.name], linear)
            mirrors = self.step2_zone_point_fields(
                pts, state.faces[fam.name], linear)
            for ax in range(self.grid.dim):
                out[fam.comps.start + ax] = mirrors[ax]
        return out
