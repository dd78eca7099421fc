"""Compiled sweep kernels for the hybridized stencil families.

The families are packed once into kernel-ready arrays and the same scan
kernels then serve every reconstruction in the scheme.  Three things
keep them fast on one core: coefficient rows are stored compactly over
each candidate stencil's own support (the shared data window is mostly
zeros for the small candidates), the inner loops process eight zones at
a time along the contiguous axis so the compiler can vectorize them,
and the per-block arithmetic is written out inline in each scan because
a helper call would spend more time passing arrays than computing.
"""

import numpy as np
from numba import njit

from .families import Family

EPS_WEIGHT = 1.0e-12
LANES = 8


class Packed:
    """Kernel-ready view of a Family restricted to chosen functionals."""

    def __init__(self, family: Family, names):
        self.names = tuple(names)
        self.offsets = family.window.astype(np.int64)
        self.values = np.stack([family.values[n] for n in self.names])
        self.beta_fac = family.beta_fac
        self.gamma = family.gamma
        self.q = family.q
        self.plain = family.plain
        self.reach_lo = (-family.window.min(axis=0)).astype(np.int64)
        self.reach_hi = family.window.max(axis=0).astype(np.int64)
        self._pack_sparse()

    def _pack_sparse(self):
        """Compact every stencil to its own support.

        A candidate's value and smoothness rows are zero outside the
        points it actually uses; storing them densely over the family
        window wastes most of the kernel's arithmetic.  The packed form
        keeps, per stencil, the support index list, the nonzero
        smoothness rows and the functional rows, all dense over the
        support only.
        """
        nf, ns, nw = self.values.shape
        rank = self.beta_fac.shape[1]
        sup_ptr = [0]
        sup_kidx = []
        srow_ptr = [0]
        rowbase = []
        bcoef = []
        vbase = []
        vcoef = []
        for s in range(ns):
            used = (self.values[:, s, :] != 0.0).any(axis=0)
            used |= (self.beta_fac[s] != 0.0).any(axis=0)
            kidx = np.nonzero(used)[0]
            if kidx.size == 0:
                kidx = np.array([0], dtype=np.int64)
            sup_kidx.extend(int(k) for k in kidx)
            sup_ptr.append(len(sup_kidx))
            for r in range(rank):
                row = self.beta_fac[s, r, kidx]
                if np.any(row != 0.0):
                    rowbase.append(len(bcoef))
                    bcoef.extend(row.tolist())
            srow_ptr.append(len(rowbase))
            vbase.append(len(vcoef))
            for f in range(nf):
                vcoef.extend(self.values[f, s, kidx].tolist())
        self.sup_ptr = np.asarray(sup_ptr, dtype=np.int64)
        self.sup_kidx = np.asarray(sup_kidx, dtype=np.int64)
        self.srow_ptr = np.asarray(srow_ptr, dtype=np.int64)
        self.rowbase = np.asarray(rowbase, dtype=np.int64)
        self.bcoef = np.asarray(bcoef, dtype=np.float64)
        self.vbase = np.asarray(vbase, dtype=np.int64)
        self.vcoef = np.asarray(vcoef, dtype=np.float64)
        self.nf = nf

    def args(self, linear=False):
        return (self.sup_ptr, self.sup_kidx, self.srow_ptr, self.rowbase,
                self.bcoef, self.vbase, self.vcoef, np.int64(self.nf),
                self.gamma, np.int64(self.q), self.plain, bool(linear))


class PackedStagger(Packed):
    """1d family on half-integer offsets, shifted to face indexing.

    Zone i straddles faces i and i+1, so the half-integer offset o maps to
    face index i + (o + 1/2).
    """

    def __init__(self, family, names):
        super().__init__(family, names)
        shifted = family.window + 0.5
        self.offsets = np.rint(shifted).astype(np.int64)
        self.reach_lo = -self.offsets.min(axis=0)
        self.reach_hi = self.offsets.max(axis=0)


# The per-block body shared (textually) by the scans.  ``flat`` is the
# contiguous plane or line, ``base`` the linear index of lane 0; results
# land in outL[:, :lanes].
_BLOCK_BODY = '''
    for k in range(nw):
        src = base + lin[k]
        for l in range(lanes):
            wL[k, l] = flat[src + l]
    for s in range(ns):
        p0 = sup_ptr[s]
        m = sup_ptr[s + 1] - p0
        for l in range(lanes):
            betasL[s, l] = 0.0
        for row in range(srow_ptr[s], srow_ptr[s + 1]):
            cb = rowbase[row]
            for l in range(lanes):
                accL[l] = 0.0
            for t in range(m):
                cv = bcoef[cb + t]
                ki = sup_kidx[p0 + t]
                for l in range(lanes):
                    accL[l] += cv * wL[ki, l]
            for l in range(lanes):
                betasL[s, l] += accL[l] * accL[l]
    if linear:
        for s in range(ns):
            for l in range(lanes):
                wgL[s, l] = gamma[s]
    else:
        for l in range(lanes):
            accL[l] = 0.0
        for s in range(1, ns):
            for l in range(lanes):
                accL[l] += abs(betasL[0, l] - betasL[s, l])
        if q == 2:
            for l in range(lanes):
                tau = accL[l] * inv_nsm1
                accL[l] = tau * tau
        elif q == 3:
            for l in range(lanes):
                tau = accL[l] * inv_nsm1
                accL[l] = tau * tau * tau
        else:
            for l in range(lanes):
                tau = accL[l] * inv_nsm1
                accL[l] = tau ** q
        for s in range(ns):
            gs = gamma[s]
            for l in range(lanes):
                d = betasL[s, l] + EPS_WEIGHT
                wgL[s, l] = gs * (1.0 + accL[l] / (d * d))
    for l in range(lanes):
        tot = 0.0
        for s in range(ns):
            tot += wgL[s, l]
        inv = 1.0 / tot
        for s in range(ns):
            wgL[s, l] *= inv
    for s in range(ns):
        p0 = sup_ptr[s]
        m = sup_ptr[s + 1] - p0
        vb = vbase[s]
        for f in range(nf):
            cb = vb + f * m
            for l in range(lanes):
                accL[l] = 0.0
            for t in range(m):
                cv = vcoef[cb + t]
                ki = sup_kidx[p0 + t]
                for l in range(lanes):
                    accL[l] += cv * wL[ki, l]
            for l in range(lanes):
                valsL[f, s, l] = accL[l]
    if plain:
        for f in range(nf):
            for l in range(lanes):
                acc = 0.0
                for s in range(ns):
                    acc += wgL[s, l] * valsL[f, s, l]
                outL[f, l] = acc
    else:
        inv_g0 = 1.0 / gamma[0]
        for f in range(nf):
            for l in range(lanes):
                low = 0.0
                acc = 0.0
                for s in range(1, ns):
                    low += gamma[s] * valsL[f, s, l]
                    acc += wgL[s, l] * valsL[f, s, l]
                w0 = wgL[0, l] * inv_g0
                outL[f, l] = w0 * (valsL[f, 0, l] - low) + acc
'''


def _indent(text, pad):
    return "\n".join(pad + ln if ln.strip() else ln
                     for ln in text.splitlines())


_SCAN_2D_SRC = '''
def scan_2d(data, offs, sup_ptr, sup_kidx, srow_ptr, rowbase, bcoef,
            vbase, vcoef, nf, gamma, q, plain, linear,
            lo1, hi1, lo2, hi2, out):
    nc, n1, n2 = data.shape
    ns = gamma.shape[0]
    nw = offs.shape[0]
    inv_nsm1 = 1.0 / (ns - 1) if ns > 1 else 0.0
    lin = np.empty(nw, dtype=np.int64)
    for k in range(nw):
        lin[k] = offs[k, 0] * n2 + offs[k, 1]
    wL = np.empty((nw, LANES))
    betasL = np.empty((ns, LANES))
    wgL = np.empty((ns, LANES))
    valsL = np.empty((nf, ns, LANES))
    accL = np.empty(LANES)
    outL = np.empty((nf, LANES))
    span = hi2 - lo2
    for c in range(nc):
        flat = data[c].ravel()
        for i in range(lo1, hi1):
            base_i = i * n2
            j = lo2
            while j < hi2:
                lanes = min(LANES, hi2 - j)
                if lanes < LANES and span >= LANES:
                    j = hi2 - LANES
                    lanes = LANES
                base = base_i + j
{body}
                for f in range(nf):
                    for l in range(lanes):
                        out[c, f, i, j + l] = outL[f, l]
                j += lanes
'''

_SCAN_1D_SRC = '''
def scan_1d(data, offs, sup_ptr, sup_kidx, srow_ptr, rowbase, bcoef,
            vbase, vcoef, nf, gamma, q, plain, linear, lo, hi, out):
    nc, nl, n = data.shape
    ns = gamma.shape[0]
    nw = offs.shape[0]
    inv_nsm1 = 1.0 / (ns - 1) if ns > 1 else 0.0
    lin = np.empty(nw, dtype=np.int64)
    for k in range(nw):
        lin[k] = offs[k, 0]
    wL = np.empty((nw, LANES))
    betasL = np.empty((ns, LANES))
    wgL = np.empty((ns, LANES))
    valsL = np.empty((nf, ns, LANES))
    accL = np.empty(LANES)
    outL = np.empty((nf, LANES))
    span = hi - lo
    flat = np.empty(n)
    for c in range(nc):
        for m0 in range(nl):
            for i in range(n):
                flat[i] = data[c, m0, i]
            i = lo
            while i < hi:
                lanes = min(LANES, hi - i)
                if lanes < LANES and span >= LANES:
                    i = hi - LANES
                    lanes = LANES
                base = i
{body}
                for f in range(nf):
                    for l in range(lanes):
                        out[c, f, m0, i + l] = outL[f, l]
                i += lanes
'''

_SCAN_3D_SRC = '''
def scan_3d(data, offs, sup_ptr, sup_kidx, srow_ptr, rowbase, bcoef,
            vbase, vcoef, nf, gamma, q, plain, linear,
            lo1, hi1, lo2, hi2, lo3, hi3, out):
    nc, n1, n2, n3 = data.shape
    ns = gamma.shape[0]
    nw = offs.shape[0]
    inv_nsm1 = 1.0 / (ns - 1) if ns > 1 else 0.0
    lin = np.empty(nw, dtype=np.int64)
    for k in range(nw):
        lin[k] = (offs[k, 0] * n2 + offs[k, 1]) * n3 + offs[k, 2]
    wL = np.empty((nw, LANES))
    betasL = np.empty((ns, LANES))
    wgL = np.empty((ns, LANES))
    valsL = np.empty((nf, ns, LANES))
    accL = np.empty(LANES)
    outL = np.empty((nf, LANES))
    span = hi3 - lo3
    for c in range(nc):
        flat = data[c].ravel()
        for i in range(lo1, hi1):
            for j in range(lo2, hi2):
                base_ij = (i * n2 + j) * n3
                l3 = lo3
                while l3 < hi3:
                    lanes = min(LANES, hi3 - l3)
                    if lanes < LANES and span >= LANES:
                        l3 = hi3 - LANES
                        lanes = LANES
                    base = base_ij + l3
{body}
                    for f in range(nf):
                        for l in range(lanes):
                            out[c, f, i, j, l3 + l] = outL[f, l]
                    l3 += lanes
'''


def _build_scan(template, pad):
    src = template.format(body=_indent(_BLOCK_BODY, pad))
    ns = {"np": np, "LANES": LANES, "EPS_WEIGHT": EPS_WEIGHT}
    exec(compile(src, __file__, "exec"), ns)
    name = "scan_1d" if "scan_1d" in src else (
        "scan_2d" if "scan_2d" in src else "scan_3d")
    return njit(fastmath=True)(ns[name])


scan_2d = _build_scan(_SCAN_2D_SRC, " " * 12)
scan_1d = _build_scan(_SCAN_1D_SRC, " " * 12)
scan_3d = _build_scan(_SCAN_3D_SRC, " " * 16)


def run_2d(packed, data, linear=False, out=None):
    """Apply a planar family to (nc, n1, n2) data; valid interior only."""
    nc, n1, n2 = data.shape
    nf = packed.values.shape[0]
    if out is None:
        out = np.zeros((nc, nf, n1, n2))
    args = packed.args(linear)
    scan_2d(np.ascontiguousarray(data), packed.offsets, *args,
            packed.reach_lo[0], n1 - packed.reach_hi[0],
            packed.reach_lo[1], n2 - packed.reach_hi[1], out)
    return out


def run_1d(packed, data, linear=False, out=None):
    """Apply a line family to (nc, nl, n) data along the last axis."""
    nc, nl, n = data.shape
    nf = packed.values.shape[0]
    if out is None:
        out = np.zeros((nc, nf, nl, n))
    args = packed.args(linear)
    scan_1d(data, packed.offsets, *args,
            packed.reach_lo[0], n - packed.reach_hi[0], out)
    return out


def run_3d(packed, data, linear=False, out=None):
    """Apply a volume family to (nc, n1, n2, n3) data."""
    nc, n1, n2, n3 = data.shape
    nf = packed.values.shape[0]
    if out is None:
        out = np.zeros((nc, nf, n1, n2, n3))
    args = packed.args(linear)
    scan_3d(np.ascontiguousarray(data), packed.offsets, *args,
            packed.reach_lo[0], n1 - packed.reach_hi[0],
            packed.reach_lo[1], n2 - packed.reach_hi[1],
            packed.reach_lo[2], n3 - packed.reach_hi[2], out)
    return out
