"""Named entry points for the reconstruction machinery.

Each function packs the requested family once (cached) and dispatches to
the compiled scan kernels.  Data layouts follow one convention: a leading
component axis, then the grid axes, with the swept axis last for the 1d
operations.  Outputs carry a functional axis right after the component
axis, ordered as documented per function.
"""

from functools import lru_cache

import numpy as np

from . import kernels, tables1d, tables2d, tables3d

CORNER_NAMES = ("corner_mm", "corner_pm", "corner_mp", "corner_pp")
FACE_NAMES = ("center", "mid_mx", "mid_px", "mid_my", "mid_py")


@lru_cache(maxsize=None)
def _interp2d(order):
    return kernels.Packed(tables2d.interp_family(order), CORNER_NAMES)


@lru_cache(maxsize=None)
def _interp2d_center(order):
    return kernels.Packed(tables2d.interp_family(order), ("center",))


@lru_cache(maxsize=None)
def _facerecon(order):
    return kernels.Packed(tables2d.facerecon_family(order), FACE_NAMES)


@lru_cache(maxsize=None)
def _stagger(order):
    return kernels.PackedStagger(tables1d.stagger_family(order), ("center",))


@lru_cache(maxsize=None)
def _line_mean(order):
    return kernels.Packed(tables1d.line_family(order), ("mean",))


@lru_cache(maxsize=None)
def _flux(order):
    return kernels.Packed(tables1d.flux_family(order), ("right", "left"))


@lru_cache(maxsize=None)
def _segment(order):
    return kernels.Packed(tables1d.segment_family(order),
                          ("center", "left", "right"))


@lru_cache(maxsize=None)
def _volume(order):
    return kernels.Packed(tables3d.volume_family(order), ("mean",))


@lru_cache(maxsize=None)
def _volume_center(order):
    return kernels.Packed(tables3d.volume_family(order), ("center",))


def corner_values(data, order, linear=False):
    """Point values at the four cell corners from point values on a plane.

    data has shape (nc, n1, n2); the result (nc, 4, n1, n2) holds the
    corners at (-1/2,-1/2), (+1/2,-1/2), (-1/2,+1/2), (+1/2,+1/2) of each
    cell, in CORNER_NAMES order.  Only cells whose window fits are written.
    """
    return kernels.run_2d(_interp2d(order), data, linear)


def face_moments(data, order, linear=False):
    """Center and edge-midpoint point values from planar averages.

    data (nc, n1, n2) holds area averages.  Result (nc, 5, n1, n2) in
    FACE_NAMES order: the value at the cell center, then the midpoints of
    the low-x, high-x, low-y, high-y edges of the cell.
    """
    return kernels.run_2d(_facerecon(order), data, linear)


def center_from_faces(data, order, linear=False):
    """Zone-center values from a line of face values along the last axis.

    data (nc, nl, nface) indexes face j at position j - 1/2 on the unit
    lattice, so cell i straddles faces i and i+1.  Result (nc, 1, nl, n).
    """
    return kernels.run_1d(_stagger(order), data, linear)


def line_average(data, order, linear=False):
    """Mean over the center cell from point values along the last axis."""
    return kernels.run_1d(_line_mean(order), data, linear)


def interface_values(data, order, linear=False):
    """Interface values of cell averages along the last axis.

    Result (nc, 2, nl, n): channel 0 evaluates cell i at its right edge
    x_{i+1/2}, channel 1 at its left edge x_{i-1/2}.  An upwind interface
    value at i+1/2 pairs channel 0 of cell i with channel 1 of cell i+1.
    """
    return kernels.run_1d(_flux(order), data, linear)


def segment_moments(data, order, linear=False):
    """Center and endpoint values of cell averages along the last axis.

    Result (nc, 3, nl, n): the reconstruction of cell i read out at its
    center x_i, left end x_{i-1/2} and right end x_{i+1/2}.  One pass
    serves faces that are line segments: the center value feeds the
    normal interpolation to zone centers and the endpoint values feed
    the edge dissipation terms.
    """
    return kernels.run_1d(_segment(order), data, linear)


def volume_average(data, order, linear=False):
    """Cell-volume averages from point values on a 3d block."""
    return kernels.run_3d(_volume(order), data, linear)


def center_from_volume(data, order, linear=False):
    """Cell-center point values from volume averages on a 3d block."""
    return kernels.run_3d(_volume_center(order), data, linear)


def ghost_zones(order):
    """Padding needed so every sweep of this order sees full windows."""
    return (order - 1) // 2 + 2


def flux_window(order):
    """Cells an interface reconstruction reads on either side of a cell."""
    p = _flux(order)
    return int(max(p.reach_lo[0], p.reach_hi[0]))


def _gauss_mean(f, lo, hi, npts=8):
    """Exact mean of a polynomial (degree < 2*npts) over [lo, hi]."""
    x, w = np.polynomial.legendre.leggauss(npts)
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    return 0.5 * sum(wi * f(mid + half * xi) for xi, wi in zip(x, w))


def self_check(orders=(3, 5, 7, 9), verbose=print):
    """Exactness audit of every family at every order.

    Each family, combined with linear weights, must reproduce random
    polynomials of its design degree to round-off.  Returns the worst
    relative error seen; anything above ~1e-12 means a broken table.
    """
    rng = np.random.default_rng(20240913)
    worst = 0.0
    for order in orders:
        deg = order - 1
        cf = rng.uniform(-1, 1, deg + 1)
        p = np.polynomial.Polynomial(cf)
        n = 2 * order + 7
        ax = np.arange(n, dtype=float) - n // 2
        m = n // 2
        errs = {}

        c2 = np.array([[rng.uniform(-1, 1) if a + b <= deg else 0.0
                        for b in range(deg + 1)] for a in range(deg + 1)])

        def ev2(x, y):
            return float(np.polynomial.polynomial.polyval2d(x, y, c2))

        plane = np.array([[ev2(x, y) for y in ax] for x in ax])[None]
        out = corner_values(plane, order, linear=True)
        errs["corner interpolation"] = abs(out[0, 3, m, m] - ev2(0.5, 0.5))

        # 2d cell averages of the same polynomial, by nested quadrature
        avgs = np.empty((n, n))
        xg, wg = np.polynomial.legendre.leggauss(8)
        for i, x in enumerate(ax):
            for j, y in enumerate(ax):
                acc = 0.0
                for a, wa in zip(xg, wg):
                    for b, wb in zip(xg, wg):
                        acc += wa * wb * ev2(x + 0.5 * a, y + 0.5 * b)
                avgs[i, j] = 0.25 * acc
        out = face_moments(avgs[None], order, linear=True)
        errs["face moments"] = abs(out[0, 0, m, m] - ev2(0.0, 0.0))

        faces = p(ax - 0.5)[None, None, :]
        out = center_from_faces(faces, order, linear=True)
        errs["stagger interpolation"] = abs(out[0, 0, 0, m] - p(0.0))

        line = p(ax)[None, None, :]
        out = line_average(line, order, linear=True)
        want = _gauss_mean(p, -0.5, 0.5)
        errs["line averaging"] = abs(out[0, 0, 0, m] - want)

        cellavg = np.array([_gauss_mean(p, x - 0.5, x + 0.5)
                            for x in ax])[None, None, :]
        out = interface_values(cellavg, order, linear=True)
        errs["interface reconstruction"] = abs(out[0, 0, 0, m] - p(0.5))

        out = segment_moments(cellavg, order, linear=True)
        errs["segment readout"] = max(abs(out[0, 0, 0, m] - p(0.0)),
                                      abs(out[0, 1, 0, m] - p(-0.5)),
                                      abs(out[0, 2, 0, m] - p(0.5)))

        for name, err in errs.items():
            verbose(f"{name:26s} order {order}: degree-{deg} "
                    f"error {err:.2e}")
            worst = max(worst, err)

    for order in (3, 5):
        deg = order - 1
        c3 = rng.uniform(-1, 1, (deg + 1,) * 3)
        for a in range(deg + 1):
            for b in range(deg + 1):
                for cc in range(deg + 1):
                    if a + b + cc > deg:
                        c3[a, b, cc] = 0.0
        n = order + 6
        ax = np.arange(n, dtype=float) - n // 2
        m = n // 2
        pts = np.polynomial.polynomial.polyval3d(
            *np.meshgrid(ax, ax, ax, indexing="ij"), c3)[None]
        out = volume_average(pts, order, linear=True)
        xg, wg = np.polynomial.legendre.leggauss(4)
        acc = 0.0
        for a, wa in zip(xg, wg):
            for b, wb in zip(xg, wg):
                for g, wc in zip(xg, wg):
                    acc += wa * wb * wc * np.polynomial.polynomial.polyval3d(
                        0.5 * a, 0.5 * b, 0.5 * g, c3)
        want = acc / 8.0
        err = abs(out[0, 0, m, m, m] - want)
        verbose(f"{'volume averaging':26s} order {order}: degree-{deg} "
                f"error {err:.2e}")
        worst = max(worst, err)
    return worst
