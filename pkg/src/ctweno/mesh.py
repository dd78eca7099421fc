"""Structured grids with zone, face and edge collocation.

A grid is a uniform box of nx*ny(*nz) zones padded by `nghost` ghost zones
on every side.  Zone arrays index zone centers.  A face array for axis a
is staggered along a only: entry i along that axis sits at coordinate
x_{i-1/2}, so it has one more entry than the zone array and entry g (g =
nghost) lies on the lower domain boundary.  Edge arrays are staggered
along every axis except their own.  Two space dimensions are the same
machinery with the z axis dropped.

Ghost filling supports periodic wrap, zero-gradient outflow, and mirror
reflection with a parity sign; inflow states are written by the problem
driver after the geometric fill.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    shape: tuple                 # (nx, ny) or (nx, ny, nz)
    lo: tuple                    # lower corner of the domain
    hi: tuple                    # upper corner
    nghost: int

    def __post_init__(self):
        if len(self.shape) not in (2, 3):
            raise ValueError("grids are 2d or 3d")
        if len(self.lo) != len(self.shape) or len(self.hi) != len(self.shape):
            raise ValueError("bounds must match dimensionality")

    @property
    def dim(self):
        return len(self.shape)

    @property
    def spacing(self):
        return tuple((h - l) / n
                     for l, h, n in zip(self.lo, self.hi, self.shape))

    def padded(self, stagger=None):
        """Array shape with ghosts; stagger marks axes with +1 entries."""
        stagger = stagger or (False,) * self.dim
        return tuple(n + 2 * self.nghost + (1 if s else 0)
                     for n, s in zip(self.shape, stagger))

    def interior(self, stagger=None):
        """Slices selecting the physical region of a padded array.

        For a staggered axis the slice covers the unique faces/edges
        [g, n+g); the upper boundary entry n+g is the periodic image or
        wall duplicate and is kept consistent by the ghost fill.
        """
        g = self.nghost
        stagger = stagger or (False,) * self.dim
        return tuple(slice(g, n + g) for n in self.shape)

    def axis_coords(self, axis, staggered=False):
        """Physical coordinates of padded entries along one axis."""
        g = self.nghost
        h = self.spacing[axis]
        n = self.shape[axis]
        if staggered:
            idx = np.arange(-g, n + g + 1)
            return self.lo[axis] + idx * h
        idx = np.arange(-g, n + g)
        return self.lo[axis] + (idx + 0.5) * h

    def zone_centers(self):
        """Meshgrid of padded zone-center coordinates, indexing 'ij'."""
        axes = [self.axis_coords(a) for a in range(self.dim)]
        return np.meshgrid(*axes, indexing="ij")

    def face_stagger(self, axis):
        return tuple(a == axis for a in range(self.dim))

    def edge_stagger(self, axis):
        return tuple(a != axis for a in range(self.dim))


def zone_array(grid, ncomp=None):
    shape = grid.padded()
    return np.zeros((ncomp,) + shape if ncomp else shape)


def face_arrays(grid):
    """One scalar array per axis, each staggered along its own axis."""
    return [np.zeros(grid.padded(grid.face_stagger(a)))
            for a in range(grid.dim)]


def edge_arrays(grid):
    """One scalar array per edge orientation.

    In 2d there is a single relevant out-of-plane orientation for corner
    quantities plus the two in-plane ones; all three are returned with
    orientation a staggered on the other axes.
    """
    if grid.dim == 3:
        return [np.zeros(grid.padded(grid.edge_stagger(a))) for a in range(3)]
    # 2d: orientations x, y (in plane) and z (corners)
    sx = (False, True)
    sy = (True, False)
    sz = (True, True)
    return [np.zeros(grid.padded(s)) for s in (sx, sy, sz)]


def stagger_2d(orientation):
    return {0: (False, True), 1: (True, False), 2: (True, True)}[orientation]


def edge_stagger_of(grid, orientation):
    if grid.dim == 3:
        return grid.edge_stagger(orientation)
    return stagger_2d(orientation)


def fill_axis(arr, axis, g, n, staggered, lo_kind, hi_kind, sign=1.0):
    """Populate ghost entries along one axis of one padded array.

    `sign` applies to reflected values (parity of the stored component
    under the mirror).  Inflow axes get outflow geometry here; the caller
    then overwrites the ghost band with the prescribed state.
    """
    def sl(s):
        return (slice(None),) * axis + (s, Ellipsis)

    size = arr.shape[axis]
    hi_edge = size - g - 1

    if lo_kind == "periodic":
        arr[sl(slice(0, g))] = arr[sl(slice(n, n + g))]
    elif lo_kind == "reflect":
        if staggered:
            arr[sl(slice(0, g))] = sign * np.flip(
                arr[sl(slice(g + 1, 2 * g + 1))], axis=axis)
            if sign < 0:
                arr[sl(g)] = 0.0
        else:
            arr[sl(slice(0, g))] = sign * np.flip(
                arr[sl(slice(g, 2 * g))], axis=axis)
    else:  # outflow / inflow geometry
        arr[sl(slice(0, g))] = arr[sl(slice(g, g + 1))]

    if hi_kind == "periodic":
        if staggered:
            arr[sl(slice(n + g, size))] = arr[sl(slice(g, 2 * g + 1))]
        else:
            arr[sl(slice(n + g, size))] = arr[sl(slice(g, 2 * g))]
    elif hi_kind == "reflect":
        if staggered:
            arr[sl(slice(n + g + 1, size))] = sign * np.flip(
                arr[sl(slice(n, n + g))], axis=axis)
            if sign < 0:
                arr[sl(n + g)] = 0.0
        else:
            arr[sl(slice(n + g, size))] = sign * np.flip(
                arr[sl(slice(n, n + g))], axis=axis)
    else:
        last = hi_edge
        arr[sl(slice(last + 1, size))] = arr[sl(slice(last, last + 1))]


def fill_ghosts(arr, grid, bc, stagger=None, signs=None):
    """Fill all ghost bands of a padded array (leading axes untouched).

    bc: per-axis (lo_kind, hi_kind) pairs.  signs: per-axis reflection
    parity for this array's component, default even.
    """
    stagger = stagger or (False,) * grid.dim
    lead = arr.ndim - grid.dim
    for a in range(grid.dim):
        lo_kind, hi_kind = bc[a]
        s = 1.0 if signs is None else signs[a]
        fill_axis(arr, lead + a, grid.nghost, grid.shape[a],
                  stagger[a], lo_kind, hi_kind, s)


def discrete_divergence(grid, faces):
    """Zone-wise divergence of a face-registered vector field.

    faces: per-axis arrays as produced by face_arrays.  Returns a padded
    zone array valid in the interior (ghost entries are left at whatever
    the one-sided differences produce).
    """
    out = np.zeros(grid.padded())
    for a, f in enumerate(faces):
        h = grid.spacing[a]
        lo = [slice(None)] * grid.dim
        hi = [slice(None)] * grid.dim
        lo[a] = slice(0, f.shape[a] - 1)
        hi[a] = slice(1, f.shape[a])
        out += (f[tuple(hi)] - f[tuple(lo)]) / h
    return out


def face_means_to_zones(grid, faces):
    """Second-order zone values: average of the two bracketing faces.

    Used only where a conservative face-consistent zone value is needed
    (admissibility checks and output), never inside the high-order update.
    """
    comps = []
    for a, f in enumerate(faces):
        lo = [slice(None)] * grid.dim
        hi = [slice(None)] * grid.dim
        lo[a] = slice(0, f.shape[a] - 1)
        hi[a] = slice(1, f.shape[a])
        comps.append(0.5 * (f[tuple(lo)] + f[tuple(hi)]))
    return comps
