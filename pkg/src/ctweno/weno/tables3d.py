"""Three-dimensional stencil tables for point-to-volume transcription.

The tabulated rows below are the x-leading representatives of each
coefficient class for the big central fifth-order stencil; the remaining
rows follow by cyclic permutation of the axes, which is an exact symmetry
of both the window and the printed tables.  The third-order octant-biased
stencil is tabulated once and reflected into the other seven octants.
"""

from fractions import Fraction
from functools import lru_cache

from .families import StencilSpec, assemble
from .basis import total_degree_exponents
from .tables2d import GAMMA_HI, GAMMA_LO


def degrees_3d(order):
    return total_degree_exponents(3, order - 1)


def central_window_3d(order):
    if order == 3:
        pts = [(i, j, k) for i in (-1, 0, 1) for j in (-1, 0, 1)
               for k in (-1, 0, 1) if abs(i) + abs(j) + abs(k) <= 2]
    else:
        pts = [(i, j, k)
               for i in range(-2, 3) for j in range(-2, 3)
               for k in range(-2, 3)
               if abs(i) + abs(j) + abs(k) <= 4
               and sum(1 for v in (i, j, k) if abs(v) == 2) <= 1]
    return sorted(pts)


def octant_window(sx, sy, sz):
    return [(0, 0, 0), (sx, 0, 0), (2 * sx, 0, 0), (0, sy, 0), (0, 2 * sy, 0),
            (0, 0, sz), (0, 0, 2 * sz), (sx, sy, 0), (0, sy, sz), (sx, 0, sz)]


_OCTANT_PPP = {
    (0, 0, 0): (24, {(0, 0, 0): 27, (0, 0, 1): -2, (0, 0, 2): 1,
                     (0, 1, 0): -2, (0, 2, 0): 1, (1, 0, 0): -2,
                     (2, 0, 0): 1}),
    (1, 0, 0): (2, {(0, 0, 0): -3, (1, 0, 0): 4, (2, 0, 0): -1}),
    (0, 1, 0): (2, {(0, 0, 0): -3, (0, 1, 0): 4, (0, 2, 0): -1}),
    (0, 0, 1): (2, {(0, 0, 0): -3, (0, 0, 1): 4, (0, 0, 2): -1}),
    (2, 0, 0): (2, {(0, 0, 0): 1, (1, 0, 0): -2, (2, 0, 0): 1}),
    (0, 2, 0): (2, {(0, 0, 0): 1, (0, 1, 0): -2, (0, 2, 0): 1}),
    (0, 0, 2): (2, {(0, 0, 0): 1, (0, 0, 1): -2, (0, 0, 2): 1}),
    (1, 1, 0): (1, {(0, 0, 0): 1, (0, 1, 0): -1, (1, 0, 0): -1,
                    (1, 1, 0): 1}),
    (0, 1, 1): (1, {(0, 0, 0): 1, (0, 0, 1): -1, (0, 1, 0): -1,
                    (0, 1, 1): 1}),
    (1, 0, 1): (1, {(0, 0, 0): 1, (0, 0, 1): -1, (1, 0, 0): -1,
                    (1, 0, 1): 1}),
}

_CENTRAL_R3_3D = {
    (0, 0, 0): (24, {(0, 0, 0): 18, (0, 0, -1): 1, (0, 0, 1): 1,
                     (0, -1, 0): 1, (0, 1, 0): 1, (-1, 0, 0): 1,
                     (1, 0, 0): 1}),
    (1, 0, 0): (2, {(-1, 0, 0): -1, (1, 0, 0): 1}),
    (0, 1, 0): (2, {(0, -1, 0): -1, (0, 1, 0): 1}),
    (0, 0, 1): (2, {(0, 0, -1): -1, (0, 0, 1): 1}),
    (2, 0, 0): (2, {(0, 0, 0): -2, (-1, 0, 0): 1, (1, 0, 0): 1}),
    (0, 2, 0): (2, {(0, 0, 0): -2, (0, -1, 0): 1, (0, 1, 0): 1}),
    (0, 0, 2): (2, {(0, 0, 0): -2, (0, 0, -1): 1, (0, 0, 1): 1}),
    (1, 1, 0): (4, {(-1, -1, 0): 1, (-1, 1, 0): -1, (1, -1, 0): -1,
                    (1, 1, 0): 1}),
    (0, 1, 1): (4, {(0, -1, -1): 1, (0, -1, 1): -1, (0, 1, -1): -1,
                    (0, 1, 1): 1}),
    (1, 0, 1): (4, {(-1, 0, -1): 1, (-1, 0, 1): -1, (1, 0, -1): -1,
                    (1, 0, 1): 1}),
}

# x-leading representative rows of the big fifth-order stencil; cyclic axis
# permutation fills in the remaining coefficient classes.
_R5_3D_REPS = {
    (0, 0, 0): (5760, {
        (0, 0, 0): 4134, (0, 0, -1): 268, (0, 0, -2): -17, (0, 0, 1): 268,
        (0, 0, 2): -17, (0, -1, 0): 268, (0, -1, -1): 10, (0, -1, 1): 10,
        (0, -2, 0): -17, (0, 1, 0): 268, (0, 1, -1): 10, (0, 1, 1): 10,
        (0, 2, 0): -17, (-1, 0, 0): 268, (-1, 0, -1): 10, (-1, 0, 1): 10,
        (-1, -1, 0): 10, (-1, 1, 0): 10, (-2, 0, 0): -17, (1, 0, 0): 268,
        (1, 0, -1): 10, (1, 0, 1): 10, (1, -1, 0): 10, (1, 1, 0): 10,
        (2, 0, 0): -17}),
    (1, 0, 0): (240, {
        (-1, 0, 0): -134, (-1, 0, -1): -5, (-1, 0, 1): -5, (-1, -1, 0): -5,
        (-1, 1, 0): -5, (-2, 0, 0): 17, (1, 0, 0): 134, (1, 0, -1): 5,
        (1, 0, 1): 5, (1, -1, 0): 5, (1, 1, 0): 5, (2, 0, 0): -17}),
    (2, 0, 0): (336, {
        (0, 0, 0): -346, (0, 0, -1): -14, (0, 0, 1): -14, (0, -1, 0): -14,
        (0, 1, 0): -14, (-1, 0, 0): 184, (-1, 0, -1): 7, (-1, 0, 1): 7,
        (-1, -1, 0): 7, (-1, 1, 0): 7, (-2, 0, 0): -11, (1, 0, 0): 184,
        (1, 0, -1): 7, (1, 0, 1): 7, (1, -1, 0): 7, (1, 1, 0): 7,
        (2, 0, 0): -11}),
    (1, 1, 0): (960, {
        (-1, -1, 0): 386, (-1, -1, -1): -10, (-1, -1, -2): 5,
        (-1, -1, 1): -10, (-1, -1, 2): 5, (-1, -2, 0): -34,
        (-1, 1, 0): -386, (-1, 1, -1): 10, (-1, 1, -2): -5, (-1, 1, 1): 10,
        (-1, 1, 2): -5, (-1, 2, 0): 34, (-2, -1, 0): -34, (-2, 1, 0): 34,
        (1, -1, 0): -386, (1, -1, -1): 10, (1, -1, -2): -5, (1, -1, 1): 10,
        (1, -1, 2): -5, (1, -2, 0): 34, (1, 1, 0): 386, (1, 1, -1): -10,
        (1, 1, -2): 5, (1, 1, 1): -10, (1, 1, 2): 5, (1, 2, 0): -34,
        (2, -1, 0): 34, (2, 1, 0): -34}),
    (3, 0, 0): (12, {
        (-1, 0, 0): 2, (-2, 0, 0): -1, (1, 0, 0): -2, (2, 0, 0): 1}),
    (2, 1, 0): (4, {
        (0, -1, 0): 2, (0, 1, 0): -2, (-1, -1, 0): -1, (-1, 1, 0): 1,
        (1, -1, 0): -1, (1, 1, 0): 1}),
    (2, 0, 1): (4, {
        (0, 0, -1): 2, (0, 0, 1): -2, (-1, 0, -1): -1, (-1, 0, 1): 1,
        (1, 0, -1): -1, (1, 0, 1): 1}),
    (1, 1, 1): (16, {
        (-1, -1, -1): -8, (-1, -1, -2): 1, (-1, -1, 1): 8, (-1, -1, 2): -1,
        (-1, -2, -1): 1, (-1, -2, 1): -1, (-1, 1, -1): 8, (-1, 1, -2): -1,
        (-1, 1, 1): -8, (-1, 1, 2): 1, (-1, 2, -1): -1, (-1, 2, 1): 1,
        (-2, -1, -1): 1, (-2, -1, 1): -1, (-2, 1, -1): -1, (-2, 1, 1): 1,
        (1, -1, -1): 8, (1, -1, -2): -1, (1, -1, 1): -8, (1, -1, 2): 1,
        (1, -2, -1): -1, (1, -2, 1): 1, (1, 1, -1): -8, (1, 1, -2): 1,
        (1, 1, 1): 8, (1, 1, 2): -1, (1, 2, -1): 1, (1, 2, 1): -1,
        (2, -1, -1): -1, (2, -1, 1): 1, (2, 1, -1): 1, (2, 1, 1): -1}),
    (4, 0, 0): (24, {
        (0, 0, 0): 6, (-1, 0, 0): -4, (-2, 0, 0): 1, (1, 0, 0): -4,
        (2, 0, 0): 1}),
    (3, 1, 0): (24, {
        (-1, -1, 0): -2, (-1, 1, 0): 2, (-2, -1, 0): 1, (-2, 1, 0): -1,
        (1, -1, 0): 2, (1, 1, 0): -2, (2, -1, 0): -1, (2, 1, 0): 1}),
    (3, 0, 1): (24, {
        (-1, 0, -1): -2, (-1, 0, 1): 2, (-2, 0, -1): 1, (-2, 0, 1): -1,
        (1, 0, -1): 2, (1, 0, 1): -2, (2, 0, -1): -1, (2, 0, 1): 1}),
    (2, 2, 0): (4, {
        (0, 0, 0): 4, (0, -1, 0): -2, (0, 1, 0): -2, (-1, 0, 0): -2,
        (-1, -1, 0): 1, (-1, 1, 0): 1, (1, 0, 0): -2, (1, -1, 0): 1,
        (1, 1, 0): 1}),
    (2, 1, 1): (16, {
        (0, -1, -1): 2, (0, -1, 1): -2, (0, 1, -1): -2, (0, 1, 1): 2,
        (-1, -1, -1): -2, (-1, -1, 1): 2, (-1, 1, -1): 2, (-1, 1, 1): -2,
        (-2, -1, -1): 1, (-2, -1, 1): -1, (-2, 1, -1): -1, (-2, 1, 1): 1,
        (1, -1, -1): -2, (1, -1, 1): 2, (1, 1, -1): 2, (1, 1, 1): -2,
        (2, -1, -1): 1, (2, -1, 1): -1, (2, 1, -1): -1, (2, 1, 1): 1}),
}


def _permute(table, perm):
    """Relabel axes: position i of an offset/exponent moves to perm[i]."""
    out = {}
    for degs, (den, entries) in table.items():
        nd = [0, 0, 0]
        for i, d in enumerate(degs):
            nd[perm[i]] = d
        moved = {}
        for off, v in entries.items():
            no = [0, 0, 0]
            for i, o in enumerate(off):
                no[perm[i]] = o
            moved[tuple(no)] = v
        out[tuple(nd)] = (den, moved)
    return out


def _r5_3d_table():
    full = {}
    cyc1 = _permute(_R5_3D_REPS, (1, 2, 0))
    cyc2 = _permute(_R5_3D_REPS, (2, 0, 1))
    for src in (_R5_3D_REPS, cyc1, cyc2):
        for degs, row in src.items():
            full.setdefault(degs, row)
    return full


def _reflect_3d(table, sx, sy, sz):
    out = {}
    for (a, b, c), (den, entries) in table.items():
        sign = (sx ** a) * (sy ** b) * (sz ** c)
        out[(a, b, c)] = (den, {(sx * i, sy * j, sz * k): sign * v
                                for (i, j, k), v in entries.items()})
    return out


def _coeffs_from(table, degrees, window):
    C = []
    for d in degrees:
        den, entries = table[d]
        C.append([Fraction(entries.get(o, 0), den) for o in window])
    return C


def _octant_specs(gamma):
    degrees = degrees_3d(3)
    specs = []
    for sx in (1, -1):
        for sy in (1, -1):
            for sz in (1, -1):
                window = octant_window(sx, sy, sz)
                tbl = _reflect_3d(_OCTANT_PPP, sx, sy, sz)
                specs.append(StencilSpec(window, degrees, gamma,
                                         coeffs=_coeffs_from(tbl, degrees,
                                                             window)))
    return specs


def _central_spec_3d(order, gamma):
    window = central_window_3d(order)
    degrees = degrees_3d(order)
    table = _CENTRAL_R3_3D if order == 3 else _r5_3d_table()
    return StencilSpec(window, degrees, gamma,
                       coeffs=_coeffs_from(table, degrees, window))


@lru_cache(maxsize=None)
def volume_family(order):
    """Zone point values -> volume average (leading coefficient)."""
    functionals = {'mean': ('coeff', (0, 0, 0)),
                   'center': ('eval', (Fraction(0),) * 3)}
    if order == 3:
        specs = ([_central_spec_3d(3, GAMMA_LO)]
                 + _octant_specs((1 - GAMMA_LO) / 8))
        return assemble(specs, functionals, 'point', 2, True)
    specs = ([_central_spec_3d(5, GAMMA_HI),
              _central_spec_3d(3, (1 - GAMMA_HI) * GAMMA_LO)]
             + _octant_specs((1 - GAMMA_HI) * (1 - GAMMA_LO) / 8))
    return assemble(specs, functionals, 'point', 2, False)
