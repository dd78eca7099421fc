"""Two-dimensional stencil tables.

Coefficient tables for the planar adaptive-order hybridizations.  The
third-, fifth- and seventh-order central/biased tables are tabulated
rationals; the ninth-order central stencil and all finite-volume
(face-average) reconstruction stencils are generated from their collocation
systems with the center equation enforced exactly.

Every stencil maps window data to coefficients of a Legendre-product
expansion on the unit cell, so one table family serves point interpolation
(evaluate anywhere on the cell), point-to-average transcription (take the
leading coefficient), and face reconstruction.
"""

from fractions import Fraction
from functools import lru_cache

from .families import StencilSpec, assemble, coefficient_map
from .basis import total_degree_exponents

GAMMA_LO = 0.85
GAMMA_AVG = 0.85
GAMMA_HI = 0.85


def degrees_2d(order):
    return total_degree_exponents(2, order - 1)


def central_window(order):
    m = (order - 1) // 2
    return sorted((i, j) for i in range(-m, m + 1) for j in range(-m, m + 1)
                  if abs(i) + abs(j) <= m + 1)


def biased_window(sx, sy):
    return [(0, 0), (sx, 0), (2 * sx, 0), (0, sy), (0, 2 * sy), (sx, sy)]


def _table_to_coeffs(table, degrees, window):
    C = []
    for d in degrees:
        den, entries = table[d]
        C.append([Fraction(entries.get(o, 0), den) for o in window])
    return C


def _reflect_table(table, sx, sy):
    out = {}
    for (a, b), (den, entries) in table.items():
        sign = (sx ** a) * (sy ** b)
        out[(a, b)] = (den, {(sx * i, sy * j): sign * v
                             for (i, j), v in entries.items()})
    return out


# Right-Up biased stencil; the other three are its reflections.
_R3_BIASED_RU = {
    (0, 0): (24, {(0, 1): -2, (0, 2): 1, (0, 0): 26, (1, 0): -2, (2, 0): 1}),
    (1, 0): (2, {(0, 0): -3, (1, 0): 4, (2, 0): -1}),
    (0, 1): (2, {(0, 0): -3, (0, 1): 4, (0, 2): -1}),
    (2, 0): (2, {(0, 0): 1, (1, 0): -2, (2, 0): 1}),
    (0, 2): (2, {(0, 0): 1, (0, 1): -2, (0, 2): 1}),
    (1, 1): (1, {(1, 1): 1, (0, 0): 1, (0, 1): -1, (1, 0): -1}),
}

_R3_CENTRAL = {
    (0, 0): (24, {(0, -1): 1, (0, 1): 1, (-1, 0): 1, (1, 0): 1, (0, 0): 20}),
    (1, 0): (2, {(1, 0): 1, (-1, 0): -1}),
    (0, 1): (2, {(0, 1): 1, (0, -1): -1}),
    (2, 0): (2, {(1, 0): 1, (0, 0): -2, (-1, 0): 1}),
    (0, 2): (2, {(0, 1): 1, (0, 0): -2, (0, -1): 1}),
    (1, 1): (4, {(1, 1): 1, (-1, -1): 1, (-1, 1): -1, (1, -1): -1}),
}

_R5_CENTRAL = {
    (0, 0): (5760, {(0, 0): 4636, (0, -1): 288, (0, -2): -17, (0, 1): 288,
                    (0, 2): -17, (-1, 0): 288, (-1, -1): 10, (-1, 1): 10,
                    (-2, 0): -17, (1, 0): 288, (1, -1): 10, (1, 1): 10,
                    (2, 0): -17}),
    (1, 0): (240, {(-1, 0): -144, (-1, -1): -5, (-1, 1): -5, (-2, 0): 17,
                   (1, 0): 144, (1, -1): 5, (1, 1): 5, (2, 0): -17}),
    (0, 1): (240, {(0, -1): -144, (-1, -1): -5, (1, -1): -5, (0, -2): 17,
                   (0, 1): 144, (-1, 1): 5, (1, 1): 5, (0, 2): -17}),
    (2, 0): (336, {(0, 0): -374, (0, -1): -14, (0, 1): -14, (-1, 0): 198,
                   (-1, -1): 7, (-1, 1): 7, (-2, 0): -11, (1, 0): 198,
                   (1, -1): 7, (1, 1): 7, (2, 0): -11}),
    (0, 2): (336, {(0, 0): -374, (-1, 0): -14, (1, 0): -14, (0, -1): 198,
                   (-1, -1): 7, (1, -1): 7, (0, -2): -11, (0, 1): 198,
                   (-1, 1): 7, (1, 1): 7, (0, 2): -11}),
    (1, 1): (480, {(-1, -1): 188, (-1, -2): -17, (-1, 1): -188, (-1, 2): 17,
                   (-2, -1): -17, (-2, 1): 17, (1, -1): -188, (1, -2): 17,
                   (1, 1): 188, (1, 2): -17, (2, -1): 17, (2, 1): -17}),
    (3, 0): (12, {(-1, 0): 2, (-2, 0): -1, (1, 0): -2, (2, 0): 1}),
    (0, 3): (12, {(0, -1): 2, (0, -2): -1, (0, 1): -2, (0, 2): 1}),
    (2, 1): (4, {(0, -1): 2, (0, 1): -2, (-1, -1): -1, (-1, 1): 1,
                 (1, -1): -1, (1, 1): 1}),
    (1, 2): (4, {(-1, 0): 2, (-1, -1): -1, (-1, 1): -1, (1, 0): -2,
                 (1, -1): 1, (1, 1): 1}),
    (4, 0): (24, {(0, 0): 6, (-1, 0): -4, (-2, 0): 1, (1, 0): -4, (2, 0): 1}),
    (0, 4): (24, {(0, 0): 6, (0, -1): -4, (0, -2): 1, (0, 1): -4, (0, 2): 1}),
    (3, 1): (24, {(-1, -1): -2, (-1, 1): 2, (-2, -1): 1, (-2, 1): -1,
                  (1, -1): 2, (1, 1): -2, (2, -1): -1, (2, 1): 1}),
    (1, 3): (24, {(-1, -1): -2, (-1, -2): 1, (-1, 1): 2, (-1, 2): -1,
                  (1, -1): 2, (1, -2): -1, (1, 1): -2, (1, 2): 1}),
    (2, 2): (4, {(0, 0): 4, (0, -1): -2, (0, 1): -2, (-1, 0): -2,
                 (-1, -1): 1, (-1, 1): 1, (1, 0): -2, (1, -1): 1, (1, 1): 1}),
}

_R7_CENTRAL = {
    (0, 0): (967680, {
        (0, 0): 767024, (0, -1): 52223, (0, -2): -4820, (0, -3): 367,
        (0, 1): 52223, (0, 2): -4820, (0, 3): 367, (-1, 0): 52223,
        (-1, -1): 2632, (-1, -2): -119, (-1, 1): 2632, (-1, 2): -119,
        (-2, 0): -4820, (-2, -1): -119, (-2, 1): -119, (-3, 0): 367,
        (1, 0): 52223, (1, -1): 2632, (1, -2): -119, (1, 1): 2632,
        (1, 2): -119, (2, 0): -4820, (2, -1): -119, (2, 1): -119,
        (3, 0): 367}),
    (1, 0): (80640, {
        (-1, 0): -52223, (-1, -1): -2632, (-1, -2): 119, (-1, 1): -2632,
        (-1, 2): 119, (-2, 0): 9640, (-2, -1): 238, (-2, 1): 238,
        (-3, 0): -1101, (1, 0): 52223, (1, -1): 2632, (1, -2): -119,
        (1, 1): 2632, (1, 2): -119, (2, 0): -9640, (2, -1): -238,
        (2, 1): -238, (3, 0): 1101}),
    (0, 1): (80640, {
        (0, -1): -52223, (0, -2): 9640, (0, -3): -1101, (0, 1): 52223,
        (0, 2): -9640, (0, 3): 1101, (-1, -1): -2632, (-1, -2): 238,
        (-1, 1): 2632, (-1, 2): -238, (-2, -1): 119, (-2, 1): -119,
        (1, -1): -2632, (1, -2): 238, (1, 1): 2632, (1, 2): -238,
        (2, -1): 119, (2, 1): -119}),
    (2, 0): (80640, {
        (0, 0): -93672, (0, -1): -4972, (0, -2): 238, (0, 1): -4972,
        (0, 2): 238, (-1, 0): 50921, (-1, -1): 2596, (-1, -2): -119,
        (-1, 1): 2596, (-1, 2): -119, (-2, 0): -4418, (-2, -1): -110,
        (-2, 1): -110, (-3, 0): 333, (1, 0): 50921, (1, -1): 2596,
        (1, -2): -119, (1, 1): 2596, (1, 2): -119, (2, 0): -4418,
        (2, -1): -110, (2, 1): -110, (3, 0): 333}),
    (0, 2): (80640, {
        (0, 0): -93672, (0, -1): 50921, (0, -2): -4418, (0, -3): 333,
        (0, 1): 50921, (0, 2): -4418, (0, 3): 333, (-1, 0): -4972,
        (-1, -1): 2596, (-1, -2): -110, (-1, 1): 2596, (-1, 2): -110,
        (-2, 0): 238, (-2, -1): -119, (-2, 1): -119, (1, 0): -4972,
        (1, -1): 2596, (1, -2): -110, (1, 1): 2596, (1, 2): -110,
        (2, 0): 238, (2, -1): -119, (2, 1): -119}),
    (1, 1): (806400, {
        (-1, -1): 387074, (-1, -2): -58672, (-1, -3): 5505,
        (-1, 1): -387074, (-1, 2): 58672, (-1, 3): -5505,
        (-2, -1): -58672, (-2, -2): 4046, (-2, 1): 58672, (-2, 2): -4046,
        (-3, -1): 5505, (-3, 1): -5505, (1, -1): -387074, (1, -2): 58672,
        (1, -3): -5505, (1, 1): 387074, (1, 2): -58672, (1, 3): 5505,
        (2, -1): 58672, (2, -2): -4046, (2, 1): -58672, (2, 2): 4046,
        (3, -1): -5505, (3, 1): 5505}),
    (3, 0): (864, {
        (-1, 0): 217, (-1, -1): 6, (-1, 1): 6, (-2, 0): -134, (-2, -1): -3,
        (-2, 1): -3, (-3, 0): 17, (1, 0): -217, (1, -1): -6, (1, 1): -6,
        (2, 0): 134, (2, -1): 3, (2, 1): 3, (3, 0): -17}),
    (0, 3): (864, {
        (0, -1): 217, (0, -2): -134, (0, -3): 17, (0, 1): -217, (0, 2): 134,
        (0, 3): -17, (-1, -1): 6, (-1, -2): -3, (-1, 1): -6, (-1, 2): 3,
        (1, -1): 6, (1, -2): -3, (1, 1): -6, (1, 2): 3}),
    (2, 1): (3360, {
        (0, -1): 2486, (0, -2): -238, (0, 1): -2486, (0, 2): 238,
        (-1, -1): -1298, (-1, -2): 119, (-1, 1): 1298, (-1, 2): -119,
        (-2, -1): 55, (-2, 1): -55, (1, -1): -1298, (1, -2): 119,
        (1, 1): 1298, (1, 2): -119, (2, -1): 55, (2, 1): -55}),
    (1, 2): (3360, {
        (-1, 0): 2486, (-1, -1): -1298, (-1, -2): 55, (-1, 1): -1298,
        (-1, 2): 55, (-2, 0): -238, (-2, -1): 119, (-2, 1): 119,
        (1, 0): -2486, (1, -1): 1298, (1, -2): -55, (1, 1): 1298,
        (1, 2): -55, (2, 0): 238, (2, -1): -119, (2, 1): -119}),
    (4, 0): (6336, {
        (0, 0): 2272, (0, -1): 66, (0, 1): 66, (-1, 0): -1583, (-1, -1): -44,
        (-1, 1): -44, (-2, 0): 488, (-2, -1): 11, (-2, 1): 11, (-3, 0): -41,
        (1, 0): -1583, (1, -1): -44, (1, 1): -44, (2, 0): 488, (2, -1): 11,
        (2, 1): 11, (3, 0): -41}),
    (0, 4): (6336, {
        (0, 0): 2272, (0, -1): -1583, (0, -2): 488, (0, -3): -41,
        (0, 1): -1583, (0, 2): 488, (0, 3): -41, (-1, 0): 66, (-1, -1): -44,
        (-1, -2): 11, (-1, 1): -44, (-1, 2): 11, (1, 0): 66, (1, -1): -44,
        (1, -2): 11, (1, 1): -44, (1, 2): 11}),
    (3, 1): (8640, {
        (-1, -1): -1349, (-1, -2): 102, (-1, 1): 1349, (-1, 2): -102,
        (-2, -1): 802, (-2, -2): -51, (-2, 1): -802, (-2, 2): 51,
        (-3, -1): -85, (-3, 1): 85, (1, -1): 1349, (1, -2): -102,
        (1, 1): -1349, (1, 2): 102, (2, -1): -802, (2, -2): 51,
        (2, 1): 802, (2, 2): -51, (3, -1): 85, (3, 1): -85}),
    (1, 3): (8640, {
        (-1, -1): -1349, (-1, -2): 802, (-1, -3): -85, (-1, 1): 1349,
        (-1, 2): -802, (-1, 3): 85, (-2, -1): 102, (-2, -2): -51,
        (-2, 1): -102, (-2, 2): 51, (1, -1): 1349, (1, -2): -802,
        (1, -3): 85, (1, 1): -1349, (1, 2): 802, (1, 3): -85,
        (2, -1): -102, (2, -2): 51, (2, 1): 102, (2, 2): -51}),
    (2, 2): (672, {
        (0, 0): 936, (0, -1): -490, (0, -2): 22, (0, 1): -490, (0, 2): 22,
        (-1, 0): -490, (-1, -1): 256, (-1, -2): -11, (-1, 1): 256,
        (-1, 2): -11, (-2, 0): 22, (-2, -1): -11, (-2, 1): -11,
        (1, 0): -490, (1, -1): 256, (1, -2): -11, (1, 1): 256, (1, 2): -11,
        (2, 0): 22, (2, -1): -11, (2, 1): -11}),
    (5, 0): (240, {
        (-1, 0): -5, (-2, 0): 4, (-3, 0): -1, (1, 0): 5, (2, 0): -4,
        (3, 0): 1}),
    (0, 5): (240, {
        (0, -1): -5, (0, -2): 4, (0, -3): -1, (0, 1): 5, (0, 2): -4,
        (0, 3): 1}),
    (4, 1): (48, {
        (0, -1): -6, (0, 1): 6, (-1, -1): 4, (-1, 1): -4, (-2, -1): -1,
        (-2, 1): 1, (1, -1): 4, (1, 1): -4, (2, -1): -1, (2, 1): 1}),
    (1, 4): (48, {
        (-1, 0): -6, (-1, -1): 4, (-1, -2): -1, (-1, 1): 4, (-1, 2): -1,
        (1, 0): 6, (1, -1): -4, (1, -2): 1, (1, 1): -4, (1, 2): 1}),
    (3, 2): (24, {
        (-1, 0): -4, (-1, -1): 2, (-1, 1): 2, (-2, 0): 2, (-2, -1): -1,
        (-2, 1): -1, (1, 0): 4, (1, -1): -2, (1, 1): -2, (2, 0): -2,
        (2, -1): 1, (2, 1): 1}),
    (2, 3): (24, {
        (0, -1): -4, (0, -2): 2, (0, 1): 4, (0, 2): -2, (-1, -1): 2,
        (-1, -2): -1, (-1, 1): -2, (-1, 2): 1, (1, -1): 2, (1, -2): -1,
        (1, 1): -2, (1, 2): 1}),
    (6, 0): (720, {
        (0, 0): -20, (-1, 0): 15, (-2, 0): -6, (-3, 0): 1, (1, 0): 15,
        (2, 0): -6, (3, 0): 1}),
    (0, 6): (720, {
        (0, 0): -20, (0, -1): 15, (0, -2): -6, (0, -3): 1, (0, 1): 15,
        (0, 2): -6, (0, 3): 1}),
    (5, 1): (480, {
        (-1, -1): 5, (-1, 1): -5, (-2, -1): -4, (-2, 1): 4, (-3, -1): 1,
        (-3, 1): -1, (1, -1): -5, (1, 1): 5, (2, -1): 4, (2, 1): -4,
        (3, -1): -1, (3, 1): 1}),
    (1, 5): (480, {
        (-1, -1): 5, (-1, -2): -4, (-1, -3): 1, (-1, 1): -5, (-1, 2): 4,
        (-1, 3): -1, (1, -1): -5, (1, -2): 4, (1, -3): -1, (1, 1): 5,
        (1, 2): -4, (1, 3): 1}),
    (4, 2): (48, {
        (0, 0): -12, (0, -1): 6, (0, 1): 6, (-1, 0): 8, (-1, -1): -4,
        (-1, 1): -4, (-2, 0): -2, (-2, -1): 1, (-2, 1): 1, (1, 0): 8,
        (1, -1): -4, (1, 1): -4, (2, 0): -2, (2, -1): 1, (2, 1): 1}),
    (2, 4): (48, {
        (0, 0): -12, (0, -1): 8, (0, -2): -2, (0, 1): 8, (0, 2): -2,
        (-1, 0): 6, (-1, -1): -4, (-1, -2): 1, (-1, 1): -4, (-1, 2): 1,
        (1, 0): 6, (1, -1): -4, (1, -2): 1, (1, 1): -4, (1, 2): 1}),
    (3, 3): (144, {
        (-1, -1): 4, (-1, -2): -2, (-1, 1): -4, (-1, 2): 2, (-2, -1): -2,
        (-2, -2): 1, (-2, 1): 2, (-2, 2): -1, (1, -1): -4, (1, -2): 2,
        (1, 1): 4, (1, 2): -2, (2, -1): 2, (2, -2): -1, (2, 1): -2,
        (2, 2): 1}),
}

_PRINTED_CENTRAL = {3: _R3_CENTRAL, 5: _R5_CENTRAL, 7: _R7_CENTRAL}


def biased_table(sx, sy):
    return _reflect_table(_R3_BIASED_RU, sx, sy)


def _central_spec(order, gamma, mode):
    window = central_window(order)
    degrees = degrees_2d(order)
    if mode == 'point' and order in _PRINTED_CENTRAL:
        C = _table_to_coeffs(_PRINTED_CENTRAL[order], degrees, window)
        return StencilSpec(offsets=window, degrees=degrees, gamma=gamma,
                           coeffs=C)
    return StencilSpec(offsets=window, degrees=degrees, gamma=gamma)


def _biased_specs(gamma, mode):
    degrees = degrees_2d(3)
    specs = []
    for sx, sy in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
        window = biased_window(sx, sy)
        if mode == 'point':
            C = _table_to_coeffs(biased_table(sx, sy), degrees, window)
            specs.append(StencilSpec(window, degrees, gamma, coeffs=C))
        else:
            specs.append(StencilSpec(window, degrees, gamma))
    return specs


def _stencil_cascade(order, mode):
    """Candidate list (reference stencil first) and tau exponent."""
    if order == 3:
        g_bias = (1 - GAMMA_LO) / 4
        specs = [_central_spec(3, GAMMA_LO, mode)] + _biased_specs(g_bias,
                                                                   mode)
        return specs, 2, True
    if order == 5:
        g5, g3c = GAMMA_HI, (1 - GAMMA_HI) * GAMMA_LO
        g3b = (1 - GAMMA_HI) * (1 - GAMMA_LO) / 4
        specs = ([_central_spec(5, g5, mode), _central_spec(3, g3c, mode)]
                 + _biased_specs(g3b, mode))
        return specs, 2, False
    gh = GAMMA_HI
    g5 = (1 - GAMMA_HI) * GAMMA_AVG
    g3c = (1 - GAMMA_HI) * (1 - GAMMA_AVG) * GAMMA_LO
    g3b = (1 - GAMMA_HI) * (1 - GAMMA_AVG) * (1 - GAMMA_LO) / 4
    specs = ([_central_spec(order, gh, mode), _central_spec(5, g5, mode),
              _central_spec(3, g3c, mode)] + _biased_specs(g3b, mode))
    return specs, 3, False


_CORNERS = {'corner_mm': (Fraction(-1, 2), Fraction(-1, 2)),
            'corner_pm': (Fraction(1, 2), Fraction(-1, 2)),
            'corner_mp': (Fraction(-1, 2), Fraction(1, 2)),
            'corner_pp': (Fraction(1, 2), Fraction(1, 2))}


@lru_cache(maxsize=None)
def interp_family(order):
    """Zone point values -> cell polynomial; corner / center / mean outputs."""
    specs, q, plain = _stencil_cascade(order, 'point')
    functionals = {name: ('eval', pt) for name, pt in _CORNERS.items()}
    functionals['center'] = ('eval', (Fraction(0), Fraction(0)))
    functionals['mean'] = ('coeff', (0, 0))
    return assemble(specs, functionals, 'point', q, plain)


@lru_cache(maxsize=None)
def facerecon_family(order):
    """Face averages -> face polynomial; center point and edge midpoints."""
    specs, q, plain = _stencil_cascade(order, 'average')
    half = Fraction(1, 2)
    functionals = {
        'center': ('eval', (Fraction(0), Fraction(0))),
        'mid_mx': ('eval', (-half, Fraction(0))),
        'mid_px': ('eval', (half, Fraction(0))),
        'mid_my': ('eval', (Fraction(0), -half)),
        'mid_py': ('eval', (Fraction(0), half)),
    }
    return assemble(specs, functionals, 'average', q, plain)
