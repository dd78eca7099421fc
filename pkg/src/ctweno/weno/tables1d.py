"""One-dimensional stencil families.

Three kinds of 1d hybridized operators are needed:

* ``stagger_family``: point values at the r+1 half-integer offsets
  straddling a zone center, interpolated to the center.  The fallback
  candidates are the two three-point stencils that straddle the target, so
  the interpolation never extrapolates.
* ``line_family``: point values at integer offsets along an edge,
  transcribed to the line average over the center interval (the leading
  Legendre coefficient).
* ``flux_family``: upwinded interface reconstruction from integer-offset
  data treated as sliding averages, evaluated at either end of the center
  cell.  This is the reconstruction step of the flux-split zone update.
* ``segment_family``: the same average-basis reconstruction read out at
  the cell center and both endpoints at once.  Used on faces that are
  line segments, where one pass must supply the face-center value and
  the two edge values.

Every candidate system here is square, so all coefficient maps are exact
inverses; the linear-weight cascade and the tau comparison mirror the
two-dimensional hybridizations order for order.
"""

from fractions import Fraction
from functools import lru_cache

from .families import StencilSpec, assemble
from .tables2d import GAMMA_AVG, GAMMA_HI, GAMMA_LO


def _degrees(n):
    return [(k,) for k in range(n)]


def _pts(offsets):
    return [(Fraction(o),) for o in offsets]


def _half(vals):
    return [Fraction(v, 2) for v in vals]


def _cascade_1d(big, mid, lows, order):
    """Candidate specs with the shared gamma cascade; big stencil first."""
    specs = []
    if order == 3:
        n_low = len(lows)
        specs.append(StencilSpec(big, _degrees(len(big)), GAMMA_LO))
        for lo in lows:
            specs.append(StencilSpec(lo, _degrees(len(lo)),
                                     (1 - GAMMA_LO) / n_low))
        return specs, 2, True
    if order == 5:
        specs.append(StencilSpec(big, _degrees(len(big)), GAMMA_HI))
        g_low = 1 - GAMMA_HI
    else:
        specs.append(StencilSpec(big, _degrees(len(big)), GAMMA_HI))
        specs.append(StencilSpec(mid, _degrees(len(mid)),
                                 (1 - GAMMA_HI) * GAMMA_AVG))
        g_low = (1 - GAMMA_HI) * (1 - GAMMA_AVG)
    center = [lo for lo in lows if sum(o[0] for o in lo) == 0]
    if center:
        for lo in lows:
            g = g_low * GAMMA_LO if sum(o[0] for o in lo) == 0 else \
                g_low * (1 - GAMMA_LO) / (len(lows) - 1)
            specs.append(StencilSpec(lo, _degrees(len(lo)), g))
    else:
        for lo in lows:
            specs.append(StencilSpec(lo, _degrees(len(lo)),
                                     g_low / len(lows)))
    return specs, 2 if order == 5 else 3, False


@lru_cache(maxsize=None)
def stagger_family(order):
    """Half-integer window -> value at 0."""
    m = order + 1
    big = _pts(_half(range(-m + 1, m, 2)))
    mid = _pts(_half(range(-5, 6, 2)))
    lows = [_pts(_half([-3, -1, 1])), _pts(_half([-1, 1, 3]))]
    if order == 3:
        specs = [StencilSpec(lows[0], _degrees(3), 0.5),
                 StencilSpec(lows[1], _degrees(3), 0.5)]
        q, plain = 2, True
    else:
        specs, q, plain = _cascade_1d(big, mid, lows, order)
    return assemble(specs, {'center': ('eval', (Fraction(0),))},
                    'point', q, plain)


def _integer_cascade(order):
    half = (order - 1) // 2
    big = _pts(range(-half, half + 1))
    mid = _pts(range(-2, 3))
    if order == 3:
        # the central three-point stencil doubles as the reference
        return big, None, [_pts([-2, -1, 0]), _pts([0, 1, 2])]
    lows = [_pts([-1, 0, 1]), _pts([-2, -1, 0]), _pts([0, 1, 2])]
    return big, mid, lows


@lru_cache(maxsize=None)
def line_family(order):
    """Integer point values -> average over [-1/2, 1/2]."""
    big, mid, lows = _integer_cascade(order)
    specs, q, plain = _cascade_1d(big, mid, lows, order)
    return assemble(specs, {'mean': ('coeff', (0,)),
                            'center': ('eval', (Fraction(0),))},
                    'point', q, plain)


@lru_cache(maxsize=None)
def flux_family(order):
    """Integer sliding averages -> interface values at +-1/2."""
    big, mid, lows = _integer_cascade(order)
    specs, q, plain = _cascade_1d(big, mid, lows, order)
    half = Fraction(1, 2)
    return assemble(specs, {'right': ('eval', (half,)),
                            'left': ('eval', (-half,))},
                    'average', q, plain)


@lru_cache(maxsize=None)
def segment_family(order):
    """Integer sliding averages -> values at the center and both ends."""
    big, mid, lows = _integer_cascade(order)
    specs, q, plain = _cascade_1d(big, mid, lows, order)
    half = Fraction(1, 2)
    return assemble(specs, {'center': ('eval', (Fraction(0),)),
                            'left': ('eval', (-half,)),
                            'right': ('eval', (half,))},
                    'average', q, plain)
