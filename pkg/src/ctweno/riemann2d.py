"""Two-dimensional Riemann solvers for the edges of a staggered mesh.

A staggered induction update needs one stabilized value of the edge-aligned
electric field per edge, and the jump structure feeding that value is
genuinely two-dimensional: the four zones around the edge supply four point
values of the electric field, and the four abutting faces supply the two
transverse magnetic field components.  Because the face-normal field is
stored once per face it is continuous across that face from the start, so
only eight scalars survive as inputs.  For an edge running along z the
transverse-1 component is B_x (one value below the edge, one above) and the
transverse-2 component is B_y (one value left, one right); edges along x
and y follow by cyclic rotation of the labels.

The wave model spans ``[s_l, s_r] x [s_d, s_u]`` in the two transverse
directions.  The LLF variant pins ``s_r = -s_l = s_u = -s_d = S``; the HLL
variant keeps all four speeds and therefore has a proper supersonic limit,
dispatched through a nine-way cascade over the sign pattern of the speeds.

All functions take floats or numpy arrays and broadcast, so one call can
solve a whole family of edges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DegenerateFanError",
    "EdgeRiemannInput",
    "WaveSpeeds",
    "resolved_1d",
    "llf_edge",
    "hll_strong_state",
    "edge_electric_field",
    "dispatch_branch",
]


class DegenerateFanError(ValueError):
    """A wave fan with zero opening cannot define a resolved state."""


@dataclass(frozen=True)
class EdgeRiemannInput:
    """The eight scalars a 2D edge Riemann problem depends on.

    Continuity of the face-normal field is built into the type: only the
    merged per-face values are stored, so a state that disagrees across a
    face cannot even be written down.

    ``e_ru, e_lu, e_ld, e_rd``
        edge-aligned electric field seen from the right-up, left-up,
        left-down and right-down zones.
    ``b_nu, b_nd``
        transverse-1 field on the faces above and below the edge
        (B_x at a z-edge).
    ``b_tr, b_tl``
        transverse-2 field on the faces right and left of the edge
        (B_y at a z-edge).
    """

    e_ru: float | np.ndarray
    e_lu: float | np.ndarray
    e_ld: float | np.ndarray
    e_rd: float | np.ndarray
    b_nu: float | np.ndarray
    b_nd: float | np.ndarray
    b_tr: float | np.ndarray
    b_tl: float | np.ndarray


@dataclass(frozen=True)
class WaveSpeeds:
    """Bounding signal speeds of the corner wave model.

    ``s_l <= s_r`` bound the fan in the first transverse direction and
    ``s_d <= s_u`` in the second.  Ordering is checked at construction;
    whether a fan actually opens is checked by the operations that divide
    by its width.
    """

    s_l: float | np.ndarray
    s_r: float | np.ndarray
    s_d: float | np.ndarray
    s_u: float | np.ndarray

    def __post_init__(self):
        if np.any(self.s_r < self.s_l) or np.any(self.s_u < self.s_d):
            raise ValueError("wave speeds must satisfy s_l <= s_r and s_d <= s_u")

    @classmethod
    def symmetric(cls, s):
        """Single-speed (LLF) model: the fan is [-s, s] in both directions."""
        s = np.asarray(s, dtype=float) if np.ndim(s) else float(s)
        return cls(s_l=-s, s_r=s, s_d=-s, s_u=s)

    @property
    def dxi(self):
        return self.s_r - self.s_l

    @property
    def dpsi(self):
        return self.s_u - self.s_d

    @property
    def xi_c(self):
        return 0.5 * (self.s_r + self.s_l)

    @property
    def psi_c(self):
        return 0.5 * (self.s_u + self.s_d)


def _require_open(width, lo, hi, label):
    floor = 1e-300 * np.maximum(np.abs(lo), np.abs(hi))
    if np.any(width <= floor):
        raise DegenerateFanError(f"{label} fan has zero opening")


def _llf_speed(speeds):
    s = speeds.s_r
    symmetric = np.all(np.equal(speeds.s_l, -s)) and \
        np.all(np.equal(speeds.s_u, s)) and np.all(np.equal(speeds.s_d, -s))
    if not symmetric or np.any(s <= 0):
        raise ValueError("llf mode needs symmetric speeds with s > 0; "
                         "build them with WaveSpeeds.symmetric")
    return s


# One-dimensional fans on the four sides of the corner.  Sides "u" and "d"
# are fans in the first (left-right) direction between the two upper or the
# two lower zones; they resolve the transverse-2 field.  Sides "r" and "l"
# are fans in the second (down-up) direction and resolve the transverse-1
# field.  The fan widths are passed in so callers can substitute a safe
# dummy width for fans whose output they will discard.

def _star_u(q, s_l, s_r, w):
    b = (s_r * q.b_tr - s_l * q.b_tl + (q.e_ru - q.e_lu)) / w
    e = (s_r * q.e_lu - s_l * q.e_ru - s_r * s_l * (q.b_tr - q.b_tl)) / w
    return b, e


def _star_d(q, s_l, s_r, w):
    b = (s_r * q.b_tr - s_l * q.b_tl + (q.e_rd - q.e_ld)) / w
    e = (s_r * q.e_ld - s_l * q.e_rd - s_r * s_l * (q.b_tr - q.b_tl)) / w
    return b, e


def _star_r(q, s_d, s_u, w):
    b = (s_u * q.b_nu - s_d * q.b_nd - (q.e_ru - q.e_rd)) / w
    e = (s_u * q.e_rd - s_d * q.e_ru + s_u * s_d * (q.b_nu - q.b_nd)) / w
    return b, e


def _star_l(q, s_d, s_u, w):
    b = (s_u * q.b_nu - s_d * q.b_nd - (q.e_lu - q.e_ld)) / w
    e = (s_u * q.e_ld - s_d * q.e_lu + s_u * s_d * (q.b_nu - q.b_nd)) / w
    return b, e


_STAR = {"u": _star_u, "d": _star_d, "r": _star_r, "l": _star_l}


def resolved_1d(inputs, speeds, side, mode="hll"):
    """Resolved state of the 1D fan on one side of the corner.

    ``side`` is one of ``"u", "d", "l", "r"``.  Returns ``(b_star,
    e_star)`` where ``b_star`` is the resolved transverse-2 field for the
    u/d fans and the resolved transverse-1 field for the l/r fans (the
    other component rides through those fans unchanged).  ``mode`` picks
    the HLL form or its single-speed LLF reduction.
    """
    if side not in _STAR:
        raise ValueError(f"side must be one of u, d, l, r; got {side!r}")
    q = inputs
    if mode == "llf":
        s = _llf_speed(speeds)
        if side == "u":
            return (0.5 * (q.b_tr + q.b_tl) + (q.e_ru - q.e_lu) / (2.0 * s),
                    0.5 * (q.e_lu + q.e_ru) + 0.5 * s * (q.b_tr - q.b_tl))
        if side == "d":
            return (0.5 * (q.b_tr + q.b_tl) + (q.e_rd - q.e_ld) / (2.0 * s),
                    0.5 * (q.e_ld + q.e_rd) + 0.5 * s * (q.b_tr - q.b_tl))
        if side == "r":
            return (0.5 * (q.b_nu + q.b_nd) - (q.e_ru - q.e_rd) / (2.0 * s),
                    0.5 * (q.e_rd + q.e_ru) - 0.5 * s * (q.b_nu - q.b_nd))
        return (0.5 * (q.b_nu + q.b_nd) - (q.e_lu - q.e_ld) / (2.0 * s),
                0.5 * (q.e_ld + q.e_lu) - 0.5 * s * (q.b_nu - q.b_nd))
    if mode != "hll":
        raise ValueError(f"mode must be 'hll' or 'llf'; got {mode!r}")
    if side in ("u", "d"):
        _require_open(speeds.dxi, speeds.s_l, speeds.s_r, "left-right")
        return _STAR[side](q, speeds.s_l, speeds.s_r, speeds.dxi)
    _require_open(speeds.dpsi, speeds.s_d, speeds.s_u, "down-up")
    return _STAR[side](q, speeds.s_d, speeds.s_u, speeds.dpsi)


def llf_edge(inputs, s):
    """Single-speed resolved edge fields ``(e_z, b_x, b_y)``.

    The electric field is the plain average of the four zone values plus a
    dissipation term proportional to the facial field jumps; the two
    resolved transverse field components come along for free.  Requires
    ``s > 0``.
    """
    if np.any(np.asarray(s) <= 0):
        raise ValueError("llf speed must be positive")
    q = inputs
    e = (0.25 * (q.e_ru + q.e_lu + q.e_ld + q.e_rd)
         + 0.5 * s * (q.b_nd - q.b_nu + q.b_tr - q.b_tl))
    b_n = 0.5 * (q.b_nu + q.b_nd) + \
        (q.e_ld - q.e_lu + q.e_rd - q.e_ru) / (4.0 * s)
    b_t = 0.5 * (q.b_tr + q.b_tl) + \
        (q.e_rd - q.e_ld + q.e_ru - q.e_lu) / (4.0 * s)
    return e, b_n, b_t


def _strong_state(q, s_l, s_r, s_d, s_u, dxi, dpsi):
    b_n = (s_u * q.b_nu - s_d * q.b_nd) / dpsi + \
        (q.e_ld - q.e_lu + q.e_rd - q.e_ru) / (2.0 * dpsi)
    b_t = (s_r * q.b_tr - s_l * q.b_tl) / dxi + \
        (q.e_rd - q.e_ld + q.e_ru - q.e_lu) / (2.0 * dxi)
    e_1 = (-0.5 * (s_r + s_l) * b_t
           + (s_u * (q.e_ld + q.e_rd) - s_d * (q.e_lu + q.e_ru)) / (2.0 * dpsi)
           - s_u * s_d * (q.b_nd - q.b_nu) / dpsi
           + 0.5 * (s_r * q.b_tr + s_l * q.b_tl))
    e_2 = (0.5 * (s_u + s_d) * b_n
           + (s_r * (q.e_ld + q.e_lu) - s_l * (q.e_rd + q.e_ru)) / (2.0 * dxi)
           - 0.5 * (s_u * q.b_nu + s_d * q.b_nd)
           - s_r * s_l * (q.b_tr - q.b_tl) / dxi)
    return b_n, b_t, e_1, e_2


def hll_strong_state(inputs, speeds):
    """Strongly interacting corner state ``(b_x, b_y, e_z_1, e_z_2)``.

    ``e_z_1`` comes from the first transverse flux and ``e_z_2`` from the
    second; they differ for asymmetric speeds, and the average of the two
    is the value to use downstream.  Meaningful when both fans straddle
    zero speed; both fans must be open.
    """
    _require_open(speeds.dxi, speeds.s_l, speeds.s_r, "left-right")
    _require_open(speeds.dpsi, speeds.s_d, speeds.s_u, "down-up")
    return _strong_state(inputs, speeds.s_l, speeds.s_r, speeds.s_d,
                         speeds.s_u, speeds.dxi, speeds.dpsi)


def _branch_conditions(s):
    return [
        (s.s_l >= 0) & (s.s_d >= 0),
        (s.s_r <= 0) & (s.s_d >= 0),
        (s.s_r <= 0) & (s.s_u <= 0),
        (s.s_l >= 0) & (s.s_u <= 0),
        s.s_l >= 0,
        s.s_r <= 0,
        s.s_d >= 0,
        s.s_u <= 0,
    ]


def dispatch_branch(speeds):
    """Index of the wave regime the edge solver uses, evaluated in order.

    0..3: fully one-sided fans returning a corner zone value (ld, rd, ru,
    lu); 4..7: one-sided in a single direction, returning a 1D resolved
    value (l, r, d, u); 8: both fans straddle zero, the strongly
    interacting state.
    """
    return np.select(_branch_conditions(speeds), np.arange(8), default=8)


def edge_electric_field(inputs, speeds, mode="hll"):
    """Stabilized edge-aligned electric field.

    ``mode="llf"`` requires symmetric speeds and returns the single-speed
    resolved field directly.  ``mode="hll"`` walks the nine-way cascade:
    the first matching regime of :func:`dispatch_branch` decides whether a
    corner value, a 1D resolved value, or the average of the two strongly
    interacting electric fields is used.  Fans that a given edge's branch
    never touches may be degenerate; their widths are masked before any
    division so no spurious error is raised.
    """
    q = inputs
    if mode == "llf":
        return llf_edge(q, _llf_speed(speeds))[0]
    if mode != "hll":
        raise ValueError(f"mode must be 'hll' or 'llf'; got {mode!r}")
    s_l, s_r, s_d, s_u = speeds.s_l, speeds.s_r, speeds.s_d, speeds.s_u
    dxi = np.where(speeds.dxi > 0, speeds.dxi, 1.0)
    dpsi = np.where(speeds.dpsi > 0, speeds.dpsi, 1.0)
    _, e_u = _star_u(q, s_l, s_r, dxi)
    _, e_d = _star_d(q, s_l, s_r, dxi)
    _, e_r = _star_r(q, s_d, s_u, dpsi)
    _, e_l = _star_l(q, s_d, s_u, dpsi)
    _, _, e_1, e_2 = _strong_state(q, s_l, s_r, s_d, s_u, dxi, dpsi)
    values = [q.e_ld, q.e_rd, q.e_ru, q.e_lu, e_l, e_r, e_d, e_u]
    return np.select(_branch_conditions(speeds), values,
                     default=0.5 * (e_1 + e_2))
