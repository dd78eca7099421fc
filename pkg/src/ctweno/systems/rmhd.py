"""Ideal relativistic MHD with an adiabatic gas law, rationalised units, c = 1.

Zone state ordering:

    u = (D, m_x, m_y, m_z, eps, B_x, B_y, B_z)

where, with W the Lorentz factor and h = 1 + gamma*p/((gamma-1)*rho),

    D    = rho*W
    m_i  = (rho*h*W^2 + B^2) v_i - (v.B) B_i
    eps  = rho*h*W^2 - p + B^2/2 + (v^2 B^2 - (v.B)^2)/2.

Primitive recovery reduces to a single scalar root find in
z = rho*h*W^2: given z the velocity magnitude, Lorentz factor and
pressure all follow in closed form, and the total-energy definition
becomes the residual.  A bracketed Newton iteration (bisection whenever
the Newton step leaves the bracket or the slope misbehaves) makes the
solve robust for any admissible input; inadmissible inputs fail the
bracket search or the final positivity checks and are reported.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .common import (P_FLOOR, RHO_FLOOR, PrimitiveRecoveryError,
                     StaggeredFamily, cross)

_REL_TOL = 1e-12
_MAX_ITER = 60


@njit(cache=True, error_model="numpy")
def _residual(z, d, m2, s, b2, e, gm1og):
    """Return (valid, f, df) of the energy residual at candidate z.

    The numpy error model matters: garbage inputs can underflow z*z to
    zero, and the resulting inf/nan must fall through the comparisons
    as invalid instead of raising mid-solve.
    """
    s2z2 = s * s / (z * z)
    zb = z + b2
    v2 = (m2 + s2z2 * (2.0 * z + b2)) / (zb * zb)
    if not (0.0 <= v2 < 1.0):
        return False, -1.0, 0.0
    dv2 = (-2.0 * s * s * (1.0 / (z * z) + b2 / (z * z * z))) / (zb * zb) - 2.0 * v2 / zb
    rw = np.sqrt(1.0 - v2)
    p = gm1og * (z * (1.0 - v2) - d * rw)
    dp = gm1og * ((1.0 - v2) - z * dv2 + 0.5 * d * dv2 / rw)
    f = z - p + 0.5 * b2 + 0.5 * (v2 * b2 - s2z2) - e
    df = 1.0 - dp + 0.5 * b2 * dv2 + s * s / (z * z * z)
    return True, f, df


@njit(cache=True, error_model="numpy")
def _solve_z(d, m2, s, b2, e, gm1og):
    """Bracketed Newton for z = rho*h*W^2.  Returns (z, ok)."""
    scale = d + b2 + np.sqrt(m2) + abs(e) + 1e-300

    zh = scale
    ok_hi = False
    for _ in range(120):
        valid, f, _ = _residual(zh, d, m2, s, b2, e, gm1og)
        if valid and f > 0.0:
            ok_hi = True
            break
        zh *= 4.0
    if not ok_hi:
        return 0.0, False

    # Walk down by halving until the residual turns negative; invalid
    # candidates (superluminal v) sit below any physical root and count
    # as the negative side of the bracket.
    zl = zh
    ok_lo = False
    for _ in range(2200):
        cand = 0.5 * zl
        if cand < 1e-300:
            break
        valid, f, _ = _residual(cand, d, m2, s, b2, e, gm1og)
        zl = cand
        if (not valid) or f < 0.0:
            ok_lo = True
            break
        zh = cand
    if not ok_lo:
        return 0.0, False

    # Newton with the bracket as a safety net.  The loop keeps polishing
    # past the contractual 1e-12 until the step stagnates at round-off,
    # which matters for cold states where p is a tiny residual of z.
    z = 0.5 * (zl + zh)
    for _ in range(_MAX_ITER):
        valid, f, df = _residual(z, d, m2, s, b2, e, gm1og)
        if valid and f >= 0.0:
            zh = z
        else:
            zl = z
        if valid and df > 0.0:
            znew = z - f / df
        else:
            znew = 0.5 * (zl + zh)
        if not (zl < znew < zh) or not np.isfinite(znew):
            znew = 0.5 * (zl + zh)
        if znew == z or abs(znew - z) <= 4e-16 * znew:
            z = znew
            break
        z = znew

    valid, f, _ = _residual(z, d, m2, s, b2, e, gm1og)
    if (not valid) or abs(f) > 1e-6 * (scale + z):
        return z, False
    return z, True


@njit(cache=True, error_model="numpy")
def _solve_many(d, m2, s, b2, e, gm1og, z_out, ok_out):
    for i in range(d.size):
        z_out[i], ok_out[i] = _solve_z(d[i], m2[i], s[i], b2[i], e[i], gm1og)


class RelativisticMHD:
    name = "rmhd"
    nvar = 8
    component_names = ("dens", "mx", "my", "mz", "energy", "bx", "by", "bz")
    families = (StaggeredFamily("b", slice(5, 8)),)
    has_characteristics = False
    uses_zone_update = True

    def __init__(self, gamma=5.0 / 3.0):
        if not 1.0 < gamma <= 2.0:
            raise ValueError(f"adiabatic index {gamma} outside (1, 2]")
        self.gamma = float(gamma)

    # ------------------------------------------------------------------
    # variable changes

    def prim_to_cons(self, prim):
        gamma = self.gamma
        rho, v, p, b = prim[0], prim[1:4], prim[4], prim[5:8]
        v2 = np.einsum("i...,i...->...", v, v)
        b2 = np.einsum("i...,i...->...", b, b)
        vdotb = np.einsum("i...,i...->...", v, b)
        w2 = 1.0 / (1.0 - v2)
        z = (rho + gamma * p / (gamma - 1.0)) * w2
        u = np.empty_like(prim)
        u[0] = rho * np.sqrt(w2)
        u[1:4] = (z + b2) * v - vdotb * b
        u[4] = z - p + 0.5 * b2 + 0.5 * (v2 * b2 - vdotb * vdotb)
        u[5:8] = b
        return u

    def _recover_raw(self, u):
        """Scalar solves for a whole array; returns (prim, ok mask)."""
        d = np.ascontiguousarray(u[0], dtype=np.float64)
        m = u[1:4]
        b = u[5:8]
        m2 = np.einsum("i...,i...->...", m, m)
        s = np.einsum("i...,i...->...", m, b)
        b2 = np.einsum("i...,i...->...", b, b)
        e = u[4]

        shape = d.shape
        z = np.empty(d.size)
        ok = np.empty(d.size, dtype=np.bool_)
        _solve_many(
            d.ravel().astype(np.float64),
            np.ascontiguousarray(m2, dtype=np.float64).ravel(),
            np.ascontiguousarray(s, dtype=np.float64).ravel(),
            np.ascontiguousarray(b2, dtype=np.float64).ravel(),
            np.ascontiguousarray(e, dtype=np.float64).ravel(),
            (self.gamma - 1.0) / self.gamma,
            z,
            ok,
        )
        z = z.reshape(shape)
        ok = ok.reshape(shape)

        with np.errstate(divide="ignore", invalid="ignore"):
            vdotb = s / z
            v = (m + vdotb * b) / (z + b2)
            v2 = np.einsum("i...,i...->...", v, v)
            rw = np.sqrt(np.clip(1.0 - v2, 0.0, 1.0))
            rho = d * rw
            p = (self.gamma - 1.0) / self.gamma * (z * (1.0 - v2) - d * rw)
        ok = ok & (rho > RHO_FLOOR) & (p > 0.0) & (v2 < 1.0) & np.isfinite(p)

        prim = np.empty_like(u)
        prim[0, ...] = rho
        prim[1:4] = v
        prim[4, ...] = p
        prim[5:8] = b
        return prim, ok

    def cons_to_prim(self, u, floor=False):
        """Primitive state; raises on failed recovery unless ``floor``.

        The floored variant substitutes a cold static state in zones the
        solver could not invert, keeping candidate-flux evaluations
        finite; the positivity layer judges admissibility on the update
        itself, never through this fallback.
        """
        prim, ok = self._recover_raw(u)
        if np.all(ok):
            return prim
        if not floor:
            raise PrimitiveRecoveryError(
                f"primitive recovery failed in {int(np.size(ok) - np.count_nonzero(ok))} zone(s)"
            )
        bad = ~ok
        prim[0] = np.where(bad, np.maximum(u[0], RHO_FLOOR), prim[0])
        for k in (1, 2, 3):
            prim[k] = np.where(bad, 0.0, prim[k])
        prim[4] = np.where(bad, P_FLOOR, prim[4])
        return prim

    # ------------------------------------------------------------------
    # fluxes and wave speeds

    def flux(self, u, axis, prim=None):
        if prim is None:
            prim = self.cons_to_prim(u)
        v, p, b = prim[1:4], prim[4], prim[5:8]
        ax, ay, az = axis, (axis + 1) % 3, (axis + 2) % 3
        vn, bn = v[ax], b[ax]
        v2 = np.einsum("i...,i...->...", v, v)
        b2 = np.einsum("i...,i...->...", b, b)
        vdotb = np.einsum("i...,i...->...", v, b)
        iw2 = 1.0 - v2
        # B_j b_i / W expands to B_j (B_i/W^2 + (v.B) v_i)
        bb = b * iw2 + vdotb * v
        ptot = p + 0.5 * (b2 * iw2 + vdotb * vdotb)
        out = np.empty_like(u)
        out[0] = u[0] * vn
        out[1 + ax] = u[1 + ax] * vn + ptot - bn * bb[ax]
        out[1 + ay] = u[1 + ay] * vn - bn * bb[ay]
        out[1 + az] = u[1 + az] * vn - bn * bb[az]
        out[4] = u[1 + ax]
        out[5 + ax] = 0.0
        out[5 + ay] = vn * b[ay] - v[ay] * bn
        out[5 + az] = vn * b[az] - v[az] * bn
        return out

    def electric_field(self, u, prim=None):
        if prim is None:
            prim = self.cons_to_prim(u)
        return -cross(prim[1:4], prim[5:8])

    def edge_drivers(self, u, prim=None):
        return (self.electric_field(u, prim),)

    def signal_speeds(self, u, axis, prim=None):
        """Bounding fast-speed estimate via the total wave speed.

        The squared sound and Alfven speeds combine relativistically into
        c_m^2 = c_s^2 + v_A^2 - c_s^2 v_A^2, which caps the true fast
        speed for any propagation angle; the returned pair is the
        one-dimensional addition of c_m with the normal velocity.
        """
        if prim is None:
            prim = self.cons_to_prim(u)
        rho, v, p, b = prim[0], prim[1:4], prim[4], prim[5:8]
        gamma = self.gamma
        v2 = np.einsum("i...,i...->...", v, v)
        b2 = np.einsum("i...,i...->...", b, b)
        vdotb = np.einsum("i...,i...->...", v, b)
        rho_h = rho + gamma * p / (gamma - 1.0)
        bfl2 = b2 * (1.0 - v2) + vdotb * vdotb
        cs2 = gamma * p / rho_h
        va2 = bfl2 / (rho_h + bfl2)
        cm2 = np.clip(cs2 + va2 - cs2 * va2, 0.0, 1.0)

        vn = v[axis]
        denom = 1.0 - v2 * cm2
        disc = cm2 * (1.0 - v2) * (denom - vn * vn * (1.0 - cm2))
        root = np.sqrt(np.maximum(disc, 0.0))
        lo = (vn * (1.0 - cm2) - root) / denom
        hi = (vn * (1.0 - cm2) + root) / denom
        return np.clip(lo, -1.0, 1.0), np.clip(hi, -1.0, 1.0)

    # ------------------------------------------------------------------
    # reconstruction vector

    def interp_vector(self, prim):
        """Smooth interpolation variables (rho, W v, p, B)."""
        v = prim[1:4]
        v2 = np.einsum("i...,i...->...", v, v)
        w = 1.0 / np.sqrt(1.0 - v2)
        out = prim.copy()
        out[1:4] = w * v
        return out

    def prim_from_interp(self, vec):
        wv = vec[1:4]
        w = np.sqrt(1.0 + np.einsum("i...,i...->...", wv, wv))
        out = vec.copy()
        out[1:4] = wv / w
        return out

    # ------------------------------------------------------------------
    # admissibility

    def pcp_admissible(self, u, face_b=None):
        """True where recovery succeeds with p > 0 and |v| < 1."""
        if face_b is None:
            ueff = u
        else:
            ueff = u.copy()
            ueff[5:8] = face_b
        b2 = np.einsum("i...,i...->...", ueff[5:8], ueff[5:8])
        necessary = (ueff[0] > RHO_FLOOR) & (ueff[4] > 0.5 * b2)
        _, ok = self._recover_raw(ueff)
        return necessary & ok
