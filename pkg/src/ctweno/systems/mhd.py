"""Ideal adiabatic magnetohydrodynamics in Gaussian units.

Zone state ordering:

    u = (rho, rho*v_x, rho*v_y, rho*v_z, eps, B_x, B_y, B_z)

with total energy density

    eps = rho*v^2/2 + p/(gamma - 1) + B^2/(8*pi).

The magnetic field is the single staggered family; its zone components
are mirrors of face averages and its edge driver is E = -v x B, which is
exactly the field appearing (with signs flipped) in the induction rows
of the flux.

Characteristic decompositions are built from the primitive-variable
eigenvectors with the usual fast/slow renormalisation, pushed to
conserved variables through dU/dW.  Left eigenvectors come from a
batched inverse of the (column-scaled) right basis, which keeps the
projection/unprojection pair exact to round-off without a second long
hand transcription.
"""

from __future__ import annotations

import numpy as np

from .common import (P_FLOOR, RHO_FLOOR, PrimitiveRecoveryError,
                     StaggeredFamily, cross)

FOUR_PI = 4.0 * np.pi
EIGHT_PI = 8.0 * np.pi

# Wave ordering used by the eigensystem routines.
_WAVES = ("fast-", "alfven-", "slow-", "entropy", "slow+", "alfven+", "fast+", "div")


class IdealMHD:
    name = "mhd"
    nvar = 8
    component_names = ("rho", "mx", "my", "mz", "energy", "bx", "by", "bz")
    families = (StaggeredFamily("b", slice(5, 8)),)
    has_characteristics = True
    uses_zone_update = True

    def __init__(self, gamma=5.0 / 3.0):
        if not 1.0 < gamma <= 2.0:
            raise ValueError(f"adiabatic index {gamma} outside (1, 2]")
        self.gamma = float(gamma)

    # ------------------------------------------------------------------
    # variable changes

    def cons_to_prim(self, u, floor=False):
        """Primitive state; raises on inadmissible input unless ``floor``.

        The floored variant clamps density and pressure at tiny positive
        values instead.  It exists for evaluations that only need finite
        candidate fluxes (the positivity layer enforces admissibility on
        the update itself, not on every intermediate point value).
        """
        rho = u[0]
        if floor:
            rho = np.maximum(rho, RHO_FLOOR)
        elif not np.all(rho > RHO_FLOOR):
            raise PrimitiveRecoveryError("non-positive density")
        v = u[1:4] / rho
        kinetic = 0.5 * rho * np.einsum("i...,i...->...", v, v)
        magnetic = np.einsum("i...,i...->...", u[5:8], u[5:8]) / EIGHT_PI
        p = (self.gamma - 1.0) * (u[4] - kinetic - magnetic)
        if floor:
            p = np.maximum(p, P_FLOOR)
        elif not np.all(p > 0.0):
            raise PrimitiveRecoveryError("non-positive pressure")
        prim = np.empty_like(u)
        prim[0] = rho
        prim[1:4] = v
        prim[4] = p
        prim[5:8] = u[5:8]
        return prim

    def prim_to_cons(self, prim):
        rho, v, p, b = prim[0], prim[1:4], prim[4], prim[5:8]
        u = np.empty_like(prim)
        u[0] = rho
        u[1:4] = rho * v
        u[4] = (
            0.5 * rho * np.einsum("i...,i...->...", v, v)
            + p / (self.gamma - 1.0)
            + np.einsum("i...,i...->...", b, b) / EIGHT_PI
        )
        u[5:8] = b
        return u

    # ------------------------------------------------------------------
    # fluxes and wave speeds

    def flux(self, u, axis, prim=None):
        if prim is None:
            prim = self.cons_to_prim(u)
        rho, v, p, b = prim[0], prim[1:4], prim[4], prim[5:8]
        ax, ay, az = axis, (axis + 1) % 3, (axis + 2) % 3
        vn, bn = v[ax], b[ax]
        b2 = np.einsum("i...,i...->...", b, b)
        vdotb = np.einsum("i...,i...->...", v, b)
        ptot = p + b2 / EIGHT_PI
        out = np.empty_like(u)
        out[0] = rho * vn
        out[1 + ax] = rho * vn * vn + ptot - bn * bn / FOUR_PI
        out[1 + ay] = rho * v[ay] * vn - bn * b[ay] / FOUR_PI
        out[1 + az] = rho * v[az] * vn - bn * b[az] / FOUR_PI
        out[4] = (u[4] + ptot) * vn - bn * vdotb / FOUR_PI
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

    def fast_speed(self, prim, axis):
        rho, p, b = prim[0], prim[4], prim[5:8]
        a2 = self.gamma * p / rho
        bb2 = np.einsum("i...,i...->...", b, b) / (FOUR_PI * rho)
        bn2 = b[axis] * b[axis] / (FOUR_PI * rho)
        disc = np.sqrt(np.maximum((a2 + bb2) ** 2 - 4.0 * a2 * bn2, 0.0))
        return np.sqrt(0.5 * (a2 + bb2 + disc))

    def signal_speeds(self, u, axis, prim=None):
        if prim is None:
            prim = self.cons_to_prim(u)
        cf = self.fast_speed(prim, axis)
        vn = prim[1 + axis]
        return vn - cf, vn + cf

    # ------------------------------------------------------------------
    # characteristic decomposition

    def eigensystem(self, u_ref, axis):
        """Wave speeds and conserved-variable bases at reference states.

        For ``u_ref`` of shape (8, *S) returns ``lam`` of shape (*S, 8)
        plus right/left matrices of shape (*S, 8, 8) with eigenvectors in
        the columns of R and the rows of L, ordered as fast-/alfven-/
        slow-/entropy/slow+/alfven+/fast+/divergence.
        """
        tail = u_ref.shape[1:]
        u = u_ref.reshape(8, -1)
        # reference states are interface means, only ever used as a basis
        # for projection; a floored recovery keeps the basis finite even
        # when a guarded evaluation feeds in out-of-bounds point values
        prim = self.cons_to_prim(u, floor=True)
        m = u.shape[1]
        gamma = self.gamma

        ax, ay, az = axis, (axis + 1) % 3, (axis + 2) % 3
        rho, p = prim[0], prim[4]
        v = prim[1:4]
        w4 = np.sqrt(FOUR_PI * rho)
        bn = prim[5 + ax] / w4
        bt1 = prim[5 + ay] / w4
        bt2 = prim[5 + az] / w4

        a2 = gamma * p / rho
        ca2 = bn * bn
        bb2 = ca2 + bt1 * bt1 + bt2 * bt2
        disc = np.sqrt(np.maximum((a2 + bb2) ** 2 - 4.0 * a2 * ca2, 0.0))
        cf2 = 0.5 * (a2 + bb2 + disc)
        cs2 = a2 * ca2 / cf2
        cf = np.sqrt(cf2)
        cs = np.sqrt(cs2)
        ca = np.abs(bn)
        a = np.sqrt(a2)

        bperp = np.hypot(bt1, bt2)
        degen = bperp <= 1e-14 * np.sqrt(bb2 + a2)
        inv_bp = np.where(degen, 0.0, 1.0 / np.where(degen, 1.0, bperp))
        beta1 = np.where(degen, np.sqrt(0.5), bt1 * inv_bp)
        beta2 = np.where(degen, np.sqrt(0.5), bt2 * inv_bp)
        sgn = np.where(bn >= 0.0, 1.0, -1.0)

        span = cf2 - cs2
        flat = span <= 1e-12 * (a2 + bb2)
        with np.errstate(divide="ignore", invalid="ignore"):
            af2 = (a2 - cs2) / span
        af2 = np.where(flat, 1.0, np.clip(af2, 0.0, 1.0))
        alpha_f = np.sqrt(af2)
        alpha_s = np.sqrt(1.0 - af2)

        # Right eigenvectors in primitive variables, rows ordered
        # (rho, v_n, v_t1, v_t2, p, B_n, B_t1, B_t2).
        r = np.zeros((8, 8, m))
        gp = gamma * p
        f_rho, f_p = rho * alpha_f, gp * alpha_f
        s_rho, s_p = rho * alpha_s, gp * alpha_s
        f_vt = alpha_s * cs * sgn
        s_vt = alpha_f * cf * sgn
        f_b = alpha_s * w4 * a
        s_b = alpha_f * w4 * a

        for col, pm in ((0, -1.0), (6, 1.0)):
            r[0, col] = f_rho
            r[1, col] = pm * alpha_f * cf
            r[2, col] = -pm * f_vt * beta1
            r[3, col] = -pm * f_vt * beta2
            r[4, col] = f_p
            r[6, col] = f_b * beta1
            r[7, col] = f_b * beta2
        for col, pm in ((2, -1.0), (4, 1.0)):
            r[0, col] = s_rho
            r[1, col] = pm * alpha_s * cs
            r[2, col] = pm * s_vt * beta1
            r[3, col] = pm * s_vt * beta2
            r[4, col] = s_p
            r[6, col] = -s_b * beta1
            r[7, col] = -s_b * beta2
        # torsional waves: delta B_t = -(pm) * sqrt(4 pi rho) * sgn * delta v_t
        for col, pm in ((1, -1.0), (5, 1.0)):
            r[2, col] = -beta2
            r[3, col] = beta1
            r[6, col] = pm * w4 * sgn * beta2
            r[7, col] = -pm * w4 * sgn * beta1
        r[0, 3] = 1.0
        r[5, 7] = 1.0

        vn = v[ax]
        lam = np.stack(
            [vn - cf, vn - ca, vn - cs, vn, vn + cs, vn + ca, vn + cf, vn]
        )

        # Scatter rows to the physical component ordering, then push the
        # basis to conserved variables with dU/dW.
        rows = (0, 1 + ax, 1 + ay, 1 + az, 4, 5 + ax, 5 + ay, 5 + az)
        r_prim = np.zeros((8, 8, m))
        for local, phys in enumerate(rows):
            r_prim[phys] = r[local]

        jac = np.zeros((8, 8, m))
        jac[0, 0] = 1.0
        for k in range(3):
            jac[1 + k, 0] = v[k]
            jac[1 + k, 1 + k] = rho
            jac[4, 1 + k] = rho * v[k]
            jac[5 + k, 5 + k] = 1.0
            jac[4, 5 + k] = prim[5 + k] / FOUR_PI
        jac[4, 0] = 0.5 * np.einsum("i...,i...->...", v, v)
        jac[4, 4] = 1.0 / (gamma - 1.0)

        r_cons = np.einsum("ikm,kjm->mij", jac, r_prim)
        scale = np.sqrt(np.einsum("mij,mij->mj", r_cons, r_cons))
        r_cons /= scale[:, None, :]
        l_cons = np.linalg.inv(r_cons)

        lam = np.moveaxis(lam, 0, -1).reshape(*tail, 8)
        return lam, r_cons.reshape(*tail, 8, 8), l_cons.reshape(*tail, 8, 8)

    @staticmethod
    def characteristic_project(w, left):
        """Apply left bases to a stack of state-space vectors (8, *S)."""
        return np.einsum("...ij,j...->i...", left, w)

    @staticmethod
    def characteristic_unproject(w, right):
        return np.einsum("...ij,j...->i...", right, w)

    # ------------------------------------------------------------------
    # admissibility

    def pcp_admissible(self, u, face_b=None):
        """Strict positivity check, with face-averaged B when provided."""
        b = u[5:8] if face_b is None else face_b
        rho = u[0]
        with np.errstate(divide="ignore", invalid="ignore"):
            kinetic = 0.5 * np.einsum("i...,i...->...", u[1:4], u[1:4]) / rho
            magnetic = np.einsum("i...,i...->...", b, b) / EIGHT_PI
            p = (self.gamma - 1.0) * (u[4] - kinetic - magnetic)
        good = (rho > RHO_FLOOR) & (p > 0.0)
        return good & np.isfinite(p)
