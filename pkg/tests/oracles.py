"""Independent reference computations backing the test suite.

Everything here is built on sympy (or plain rational arithmetic) without
touching the production tables, so agreement between the two sides is
meaningful.  Exact rationals are used wherever the quantity being checked
is itself exact.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np
import sympy as sp

X, Y, Z = sp.symbols("x y z")
AXES = (X, Y, Z)


@lru_cache(maxsize=None)
def legendre_cell(k):
    """Monic Legendre polynomial of degree k on [-1/2, 1/2], via sympy."""
    lead = Fraction(factorial(k) ** 2, factorial(2 * k))
    return sp.expand(sp.legendre(k, 2 * X) * sp.Rational(lead.numerator,
                                                         lead.denominator))


def legendre_product_expr(degrees):
    """prod_i L_{degrees[i]}(axis_i) as a sympy expression."""
    expr = sp.Integer(1)
    for ax, k in zip(AXES, degrees):
        expr *= legendre_cell(k).subs(X, ax)
    return sp.expand(expr)


def poly_from_coeffs(degree_tuples, coeffs):
    """Linear combination of Legendre products with given coefficients."""
    expr = sp.Integer(0)
    for d, c in zip(degree_tuples, coeffs):
        expr += sp.Rational(Fraction(c).numerator,
                            Fraction(c).denominator) * legendre_product_expr(d)
    return sp.expand(expr)


def cell_integral(expr, dim):
    half = sp.Rational(1, 2)
    for ax in AXES[:dim]:
        expr = sp.integrate(expr, (ax, -half, half))
    return expr


def beta_quadrature(expr, dim, max_orders):
    """Smoothness of a polynomial: sum of squared-derivative cell integrals.

    max_orders bounds the per-axis derivative count; every multi-index with
    at least one derivative contributes integral(D^a p)^2 over the unit
    cell.  Returns an exact sympy Rational for polynomial input.
    """
    from itertools import product
    total = sp.Integer(0)
    for alpha in product(*(range(m + 1) for m in max_orders[:dim])):
        if sum(alpha) == 0:
            continue
        d = expr
        for ax, a in zip(AXES, alpha):
            if a:
                d = sp.diff(d, ax, a)
        if d == 0:
            continue
        total += cell_integral(sp.expand(d * d), dim)
    return total


def point_value(expr, point, dim):
    """Exact evaluation at a rational point, as a Fraction."""
    subs = {ax: sp.Rational(Fraction(p).numerator, Fraction(p).denominator)
            for ax, p in zip(AXES[:dim], point)}
    return Fraction(str(sp.nsimplify(expr.subs(subs))))


def cell_mean(expr, offset, dim):
    """Exact mean of expr over the unit cell centred at integer offset."""
    half = sp.Rational(1, 2)
    out = expr
    for ax, o in zip(AXES[:dim], offset):
        out = sp.integrate(out, (ax, o - half, o + half))
    return Fraction(str(sp.nsimplify(out)))


def random_legendre_coeffs(rng, degree_tuples, scale=4):
    """Small random rationals, one per basis element."""
    return [Fraction(int(rng.integers(-3 * scale, 3 * scale + 1)),
                     int(rng.integers(1, scale + 1)))
            for _ in degree_tuples]


def quadratic_form_from_squares(squares, degree_tuples):
    """Expand sum_i  c_i * (sum_a m_ia u_a)^2  into a Gram matrix.

    squares is a list of (prefactor, {degree_tuple: multiplier}) pairs; the
    result is a dense list-of-lists of Fractions ordered like
    degree_tuples.  Used to turn closed-form indicator expressions into
    matrices comparable with the production Gram.
    """
    idx = {d: i for i, d in enumerate(degree_tuples)}
    n = len(degree_tuples)
    G = [[Fraction(0)] * n for _ in range(n)]
    for pref, terms in squares:
        pref = Fraction(pref)
        items = [(idx[d], Fraction(m)) for d, m in terms.items()]
        for i, mi in items:
            for j, mj in items:
                G[i][j] += pref * mi * mj
    return G


# ---------------------------------------------------------------------------
# Corner Riemann problem for the induction pair (B_x, B_y).
#
# The production edge solver returns closed-form resolved fields.  Here we
# rebuild the same quantities a different way: textbook two-state HLL
# middle states on the four sides of the wave model, fed into the
# boundary-integral expressions for the strongly interacting state in
# similarity variables.  With constant quadrant states every integral
# collapses, so this stays exact up to float rounding.  Plain numpy floats
# throughout; arrays broadcast.


def hll_middle(u_lo, u_hi, f_lo, f_hi, s_lo, s_hi):
    """Two-state HLL resolved state and flux for one conserved component."""
    span = s_hi - s_lo
    u_mid = (s_hi * u_hi - s_lo * u_lo - (f_hi - f_lo)) / span
    f_mid = (s_hi * f_lo - s_lo * f_hi + s_hi * s_lo * (u_hi - u_lo)) / span
    return u_mid, f_mid


def corner_state_integrals(e_ru, e_lu, e_ld, e_rd, b_nd, b_nu, b_tl, b_tr,
                           s_l, s_r, s_d, s_u):
    """Strongly interacting corner fields from the boundary integrals.

    The PDE is d_t (B_x, B_y) + d_x (0, -E_z) + d_y (E_z, 0) = 0 with a
    constant state in each quadrant; normal-field continuity means B_x is
    shared across up/down pairs and B_y across left/right pairs.  Returns a
    dict with the resolved b_x, b_y and the electric field obtained once
    from the x-flux and once from the y-flux.
    """
    # 1D fans on the four sides of the wave model.  Along the top and
    # bottom the x-problem runs between the left and right states; along
    # the left and right the y-problem runs between the down and up
    # states.  The only flux components that ever matter are the second
    # component of the x-flux (-E_z) and the first of the y-flux (+E_z).
    by_top, fx2_top = hll_middle(b_tl, b_tr, -e_lu, -e_ru, s_l, s_r)
    bx_top = b_nu
    by_bot, fx2_bot = hll_middle(b_tl, b_tr, -e_ld, -e_rd, s_l, s_r)
    bx_bot = b_nd

    bx_rgt, gy1_rgt = hll_middle(b_nd, b_nu, e_rd, e_ru, s_d, s_u)
    by_rgt = b_tr
    bx_lft, gy1_lft = hll_middle(b_nd, b_nu, e_ld, e_lu, s_d, s_u)
    by_lft = b_tl

    # Electric field on each side, recovered through the antisymmetry of
    # the fluxes, then the full flux vectors on each side.
    e_top, e_bot = -fx2_top, -fx2_bot
    e_rgt, e_lft = gy1_rgt, gy1_lft

    dxi = s_r - s_l
    dpsi = s_u - s_d
    xi_c = 0.5 * (s_r + s_l)
    psi_c = 0.5 * (s_u + s_d)

    # Boundary integrals of (flux - speed * state) over each side; the
    # integrands are constant so each integral is just the integrand.
    # Components written out by hand: state = (b_x, b_y),
    # x-flux = (0, -e), y-flux = (e, 0).
    rx1 = 0.0 - s_r * bx_rgt
    rx2 = -e_rgt - s_r * by_rgt
    lx1 = 0.0 - s_l * bx_lft
    lx2 = -e_lft - s_l * by_lft
    uy1 = e_top - s_u * bx_top
    uy2 = 0.0 - s_u * by_top
    dy1 = e_bot - s_d * bx_bot
    dy2 = 0.0 - s_d * by_bot

    u1 = -((rx1 - lx1) / (2.0 * dxi) + (uy1 - dy1) / (2.0 * dpsi))
    u2 = -((rx2 - lx2) / (2.0 * dxi) + (uy2 - dy2) / (2.0 * dpsi))

    # The first-moment boundary integrals vanish for constant sides, so
    # the flux vectors keep only the zeroth-moment terms.
    f1 = xi_c * u1 + 0.5 * (rx1 + lx1)
    f2 = xi_c * u2 + 0.5 * (rx2 + lx2)
    g1 = psi_c * u1 + 0.5 * (uy1 + dy1)
    g2 = psi_c * u2 + 0.5 * (uy2 + dy2)

    return {
        "b_x": u1, "b_y": u2,
        "e_from_x": -f2, "e_from_y": g1,
        "f_1": f1, "g_2": g2,
    }


# ----------------------------------------------------------------------
# Physics-system references.  The flux columns below are typed out
# literally, component by component, as an independent route against the
# permutation-based production code.

def mhd_flux_x(rho, vx, vy, vz, p, bx, by, bz, gamma):
    """Ideal-MHD x-flux written out term by term (Gaussian units)."""
    fourpi = 4.0 * np.pi
    b2 = bx * bx + by * by + bz * bz
    vdotb = vx * bx + vy * by + vz * bz
    eps = 0.5 * rho * (vx * vx + vy * vy + vz * vz) \
        + p / (gamma - 1.0) + b2 / (2.0 * fourpi)
    return np.array([
        rho * vx,
        rho * vx * vx + p + b2 / (2.0 * fourpi) - bx * bx / fourpi,
        rho * vx * vy - bx * by / fourpi,
        rho * vx * vz - bx * bz / fourpi,
        (eps + p + b2 / (2.0 * fourpi)) * vx - bx * vdotb / fourpi,
        0.0 * rho,
        vx * by - vy * bx,
        -(vz * bx - vx * bz),
    ])


def mhd_flux_y(rho, vx, vy, vz, p, bx, by, bz, gamma):
    """Ideal-MHD y-flux written out term by term (Gaussian units)."""
    fourpi = 4.0 * np.pi
    b2 = bx * bx + by * by + bz * bz
    vdotb = vx * bx + vy * by + vz * bz
    eps = 0.5 * rho * (vx * vx + vy * vy + vz * vz) \
        + p / (gamma - 1.0) + b2 / (2.0 * fourpi)
    return np.array([
        rho * vy,
        rho * vy * vx - by * bx / fourpi,
        rho * vy * vy + p + b2 / (2.0 * fourpi) - by * by / fourpi,
        rho * vy * vz - by * bz / fourpi,
        (eps + p + b2 / (2.0 * fourpi)) * vy - by * vdotb / fourpi,
        -(vx * by - vy * bx),
        0.0 * rho,
        vy * bz - vz * by,
    ])


def rmhd_aux(rho, vx, vy, vz, p, bx, by, bz, gamma):
    """Lorentz factor, enthalpy and four-field pieces of the RMHD state."""
    v2 = vx * vx + vy * vy + vz * vz
    w = 1.0 / np.sqrt(1.0 - v2)
    h = 1.0 + gamma * p / ((gamma - 1.0) * rho)
    vdotb = vx * bx + vy * by + vz * bz
    b2 = bx * bx + by * by + bz * bz
    bsq_fluid = b2 / (w * w) + vdotb * vdotb
    return v2, w, h, vdotb, b2, bsq_fluid


def rmhd_cons_covariant(rho, vx, vy, vz, p, bx, by, bz, gamma):
    """Conserved RMHD state assembled from the four-vector route.

    Uses b^0 = W (v.B), b^i = B_i/W + W (v.B) v_i and the stress tensor
    (rho h + |b|^2) u^mu u^nu + (p + |b|^2/2) g^munu - b^mu b^nu, which is
    algebra independent of the flattened expressions under test.
    """
    v2, w, h, vdotb, b2, bsq = rmhd_aux(rho, vx, vy, vz, p, bx, by, bz, gamma)
    b0 = w * vdotb
    bvec = np.array([bx, by, bz]) / w + w * vdotb * np.array([vx, vy, vz])
    wtot = rho * h + bsq
    ptot = p + 0.5 * bsq
    dens = rho * w
    mom = wtot * w * w * np.array([vx, vy, vz]) - b0 * bvec
    ener = wtot * w * w - ptot - b0 * b0
    return np.concatenate([[dens], mom, [ener], [bx, by, bz]])


def rmhd_flux_x(rho, vx, vy, vz, p, bx, by, bz, gamma):
    """RMHD x-flux written out term by term (rationalised units, c=1)."""
    v2, w, h, vdotb, b2, bsq = rmhd_aux(rho, vx, vy, vz, p, bx, by, bz, gamma)
    z = rho * h * w * w
    mx = (z + b2) * vx - vdotb * bx
    my = (z + b2) * vy - vdotb * by
    mz = (z + b2) * vz - vdotb * bz
    ptot = p + 0.5 * bsq
    bvx = bx / w + w * vdotb * vx
    bvy = by / w + w * vdotb * vy
    bvz = bz / w + w * vdotb * vz
    return np.array([
        rho * w * vx,
        mx * vx + ptot - bx * bvx / w,
        my * vx - bx * bvy / w,
        mz * vx - bx * bvz / w,
        mx,
        0.0 * rho,
        vx * by - vy * bx,
        -(vz * bx - vx * bz),
    ])


def rmhd_flux_y(rho, vx, vy, vz, p, bx, by, bz, gamma):
    """RMHD y-flux written out term by term (rationalised units, c=1)."""
    v2, w, h, vdotb, b2, bsq = rmhd_aux(rho, vx, vy, vz, p, bx, by, bz, gamma)
    z = rho * h * w * w
    mx = (z + b2) * vx - vdotb * bx
    my = (z + b2) * vy - vdotb * by
    mz = (z + b2) * vz - vdotb * bz
    ptot = p + 0.5 * bsq
    bvx = bx / w + w * vdotb * vx
    bvy = by / w + w * vdotb * vy
    bvz = bz / w + w * vdotb * vz
    return np.array([
        rho * w * vy,
        mx * vy - by * bvx / w,
        my * vy + ptot - by * bvy / w,
        mz * vy - by * bvz / w,
        my,
        -(vx * by - vy * bx),
        0.0 * rho,
        vy * bz - vz * by,
    ])


def fd_flux_jacobian(flux_fn, states, axis, rel=1e-7):
    """Central-difference flux Jacobians, one per column of ``states``.

    ``states`` has shape (n, M); the result has shape (M, n, n) with
    J[m, i, j] = d flux_i / d u_j at state m.
    """
    n, m = states.shape
    h = rel * (np.abs(states) + 1.0)
    plus = np.repeat(states[:, None, :], n, axis=1)
    minus = plus.copy()
    idx = np.arange(n)
    plus[idx, idx, :] += h
    minus[idx, idx, :] -= h
    fp = flux_fn(plus.reshape(n, n * m), axis).reshape(n, n, m)
    fm = flux_fn(minus.reshape(n, n * m), axis).reshape(n, n, m)
    jac = (fp - fm) / (2.0 * h[None, :, :])
    return np.moveaxis(jac, 2, 0)
