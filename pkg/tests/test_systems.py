"""Checks for the CED / MHD / RMHD system definitions."""

import numpy as np
import pytest

import oracles
from ctweno.systems import (
    RHO_FLOOR,
    IdealMHD,
    Maxwell,
    PrimitiveRecoveryError,
    RelativisticMHD,
    get_system,
)

GAMMA = 5.0 / 3.0
FOUR_PI = 4.0 * np.pi


def random_mhd_prim(rng, m, vmax=2.0):
    prim = np.empty((8, m))
    prim[0] = 10.0 ** rng.uniform(-1.0, 1.0, m)
    prim[1:4] = rng.uniform(-vmax, vmax, (3, m))
    prim[4] = 10.0 ** rng.uniform(-1.0, 1.0, m)
    prim[5:8] = rng.uniform(-3.0, 3.0, (3, m))
    return prim


def random_rmhd_prim(rng, m, vcap=0.9, pspan=(-2.0, 2.0), bspan=1.0,
                     rspan=(-2.0, 2.0)):
    prim = np.empty((8, m))
    prim[0] = 10.0 ** rng.uniform(*rspan, m)
    vdir = rng.normal(size=(3, m))
    vdir /= np.sqrt((vdir**2).sum(axis=0))
    prim[1:4] = vdir * rng.uniform(0.0, vcap, m)
    prim[4] = 10.0 ** rng.uniform(*pspan, m)
    prim[5:8] = rng.normal(scale=bspan, size=(3, m))
    return prim


def roll_state(u, k):
    """Cyclically shift the two vector blocks of an 8-component state."""
    out = u.copy()
    out[1:4] = np.roll(u[1:4], k, axis=0)
    out[5:8] = np.roll(u[5:8], k, axis=0)
    return out


def active_minor(jac, axis):
    """Drop the inert normal-field row and column from flux Jacobians.

    The flux of B_axis along its own axis is identically zero, so the
    conserved-variable Jacobian is block triangular with a spurious zero
    eigenvalue attached to a field the zone update never evolves (the
    staggered transport owns it).  The physically propagating spectrum
    lives in the remaining 7x7 block.
    """
    keep = [i for i in range(8) if i != 5 + axis]
    return jac[np.ix_(range(jac.shape[0]), keep, keep)]


# ----------------------------------------------------------------------
# ideal MHD


def test_mhd_flux_matches_handwritten_columns():
    rng = np.random.default_rng(7011)
    sys = IdealMHD(GAMMA)
    prim = random_mhd_prim(rng, 400)
    u = sys.prim_to_cons(prim)
    want_x = oracles.mhd_flux_x(*prim, GAMMA)
    want_y = oracles.mhd_flux_y(*prim, GAMMA)
    np.testing.assert_allclose(sys.flux(u, 0), want_x, rtol=1e-13, atol=1e-13)
    np.testing.assert_allclose(sys.flux(u, 1), want_y, rtol=1e-13, atol=1e-13)


def test_flux_axis_two_by_rotation():
    rng = np.random.default_rng(7012)
    for sys, prims in (
        (IdealMHD(GAMMA), random_mhd_prim(rng, 50)),
        (RelativisticMHD(GAMMA), random_rmhd_prim(rng, 50)),
    ):
        u = sys.prim_to_cons(prims)
        rotated = roll_state(u, 1)  # old z axis becomes new x axis
        want = roll_state(sys.flux(rotated, 0), -1)
        np.testing.assert_allclose(sys.flux(u, 2), want, rtol=1e-12, atol=1e-13)


def test_mhd_energy_density_assembly():
    sys = IdealMHD(GAMMA)
    prim = np.array([2.0, 1.0, 0.0, 0.0, 3.0, 0.0, 0.0, 2.0])
    u = sys.prim_to_cons(prim)
    assert u[4] == pytest.approx(1.0 + 4.5 + 4.0 / (8.0 * np.pi), rel=1e-15)


def test_mhd_static_state_flux():
    sys = IdealMHD(GAMMA)
    u = sys.prim_to_cons(np.array([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]))
    np.testing.assert_allclose(sys.flux(u, 0), np.eye(8)[1], atol=1e-15)


def test_induction_rows_carry_the_electric_field():
    rng = np.random.default_rng(7013)
    for sys, prims in (
        (IdealMHD(GAMMA), random_mhd_prim(rng, 80)),
        (RelativisticMHD(GAMMA), random_rmhd_prim(rng, 80)),
    ):
        u = sys.prim_to_cons(prims)
        e = sys.electric_field(u)
        fx, fy, fz = (sys.flux(u, a) for a in range(3))
        # d_t B + curl E = 0 written in flux form
        np.testing.assert_allclose(fx[6], -e[2], rtol=0, atol=1e-14)
        np.testing.assert_allclose(fx[7], e[1], rtol=0, atol=1e-14)
        np.testing.assert_allclose(fy[5], e[2], rtol=0, atol=1e-14)
        np.testing.assert_allclose(fy[7], -e[0], rtol=0, atol=1e-14)
        np.testing.assert_allclose(fz[5], -e[1], rtol=0, atol=1e-14)
        np.testing.assert_allclose(fz[6], e[0], rtol=0, atol=1e-14)
        assert np.all(fx[5] == 0) and np.all(fy[6] == 0) and np.all(fz[7] == 0)


def test_electric_field_is_minus_v_cross_b():
    sys = IdealMHD(GAMMA)
    prim = np.array([1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0])
    e = sys.electric_field(sys.prim_to_cons(prim))
    np.testing.assert_allclose(e, [0.0, 0.0, -1.0], atol=1e-15)


def test_mhd_speed_limits():
    sys = IdealMHD(GAMMA)
    # hydro limit: the fan spans twice the adiabatic sound speed
    u = sys.prim_to_cons(np.array([1.0, 0.3, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]))
    lo, hi = sys.signal_speeds(u, 0)
    assert hi - lo == pytest.approx(2.0 * np.sqrt(GAMMA), rel=1e-13)
    assert 0.5 * (hi + lo) == pytest.approx(0.3, rel=1e-12)
    # cold aligned-field limit: the fast speed tends to B/sqrt(4 pi rho)
    prim = np.array([2.0, 0.0, 0.0, 0.0, 1e-12, 1.5, 0.0, 0.0])
    lo, hi = sys.signal_speeds(sys.prim_to_cons(prim), 0)
    assert hi == pytest.approx(1.5 / np.sqrt(FOUR_PI * 2.0), rel=1e-5)


def test_mhd_cons_prim_roundtrip_and_failures():
    rng = np.random.default_rng(7014)
    sys = IdealMHD(GAMMA)
    prim = random_mhd_prim(rng, 300)
    back = sys.cons_to_prim(sys.prim_to_cons(prim))
    np.testing.assert_allclose(back, prim, rtol=1e-12, atol=1e-13)

    hollow = sys.prim_to_cons(prim[:, :1])
    hollow[4] -= 10.0 * prim[4, 0] / (GAMMA - 1.0)
    with pytest.raises(PrimitiveRecoveryError):
        sys.cons_to_prim(hollow)
    with pytest.raises(PrimitiveRecoveryError):
        sys.cons_to_prim(np.array([-1.0, 0, 0, 0, 1.0, 0, 0, 0]))


def test_mhd_signal_speeds_bound_jacobian_spectrum():
    rng = np.random.default_rng(7015)
    sys = IdealMHD(GAMMA)
    m = 10_000
    prim = random_mhd_prim(rng, m)
    u = sys.prim_to_cons(prim)
    jac = oracles.fd_flux_jacobian(sys.flux, u, axis=0)
    assert np.abs(jac[:, 5, :]).max() == 0.0  # inert normal-field row
    eig = np.sort(np.linalg.eigvals(active_minor(jac, 0)).real, axis=1)
    lo, hi = sys.signal_speeds(u, 0)
    slack = 1e-6 * (1.0 + np.maximum(np.abs(lo), np.abs(hi)))
    assert np.all(eig[:, 0] >= lo - slack)
    assert np.all(eig[:, -1] <= hi + slack)


def test_mhd_eigensystem_reconstructs_the_jacobian():
    rng = np.random.default_rng(7016)
    sys = IdealMHD(GAMMA)
    m = 500
    prim = random_mhd_prim(rng, m)
    u = sys.prim_to_cons(prim)
    for axis in range(3):
        jac = oracles.fd_flux_jacobian(sys.flux, u, axis)
        lam, right, left = sys.eigensystem(u, axis)
        rebuilt = np.einsum("mik,mk,mkj->mij", right, lam, left)
        # The bases differ from the conservative Jacobian only in how
        # they treat the inert normal-field component, so compare the
        # dynamically active block.
        want = active_minor(jac, axis)
        got = active_minor(rebuilt, axis)
        scale = np.abs(want).max(axis=(1, 2))[:, None, None]
        assert np.max(np.abs(got - want) / scale) < 1e-6


def test_mhd_eigensystem_handles_degenerate_orientations():
    sys = IdealMHD(GAMMA)
    base = np.array([1.3, 0.4, -0.2, 0.1, 0.9, 0.0, 0.0, 0.0])
    cases = [
        base.copy(),                                   # no field at all
        base + np.eye(8)[5] * 1.2,                     # purely normal field
        base - np.eye(8)[5] * 1.2,                     # flipped normal field
        base + np.eye(8)[6] * 0.7,                     # purely transverse
    ]
    # near the triple point c_a = a the fast/slow split degenerates
    triple = base.copy()
    triple[5] = np.sqrt(GAMMA * base[4] / base[0] * FOUR_PI * base[0])
    cases.append(triple)
    for prim in cases:
        u = sys.prim_to_cons(prim)[:, None]
        jac = active_minor(oracles.fd_flux_jacobian(sys.flux, u, 0), 0)
        lam, right, left = sys.eigensystem(u, 0)
        ident = np.einsum("mik,mkj->mij", left, right)
        assert np.max(np.abs(ident - np.eye(8))) < 1e-12
        rebuilt = np.einsum("mik,mk,mkj->mij", right, lam, left)
        assert np.max(np.abs(active_minor(rebuilt, 0) - jac)) \
            < 1e-6 * np.abs(jac).max()


def test_mhd_projection_roundtrip_identity():
    rng = np.random.default_rng(7017)
    sys = IdealMHD(GAMMA)
    m = 200
    u = sys.prim_to_cons(random_mhd_prim(rng, m))
    for axis in range(3):
        _, right, left = sys.eigensystem(u, axis)
        w = rng.normal(size=(8, m))
        char = sys.characteristic_project(w, left)
        back = sys.characteristic_unproject(char, right)
        np.testing.assert_allclose(back, w, rtol=0, atol=1e-12)
        ident = np.einsum("mik,mkj->mij", left, right)
        assert np.max(np.abs(ident - np.eye(8))) < 1e-12


def test_mhd_admissibility_with_face_averaged_field():
    sys = IdealMHD(GAMMA)
    prim = np.array([1.0, 0.0, 0.0, 0.0, 0.01, 1.0, 0.0, 0.0])
    u = sys.prim_to_cons(prim)[:, None]
    assert sys.pcp_admissible(u).all()
    # a much stronger face field eats the whole internal energy
    strong = np.array([8.0, 0.0, 0.0])[:, None]
    assert not sys.pcp_admissible(u, face_b=strong).any()
    dead = u.copy()
    dead[0] = 0.0
    assert not sys.pcp_admissible(dead).any()


# ----------------------------------------------------------------------
# relativistic MHD


def test_rmhd_static_state():
    sys = RelativisticMHD(GAMMA)
    prim = np.array([1.0, 0.0, 0.0, 0.0, 0.6, 0.0, 0.0, 0.0])
    u = sys.prim_to_cons(prim)
    assert u[0] == pytest.approx(1.0)
    assert u[4] == pytest.approx(1.0 + 0.6 / (GAMMA - 1.0), rel=1e-15)
    f = sys.flux(u, 0)
    np.testing.assert_allclose(f, np.eye(8)[1] * 0.6, atol=1e-15)


def test_rmhd_cons_matches_covariant_assembly():
    rng = np.random.default_rng(7021)
    sys = RelativisticMHD(GAMMA)
    prim = random_rmhd_prim(rng, 500)
    want = oracles.rmhd_cons_covariant(*prim, GAMMA)
    np.testing.assert_allclose(sys.prim_to_cons(prim), want, rtol=1e-12,
                               atol=1e-12)


def test_rmhd_flux_matches_handwritten_columns():
    rng = np.random.default_rng(7022)
    sys = RelativisticMHD(GAMMA)
    prim = random_rmhd_prim(rng, 400)
    u = sys.prim_to_cons(prim)
    np.testing.assert_allclose(sys.flux(u, 0), oracles.rmhd_flux_x(*prim, GAMMA),
                               rtol=1e-11, atol=1e-11)
    np.testing.assert_allclose(sys.flux(u, 1), oracles.rmhd_flux_y(*prim, GAMMA),
                               rtol=1e-11, atol=1e-11)


def test_rmhd_recovery_battery():
    rng = np.random.default_rng(7023)
    sys = RelativisticMHD(GAMMA)
    m = 10_000
    prim = random_rmhd_prim(rng, m, vcap=0.99, pspan=(-4.0, 3.0), bspan=2.0,
                            rspan=(-1.0, 1.0))
    back = sys.cons_to_prim(sys.prim_to_cons(prim))
    assert np.max(np.abs(back[0] - prim[0]) / prim[0]) < 1e-10
    assert np.max(np.abs(back[4] - prim[4]) / prim[4]) < 1e-10
    vscale = 1.0 + np.abs(prim[1:4]).max(axis=0)
    assert np.max(np.abs(back[1:4] - prim[1:4]) / vscale) < 1e-10
    np.testing.assert_array_equal(back[5:8], prim[5:8])


def test_rmhd_recovery_wide_density_stress():
    # Cold fast flows with rho/p spanning ten decades sit at the
    # double-precision conditioning floor for the pressure (the gas
    # enthalpy is a ~1e-6 residual of z there), so this wider sweep gets
    # a tolerance matching that floor rather than the contract figure.
    rng = np.random.default_rng(7026)
    sys = RelativisticMHD(GAMMA)
    prim = random_rmhd_prim(rng, 10_000, vcap=0.99, pspan=(-4.0, 3.0),
                            bspan=2.0, rspan=(-2.0, 2.0))
    back = sys.cons_to_prim(sys.prim_to_cons(prim))
    assert np.max(np.abs(back[0] - prim[0]) / prim[0]) < 1e-11
    assert np.max(np.abs(back[4] - prim[4]) / prim[4]) < 3e-9


def test_rmhd_recovery_rejects_unphysical_input():
    sys = RelativisticMHD(GAMMA)
    u = sys.prim_to_cons(np.array([1.0, 0.5, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0]))
    starved = u.copy()
    starved[4] = 0.3 * u[4]  # below the rest-mass + field bound
    with pytest.raises(PrimitiveRecoveryError):
        sys.cons_to_prim(starved)
    assert not sys.pcp_admissible(starved[:, None]).any()
    assert sys.pcp_admissible(u[:, None]).all()


def test_rmhd_speeds_stay_subluminal():
    rng = np.random.default_rng(7024)
    sys = RelativisticMHD(GAMMA)
    prim = random_rmhd_prim(rng, 10_000, vcap=0.99, pspan=(-4.0, 3.0),
                            bspan=4.0)
    u = sys.prim_to_cons(prim)
    for axis in range(3):
        lo, hi = sys.signal_speeds(u, axis, prim=prim)
        assert np.all(np.abs(lo) <= 1.0) and np.all(np.abs(hi) <= 1.0)
        assert np.all(hi >= lo)


def test_rmhd_speeds_bound_the_jacobian_spectrum():
    # States keep a margin from the admissible boundary so the finite
    # difference probes stay recoverable.
    rng = np.random.default_rng(7024)
    sys = RelativisticMHD(GAMMA)
    m = 10_000
    prim = random_rmhd_prim(rng, m, vcap=0.9, pspan=(-2.0, 2.0), bspan=1.0,
                            rspan=(-1.0, 1.0))
    u = sys.prim_to_cons(prim)
    lo, hi = sys.signal_speeds(u, 0)
    # recovery noise limits FD accuracy, so take a wider stencil
    jac = oracles.fd_flux_jacobian(sys.flux, u, axis=0, rel=3e-5)
    eig = np.sort(np.linalg.eigvals(active_minor(jac, 0)).real, axis=1)
    slack = 1e-6 * (1.0 + np.maximum(np.abs(lo), np.abs(hi)))
    assert np.all(eig[:, 0] >= lo - slack)
    assert np.all(eig[:, -1] <= hi + slack)


def test_rmhd_interp_vector_roundtrip():
    rng = np.random.default_rng(7025)
    sys = RelativisticMHD(GAMMA)
    prim = random_rmhd_prim(rng, 300, vcap=0.99)
    vec = sys.interp_vector(prim)
    w = 1.0 / np.sqrt(1.0 - (prim[1:4] ** 2).sum(axis=0))
    np.testing.assert_allclose(vec[1:4], w * prim[1:4], rtol=1e-13)
    np.testing.assert_allclose(sys.prim_from_interp(vec), prim,
                               rtol=1e-12, atol=1e-14)


# ----------------------------------------------------------------------
# electromagnetics


def test_ced_fields_and_fluxes():
    rng = np.random.default_rng(7031)
    sys = Maxwell(eps=4.0, mu=0.25)
    u = rng.normal(size=(6, 40))
    e, h = sys.fields(u)
    np.testing.assert_allclose(e, u[0:3] / 4.0)
    np.testing.assert_allclose(h, u[3:6] * 4.0)

    minus_h, e2 = sys.edge_drivers(u)
    np.testing.assert_array_equal(e2, e)
    np.testing.assert_array_equal(minus_h, -h)

    fx = sys.flux(u, 0)
    fy = sys.flux(u, 1)
    # B block mirrors d_t B + curl E = 0, D block runs on -H
    np.testing.assert_allclose(fx[4], -e[2])
    np.testing.assert_allclose(fx[5], e[1])
    np.testing.assert_allclose(fy[3], e[2])
    np.testing.assert_allclose(fx[1], h[2])
    np.testing.assert_allclose(fx[2], -h[1])
    np.testing.assert_allclose(fy[0], -h[2])
    assert np.all(fx[0] == 0) and np.all(fx[3] == 0)

    lo, hi = sys.signal_speeds(u, 0)
    np.testing.assert_allclose(hi, 1.0)  # 1/sqrt(4 * 0.25)
    np.testing.assert_allclose(lo, -1.0)
    assert sys.pcp_admissible(u).all()

    np.testing.assert_allclose(sys.prim_to_cons(sys.cons_to_prim(u)), u,
                               rtol=1e-15, atol=1e-15)


def test_ced_material_maps_sample_by_position():
    ramp = Maxwell(eps=lambda x, y: np.where(x > 0.5, 4.0, 1.0), mu=1.0)
    x = np.array([0.2, 0.8])
    y = np.zeros(2)
    np.testing.assert_array_equal(ramp.eps_at((x, y)), [1.0, 4.0])
    assert ramp.mu_at((x, y)) == 1.0
    with pytest.raises(TypeError):
        ramp.flux(np.ones((6, 2)), 0)
    eps = ramp.eps_at((x, y))
    lo, hi = ramp.signal_speeds(np.ones((6, 2)), 0, eps=eps, mu=1.0)
    np.testing.assert_allclose(hi, [1.0, 0.5])


def test_registry_instantiates_each_system():
    assert isinstance(get_system("ced"), Maxwell)
    assert get_system("mhd", gamma=1.4).gamma == 1.4
    assert isinstance(get_system("RMHD"), RelativisticMHD)
    with pytest.raises(ValueError):
        get_system("euler")
