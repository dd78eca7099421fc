"""Behavioural tests of the reconstruction API on grids.

Covers polynomial exactness through the compiled kernels, measured
convergence rates on smooth data, and a few structural properties
(constancy preservation, stagger conventions).
"""

import numpy as np
import pytest

from ctweno import weno


def test_design_degree_exactness_all_families():
    worst = weno.self_check(verbose=lambda *_: None)
    assert worst < 1e-12


@pytest.mark.parametrize("order", [3, 5, 7, 9])
def test_constant_fields_pass_through_nonlinear_weights(order):
    n = order + 8
    data = np.full((1, n, n), 3.25)
    out = weno.corner_values(data, order)
    g = weno.ghost_zones(order)
    inner = out[:, :, g:-g, g:-g]
    assert np.allclose(inner, 3.25, rtol=0, atol=1e-13)

    line = np.full((1, 1, n), -1.5)
    out = weno.interface_values(line, order)
    assert np.allclose(out[0, :, 0, g:-g], -1.5, rtol=0, atol=1e-13)


@pytest.mark.parametrize("order", [3, 5, 7, 9])
def test_corner_interpolation_convergence_rate(order):
    """Interpolating sin*sin to cell corners converges at the full order."""
    errs = []
    for n in (16, 32):
        h = 1.0 / n
        g = weno.ghost_zones(order)
        idx = np.arange(-g, n + g) + 0.5
        x = idx * h
        f = np.sin(2 * np.pi * x)[:, None] * np.sin(2 * np.pi * x)[None, :]
        out = weno.corner_values(f[None], order)
        xc = x + 0.5 * h
        exact = np.sin(2 * np.pi * xc)[:, None] * np.sin(2 * np.pi * xc)[None]
        err = np.abs(out[0, 3, g:-g, g:-g] - exact[g:-g, g:-g]).max()
        errs.append(err)
    rate = np.log2(errs[0] / errs[1])
    assert rate > order - 0.3, (errs, rate)


@pytest.mark.parametrize("order", [3, 5, 7, 9])
def test_interface_reconstruction_convergence_rate(order):
    errs = []
    for n in (24, 48):
        h = 1.0 / n
        g = weno.ghost_zones(order)
        idx = np.arange(-g, n + g)
        # exact cell averages of sin(2 pi x)
        lo = idx * h
        hi = lo + h
        avg = (np.cos(2 * np.pi * lo) - np.cos(2 * np.pi * hi)) / (2 * np.pi
                                                                   * h)
        out = weno.interface_values(avg[None, None, :], order)
        exact = np.sin(2 * np.pi * hi)
        err = np.abs(out[0, 0, 0, g:-g] - exact[g:-g]).max()
        errs.append(err)
    rate = np.log2(errs[0] / errs[1])
    assert rate > order - 0.3, (errs, rate)


@pytest.mark.parametrize("order", [3, 5, 7, 9])
def test_segment_readout_channels_and_rate(order):
    """Segment moments agree with the flux channels and converge."""
    errs = []
    for n in (24, 48):
        h = 1.0 / n
        g = weno.ghost_zones(order)
        idx = np.arange(-g, n + g)
        lo = idx * h
        hi = lo + h
        avg = (np.cos(2 * np.pi * lo) - np.cos(2 * np.pi * hi)) / (2 * np.pi
                                                                   * h)
        seg = weno.segment_moments(avg[None, None, :], order)
        flux = weno.interface_values(avg[None, None, :], order)
        # endpoint channels are the same functionals as the flux family
        assert np.allclose(seg[0, 2, 0, g:-g], flux[0, 0, 0, g:-g],
                           rtol=0, atol=1e-13)
        assert np.allclose(seg[0, 1, 0, g:-g], flux[0, 1, 0, g:-g],
                           rtol=0, atol=1e-13)
        mid = 0.5 * (lo + hi)
        err = np.abs(seg[0, 0, 0, g:-g] - np.sin(2 * np.pi * mid[g:-g])).max()
        errs.append(err)
    rate = np.log2(errs[0] / errs[1])
    assert rate > order - 0.3, (errs, rate)


@pytest.mark.parametrize("order", [3, 5, 7, 9])
def test_stagger_interpolation_convention_and_rate(order):
    """Face samples at j-1/2 interpolate to the zone centre at j."""
    errs = []
    for n in (16, 32):
        h = 1.0 / n
        g = weno.ghost_zones(order)
        faces = (np.arange(-g, n + g + 1) - 0.5) * h
        data = np.sin(2 * np.pi * faces)[None, None, :]
        out = weno.center_from_faces(data, order)
        centers = np.arange(-g, n + g) * h
        exact = np.sin(2 * np.pi * centers)
        err = np.abs(out[0, 0, 0, g:n + g] - exact[g:n + g]).max()
        errs.append(err)
    rate = np.log2(errs[0] / errs[1])
    assert rate > order - 0.3, (errs, rate)


def test_linear_data_is_reproduced_exactly_by_stagger():
    # f(x) = x sampled at half-integer offsets must give 0 at the centre
    for order in (3, 5, 7, 9):
        g = weno.ghost_zones(order)
        n = 2 * g + 1
        faces = (np.arange(n + 1) - 0.5 - g)[None, None, :]
        out = weno.center_from_faces(faces, order, linear=True)
        assert abs(out[0, 0, 0, g]) < 1e-13


@pytest.mark.parametrize("order", [3, 5, 7])
def test_face_moments_convergence_rate(order):
    """Averages -> center and edge-midpoint values at the design order."""
    errs_c, errs_m = [], []
    for n in (16, 32):
        h = 1.0 / n
        g = weno.ghost_zones(order)
        idx = np.arange(-g, n + g)
        xg, wg = np.polynomial.legendre.leggauss(6)
        nodes = idx[:, None] + 0.5 * xg[None, :] + 0.5
        sx = (np.sin(2 * np.pi * nodes * h) * wg[None, :]).sum(1) * 0.5
        cy = (np.cos(2 * np.pi * nodes * h) * wg[None, :]).sum(1) * 0.5
        data = sx[:, None] * cy[None, :]
        out = weno.face_moments(data[None], order)
        xc = (idx + 0.5) * h
        exact_c = np.sin(2 * np.pi * xc)[:, None] * np.cos(
            2 * np.pi * xc)[None, :]
        exact_m = np.sin(2 * np.pi * (xc + 0.5 * h))[:, None] * np.cos(
            2 * np.pi * xc)[None, :]
        errs_c.append(np.abs(out[0, 0, g:-g, g:-g]
                             - exact_c[g:-g, g:-g]).max())
        errs_m.append(np.abs(out[0, 2, g:-g, g:-g]
                             - exact_m[g:-g, g:-g]).max())
    assert np.log2(errs_c[0] / errs_c[1]) > order - 0.3, errs_c
    assert np.log2(errs_m[0] / errs_m[1]) > order - 0.3, errs_m
