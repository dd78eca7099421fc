"""Checks for the edge-centered 2D Riemann solvers.

The closed-form resolved fields are compared against an independent route
(textbook two-state HLL fans fed into the boundary integrals of the
strongly interacting state, see oracles.corner_state_integrals), against
their printed single-speed reductions, against the one-dimensional limits,
and against a plain scalar if/elif rendering of the supersonic cascade.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ctweno.riemann2d import (
    DegenerateFanError,
    EdgeRiemannInput,
    WaveSpeeds,
    dispatch_branch,
    edge_electric_field,
    hll_strong_state,
    llf_edge,
    resolved_1d,
)


def random_inputs(rng, n, scale=None):
    """Eight independent input fields with per-case magnitudes 1e-2..1e2."""
    if scale is None:
        scale = 10.0 ** rng.uniform(-2.0, 2.0, size=n)

    def draw():
        return scale * rng.standard_normal(n)

    return EdgeRiemannInput(e_ru=draw(), e_lu=draw(), e_ld=draw(),
                            e_rd=draw(), b_nu=draw(), b_nd=draw(),
                            b_tr=draw(), b_tl=draw())


def speeds_in_regime(rng, n, x_regime="straddle", y_regime="straddle"):
    """Random ordered speeds confined to one cell of the sign-pattern grid.

    Regimes per direction: "straddle" (lo < 0 < hi), "plus" (0 <= lo) and
    "minus" (hi <= 0).
    """
    mag = 10.0 ** rng.uniform(-1.0, 1.0, size=n)

    def pair(regime):
        a = mag * rng.uniform(0.05, 1.0, size=n)
        b = mag * rng.uniform(0.05, 1.0, size=n)
        if regime == "straddle":
            return -a, b
        if regime == "plus":
            return a, a + b
        if regime == "minus":
            return -(a + b), -a
        raise ValueError(regime)

    s_l, s_r = pair(x_regime)
    s_d, s_u = pair(y_regime)
    return WaveSpeeds(s_l=s_l, s_r=s_r, s_d=s_d, s_u=s_u)


# Which cascade branch each regime cell must select, and the value the
# solver has to return there.  "star" entries name a 1D resolved side.
REGIME_TABLE = {
    ("plus", "plus"): (0, "e_ld"),
    ("minus", "plus"): (1, "e_rd"),
    ("minus", "minus"): (2, "e_ru"),
    ("plus", "minus"): (3, "e_lu"),
    ("plus", "straddle"): (4, "star:l"),
    ("minus", "straddle"): (5, "star:r"),
    ("straddle", "plus"): (6, "star:d"),
    ("straddle", "minus"): (7, "star:u"),
    ("straddle", "straddle"): (8, "strong"),
}


def case_scale(q, speeds):
    e_mag = np.max(np.abs(np.stack([q.e_ru, q.e_lu, q.e_ld, q.e_rd])), axis=0)
    b_mag = np.max(np.abs(np.stack([q.b_nu, q.b_nd, q.b_tr, q.b_tl])), axis=0)
    s_mag = np.max(np.abs(np.stack([speeds.s_l * np.ones_like(e_mag),
                                    speeds.s_r * np.ones_like(e_mag),
                                    speeds.s_d * np.ones_like(e_mag),
                                    speeds.s_u * np.ones_like(e_mag)])), axis=0)
    return e_mag + s_mag * b_mag + 1e-300


def oracle_fields(q, speeds):
    return oracles.corner_state_integrals(
        q.e_ru, q.e_lu, q.e_ld, q.e_rd, q.b_nd, q.b_nu, q.b_tl, q.b_tr,
        speeds.s_l, speeds.s_r, speeds.s_d, speeds.s_u)


def uniform_case(e0=1.7, b_n=0.4, b_t=-2.2):
    return EdgeRiemannInput(e_ru=e0, e_lu=e0, e_ld=e0, e_rd=e0,
                            b_nu=b_n, b_nd=b_n, b_tr=b_t, b_tl=b_t)


def test_uniform_state_is_transparent():
    q = uniform_case()
    spd = WaveSpeeds(s_l=-1.0, s_r=2.0, s_d=-0.5, s_u=0.8)
    sym = WaveSpeeds.symmetric(1.3)
    for side, b_ref in (("u", -2.2), ("d", -2.2), ("r", 0.4), ("l", 0.4)):
        for speeds, mode in ((spd, "hll"), (sym, "llf")):
            b, e = resolved_1d(q, speeds, side, mode)
            assert b == pytest.approx(b_ref, abs=1e-14)
            assert e == pytest.approx(1.7, abs=1e-14)
    e, b_n, b_t = llf_edge(q, 1.3)
    assert (e, b_n, b_t) == pytest.approx((1.7, 0.4, -2.2), abs=1e-14)
    b_n, b_t, e_1, e_2 = hll_strong_state(q, spd)
    assert (b_n, b_t) == pytest.approx((0.4, -2.2), abs=1e-14)
    assert e_1 == pytest.approx(1.7, abs=1e-14)
    assert e_2 == pytest.approx(1.7, abs=1e-14)
    assert edge_electric_field(q, spd, "hll") == pytest.approx(1.7, abs=1e-14)
    assert edge_electric_field(q, sym, "llf") == pytest.approx(1.7, abs=1e-14)


def test_single_speed_upper_fan_by_hand():
    # s = 1, upper-fan inputs e_lu = 0, e_ru = 2, b_tl = 0, b_tr = 1:
    # the resolved field is (0 + 2)/2 + 1*(1 - 0)/2 = 1.5.
    q = EdgeRiemannInput(e_ru=2.0, e_lu=0.0, e_ld=5.0, e_rd=-3.0,
                         b_nu=0.7, b_nd=-0.2, b_tr=1.0, b_tl=0.0)
    b, e = resolved_1d(q, WaveSpeeds.symmetric(1.0), "u", "llf")
    assert e == pytest.approx(1.5, abs=1e-15)
    assert b == pytest.approx(0.5 + 2.0 / 2.0, abs=1e-15)


def test_resolved_1d_matches_textbook_hll():
    rng = np.random.default_rng(20240817)
    n = 4000
    q = random_inputs(rng, n)
    spd = speeds_in_regime(rng, n)
    tol = 1e-13 * case_scale(q, spd)
    # Side u/d: fan between the left and right states, conserved quantity
    # b_t, flux -e.  Side r/l: fan between down and up, quantity b_n,
    # flux +e.
    cases = {
        "u": (q.b_tl, q.b_tr, -q.e_lu, -q.e_ru, spd.s_l, spd.s_r, -1.0),
        "d": (q.b_tl, q.b_tr, -q.e_ld, -q.e_rd, spd.s_l, spd.s_r, -1.0),
        "r": (q.b_nd, q.b_nu, q.e_rd, q.e_ru, spd.s_d, spd.s_u, 1.0),
        "l": (q.b_nd, q.b_nu, q.e_ld, q.e_lu, spd.s_d, spd.s_u, 1.0),
    }
    for side, (u_lo, u_hi, f_lo, f_hi, s_lo, s_hi, sign) in cases.items():
        u_mid, f_mid = oracles.hll_middle(u_lo, u_hi, f_lo, f_hi, s_lo, s_hi)
        b, e = resolved_1d(q, spd, side)
        assert np.all(np.abs(b - u_mid) <= tol), side
        assert np.all(np.abs(e - sign * f_mid) <= tol), side


def test_single_speed_reductions_agree():
    rng = np.random.default_rng(5)
    n = 4000
    q = random_inputs(rng, n)
    s = 10.0 ** rng.uniform(-1.0, 1.0, size=n)
    spd = WaveSpeeds.symmetric(s)
    tol = 1e-14 * case_scale(q, spd)
    for side in "udrl":
        b_llf, e_llf = resolved_1d(q, spd, side, "llf")
        b_hll, e_hll = resolved_1d(q, spd, side, "hll")
        assert np.all(np.abs(b_llf - b_hll) <= tol)
        assert np.all(np.abs(e_llf - e_hll) <= tol)
    assert np.array_equal(edge_electric_field(q, spd, "llf"),
                          llf_edge(q, s)[0])


def test_llf_edge_matches_boundary_integrals():
    rng = np.random.default_rng(99)
    n = 4000
    q = random_inputs(rng, n)
    s = 10.0 ** rng.uniform(-1.0, 1.0, size=n)
    spd = WaveSpeeds.symmetric(s)
    ref = oracle_fields(q, spd)
    tol = 1e-14 * case_scale(q, spd)
    e, b_n, b_t = llf_edge(q, s)
    assert np.all(np.abs(e - ref["e_from_x"]) <= tol)
    assert np.all(np.abs(e - ref["e_from_y"]) <= tol)
    assert np.all(np.abs(b_n - ref["b_x"]) <= tol)
    assert np.all(np.abs(b_t - ref["b_y"]) <= tol)


def test_strong_state_matches_boundary_integrals():
    rng = np.random.default_rng(7)
    n = 4000
    q = random_inputs(rng, n)
    spd = speeds_in_regime(rng, n)
    ref = oracle_fields(q, spd)
    tol = 1e-13 * case_scale(q, spd)
    b_n, b_t, e_1, e_2 = hll_strong_state(q, spd)
    assert np.all(np.abs(b_n - ref["b_x"]) <= tol)
    assert np.all(np.abs(b_t - ref["b_y"]) <= tol)
    assert np.all(np.abs(e_1 - ref["e_from_x"]) <= tol)
    assert np.all(np.abs(e_2 - ref["e_from_y"]) <= tol)
    avg = 0.5 * (e_1 + e_2)
    assert np.all(np.abs(edge_electric_field(q, spd) - avg) <= tol)


def test_asymmetric_speeds_reverted_to_single_speed():
    rng = np.random.default_rng(11)
    n = 4000
    q = random_inputs(rng, n)
    s = 10.0 ** rng.uniform(-1.0, 1.0, size=n)
    spd = WaveSpeeds.symmetric(s)
    tol = 1e-13 * case_scale(q, spd)
    _, _, e_1, e_2 = hll_strong_state(q, spd)
    e_ref = llf_edge(q, s)[0]
    assert np.all(np.abs(e_1 - e_ref) <= tol)
    assert np.all(np.abs(e_2 - e_ref) <= tol)


def test_one_dimensional_limits_single_speed():
    rng = np.random.default_rng(13)
    n = 1000
    s = 10.0 ** rng.uniform(-1.0, 1.0, size=n)
    e_l, e_r = rng.standard_normal(n), rng.standard_normal(n)
    b_lo, b_hi = rng.standard_normal(n), rng.standard_normal(n)
    b_same = rng.standard_normal(n)
    # No variation between up and down: the edge field is the 1D value of
    # the left-right fan.
    q = EdgeRiemannInput(e_ru=e_r, e_lu=e_l, e_ld=e_l, e_rd=e_r,
                         b_nu=b_same, b_nd=b_same, b_tr=b_hi, b_tl=b_lo)
    want = 0.5 * (e_l + e_r) + 0.5 * s * (b_hi - b_lo)
    got = llf_edge(q, s)[0]
    assert np.all(np.abs(got - want) <= 1e-14 * (np.abs(want) + 1.0))
    # No variation between left and right: the 1D value of the down-up fan.
    q = EdgeRiemannInput(e_ru=e_r, e_lu=e_r, e_ld=e_l, e_rd=e_l,
                         b_nu=b_hi, b_nd=b_lo, b_tr=b_same, b_tl=b_same)
    want = 0.5 * (e_l + e_r) + 0.5 * s * (b_lo - b_hi)
    got = llf_edge(q, s)[0]
    assert np.all(np.abs(got - want) <= 1e-14 * (np.abs(want) + 1.0))


def test_planar_reduction_hll():
    rng = np.random.default_rng(17)
    n = 600
    for x_regime in ("straddle", "plus", "minus"):
        for y_regime in ("straddle", "plus", "minus"):
            spd = speeds_in_regime(rng, n, x_regime, y_regime)
            e_l, e_r = rng.standard_normal(n), rng.standard_normal(n)
            e_d, e_u = rng.standard_normal(n), rng.standard_normal(n)
            b_lo, b_hi = rng.standard_normal(n), rng.standard_normal(n)
            b_same = rng.standard_normal(n)

            # Variation only across the left-right fan.
            q = EdgeRiemannInput(e_ru=e_r, e_lu=e_l, e_ld=e_l, e_rd=e_r,
                                 b_nu=b_same, b_nd=b_same,
                                 b_tr=b_hi, b_tl=b_lo)
            w = np.where(spd.dxi > 0, spd.dxi, 1.0)
            mid = (spd.s_r * e_l - spd.s_l * e_r
                   - spd.s_r * spd.s_l * (b_hi - b_lo)) / w
            want = np.where(spd.s_l >= 0, e_l,
                            np.where(spd.s_r <= 0, e_r, mid))
            got = edge_electric_field(q, spd)
            tol = 1e-13 * case_scale(q, spd)
            assert np.all(np.abs(got - want) <= tol), (x_regime, y_regime)

            # Variation only across the down-up fan.
            q = EdgeRiemannInput(e_ru=e_u, e_lu=e_u, e_ld=e_d, e_rd=e_d,
                                 b_nu=b_hi, b_nd=b_lo,
                                 b_tr=b_same, b_tl=b_same)
            w = np.where(spd.dpsi > 0, spd.dpsi, 1.0)
            mid = (spd.s_u * e_d - spd.s_d * e_u
                   + spd.s_u * spd.s_d * (b_hi - b_lo)) / w
            want = np.where(spd.s_d >= 0, e_d,
                            np.where(spd.s_u <= 0, e_u, mid))
            got = edge_electric_field(q, spd)
            tol = 1e-13 * case_scale(q, spd)
            assert np.all(np.abs(got - want) <= tol), (x_regime, y_regime)


@pytest.mark.parametrize("x_regime,y_regime", list(REGIME_TABLE))
def test_cascade_selects_the_regime_value(x_regime, y_regime):
    rng = np.random.default_rng(hash((x_regime, y_regime)) % 2**32)
    n = 500
    q = random_inputs(rng, n)
    spd = speeds_in_regime(rng, n, x_regime, y_regime)
    branch, value = REGIME_TABLE[(x_regime, y_regime)]
    assert np.all(dispatch_branch(spd) == branch)
    got = edge_electric_field(q, spd)
    if value.startswith("e_"):
        want = getattr(q, value)
    elif value.startswith("star:"):
        want = resolved_1d(q, spd, value.split(":")[1])[1]
    else:
        _, _, e_1, e_2 = hll_strong_state(q, spd)
        want = 0.5 * (e_1 + e_2)
    assert np.array_equal(got, want)


finite = st.floats(min_value=-4.0, max_value=4.0)


@settings(max_examples=300, deadline=None)
@given(sx=st.tuples(finite, finite), sy=st.tuples(finite, finite),
       vals=st.tuples(*[finite] * 8))
def test_cascade_matches_scalar_if_chain(sx, sy, vals):
    s_l, s_r = sorted(sx)
    s_d, s_u = sorted(sy)
    q = EdgeRiemannInput(*vals)
    spd = WaveSpeeds(s_l=s_l, s_r=s_r, s_d=s_d, s_u=s_u)

    if s_l >= 0 and s_d >= 0:
        want, branch = q.e_ld, 0
    elif s_r <= 0 and s_d >= 0:
        want, branch = q.e_rd, 1
    elif s_r <= 0 and s_u <= 0:
        want, branch = q.e_ru, 2
    elif s_l >= 0 and s_u <= 0:
        want, branch = q.e_lu, 3
    elif s_l >= 0:
        want, branch = resolved_1d(q, spd, "l")[1], 4
    elif s_r <= 0:
        want, branch = resolved_1d(q, spd, "r")[1], 5
    elif s_d >= 0:
        want, branch = resolved_1d(q, spd, "d")[1], 6
    elif s_u <= 0:
        want, branch = resolved_1d(q, spd, "u")[1], 7
    else:
        _, _, e_1, e_2 = hll_strong_state(q, spd)
        want, branch = 0.5 * (e_1 + e_2), 8

    assert dispatch_branch(spd) == branch
    assert float(edge_electric_field(q, spd)) == float(want)


def test_constant_offset_rides_through_every_regime():
    rng = np.random.default_rng(23)
    n = 300
    for regimes in REGIME_TABLE:
        q = random_inputs(rng, n, scale=1.0)
        spd = speeds_in_regime(rng, n, *regimes)
        c = 3.7
        q_off = EdgeRiemannInput(e_ru=q.e_ru + c, e_lu=q.e_lu + c,
                                 e_ld=q.e_ld + c, e_rd=q.e_rd + c,
                                 b_nu=q.b_nu, b_nd=q.b_nd,
                                 b_tr=q.b_tr, b_tl=q.b_tl)
        base = edge_electric_field(q, spd)
        shifted = edge_electric_field(q_off, spd)
        tol = 1e-13 * (case_scale(q, spd) + c)
        assert np.all(np.abs(shifted - (base + c)) <= tol), regimes
    q = random_inputs(rng, n, scale=1.0)
    s = np.full(n, 2.0)
    q_off = EdgeRiemannInput(e_ru=q.e_ru + 3.7, e_lu=q.e_lu + 3.7,
                             e_ld=q.e_ld + 3.7, e_rd=q.e_rd + 3.7,
                             b_nu=q.b_nu, b_nd=q.b_nd,
                             b_tr=q.b_tr, b_tl=q.b_tl)
    assert np.all(np.abs(llf_edge(q_off, s)[0] - llf_edge(q, s)[0] - 3.7)
                  <= 1e-13 * (case_scale(q, WaveSpeeds.symmetric(s)) + 3.7))


def test_degenerate_fans_raise_only_where_they_matter():
    q = uniform_case()
    flat_x = WaveSpeeds(s_l=1.0, s_r=1.0, s_d=-1.0, s_u=1.0)
    with pytest.raises(DegenerateFanError):
        resolved_1d(q, flat_x, "u")
    with pytest.raises(DegenerateFanError):
        hll_strong_state(q, flat_x)
    # The cascade never divides by the collapsed fan here: both speeds are
    # positive, so a one-sided branch fires.
    assert edge_electric_field(q, flat_x) == pytest.approx(1.7)
    frozen = WaveSpeeds(s_l=0.0, s_r=0.0, s_d=0.0, s_u=0.0)
    with pytest.raises(DegenerateFanError):
        hll_strong_state(q, frozen)
    assert edge_electric_field(q, frozen) == q.e_ld
    # l/r sides only need the down-up fan, which is open.
    b, e = resolved_1d(q, flat_x, "l")
    assert e == pytest.approx(1.7)


def test_bad_arguments_are_rejected():
    q = uniform_case()
    with pytest.raises(ValueError):
        WaveSpeeds(s_l=1.0, s_r=0.0, s_d=-1.0, s_u=1.0)
    with pytest.raises(ValueError):
        llf_edge(q, 0.0)
    with pytest.raises(ValueError):
        llf_edge(q, -1.0)
    spd = WaveSpeeds(s_l=-1.0, s_r=2.0, s_d=-1.0, s_u=1.0)
    with pytest.raises(ValueError):
        edge_electric_field(q, spd, "llf")
    with pytest.raises(ValueError):
        resolved_1d(q, spd, "x")
    with pytest.raises(ValueError):
        resolved_1d(q, spd, "u", mode="roe")
    with pytest.raises(ValueError):
        edge_electric_field(q, spd, mode="roe")


def test_identity_battery_ten_thousand_cases():
    """The wide random sweep: single-speed consistency, boundary-integral
    agreement, and one-branch-per-case over the full regime grid."""
    rng = np.random.default_rng(2024)
    n = 10_000

    # (a) symmetric speeds: the strongly interacting average must equal
    # the single-speed closed form.
    q = random_inputs(rng, n)
    s = 10.0 ** rng.uniform(-1.0, 1.0, size=n)
    sym = WaveSpeeds.symmetric(s)
    tol = 1e-13 * case_scale(q, sym)
    assert np.all(np.abs(edge_electric_field(q, sym) - llf_edge(q, s)[0])
                  <= tol)

    # (b) subsonic speeds: all resolved fields agree with the
    # boundary-integral route.
    q = random_inputs(rng, n)
    spd = speeds_in_regime(rng, n)
    ref = oracle_fields(q, spd)
    tol = 1e-13 * case_scale(q, spd)
    b_n, b_t, e_1, e_2 = hll_strong_state(q, spd)
    assert np.all(np.abs(b_n - ref["b_x"]) <= tol)
    assert np.all(np.abs(b_t - ref["b_y"]) <= tol)
    assert np.all(np.abs(e_1 - ref["e_from_x"]) <= tol)
    assert np.all(np.abs(e_2 - ref["e_from_y"]) <= tol)

    # (c) every case lands in exactly one regime cell and the dispatch
    # picks that cell's branch.
    per = n // 9 + 1
    for regimes, (branch, _) in REGIME_TABLE.items():
        spd = speeds_in_regime(rng, per, *regimes)
        assert np.all(dispatch_branch(spd) == branch), regimes
