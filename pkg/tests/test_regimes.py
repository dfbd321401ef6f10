"""Regime maps and threshold inversions."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nearband.constants import SPEED_OF_LIGHT_M_S as C
from nearband.fresnel import GammaPair, gain_closed_form
from nearband.regimes import (
    NoCrossingError,
    Regime,
    ThresholdSpec,
    _march_grid,
    aperture_bandwidth_bound,
    band_distance,
    bmax,
    effective_rayleigh_distance,
    fbar_from_gamma,
    fraunhofer_distance,
    gamma_from_regime,
    main_lobe_boundary,
    product_max,
    rbar_from_gamma,
)

from _oracles import sinc_threshold_root


def _db(db):
    return 10.0 ** (db / 10.0)


def _clear_caches():
    product_max.cache_clear()
    _march_grid.cache_clear()


# ---------------------------------------------------------------------------
# forward / inverse maps
# ---------------------------------------------------------------------------

def test_gamma_map_special_cases():
    no_offset = Regime(0.0, 300.0, 0.5, 32.0, 0.7)
    assert gamma_from_regime(no_offset).gamma1 == 0.0
    broadside = Regime(0.03, 250.0, 0.5, 32.0, 0.0)
    pair = gamma_from_regime(broadside)
    assert pair.gamma1 == 0.0
    assert pair.gamma2 == pytest.approx(32.0 * math.sqrt(1.03 / 500.0), rel=1e-14)


regimes_strategy = st.builds(
    Regime,
    fbar=st.floats(min_value=-0.2, max_value=0.2).filter(lambda f: abs(f) > 1e-6),
    rbar=st.floats(min_value=1.0, max_value=1e6),
    dbar=st.just(0.5),
    lbar=st.floats(min_value=1.0, max_value=512.0),
    theta_rad=st.floats(min_value=-1.4, max_value=1.4).filter(lambda t: abs(t) > 1e-3),
)


@given(regimes_strategy)
def test_gamma_roundtrip(regime):
    pair = gamma_from_regime(regime)
    fbar = fbar_from_gamma(pair, regime.lbar, regime.theta_rad)
    rbar = rbar_from_gamma(fbar, pair.gamma2, regime.lbar, regime.theta_rad)
    assert fbar == pytest.approx(regime.fbar, abs=1e-12, rel=1e-12)
    assert rbar == pytest.approx(regime.rbar, rel=1e-12)


@given(regimes_strategy)
def test_fractional_bandwidth_identity(regime):
    # |f_B lbar sin(theta)| = |2 gamma1 gamma2| with f_B = |2 fbar|
    pair = gamma_from_regime(regime)
    lhs = abs(2.0 * regime.fbar * regime.lbar * math.sin(regime.theta_rad))
    rhs = abs(2.0 * pair.gamma1 * pair.gamma2)
    assert rhs == pytest.approx(lhs, rel=1e-12, abs=1e-15)


def test_fbar_example_and_singularity():
    pair = GammaPair(1.0, 0.3654)
    got = fbar_from_gamma(pair, 32.0, math.radians(60))
    assert got == pytest.approx(-0.3654 / (32.0 * math.sin(math.radians(60))), rel=1e-12)
    assert got == pytest.approx(-0.01319, abs=5e-6)
    with pytest.raises(ValueError):
        fbar_from_gamma(pair, 32.0, 0.0)


def test_rbar_examples():
    lbar = 32.0
    assert rbar_from_gamma(0.0, 0.5, lbar, 0.0) == pytest.approx(2.0 * lbar**2, rel=1e-14)
    assert rbar_from_gamma(0.1, 1.0, lbar, 0.3) == pytest.approx(
        4.0 * rbar_from_gamma(0.1, 2.0, lbar, 0.3), rel=1e-14)
    assert rbar_from_gamma(0.02, 0.8, 32.0, math.radians(60)) == pytest.approx(204.0, rel=1e-12)
    assert rbar_from_gamma(0.0, 0.0, lbar, 0.0) == math.inf


def test_regime_validation():
    with pytest.raises(ValueError):
        Regime(-1.5, 10.0, 0.5, 32.0, 0.0)
    with pytest.raises(ValueError):
        Regime(0.0, -1.0, 0.5, 32.0, 0.0)
    with pytest.raises(ValueError):
        Regime(0.0, 10.0, 0.5, 0.25, 0.0)
    with pytest.raises(ValueError):
        Regime(0.0, 10.0, 0.5, 32.0, 2.0)


def test_threshold_spec():
    spec = ThresholdSpec(0.5)
    assert spec.tau_db == pytest.approx(-3.0103, abs=1e-4)
    assert ThresholdSpec.from_db(-1.0).tau_linear == pytest.approx(_db(-1.0), rel=1e-14)
    with pytest.raises(ValueError):
        ThresholdSpec(0.0)
    with pytest.raises(ValueError):
        ThresholdSpec(1.5)


# ---------------------------------------------------------------------------
# product_max and the derived bounds
# ---------------------------------------------------------------------------

def test_product_max_reference_constants():
    assert product_max(_db(-2.0)) == pytest.approx(0.5044, abs=0.005)
    assert product_max(_db(-1.0)) == pytest.approx(0.3654, abs=0.005)


def test_product_max_against_sinc_oracle():
    # the boundary product approaches the far-field squint root as gamma2 -> 0;
    # for these thresholds that edge is where the supremum lives
    for db in (-2.0, -1.0, -0.5):
        tau = _db(db)
        assert product_max(tau) == pytest.approx(sinc_threshold_root(tau), abs=1e-3)
    # at deeper thresholds the region bulges at moderate gamma2 and the
    # supremum exceeds the far-field limit; the root is then a lower bound
    tau3 = _db(-3.0)
    assert product_max(tau3) >= sinc_threshold_root(tau3) - 1e-9


def test_product_max_monotone_and_vanishing():
    taus = [_db(d) for d in (-3.0, -2.0, -1.0, -0.5, -0.1)]
    values = [product_max(t) for t in taus]
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert product_max(0.9999) < 0.03


def test_product_max_domain_errors():
    with pytest.raises(ValueError):
        product_max(1.0)
    with pytest.raises(ValueError):
        product_max(0.0)


def test_product_max_deterministic():
    first = product_max(_db(-1.0))
    _clear_caches()
    second = product_max(_db(-1.0))
    assert first == second


def test_main_lobe_boundary_contract():
    tau = _db(-1.0)
    g2 = np.geomspace(1e-3, 6.0, 64)
    g1 = main_lobe_boundary(tau, g2)
    inside = np.isfinite(g1)
    gains = gain_closed_form(g1[inside], g2[inside])
    assert np.abs(gains - tau).max() <= 1e-6
    # outside columns are the ones whose on-axis gain is already below tau
    assert not inside.all()
    with pytest.raises(ValueError):
        main_lobe_boundary(1.2, g2)


def test_aperture_bandwidth_bound():
    tau = _db(-1.0)
    bound_90 = aperture_bandwidth_bound(tau, math.radians(90))
    assert bound_90 == pytest.approx(2.0 * C * product_max(tau), rel=1e-14)
    assert bound_90 == pytest.approx(2.192e8, rel=0.01)
    assert aperture_bandwidth_bound(tau, math.radians(30)) == pytest.approx(
        2.0 * bound_90, rel=1e-12)
    assert aperture_bandwidth_bound(tau, 0.0) == math.inf
    assert aperture_bandwidth_bound(_db(-0.5), math.radians(60)) <= \
        aperture_bandwidth_bound(_db(-1.5), math.radians(60))


def test_bmax_scaling_and_preset_value():
    tau = _db(-1.0)
    theta_w = math.radians(60)
    full = bmax(0.34, tau, theta_w)
    half = bmax(0.17, tau, theta_w)
    assert half == 2.0 * full
    assert full == pytest.approx(7.45e8, rel=0.01)
    taus = [_db(d) for d in (-2.0, -1.0, -0.3)]
    curve = [bmax(0.34, t, theta_w) for t in taus]
    assert curve[0] > curve[1] > curve[2]
    with pytest.raises(ValueError):
        bmax(0.0, tau, theta_w)


# ---------------------------------------------------------------------------
# band_distance
# ---------------------------------------------------------------------------

def _gain_at_distance(r_m, f_hz, fc_hz, aperture_m, theta_rad):
    # independent re-derivation through the gamma maps
    lam = C / fc_hz
    lbar = aperture_m / lam
    fbar = f_hz / fc_hz
    rbar = r_m / lam
    g2 = lbar * math.cos(theta_rad) * math.sqrt((1.0 + fbar) / (2.0 * rbar))
    g1 = -fbar * lbar * math.sin(theta_rad) / g2
    return gain_closed_form(g1, g2)


def test_band_distance_rayleigh_level():
    fc = 39e9
    lam = C / fc
    aperture = 32.0 * lam
    for theta_deg in (0.0, 30.0, 60.0):
        theta = math.radians(theta_deg)
        got = band_distance(0.0, fc, 0.95, aperture, theta)
        want = effective_rayleigh_distance(theta, 32.0, lam)
        assert got == pytest.approx(want, rel=0.02)


def test_band_distance_fraunhofer_level():
    fc = 39e9
    lam = C / fc
    aperture = 32.0 * lam
    got = band_distance(0.0, fc, 0.99317, aperture, 0.0)
    assert got == pytest.approx(fraunhofer_distance(32.0, lam), rel=0.02)


def test_band_distance_decreases_with_looser_threshold():
    fc = 39e9
    aperture = 32.0 * C / fc
    theta = math.radians(45)
    taus = (0.99, 0.97, 0.95, 0.9, 0.8)
    dists = [band_distance(0.0, fc, t, aperture, theta) for t in taus]
    assert all(a > b for a, b in zip(dists, dists[1:]))


def test_band_distance_divergence_sentinel():
    fc = 39e9
    aperture = 32.0 * C / fc
    theta = math.radians(60)
    tau = _db(-1.0)
    cap = bmax(aperture, tau, theta)
    assert math.isinf(band_distance(0.55 * cap, fc, tau, aperture, theta))
    assert math.isfinite(band_distance(0.45 * cap, fc, tau, aperture, theta))


def test_band_distance_quantifier_spot_check():
    rng = np.random.default_rng(23)
    fc = 39e9
    lam = C / fc
    checked = 0
    while checked < 50:
        n = int(rng.choice([64, 128, 256]))
        aperture = n * 0.5 * lam
        theta = float(rng.uniform(-1.2, 1.2))
        tau = float(rng.uniform(0.6, 0.99))
        cap = bmax(aperture, tau, theta) if theta else math.inf
        f = float(rng.uniform(-0.4, 0.4)) * (cap / 2 if math.isfinite(cap) else 0.2 * fc)
        dist = band_distance(f, fc, tau, aperture, theta)
        if not math.isfinite(dist):
            continue
        assert _gain_at_distance(2.0 * dist, f, fc, aperture, theta) >= tau - 1e-9
        checked += 1


def test_band_distance_validation():
    fc = 39e9
    aperture = 0.2
    with pytest.raises(ValueError):
        band_distance(0.0, fc, 1.5, aperture, 0.0)
    with pytest.raises(ValueError):
        band_distance(-2 * fc, fc, 0.9, aperture, 0.0)
    with pytest.raises(ValueError):
        band_distance(0.0, -1.0, 0.9, aperture, 0.0)
    with pytest.raises(ValueError):
        band_distance(0.0, fc, 0.9, aperture, 1.6)


def test_band_distance_deterministic():
    fc = 28e9
    aperture = 64.0 * 0.5 * C / fc
    a = band_distance(2e8, fc, 0.9, aperture, 0.5)
    b = band_distance(2e8, fc, 0.9, aperture, 0.5)
    assert a == b


# ---------------------------------------------------------------------------
# classical distances
# ---------------------------------------------------------------------------

def test_effective_rayleigh_distance_values():
    lam = 0.010707
    assert effective_rayleigh_distance(0.0, 32.0, lam) == pytest.approx(8.05, abs=0.01)
    broadside = effective_rayleigh_distance(0.0, 32.0, lam)
    at60 = effective_rayleigh_distance(math.radians(60), 32.0, lam)
    assert at60 == pytest.approx(broadside / 4.0, rel=1e-6)


def test_fraunhofer_distance_values():
    lam28 = C / 28e9
    assert fraunhofer_distance(64.0, lam28) == pytest.approx(87.7, abs=0.5)
    assert fraunhofer_distance(64.0, lam28) == pytest.approx(
        4.0 * fraunhofer_distance(32.0, lam28), rel=1e-14)
    lam39 = C / 39e9
    assert fraunhofer_distance(32.0, lam39) == pytest.approx(2048 * 0.0076870, abs=0.01)


def test_no_crossing_error_raised(monkeypatch):
    # cap the search at the first window; a threshold below every null depth
    # then has no crossing to find
    import nearband.regimes as regimes_mod
    monkeypatch.setattr(regimes_mod, "_PRODUCT_LIMIT", regimes_mod._PRODUCT_WINDOW)
    with pytest.raises(NoCrossingError):
        regimes_mod._march_brackets(1e-9, np.array([0.5]))
