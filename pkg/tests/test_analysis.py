import math

import numpy as np
import pytest

from ofdmradar import (
    ArrayGeometry,
    PointingEstimate,
    RadarParams,
    RangeProfile,
    cp_profile,
    cp_profile_trials,
    empirical_error_snr,
    empirical_noise_variance,
    empirical_snr,
    max_snr,
    periodicity_check,
    point_scene,
    pointing_weights,
    predicted_snr,
    pslr_db,
    snr_error,
)
from conftest import DOA, DOD


def flat_spectrum(n, m):
    rng = np.random.default_rng(n + m)
    return np.sqrt(m) * np.exp(1j * rng.uniform(0, 2 * np.pi, n))


def test_predicted_snr_flat_reference(ref_params):
    b = flat_spectrum(512, 4)
    snr = predicted_snr(1.0, 1.0, b, n_rx=4)
    assert snr == pytest.approx(8192.0, rel=1e-9)
    assert 10 * math.log10(snr) == pytest.approx(39.13, abs=0.01)
    assert snr == pytest.approx(max_snr(1.0, 1.0, ref_params), rel=1e-12)


def test_predicted_snr_all_unit():
    assert predicted_snr(1.0, 1.0, np.array([1.0 + 0j]), n_rx=1) == pytest.approx(1.0)


def test_predicted_snr_validation():
    with pytest.raises(ValueError):
        predicted_snr(1.0, 0.0, np.ones(4), n_rx=1)
    with pytest.raises(ValueError):
        predicted_snr(1.0, 1.0, np.array([1.0, 0.0]), n_rx=1)


def test_flat_spectrum_is_optimal():
    # Among spectra with the same total energy, the flat one minimizes the
    # reconstruction noise; every random perturbation must lose SNR.
    rng = np.random.default_rng(99)
    n, m = 64, 4
    best = predicted_snr(1.0, 1.0, flat_spectrum(n, m), n_rx=2)
    for _ in range(1000):
        power = rng.uniform(0.05, 1.0, n)
        power *= (m * n) / power.sum()
        b = np.sqrt(power) * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
        assert predicted_snr(1.0, 1.0, b, n_rx=2) < best


def test_zero_error_weights(ref_params, ref_system):
    geom, _, _ = ref_system
    report = pointing_weights(
        geom, ref_params, DOD, DOA, PointingEstimate(DOD, DOA)
    )
    assert report.q_tilde == pytest.approx(4.0)
    assert report.m_tilde == pytest.approx(4.0)
    np.testing.assert_allclose(report.weights, [1, 0, 0, 0], atol=1e-14)
    assert report.snr_loss_db == pytest.approx(0.0, abs=1e-12)


def test_engineered_total_cancellation():
    # Two transmit elements a full wavelength apart with sin(est) - sin(true)
    # = 1/2 put the element phasors at 0 and pi, cancelling the zone weight.
    params = RadarParams(3e9, 50e6, 8, 2, 1)
    geom = ArrayGeometry(tx_offsets=[0.0, 0.1], rx_offsets=[0.0])
    report = pointing_weights(
        geom, params, 0.0, 0.0, PointingEstimate(np.radians(30.0), 0.0)
    )
    assert abs(report.m_tilde) < 1e-12
    assert abs(report.weights[0]) < 1e-12
    assert abs(report.weights[1]) == pytest.approx(1.0, abs=1e-12)
    assert report.snr_loss_db > 300.0  # total cancellation up to rounding


def test_loss_grows_with_error_and_antennas(ref_params):
    losses = []
    for m, q in [(4, 4), (8, 8)]:
        params = RadarParams(3e9, 50e6, 512, m, q)
        geom = ArrayGeometry(
            tx_offsets=0.05 * np.arange(m), rx_offsets=0.05 * np.arange(q)
        )
        row = []
        for err_deg in [0.5, 1.0, 2.0, 4.0]:
            delta = np.radians(err_deg)
            report = pointing_weights(
                geom, params, DOD, DOA, PointingEstimate(DOD + delta, DOA + delta)
            )
            row.append(report.snr_loss_db)
        assert all(b > a > 0 for a, b in zip(row, row[1:]))
        losses.append(row)
    assert all(big > small for small, big in zip(losses[0], losses[1]))


def test_snr_error_identity(ref_params, ref_system):
    geom, _, _ = ref_system
    rng = np.random.default_rng(31)
    for _ in range(20):
        est = PointingEstimate(
            DOD + rng.uniform(-0.1, 0.1), DOA + rng.uniform(-0.1, 0.1)
        )
        report = pointing_weights(geom, ref_params, DOD, DOA, est)
        err = snr_error(report, 1.0, 1.0, ref_params)
        top = max_snr(1.0, 1.0, ref_params)
        expected_loss = (4.0**2 * 4.0**2) / (
            abs(report.q_tilde) ** 2 * abs(report.m_tilde) ** 2
        )
        assert top / err == pytest.approx(expected_loss, rel=1e-12)
        assert report.snr_loss_db == pytest.approx(10 * math.log10(top / err), abs=1e-9)


def test_zero_error_snr_equals_max(ref_params, ref_system):
    geom, _, _ = ref_system
    report = pointing_weights(geom, ref_params, DOD, DOA, PointingEstimate(DOD, DOA))
    assert snr_error(report, 1.0, 1.0, ref_params) == pytest.approx(
        max_snr(1.0, 1.0, ref_params), rel=1e-12
    )


def test_weights_invert_back_to_element_phasors(ref_params, ref_system):
    geom, _, _ = ref_system
    est = PointingEstimate(DOD + 0.03, DOA - 0.02)
    report = pointing_weights(geom, ref_params, DOD, DOA, est)
    # inverse comb mixing recovers (q_tilde/Q) * per-element error phasor
    recovered = np.fft.ifft(report.weights) * 4
    delay_err = geom.tx_offsets * (math.sin(est.dod_est) - math.sin(DOD)) / 3e8
    phasors = np.exp(2j * np.pi * ref_params.carrier_hz * delay_err)
    np.testing.assert_allclose(recovered, report.q_tilde / 4 * phasors, atol=1e-12)


def test_empirical_snr_needs_trials(ref_point_scene):
    profiles = [RangeProfile(h_hat=np.zeros(512)) for _ in range(99)]
    with pytest.raises(ValueError):
        empirical_snr(profiles, ref_point_scene, 40)
    with pytest.raises(ValueError):
        empirical_error_snr(profiles, 40)


def test_empirical_snr_noiseless_is_infinite(ref_params, ref_system, ref_point_scene):
    geom, weights, tx = ref_system
    profile = cp_profile(tx, weights, ref_point_scene, geom, ref_params)
    profiles = [profile] * 150
    assert empirical_snr(profiles, ref_point_scene, 40) == math.inf


def test_empirical_snr_tracks_prediction(ref_params, ref_system, ref_point_scene):
    geom, weights, tx = ref_system
    profiles = cp_profile_trials(
        tx, weights, ref_point_scene, geom, ref_params, 1.0, 12345, 200
    )
    snr_db = 10 * math.log10(empirical_snr(profiles, ref_point_scene, 40))
    assert snr_db == pytest.approx(39.13, abs=1.5)


def test_empty_cell_variance_tracks_prediction(ref_params, ref_system, ref_point_scene):
    geom, weights, tx = ref_system
    profiles = cp_profile_trials(
        tx, weights, ref_point_scene, geom, ref_params, 1.0, 777, 500
    )
    var = empirical_noise_variance(profiles, np.arange(61, 512))
    assert var == pytest.approx(1.0 / (4 * 4 * 512), rel=0.10)


def test_pslr_values():
    assert pslr_db([1.0, 0.1, 0.0], [0]) == pytest.approx(-20.0)
    assert pslr_db([0, 0, 1.0, 0], [2]) == -300.0
    with pytest.raises(ValueError):
        pslr_db([0.0, 0.0], [0])
    with pytest.raises(ValueError):
        pslr_db([1.0, 0.5], [])


def test_periodicity_gains_zero_error(ref_params, ref_system, ref_point_scene):
    geom, weights, tx = ref_system
    profile = cp_profile(tx, weights, ref_point_scene, geom, ref_params)
    gains = periodicity_check(profile, 128, 4, support=[40])
    assert gains[0] == pytest.approx(1.0)
    assert np.max(np.abs(gains[1:])) < 1e-9


def test_periodicity_gains_match_closed_form(ref_params, ref_system):
    geom, weights, tx = ref_system
    scene = point_scene(61, 40, 1.0, DOD, DOA)
    delta = np.radians(2.0)
    estimate = PointingEstimate(DOD + delta, DOA + delta)
    profile = cp_profile(tx, weights, scene, geom, ref_params, estimate=estimate)
    gains = periodicity_check(profile, 128, 4, support=[40])
    w = pointing_weights(geom, ref_params, DOD, DOA, estimate).weights
    expected = np.array([1.0, w[3] / w[0], w[2] / w[0], w[1] / w[0]])
    np.testing.assert_allclose(gains, expected, atol=1e-6)


def test_periodicity_noise_only_gains_are_small():
    rng = np.random.default_rng(8)
    h = rng.standard_normal(512) + 1j * rng.standard_normal(512)
    gains = periodicity_check(RangeProfile(h_hat=h), 128, 4)
    assert np.max(np.abs(gains[1:])) < 0.3


def test_periodicity_degenerate_reference():
    profile = RangeProfile(h_hat=np.zeros(512, dtype=complex))
    with pytest.raises(ValueError):
        periodicity_check(profile, 128, 4)
    with pytest.raises(ValueError):
        periodicity_check(RangeProfile(h_hat=np.ones(100)), 128, 4)
