import numpy as np
import pytest

from ofdmradar import (
    ArrayGeometry,
    RadarParams,
    Scene,
    WaveformConfig,
    apply_doppler_residue,
    build_system,
    complex_gaussian,
    design_subcarrier_weights,
    doppler_residue_hz,
    point_scene,
    simulate_rx,
    synthesize_tx,
)
from conftest import DOA, DOD, random_scene


def single_antenna_system(n=8, n_cells=2):
    params = RadarParams(3e9, 50e6, n, 1, 1)
    geom = ArrayGeometry(tx_offsets=[0.0], rx_offsets=[0.0])
    cfg = WaveformConfig.with_default_roots(n, 1, n_cells)
    tx = synthesize_tx(design_subcarrier_weights(cfg), n_cells)
    return params, geom, tx


def test_identity_channel():
    params, geom, tx = single_antenna_system(8, 1)
    scene = Scene(h=[1.0], dod=0.3, doa=-0.2)
    capture = simulate_rx(tx, scene, geom, params)
    assert np.array_equal(capture.samples[0], tx.sequences[0])


def test_pure_delay():
    params, geom, tx = single_antenna_system(8, 2)
    scene = Scene(h=[0.0, 1.0], dod=0.0, doa=0.0)
    capture = simulate_rx(tx, scene, geom, params)
    assert capture.samples.shape == (1, 8 + 2 * 2 - 2)
    np.testing.assert_allclose(capture.samples[0, 1:], tx.sequences[0], atol=0)
    assert capture.samples[0, 0] == 0


def test_reference_capture_length(ref_params, ref_system, ref_point_scene):
    geom, _, tx = ref_system
    capture = simulate_rx(tx, ref_point_scene, geom, ref_params)
    assert capture.samples.shape == (4, 512 + 2 * 61 - 2)


def test_superposition(ref_params, ref_system):
    geom, _, tx = ref_system
    rng = np.random.default_rng(3)
    scene = random_scene(61, rng)
    total = simulate_rx(tx, scene, geom, ref_params).samples
    parts = np.zeros_like(total)
    for cell in range(61):
        h = np.zeros(61, dtype=complex)
        h[cell] = scene.h[cell]
        parts += simulate_rx(
            tx, Scene(h=h, dod=scene.dod, doa=scene.doa), geom, ref_params
        ).samples
    np.testing.assert_allclose(parts, total, atol=1e-10)


def test_noise_is_the_seeded_generator_output(ref_params, ref_system, ref_point_scene):
    geom, _, tx = ref_system
    noisy = simulate_rx(tx, ref_point_scene, geom, ref_params, noise_power=1.0, seed=42)
    clean = simulate_rx(tx, ref_point_scene, geom, ref_params)
    diff = noisy.samples - clean.samples
    expected = complex_gaussian(diff.size, 1.0, 42).reshape(diff.shape)
    np.testing.assert_allclose(diff, expected, atol=1e-12)


def test_same_seed_reproduces_capture(ref_params, ref_system, ref_point_scene):
    geom, _, tx = ref_system
    a = simulate_rx(tx, ref_point_scene, geom, ref_params, noise_power=0.5, seed=9)
    b = simulate_rx(tx, ref_point_scene, geom, ref_params, noise_power=0.5, seed=9)
    assert np.array_equal(a.samples, b.samples)


def test_all_zero_scene_is_allowed(ref_params, ref_system):
    geom, _, tx = ref_system
    scene = Scene(h=np.zeros(61), dod=DOD, doa=DOA)
    capture = simulate_rx(tx, scene, geom, ref_params)
    assert np.all(capture.samples == 0)


def test_scene_length_mismatch_rejected(ref_params, ref_system):
    geom, _, tx = ref_system
    with pytest.raises(ValueError):
        simulate_rx(tx, point_scene(60, 10, 1.0, DOD, DOA), geom, ref_params)


def test_noise_requires_seed(ref_params, ref_system, ref_point_scene):
    geom, _, tx = ref_system
    with pytest.raises(ValueError):
        simulate_rx(tx, ref_point_scene, geom, ref_params, noise_power=1.0)
    with pytest.raises(ValueError):
        simulate_rx(tx, ref_point_scene, geom, ref_params, noise_power=-1.0, seed=1)


def test_doppler_zero_is_identity(ref_params, ref_system, ref_point_scene):
    geom, _, tx = ref_system
    capture = simulate_rx(tx, ref_point_scene, geom, ref_params)
    assert apply_doppler_residue(capture, 0.0, ref_params) is capture


def test_doppler_residue_frequency(ref_params):
    assert doppler_residue_hz(1.0, ref_params) == pytest.approx(20.0)


def test_doppler_phase_additivity(ref_params, ref_system, ref_point_scene):
    geom, _, tx = ref_system
    capture = simulate_rx(tx, ref_point_scene, geom, ref_params)
    once = apply_doppler_residue(capture, 3.0, ref_params)
    twice = apply_doppler_residue(
        apply_doppler_residue(capture, 1.0, ref_params), 2.0, ref_params
    )
    np.testing.assert_allclose(twice.samples, once.samples, atol=1e-12)
    assert twice.doppler_residue_hz == pytest.approx(once.doppler_residue_hz)


def test_scene_validation():
    with pytest.raises(ValueError):
        Scene(h=[], dod=0.0, doa=0.0)
    with pytest.raises(ValueError):
        Scene(h=[np.nan], dod=0.0, doa=0.0)
