"""End-to-end composition of design, channel, and reconstruction stages."""

from typing import Optional

import numpy as np

from .channel import RxCapture, Scene, apply_doppler_residue, simulate_rx
from .geometry import ArrayGeometry, RadarParams, half_wavelength_ula
from .numerics import complex_gaussian
from .receiver import PointingEstimate, RangeProfile, reconstruct_with_pointing_error
from .waveform import (
    SubcarrierWeights,
    TxWaveformSet,
    WaveformConfig,
    design_subcarrier_weights,
    synthesize_tx,
)


def build_system(params: RadarParams, wf_cfg: WaveformConfig, geom: Optional[ArrayGeometry] = None):
    """Design the weights and transmit set for one system configuration.

    Returns (geom, weights, tx); the geometry defaults to half-wavelength
    ULAs on both sides.
    """
    if params.n_tx != wf_cfg.n_tx or params.n_subcarriers != wf_cfg.n_subcarriers:
        raise ValueError("params and waveform config disagree")
    if geom is None:
        geom = half_wavelength_ula(params)
    weights = design_subcarrier_weights(wf_cfg)
    tx = synthesize_tx(weights, wf_cfg.n_cells)
    return geom, weights, tx


def point_scene(n_cells: int, cell: int, coeff: complex, dod: float, doa: float) -> Scene:
    """Scene with a single scatterer at `cell`."""
    h = np.zeros(n_cells, dtype=complex)
    h[cell] = coeff
    return Scene(h=h, dod=dod, doa=doa)


def cp_profile(
    tx: TxWaveformSet,
    weights: SubcarrierWeights,
    scene: Scene,
    geom: ArrayGeometry,
    params: RadarParams,
    noise_power: float = 0.0,
    seed: Optional[int] = None,
    estimate: Optional[PointingEstimate] = None,
    velocity_error_mps: float = 0.0,
) -> RangeProfile:
    """Simulate one pulse and reconstruct its range profile.

    `estimate` defaults to the scene's true angles (matched processing).
    """
    capture = simulate_rx(tx, scene, geom, params, noise_power=noise_power, seed=seed)
    if velocity_error_mps != 0.0:
        capture = apply_doppler_residue(capture, velocity_error_mps, params)
    if estimate is None:
        estimate = PointingEstimate(dod_est=scene.dod, doa_est=scene.doa)
    return reconstruct_with_pointing_error(
        capture, weights, geom, params, estimate, scene.n_cells
    )


def cp_profile_trials(
    tx: TxWaveformSet,
    weights: SubcarrierWeights,
    scene: Scene,
    geom: ArrayGeometry,
    params: RadarParams,
    noise_power: float,
    base_seed: int,
    trials: int,
    estimate: Optional[PointingEstimate] = None,
) -> list:
    """Independent noisy reconstructions with per-trial seeds base_seed + t.

    The noiseless echo is synthesized once; each trial adds the same noise
    the channel simulator would draw for that seed, so trial t is identical
    to a fresh simulation with seed base_seed + t.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if noise_power <= 0:
        raise ValueError("Monte-Carlo trials need positive noise power")
    clean = simulate_rx(tx, scene, geom, params, noise_power=0.0)
    if estimate is None:
        estimate = PointingEstimate(dod_est=scene.dod, doa_est=scene.doa)
    q, n = clean.samples.shape
    profiles = []
    for t in range(trials):
        seed = base_seed + t
        noise = complex_gaussian(q * n, noise_power, seed).reshape(q, n)
        capture = RxCapture(
            samples=clean.samples + noise, noise_power=noise_power, seed=seed
        )
        profiles.append(
            reconstruct_with_pointing_error(
                capture, weights, geom, params, estimate, scene.n_cells
            )
        )
    return profiles
