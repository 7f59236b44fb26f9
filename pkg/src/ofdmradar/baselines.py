"""Matched-filter range compression baselines: plain OFDM (no CP) and LFM."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import RxCapture, Scene, apply_doppler_residue, synthesize_echo
from .geometry import ArrayGeometry, RadarParams, steering_vector
from .numerics import complex_gaussian
from .receiver import receive_dbf
from .waveform import SubcarrierWeights, synthesize_tx


@dataclass(frozen=True)
class LfmWaveform:
    """Linear frequency-modulated chirp sweeping -B/2 to B/2 across T."""

    samples: np.ndarray
    bandwidth_hz: float
    duration_s: float


def lfm_waveform(n_samples: int, bandwidth_hz: float, duration_s: float) -> LfmWaveform:
    """Symmetric up-chirp sampled on n_samples points.

    s(n) = exp(j*pi*(B/T)*(n*T_s - T/2)^2) with T_s = T/n_samples; constant
    modulus by construction.
    """
    if n_samples < 2:
        raise ValueError("need at least 2 samples")
    if bandwidth_hz * duration_s <= 0:
        raise ValueError("time-bandwidth product must be positive")
    ts = duration_s / n_samples
    t = np.arange(n_samples) * ts
    samples = np.exp(1j * np.pi * (bandwidth_hz / duration_s) * (t - duration_s / 2.0) ** 2)
    return LfmWaveform(samples=samples, bandwidth_hz=bandwidth_hz, duration_s=duration_s)


def matched_filter_profile(rx, ref) -> np.ndarray:
    """Magnitude of the sliding cross-correlation of rx against ref.

    Output lag l is |sum_n rx[n + l] * conj(ref[n])| for
    l = 0 .. len(rx) - len(ref).
    """
    rx = np.asarray(rx, dtype=complex)
    ref = np.asarray(ref, dtype=complex)
    if ref.size == 0:
        raise ValueError("reference must be non-empty")
    if rx.size < ref.size:
        raise ValueError("received signal shorter than the reference")
    return np.abs(np.correlate(rx, ref, mode="valid"))


def conventional_ofdm_profile(
    scene: Scene,
    weights: SubcarrierWeights,
    geom: ArrayGeometry,
    params: RadarParams,
    noise_power: float = 0.0,
    seed: Optional[int] = None,
    velocity_error_mps: float = 0.0,
) -> np.ndarray:
    """Range profile of the same scene using CP-less OFDM and matched filtering.

    Transmits only the N-sample OFDM body, beamforms at the true arrival
    angle, and correlates against the angle-combined transmit signal. Unlike
    the CP chain this leaves sidelobes from cross-cell leakage.
    """
    body = synthesize_tx(weights, 1).sequences
    samples = synthesize_echo(body, scene, geom, params)
    if noise_power > 0:
        if seed is None:
            raise ValueError("a seed is required when noise_power > 0")
        q, n = samples.shape
        samples = samples + complex_gaussian(q * n, noise_power, seed).reshape(q, n)
    capture = RxCapture(samples=samples, noise_power=noise_power, seed=seed)
    if velocity_error_mps != 0.0:
        capture = apply_doppler_residue(capture, velocity_error_mps, params)
    z = receive_dbf(capture, geom, params, scene.doa)
    a_t = steering_vector(geom.tx_offsets, scene.dod, params.wavelength_m)
    reference = a_t @ body
    return matched_filter_profile(z, reference)
