"""Per-receive-antenna baseband echo synthesis for a scene of scatterers.

Delays are whole range cells (one sample per cell at the system's sampling
rate); every scatterer multiplies the delayed waveform by a single complex
coefficient that absorbs cross-section and carrier phase.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import SPEED_OF_LIGHT, ArrayGeometry, RadarParams, steering_vector
from .numerics import complex_gaussian
from .waveform import TxWaveformSet


@dataclass(frozen=True)
class Scene:
    """Complex scattering coefficient per range cell plus the true angles.

    h[l] is the combined gain/phase coefficient of cell l (zero where the
    cell is empty); dod and doa are the true departure and arrival angles in
    radians.
    """

    h: np.ndarray
    dod: float
    doa: float

    def __post_init__(self):
        h = np.asarray(self.h, dtype=complex)
        object.__setattr__(self, "h", h)
        if h.ndim != 1 or h.size == 0:
            raise ValueError("scene must cover at least one range cell")
        if not np.all(np.isfinite(h)):
            raise ValueError("scattering coefficients must be finite")

    @property
    def n_cells(self) -> int:
        return self.h.size


@dataclass(frozen=True)
class RxCapture:
    """Raw per-antenna samples plus the noise/Doppler bookkeeping."""

    samples: np.ndarray
    noise_power: float
    seed: Optional[int]
    doppler_residue_hz: float = 0.0

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 2:
            raise ValueError("capture samples must be a Q x n matrix")

    @property
    def n_rx(self) -> int:
        return self.samples.shape[0]


def synthesize_echo(
    sequences: np.ndarray,
    scene: Scene,
    geom: ArrayGeometry,
    params: RadarParams,
) -> np.ndarray:
    """Noiseless echo matrix for arbitrary per-antenna transmit sequences.

    Returns a Q x (len(sequence) + L - 1) matrix: the scene's delay-and-sum
    response with the transmit and receive steering phases of the true
    angles applied.
    """
    sequences = np.asarray(sequences, dtype=complex)
    if sequences.shape[0] != geom.n_tx:
        raise ValueError("one transmit sequence per tx element is required")
    a_t = steering_vector(geom.tx_offsets, scene.dod, params.wavelength_m)
    combined = a_t @ sequences
    echo = np.convolve(scene.h, combined)
    a_r = steering_vector(geom.rx_offsets, scene.doa, params.wavelength_m)
    return np.outer(a_r, echo)


def simulate_rx(
    tx: TxWaveformSet,
    scene: Scene,
    geom: ArrayGeometry,
    params: RadarParams,
    noise_power: float = 0.0,
    seed: Optional[int] = None,
) -> RxCapture:
    """Received baseband samples for one pulse.

    The scene must span exactly cp_len + 1 cells so that every in-zone echo
    keeps a full waveform period inside the processing window. Noise is
    drawn from the seeded generator and added per receive antenna, before
    any beamforming; noise_power == 0 yields the noiseless capture.
    """
    if scene.n_cells != tx.cp_len + 1:
        raise ValueError(
            f"scene covers {scene.n_cells} cells but the waveform set was "
            f"built for a {tx.cp_len + 1}-cell tracking zone"
        )
    if geom.n_tx != params.n_tx or geom.n_rx != params.n_rx:
        raise ValueError("geometry and params disagree on antenna counts")
    if noise_power < 0:
        raise ValueError("noise power must be non-negative")
    samples = synthesize_echo(tx.sequences, scene, geom, params)
    if noise_power > 0:
        if seed is None:
            raise ValueError("a seed is required when noise_power > 0")
        q, n = samples.shape
        noise = complex_gaussian(q * n, noise_power, seed).reshape(q, n)
        samples = samples + noise
    return RxCapture(samples=samples, noise_power=noise_power, seed=seed)


def doppler_residue_hz(velocity_error_mps: float, params: RadarParams) -> float:
    """Residual Doppler left by a two-way velocity compensation error."""
    return 2.0 * velocity_error_mps * params.carrier_hz / SPEED_OF_LIGHT


def apply_doppler_residue(
    capture: RxCapture, velocity_error_mps: float, params: RadarParams
) -> RxCapture:
    """Apply the phase ramp of an uncompensated velocity error.

    Every sample is multiplied by exp(j*2*pi*f_d*n*T_s) with
    f_d = 2*velocity_error*carrier/c, the same ramp on every antenna.
    A zero error returns the capture unchanged.
    """
    if velocity_error_mps == 0.0:
        return capture
    f_d = doppler_residue_hz(velocity_error_mps, params)
    n = np.arange(capture.samples.shape[1])
    ramp = np.exp(2j * np.pi * f_d * params.sample_interval_s * n)
    return RxCapture(
        samples=capture.samples * ramp,
        noise_power=capture.noise_power,
        seed=capture.seed,
        doppler_residue_hz=capture.doppler_residue_hz + f_d,
    )
