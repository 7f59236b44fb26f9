"""Closed-form performance predictions and their empirical counterparts.

The closed forms cover reconstruction SNR, the per-period weights induced by
beam-pointing errors, and the resulting SNR loss. The empirical side offers
Monte-Carlo SNR estimation, peak-sidelobe measurement, and a least-squares
periodicity check, all meant to be compared directly against the formulas.
SNR quantities stay linear internally; dB conversion happens only at the
reporting boundary.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channel import Scene
from .geometry import SPEED_OF_LIGHT, ArrayGeometry, RadarParams
from .receiver import PointingEstimate, RangeProfile


@dataclass(frozen=True)
class PointingErrorReport:
    """Array factors, per-period weights, and SNR loss for a pointing mismatch.

    q_tilde / m_tilde are the receive / transmit array factors of the angle
    errors (equal to Q and M when the estimates are exact); weights[i] scales
    the range-profile replica that lands i periods after the tracking zone,
    with weights[0] scaling the zone itself.
    """

    q_tilde: complex
    m_tilde: complex
    weights: np.ndarray
    snr_loss_db: float


def _mean_and_variance(values) -> tuple:
    # Compensated sums so trial aggregation is robust to ordering.
    values = np.asarray(values, dtype=complex)
    n = values.size
    mean = complex(math.fsum(values.real), math.fsum(values.imag)) / n
    if n < 2:
        return mean, 0.0
    power = math.fsum(np.abs(values) ** 2)
    var = (power - n * abs(mean) ** 2) / (n - 1)
    return mean, max(var, 0.0)


def predicted_snr(h_coeff: complex, noise_power: float, b_spectrum, n_rx: int) -> float:
    """Reconstruction SNR of a cell with coefficient `h_coeff` (linear scale).

    Evaluates |h|^2 / (sigma^2 / (Q*N^2) * sum_k 1/|B(k)|^2). For a flat
    spectrum with |B(k)|^2 = M this reaches the maximum Q*M*N*|h|^2/sigma^2;
    any non-flat spectrum of the same energy is strictly worse.
    """
    if noise_power <= 0:
        raise ValueError("noise power must be positive")
    b_spectrum = np.asarray(b_spectrum, dtype=complex)
    power = np.abs(b_spectrum) ** 2
    if power.size == 0 or np.any(power == 0):
        raise ValueError("every spectrum bin must be nonzero")
    n = power.size
    noise_var = noise_power / (n_rx * n**2) * math.fsum(1.0 / power)
    return abs(h_coeff) ** 2 / noise_var


def max_snr(h_coeff: complex, noise_power: float, params: RadarParams) -> float:
    """Upper bound Q*M*N*|h|^2/sigma^2 reached by a flat equivalent spectrum."""
    if noise_power <= 0:
        raise ValueError("noise power must be positive")
    return (
        params.n_rx * params.n_tx * params.n_subcarriers * abs(h_coeff) ** 2 / noise_power
    )


def pointing_weights(
    geom: ArrayGeometry,
    params: RadarParams,
    dod: float,
    doa: float,
    estimate: PointingEstimate,
) -> PointingErrorReport:
    """Closed-form effect of estimated angles that differ from the truth."""
    tx_delay_err = geom.tx_offsets * (math.sin(estimate.dod_est) - math.sin(dod)) / SPEED_OF_LIGHT
    rx_delay_err = geom.rx_offsets * (math.sin(estimate.doa_est) - math.sin(doa)) / SPEED_OF_LIGHT
    tx_phasors = np.exp(2j * np.pi * params.carrier_hz * tx_delay_err)
    rx_phasors = np.exp(2j * np.pi * params.carrier_hz * rx_delay_err)
    q_tilde = complex(rx_phasors.sum())
    m_tilde = complex(tx_phasors.sum())
    m_count = geom.n_tx
    q_count = geom.n_rx
    # np.fft.fft evaluates sum_m x[m] * exp(-j*2*pi*m*i/M), exactly the comb
    # mixing that maps the per-antenna phase errors onto period weights.
    weights = q_tilde / (m_count * q_count) * np.fft.fft(tx_phasors)
    gain = (abs(q_tilde) * abs(m_tilde)) / (q_count * m_count)
    loss_db = math.inf if gain == 0 else -20.0 * math.log10(gain)
    return PointingErrorReport(
        q_tilde=q_tilde, m_tilde=m_tilde, weights=weights, snr_loss_db=loss_db
    )


def snr_error(
    report: PointingErrorReport,
    h_coeff: complex,
    noise_power: float,
    params: RadarParams,
) -> float:
    """Reconstruction SNR under the report's pointing mismatch (linear scale).

    Equals |q_tilde|^2 * |m_tilde|^2 * N * |h|^2 / (Q * M * sigma^2); its
    ratio to max_snr is exactly the report's SNR loss.
    """
    if noise_power <= 0:
        raise ValueError("noise power must be positive")
    return (
        abs(report.q_tilde) ** 2
        * abs(report.m_tilde) ** 2
        * params.n_subcarriers
        * abs(h_coeff) ** 2
        / (params.n_rx * params.n_tx * noise_power)
    )


def empirical_snr(profiles, scene: Scene, cell: int) -> float:
    """Monte-Carlo SNR at one cell: |h|^2 over the trial variance of the error.

    Needs at least 100 trials with distinct seeds. Zero observed variance
    (noiseless trials) reports infinity.
    """
    if len(profiles) < 100:
        raise ValueError("need at least 100 trials for an SNR estimate")
    truth = scene.h[cell]
    deviations = np.array([p.h_hat[cell] for p in profiles]) - truth
    _, var = _mean_and_variance(deviations)
    if var == 0.0:
        return math.inf
    return abs(truth) ** 2 / var


def empirical_error_snr(profiles, cell: int) -> float:
    """Monte-Carlo SNR at one cell using the trial-mean amplitude as signal.

    Unlike `empirical_snr` this does not need the true coefficient, so it
    also measures the attenuated signal left by a pointing mismatch.
    """
    if len(profiles) < 100:
        raise ValueError("need at least 100 trials for an SNR estimate")
    mean, var = _mean_and_variance([p.h_hat[cell] for p in profiles])
    if var == 0.0:
        return math.inf
    return abs(mean) ** 2 / var


def empirical_noise_variance(profiles, cells) -> float:
    """Pooled variance of reconstructed coefficients at known-empty cells."""
    cells = np.asarray(cells, dtype=int)
    if cells.size == 0 or not profiles:
        raise ValueError("need at least one profile and one cell")
    values = np.concatenate([p.h_hat[cells] for p in profiles])
    _, var = _mean_and_variance(values)
    return var


def recovered_amplitude(profiles, cell: int) -> complex:
    """Trial-mean coefficient at one cell (the noise averages out)."""
    if not profiles:
        raise ValueError("need at least one profile")
    mean, _ = _mean_and_variance([p.h_hat[cell] for p in profiles])
    return mean


PSLR_FLOOR_DB = -300.0


def pslr_db(profile, mainlobe) -> float:
    """Peak sidelobe level relative to the mainlobe peak, in dB.

    `mainlobe` lists the cells considered part of the target; everything
    else counts as sidelobe. An exactly zero sidelobe region reports the
    -300 dB floor.
    """
    magnitudes = np.abs(np.asarray(profile))
    mainlobe = np.asarray(mainlobe, dtype=int)
    if mainlobe.size == 0:
        raise ValueError("mainlobe cell set must be non-empty")
    if magnitudes.max() == 0:
        raise ValueError("pslr is undefined for an all-zero profile")
    inside = magnitudes[mainlobe].max()
    mask = np.ones(magnitudes.size, dtype=bool)
    mask[mainlobe] = False
    if not mask.any():
        return PSLR_FLOOR_DB
    outside = magnitudes[mask].max()
    if outside == 0 or inside == 0:
        return PSLR_FLOOR_DB if outside == 0 else math.inf
    return max(20.0 * math.log10(outside / inside), PSLR_FLOOR_DB)


def periodicity_check(profile: RangeProfile, n0: int, m_count: int, support=None) -> np.ndarray:
    """Complex gain of each length-n0 profile period relative to period 0.

    Gains are least-squares fits over `support` (cell indices inside one
    period; defaults to the full period), so both amplitude and phase of the
    replica weighting are validated. Period 0 always reports gain 1.
    """
    h = profile.h_hat
    if h.size != n0 * m_count:
        raise ValueError("profile length must equal n0 * m_count")
    periods = h.reshape(m_count, n0)
    support = np.arange(n0) if support is None else np.asarray(support, dtype=int)
    reference = periods[0, support]
    denom = math.fsum(np.abs(reference) ** 2)
    if denom == 0:
        raise ValueError("reference period is zero on the chosen support")
    gains = np.empty(m_count, dtype=complex)
    for i in range(m_count):
        section = periods[i, support]
        inner = np.vdot(reference, section)
        gains[i] = inner / denom
    return gains
