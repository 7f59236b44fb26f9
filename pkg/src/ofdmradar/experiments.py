"""Experiment pipelines behind the CLI: deterministic CSV and JSON artifacts.

Every output file embeds the config hash and the generator seed; repeated
runs with the same config and seed are byte-identical. Float fields use
shortest round-trip formatting so nothing is lost for replotting.
"""

import json
import math
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (
    PSLR_FLOOR_DB,
    empirical_error_snr,
    empirical_snr,
    max_snr,
    periodicity_check,
    pointing_weights,
    predicted_snr,
    pslr_db,
)
from .baselines import conventional_ofdm_profile, lfm_waveform, matched_filter_profile
from .channel import doppler_residue_hz, simulate_rx
from .config import RunConfig, config_hash
from .geometry import RadarParams, half_wavelength_ula
from .numerics import RNG_ALGORITHM, complex_gaussian
from .pipeline import build_system, cp_profile, cp_profile_trials
from .receiver import PointingEstimate, equivalent_spectrum
from .waveform import WaveformConfig

DOPPLER_MODEL = (
    "common phase ramp exp(j*2*pi*f_d*n*T_s) with f_d = 2*velocity_error*carrier/c"
)
TRIAL_SEED_RULE = "trial t uses seed = base_seed + t"


def _fmt(x) -> str:
    return repr(float(x))


def _cplx(z) -> dict:
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def _db_magnitudes(values) -> np.ndarray:
    mags = np.abs(np.asarray(values))
    peak = mags.max()
    if peak == 0:
        return np.full(mags.shape, PSLR_FLOOR_DB)
    with np.errstate(divide="ignore"):
        db = 20.0 * np.log10(mags / peak)
    return np.maximum(db, PSLR_FLOOR_DB)


def _write_text(path: Path, text: str):
    path.write_text(text, encoding="utf-8")


def _write_profile_csv(path: Path, values, sha: str, seed: int):
    """Columns n, re, im, magnitude_db (dB relative to the profile peak)."""
    values = np.asarray(values, dtype=complex)
    db = _db_magnitudes(values)
    lines = [f"# config_sha256={sha} seed={seed}", "n,re,im,magnitude_db"]
    for i, v in enumerate(values):
        lines.append(f"{i},{_fmt(v.real)},{_fmt(v.imag)},{_fmt(db[i])}")
    _write_text(path, "\n".join(lines) + "\n")


def _write_matrix_csv(path: Path, matrix, sha: str, seed: int):
    """Columns antenna, n, re, im for per-antenna sample matrices."""
    matrix = np.asarray(matrix, dtype=complex)
    lines = [f"# config_sha256={sha} seed={seed}", "antenna,n,re,im"]
    for a in range(matrix.shape[0]):
        row = matrix[a]
        for i, v in enumerate(row):
            lines.append(f"{a},{i},{_fmt(v.real)},{_fmt(v.imag)}")
    _write_text(path, "\n".join(lines) + "\n")


def _write_json(path: Path, payload: dict):
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _vtag(value: float) -> str:
    return str(float(value)).replace("-", "m").replace(".", "p")


def _support_cells(scene) -> list:
    return [int(i) for i in np.flatnonzero(np.abs(scene.h) > 0)]


def _lfm_profile(cfg: RunConfig, seed: int):
    n = cfg.params.n_subcarriers
    duration = n * cfg.params.sample_interval_s
    chirp = lfm_waveform(n, cfg.params.bandwidth_hz, duration)
    echo = np.convolve(cfg.scene.h, chirp.samples)
    if cfg.noise_power > 0:
        echo = echo + complex_gaussian(echo.size, cfg.noise_power, seed)
    return matched_filter_profile(echo, chirp.samples)


def _sidelobe_db(values, support) -> float:
    """Largest non-support value relative to the overall peak, in dB."""
    mags = np.abs(np.asarray(values))
    peak = mags.max()
    if peak == 0:
        return PSLR_FLOOR_DB
    mask = np.ones(mags.size, dtype=bool)
    mask[[c for c in support if c < mags.size]] = False
    if not mask.any() or mags[mask].max() == 0:
        return PSLR_FLOOR_DB
    return max(20.0 * math.log10(mags[mask].max() / peak), PSLR_FLOOR_DB)


def _run_profile(cfg: RunConfig, out_dir: Path, sha: str) -> dict:
    geom, weights, tx = build_system(cfg.params, cfg.waveform)
    seed = cfg.seed if cfg.noise_power > 0 else None
    profile = cp_profile(
        tx,
        weights,
        cfg.scene,
        geom,
        cfg.params,
        noise_power=cfg.noise_power,
        seed=seed,
        estimate=cfg.estimate,
    )
    conv = conventional_ofdm_profile(
        cfg.scene, weights, geom, cfg.params, cfg.noise_power,
        None if seed is None else seed + 1,
    )
    lfm = _lfm_profile(cfg, cfg.seed + 2)
    _write_profile_csv(out_dir / "cp_ofdm_profile.csv", profile.h_hat, sha, cfg.seed)
    _write_profile_csv(out_dir / "conv_ofdm_profile.csv", conv, sha, cfg.seed)
    _write_profile_csv(out_dir / "lfm_profile.csv", lfm, sha, cfg.seed)

    support = _support_cells(cfg.scene)
    metrics = {
        "experiment": cfg.experiment,
        "mainlobe_cells": support,
        "pslr_db": {},
        "snr": {},
    }
    if support:
        metrics["pslr_db"] = {
            "cp_ofdm": float(pslr_db(profile.h_hat, support)),
            "conv_ofdm": float(pslr_db(conv, support)),
            "lfm": float(pslr_db(lfm, support)),
        }
        strongest = int(support[int(np.argmax(np.abs(cfg.scene.h[support])))])
        if cfg.noise_power > 0:
            spectrum = equivalent_spectrum(weights, geom, cfg.params, cfg.estimate.dod_est)
            metrics["snr"] = {
                "cell": strongest,
                "predicted_db": 10.0
                * math.log10(
                    predicted_snr(
                        cfg.scene.h[strongest], cfg.noise_power, spectrum, cfg.params.n_rx
                    )
                ),
                "max_db": 10.0
                * math.log10(max_snr(cfg.scene.h[strongest], cfg.noise_power, cfg.params)),
            }

    if cfg.experiment == "compare_baselines" and support:
        scatterers = []
        conv_floor_cells = [c for c in range(conv.size) if c not in support]
        lfm_floor_cells = [c for c in range(lfm.size) if c not in support]
        conv_floor = max(conv[conv_floor_cells]) if conv_floor_cells else 0.0
        lfm_floor = max(lfm[lfm_floor_cells]) if lfm_floor_cells else 0.0
        for cell in support:
            true_mag = abs(cfg.scene.h[cell])
            cp_mag = abs(profile.h_hat[cell])
            entry = {
                "cell": int(cell),
                "true_magnitude": float(true_mag),
                "cp_magnitude": float(cp_mag),
                "cp_error_db": float(abs(20.0 * math.log10(cp_mag / true_mag)))
                if cp_mag > 0
                else math.inf,
                "conv_above_sidelobes": bool(conv[cell] > conv_floor),
                "lfm_above_sidelobes": bool(lfm[cell] > lfm_floor),
            }
            scatterers.append(entry)
        metrics["scatterers"] = scatterers
        metrics["cp_max_recovery_error_db"] = float(
            max(s["cp_error_db"] for s in scatterers)
        )
        metrics["conv_ofdm_missed_cells"] = [
            s["cell"] for s in scatterers if not s["conv_above_sidelobes"]
        ]
        metrics["lfm_missed_cells"] = [
            s["cell"] for s in scatterers if not s["lfm_above_sidelobes"]
        ]
    return metrics


def _run_doppler_sweep(cfg: RunConfig, out_dir: Path, sha: str) -> dict:
    geom, weights, tx = build_system(cfg.params, cfg.waveform)
    support = _support_cells(cfg.scene)
    zone = cfg.waveform.n_cells
    seed = cfg.seed if cfg.noise_power > 0 else None
    rows = []
    for velocity in cfg.options["velocity_errors_mps"]:
        velocity = float(velocity)
        profile = cp_profile(
            tx,
            weights,
            cfg.scene,
            geom,
            cfg.params,
            noise_power=cfg.noise_power,
            seed=seed,
            estimate=cfg.estimate,
            velocity_error_mps=velocity,
        )
        conv = conventional_ofdm_profile(
            cfg.scene, weights, geom, cfg.params, cfg.noise_power,
            None if seed is None else seed + 1,
            velocity_error_mps=velocity,
        )
        tag = _vtag(velocity)
        _write_profile_csv(out_dir / f"cp_doppler_{tag}.csv", profile.h_hat, sha, cfg.seed)
        _write_profile_csv(out_dir / f"conv_doppler_{tag}.csv", conv, sha, cfg.seed)
        zone_mags = np.abs(profile.h_hat[:zone])
        rows.append(
            {
                "velocity_error_mps": velocity,
                "residue_hz": float(doppler_residue_hz(velocity, cfg.params)),
                "peak_cell": int(np.argmax(zone_mags)),
                "cp_zone_sidelobe_db": float(_sidelobe_db(zone_mags, support)),
                "conv_zone_sidelobe_db": float(_sidelobe_db(conv, support)),
            }
        )
    return {"experiment": cfg.experiment, "mainlobe_cells": support, "sweep": rows}


def _run_pointing_sweep(cfg: RunConfig, out_dir: Path, sha: str) -> dict:
    counts = cfg.options.get(
        "antenna_counts", [[cfg.params.n_tx, cfg.params.n_rx]]
    )
    errors = [float(e) for e in cfg.options["pointing_errors_deg"]]
    support = _support_cells(cfg.scene)
    cell = (
        int(support[int(np.argmax(np.abs(cfg.scene.h[support])))]) if support else None
    )
    run_mc = cfg.trials > 1 and cfg.noise_power > 0 and cell is not None
    rows = []
    for m_tx, n_rx in counts:
        params = replace(cfg.params, n_tx=int(m_tx), n_rx=int(n_rx))
        wf_cfg = WaveformConfig.with_default_roots(
            params.n_subcarriers, params.n_tx, cfg.waveform.n_cells
        )
        geom, weights, tx = build_system(params, wf_cfg)
        matched_snr_db = None
        if run_mc:
            matched = cp_profile_trials(
                tx, weights, cfg.scene, geom, params,
                cfg.noise_power, cfg.seed, cfg.trials,
            )
            matched_snr_db = 10.0 * math.log10(empirical_snr(matched, cfg.scene, cell))
        for error_deg in errors:
            delta = math.radians(error_deg)
            estimate = PointingEstimate(
                dod_est=cfg.scene.dod + delta, doa_est=cfg.scene.doa + delta
            )
            report = pointing_weights(geom, params, cfg.scene.dod, cfg.scene.doa, estimate)
            row = {
                "n_tx": int(m_tx),
                "n_rx": int(n_rx),
                "error_deg": error_deg,
                "snr_loss_db": float(report.snr_loss_db),
                "q_tilde": _cplx(report.q_tilde),
                "m_tilde": _cplx(report.m_tilde),
                "w0": _cplx(report.weights[0]),
            }
            if run_mc:
                mismatched = cp_profile_trials(
                    tx, weights, cfg.scene, geom, params,
                    cfg.noise_power, cfg.seed, cfg.trials, estimate=estimate,
                )
                err_snr_db = 10.0 * math.log10(empirical_error_snr(mismatched, cell))
                row["snr_loss_emp_db"] = float(matched_snr_db - err_snr_db)
            rows.append(row)
    columns = ["n_tx", "n_rx", "error_deg", "snr_loss_db"]
    if run_mc:
        columns.append("snr_loss_emp_db")
    lines = [f"# config_sha256={sha} seed={cfg.seed}", ",".join(columns)]
    for row in rows:
        lines.append(
            ",".join(
                str(row[c]) if c in ("n_tx", "n_rx") else _fmt(row[c]) for c in columns
            )
        )
    _write_text(out_dir / "pointing_sweep.csv", "\n".join(lines) + "\n")
    return {"experiment": cfg.experiment, "monte_carlo": bool(run_mc), "sweep": rows}


def _run_periodicity(cfg: RunConfig, out_dir: Path, sha: str) -> dict:
    geom, weights, tx = build_system(cfg.params, cfg.waveform)
    seed = cfg.seed if cfg.noise_power > 0 else None
    profile = cp_profile(
        tx,
        weights,
        cfg.scene,
        geom,
        cfg.params,
        noise_power=cfg.noise_power,
        seed=seed,
        estimate=cfg.estimate,
    )
    _write_profile_csv(out_dir / "periodicity_profile.csv", profile.h_hat, sha, cfg.seed)
    m = cfg.params.n_tx
    n0 = cfg.params.n_subcarriers // m
    support = _support_cells(cfg.scene) or None
    gains = periodicity_check(profile, n0, m, support=support)
    report = pointing_weights(geom, cfg.params, cfg.scene.dod, cfg.scene.doa, cfg.estimate)
    metrics = {
        "experiment": cfg.experiment,
        "period_cells": int(n0),
        "support_cells": support or [],
        "gains": [_cplx(g) for g in gains],
        "snr_loss_db": float(report.snr_loss_db),
    }
    w = report.weights
    if abs(w[0]) > 0:
        expected = np.array(
            [1.0 + 0.0j] + [w[(m - i) % m] / w[0] for i in range(1, m)]
        )
        metrics["expected_gains"] = [_cplx(g) for g in expected]
        metrics["max_gain_deviation"] = float(np.max(np.abs(gains - expected)))
    return metrics


_RUNNERS = {
    "profile": _run_profile,
    "compare_baselines": _run_profile,
    "doppler_sweep": _run_doppler_sweep,
    "pointing_sweep": _run_pointing_sweep,
    "periodicity": _run_periodicity,
}


def write_design_artifacts(cfg: RunConfig, out_dir: Path) -> list:
    """Emit the designed waveforms (and manifest) without running a scene."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sha = config_hash(cfg.doc)
    _, weights, tx = build_system(cfg.params, cfg.waveform)
    _write_matrix_csv(out_dir / "waveforms.csv", tx.sequences, sha, cfg.seed)
    _write_json(out_dir / "manifest.json", _manifest(cfg, sha))
    return ["waveforms.csv", "manifest.json"]


def _manifest(cfg: RunConfig, sha: str) -> dict:
    manifest = {
        "config": cfg.doc,
        "config_sha256": sha,
        "experiment": cfg.experiment,
        "seed": int(cfg.seed),
        "trials": int(cfg.trials),
        "noise_model": {
            "rng": RNG_ALGORITHM,
            "trial_seed_rule": TRIAL_SEED_RULE,
            "baseline_seed_offsets": {"conv_ofdm": 1, "lfm": 2},
        },
        "versions": {"ofdmradar": __version__, "numpy": np.__version__},
    }
    if cfg.experiment == "doppler_sweep":
        manifest["doppler_model"] = DOPPLER_MODEL
    return manifest


def run_experiment(cfg: RunConfig, out_dir) -> dict:
    """Run the configured experiment, writing all artifacts into out_dir.

    Returns the metrics dictionary (also written as metrics.json).
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sha = config_hash(cfg.doc)
    metrics = _RUNNERS[cfg.experiment](cfg, out_dir, sha)
    metrics["config_sha256"] = sha
    metrics["seed"] = int(cfg.seed)
    if cfg.options.get("export_waveforms"):
        _, _, tx = build_system(cfg.params, cfg.waveform)
        _write_matrix_csv(out_dir / "waveforms.csv", tx.sequences, sha, cfg.seed)
    if cfg.options.get("export_capture"):
        geom, weights, tx = build_system(cfg.params, cfg.waveform)
        capture = simulate_rx(
            tx, cfg.scene, geom, cfg.params,
            noise_power=cfg.noise_power,
            seed=cfg.seed if cfg.noise_power > 0 else None,
        )
        _write_matrix_csv(out_dir / "capture.csv", capture.samples, sha, cfg.seed)
    _write_json(out_dir / "metrics.json", metrics)
    _write_json(out_dir / "manifest.json", _manifest(cfg, sha))
    return metrics
