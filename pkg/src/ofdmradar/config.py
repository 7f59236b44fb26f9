"""Run-configuration loading, validation, and hashing.

Configs are single JSON documents. Angles cross this boundary in degrees and
are converted to radians immediately; everything past loading is radians.
"""

import hashlib
import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .channel import Scene
from .geometry import RadarParams
from .receiver import PointingEstimate
from .waveform import WaveformConfig, default_roots

EXPERIMENTS = (
    "profile",
    "compare_baselines",
    "doppler_sweep",
    "pointing_sweep",
    "periodicity",
)

_TOP_LEVEL_KEYS = {
    "experiment",
    "params",
    "waveform",
    "scene",
    "pointing",
    "noise",
    "options",
}


class ConfigError(ValueError):
    """Invalid run configuration; carries one diagnostic string per problem."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


@dataclass
class RunConfig:
    """Validated, unit-converted run description."""

    doc: dict
    experiment: str
    params: RadarParams
    waveform: WaveformConfig
    scene: Scene
    estimate: PointingEstimate
    noise_power: float
    seed: int
    trials: int
    options: dict

    def with_overrides(self, seed=None, trials=None):
        cfg = self
        if seed is not None:
            cfg = replace(cfg, seed=int(seed))
        if trials is not None:
            cfg = replace(cfg, trials=int(trials))
        return cfg


def config_hash(doc: dict) -> str:
    """SHA-256 of the canonical JSON serialization of the config document."""
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def _num(section, key, diags, path, required=True):
    value = section.get(key)
    if value is None:
        if required:
            diags.append(f"{path}.{key}: missing")
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        diags.append(f"{path}.{key}: must be a finite number")
        return None
    return float(value)


def _int(section, key, diags, path, required=True, minimum=None):
    value = section.get(key)
    if value is None:
        if required:
            diags.append(f"{path}.{key}: missing")
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        diags.append(f"{path}.{key}: must be an integer")
        return None
    if minimum is not None and value < minimum:
        diags.append(f"{path}.{key}: must be >= {minimum}")
        return None
    return value


def _angle_deg(section, key, diags, path, required=True):
    value = _num(section, key, diags, path, required=required)
    if value is not None and abs(value) >= 90.0:
        diags.append(f"{path}.{key}: angle must satisfy |angle| < 90 degrees")
        return None
    return value


def validate_config(doc) -> list:
    """All configuration diagnostics, empty exactly when the config is valid.

    Each entry is "<json path>: <violated constraint>".
    """
    if not isinstance(doc, dict):
        return ["config: must be a JSON object"]
    diags = []
    for key in doc:
        if key not in _TOP_LEVEL_KEYS:
            diags.append(f"{key}: unknown section")

    experiment = doc.get("experiment", "profile")
    if experiment not in EXPERIMENTS:
        diags.append(
            f"experiment: unknown experiment {experiment!r}; expected one of "
            + ", ".join(EXPERIMENTS)
        )

    params = doc.get("params")
    if not isinstance(params, dict):
        diags.append("params: missing or not an object")
        params = {}
    carrier = _num(params, "carrier_hz", diags, "params")
    if carrier is not None and carrier <= 0:
        diags.append("params.carrier_hz: must be positive")
    bandwidth = _num(params, "bandwidth_hz", diags, "params")
    if bandwidth is not None and bandwidth <= 0:
        diags.append("params.bandwidth_hz: must be positive")
    n_sub = _int(params, "n_subcarriers", diags, "params", minimum=1)
    n_tx = _int(params, "n_tx", diags, "params", minimum=1)
    n_rx = _int(params, "n_rx", diags, "params", minimum=1)

    n0 = None
    if n_sub is not None and n_tx is not None:
        if n_sub < n_tx:
            diags.append("params.n_subcarriers: must be >= params.n_tx")
        elif n_sub % n_tx != 0:
            diags.append("params.n_subcarriers: must be a multiple of params.n_tx")
        else:
            n0 = n_sub // n_tx
            if n0 < 2:
                diags.append(
                    "params.n_subcarriers: need at least 2 subcarriers per transmit antenna"
                )
                n0 = None

    wf = doc.get("waveform")
    if not isinstance(wf, dict):
        diags.append("waveform: missing or not an object")
        wf = {}
    n_cells = _int(wf, "n_cells", diags, "waveform", minimum=1)
    if n_cells is not None and n0 is not None and n_cells >= n0:
        diags.append(
            f"waveform.n_cells: tracking zone of {n_cells} cells must be shorter "
            f"than the {n0}-cell profile period (n_subcarriers / n_tx) to avoid "
            "range aliasing"
        )
    roots = wf.get("roots")
    if roots is not None:
        if not isinstance(roots, list) or (n_tx is not None and len(roots) != n_tx):
            diags.append("waveform.roots: must list one root per transmit antenna")
        else:
            for i, root in enumerate(roots):
                if isinstance(root, bool) or not isinstance(root, int):
                    diags.append(f"waveform.roots[{i}]: must be an integer")
                elif n0 is not None and (
                    not 0 < root < n0 or math.gcd(root, n0) != 1
                ):
                    diags.append(
                        f"waveform.roots[{i}]: root {root} must lie in (0, {n0}) "
                        f"and be coprime with {n0}"
                    )

    scene = doc.get("scene", {})
    if not isinstance(scene, dict):
        diags.append("scene: must be an object")
        scene = {}
    _angle_deg(scene, "dod_deg", diags, "scene", required=False)
    _angle_deg(scene, "doa_deg", diags, "scene", required=False)
    cells = scene.get("cells", [])
    if not isinstance(cells, list):
        diags.append("scene.cells: must be a list")
        cells = []
    seen = set()
    for i, cell in enumerate(cells):
        if not isinstance(cell, dict):
            diags.append(f"scene.cells[{i}]: must be an object with index/re/im")
            continue
        idx = _int(cell, "index", diags, f"scene.cells[{i}]", minimum=0)
        _num(cell, "re", diags, f"scene.cells[{i}]")
        _num(cell, "im", diags, f"scene.cells[{i}]", required=False)
        if idx is not None:
            if n_cells is not None and idx >= n_cells:
                diags.append(
                    f"scene.cells[{i}].index: cell {idx} lies outside the "
                    f"{n_cells}-cell tracking zone"
                )
            if idx in seen:
                diags.append(f"scene.cells[{i}].index: duplicate cell {idx}")
            seen.add(idx)

    pointing = doc.get("pointing", {})
    if not isinstance(pointing, dict):
        diags.append("pointing: must be an object")
        pointing = {}
    _angle_deg(pointing, "dod_est_deg", diags, "pointing", required=False)
    _angle_deg(pointing, "doa_est_deg", diags, "pointing", required=False)

    noise = doc.get("noise", {})
    if not isinstance(noise, dict):
        diags.append("noise: must be an object")
        noise = {}
    sigma2 = _num(noise, "sigma2", diags, "noise", required=False)
    if sigma2 is not None and sigma2 < 0:
        diags.append("noise.sigma2: must be non-negative")
    _int(noise, "seed", diags, "noise", required=False, minimum=0)
    trials = _int(noise, "trials", diags, "noise", required=False, minimum=1)

    options = doc.get("options", {})
    if not isinstance(options, dict):
        diags.append("options: must be an object")
        options = {}

    if experiment == "doppler_sweep":
        velocities = options.get("velocity_errors_mps")
        if not isinstance(velocities, list) or not velocities:
            diags.append(
                "options.velocity_errors_mps: doppler_sweep needs a non-empty list"
            )
        else:
            for i, v in enumerate(velocities):
                if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                    diags.append(
                        f"options.velocity_errors_mps[{i}]: must be a finite number"
                    )

    if experiment == "pointing_sweep":
        errors = options.get("pointing_errors_deg")
        if not isinstance(errors, list) or not errors:
            diags.append(
                "options.pointing_errors_deg: pointing_sweep needs a non-empty list"
            )
        else:
            for i, e in enumerate(errors):
                if isinstance(e, bool) or not isinstance(e, (int, float)) or not math.isfinite(e) or e < 0:
                    diags.append(
                        f"options.pointing_errors_deg[{i}]: must be a non-negative number"
                    )
        counts = options.get("antenna_counts")
        if counts is not None:
            if not isinstance(counts, list) or not counts:
                diags.append("options.antenna_counts: must be a non-empty list of [n_tx, n_rx] pairs")
            else:
                for i, pair in enumerate(counts):
                    ok = (
                        isinstance(pair, list)
                        and len(pair) == 2
                        and all(isinstance(v, int) and not isinstance(v, bool) and v >= 1 for v in pair)
                    )
                    if not ok:
                        diags.append(
                            f"options.antenna_counts[{i}]: must be a [n_tx, n_rx] pair of positive integers"
                        )
                        continue
                    m = pair[0]
                    if n_sub is not None:
                        if n_sub % m != 0 or n_sub // m < 2:
                            diags.append(
                                f"options.antenna_counts[{i}]: n_subcarriers must be a "
                                f"multiple of n_tx={m} with at least 2 subcarriers per antenna"
                            )
                        elif n_cells is not None and n_cells >= n_sub // m:
                            diags.append(
                                f"options.antenna_counts[{i}]: tracking zone of {n_cells} "
                                f"cells does not fit one {n_sub // m}-cell period for n_tx={m}"
                            )
        if trials is not None and trials > 1 and (sigma2 is None or sigma2 <= 0):
            diags.append(
                "noise.sigma2: pointing_sweep with trials > 1 needs positive noise power"
            )

    return diags


def _build(doc: dict) -> RunConfig:
    params_doc = doc["params"]
    params = RadarParams(
        carrier_hz=float(params_doc["carrier_hz"]),
        bandwidth_hz=float(params_doc["bandwidth_hz"]),
        n_subcarriers=int(params_doc["n_subcarriers"]),
        n_tx=int(params_doc["n_tx"]),
        n_rx=int(params_doc["n_rx"]),
    )
    wf_doc = doc["waveform"]
    n_cells = int(wf_doc["n_cells"])
    roots = wf_doc.get("roots")
    if roots is None:
        roots = default_roots(params.n_subcarriers // params.n_tx, params.n_tx)
    waveform = WaveformConfig(
        n_subcarriers=params.n_subcarriers,
        n_tx=params.n_tx,
        n_cells=n_cells,
        roots=tuple(roots),
    )
    scene_doc = doc.get("scene", {})
    h = np.zeros(n_cells, dtype=complex)
    for cell in scene_doc.get("cells", []):
        h[int(cell["index"])] = float(cell["re"]) + 1j * float(cell.get("im", 0.0))
    dod = math.radians(float(scene_doc.get("dod_deg", 0.0)))
    doa = math.radians(float(scene_doc.get("doa_deg", 0.0)))
    scene = Scene(h=h, dod=dod, doa=doa)
    pointing = doc.get("pointing", {})
    estimate = PointingEstimate(
        dod_est=math.radians(float(pointing.get("dod_est_deg", math.degrees(dod)))),
        doa_est=math.radians(float(pointing.get("doa_est_deg", math.degrees(doa)))),
    )
    noise = doc.get("noise", {})
    return RunConfig(
        doc=doc,
        experiment=doc.get("experiment", "profile"),
        params=params,
        waveform=waveform,
        scene=scene,
        estimate=estimate,
        noise_power=float(noise.get("sigma2", 0.0)),
        seed=int(noise.get("seed", 0)),
        trials=int(noise.get("trials", 1)),
        options=dict(doc.get("options", {})),
    )


def parse_config(doc: dict) -> RunConfig:
    """Validate a config document and build the typed configuration."""
    diags = validate_config(doc)
    if diags:
        raise ConfigError(diags)
    return _build(doc)


def load_config(path) -> RunConfig:
    """Load, validate, and convert a JSON config file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            [f"config: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"]
        ) from exc
    return parse_config(doc)
