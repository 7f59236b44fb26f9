"""Interleaved Zadoff-Chu subcarrier weighting and CP-extended OFDM synthesis.

Each of the M transmit antennas owns the subcarriers k with k mod M == m, so
the per-antenna weight vectors occupy disjoint combs and stay orthogonal for
any relative time delay. Loading the comb of antenna m with the phases of a
Zadoff-Chu sequence makes its discrete time-domain sequence constant modulus
(0 dB peak-to-average power ratio) while the spatially combined spectrum at
the target remains flat at every departure angle, which keeps the per-bin
equalization in the receiver perfectly conditioned.
"""

import math
from dataclasses import dataclass

import numpy as np

from .numerics import dft_unitary


def zadoff_chu_phases(n0: int, root: int) -> np.ndarray:
    """Phase ramp of a length-`n0` Zadoff-Chu sequence with the given root.

    Returns phi[p] = -(pi/n0) * (p + n0 % 2) * root * p for p = 0..n0-1.
    `root` must lie in (0, n0) and be coprime with n0; coprimality is what
    makes the sequence's DFT magnitude flat and hence the time sequence
    constant modulus.
    """
    if n0 < 2:
        raise ValueError("sequence length must be at least 2")
    if not 0 < root < n0:
        raise ValueError(f"root must lie in (0, {n0}), got {root}")
    if math.gcd(root, n0) != 1:
        raise ValueError(f"root {root} is not coprime with {n0}")
    p = np.arange(n0, dtype=float)
    return -(np.pi / n0) * (p + n0 % 2) * root * p


def default_roots(n0: int, n_tx: int) -> tuple:
    """Per-antenna root choices: the smallest integers coprime with n0.

    Distinct roots are used while enough exist (they aid diagnostics); the
    list cycles if n_tx exceeds the number of coprime candidates. Identical
    roots are harmless because the antennas occupy disjoint subcarrier combs.
    """
    if n0 < 2:
        raise ValueError("need at least 2 subcarriers per antenna")
    candidates = [k for k in range(1, n0) if math.gcd(k, n0) == 1]
    return tuple(candidates[m % len(candidates)] for m in range(n_tx))


@dataclass(frozen=True)
class WaveformConfig:
    """Design parameters for one waveform set.

    n_subcarriers (N) must be a multiple of n_tx (M) with at least two
    subcarriers per antenna; n_cells (L) is the tracking-zone length in range
    cells and must stay below N/M so that profile replicas caused by transmit
    pointing mismatch cannot alias onto the zone.
    """

    n_subcarriers: int
    n_tx: int
    n_cells: int
    roots: tuple

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(int(r) for r in self.roots))
        if self.n_tx < 1:
            raise ValueError("need at least one transmit antenna")
        if self.n_subcarriers % self.n_tx != 0:
            raise ValueError("n_subcarriers must be a multiple of n_tx")
        n0 = self.n_subcarriers // self.n_tx
        if n0 < 2:
            raise ValueError("need at least 2 subcarriers per antenna")
        if not 1 <= self.n_cells < n0:
            raise ValueError(
                f"n_cells must lie in [1, {n0}) to keep the tracking zone "
                "inside one profile period"
            )
        if len(self.roots) != self.n_tx:
            raise ValueError("need one Zadoff-Chu root per transmit antenna")
        for root in self.roots:
            if not 0 < root < n0 or math.gcd(root, n0) != 1:
                raise ValueError(
                    f"root {root} must lie in (0, {n0}) and be coprime with {n0}"
                )

    @classmethod
    def with_default_roots(cls, n_subcarriers: int, n_tx: int, n_cells: int):
        if n_tx < 1 or n_subcarriers % n_tx != 0:
            raise ValueError("n_subcarriers must be a multiple of n_tx")
        return cls(n_subcarriers, n_tx, n_cells, default_roots(n_subcarriers // n_tx, n_tx))

    @property
    def n_per_antenna(self) -> int:
        return self.n_subcarriers // self.n_tx


@dataclass(frozen=True)
class SubcarrierWeights:
    """M x N complex weight matrix with interleaved per-antenna support.

    Row m is nonzero exactly on the comb k = m, m + M, m + 2M, ... and every
    nonzero entry has magnitude sqrt(M), which normalizes the mean transmit
    power to 1.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=complex)
        if w.ndim != 2 or w.shape[1] % w.shape[0] != 0:
            raise ValueError("weights must be an M x (M*N0) matrix")
        object.__setattr__(self, "weights", w)

    @property
    def n_tx(self) -> int:
        return self.weights.shape[0]

    @property
    def n_subcarriers(self) -> int:
        return self.weights.shape[1]

    @property
    def n_per_antenna(self) -> int:
        return self.n_subcarriers // self.n_tx


def _interleave_weights(phase_rows) -> np.ndarray:
    # Structural core, kept separate so unit tests can force all-zero phases;
    # the production path always feeds Zadoff-Chu phases.
    phase_rows = np.atleast_2d(np.asarray(phase_rows, dtype=float))
    n_tx, n0 = phase_rows.shape
    weights = np.zeros((n_tx, n_tx * n0), dtype=complex)
    comb = np.arange(n0) * n_tx
    for m in range(n_tx):
        weights[m, comb + m] = np.sqrt(n_tx) * np.exp(1j * phase_rows[m])
    return weights


def design_subcarrier_weights(cfg: WaveformConfig) -> SubcarrierWeights:
    """Build the interleaved Zadoff-Chu weight matrix for `cfg`."""
    phases = [zadoff_chu_phases(cfg.n_per_antenna, root) for root in cfg.roots]
    return SubcarrierWeights(_interleave_weights(np.stack(phases)))


@dataclass(frozen=True)
class TxWaveformSet:
    """Discrete transmit sequences, one row per antenna, cyclically extended.

    Row m evaluates the N-point unitary IDFT of weight row m over the index
    range [0, N + cp_len), so samples n and n + N coincide for n < cp_len.
    Every echo delayed by up to cp_len cells therefore presents one full
    waveform period inside the receiver's processing window.
    """

    sequences: np.ndarray
    cp_len: int

    def __post_init__(self):
        seq = np.asarray(self.sequences, dtype=complex)
        object.__setattr__(self, "sequences", seq)
        if seq.ndim != 2:
            raise ValueError("sequences must be a 2-D matrix")
        if not 0 <= self.cp_len < seq.shape[1]:
            raise ValueError("cp_len must lie in [0, sequence length)")

    @property
    def n_tx(self) -> int:
        return self.sequences.shape[0]

    @property
    def n_body(self) -> int:
        return self.sequences.shape[1] - self.cp_len


def synthesize_tx(weights: SubcarrierWeights, n_cells: int) -> TxWaveformSet:
    """Time-domain transmit set for a tracking zone of `n_cells` cells.

    Each row is the length N + n_cells - 1 periodic evaluation of the unitary
    IDFT of the corresponding weight row. For Zadoff-Chu designed weights the
    result is constant modulus (every sample has magnitude 1).
    """
    n = weights.n_subcarriers
    if not 1 <= n_cells < weights.n_per_antenna:
        raise ValueError(
            f"n_cells must lie in [1, {weights.n_per_antenna}) for this design"
        )
    body = np.stack([dft_unitary(row, "inverse") for row in weights.weights])
    sequences = np.concatenate([body, body[:, : n_cells - 1]], axis=1)
    return TxWaveformSet(sequences=sequences, cp_len=n_cells - 1)


def papr_db(x) -> float:
    """Peak-to-average power ratio of a discrete sequence, in dB.

    0 dB if and only if the sequence is constant modulus.
    """
    x = np.asarray(x, dtype=complex)
    if x.size == 0:
        raise ValueError("papr_db expects a non-empty sequence")
    power = np.abs(x) ** 2
    peak = power.max()
    if peak == 0:
        raise ValueError("papr_db is undefined for the all-zero sequence")
    return 10.0 * math.log10(peak / power.mean())
