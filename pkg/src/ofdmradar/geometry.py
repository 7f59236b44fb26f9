"""Array geometry, steering vectors, and range-cell bookkeeping."""

import math
from dataclasses import dataclass

import numpy as np

# Idealized propagation speed used throughout; keeps derived quantities such
# as half-wavelength spacing at 3 GHz (0.05 m) and the 3 m cell size at
# 50 MHz exact.
SPEED_OF_LIGHT = 3.0e8


@dataclass(frozen=True)
class RadarParams:
    """Global system constants.

    carrier_hz and bandwidth_hz in Hz; n_subcarriers is the total subcarrier
    count shared by the n_tx transmit antennas; n_rx is the receive count.
    """

    carrier_hz: float
    bandwidth_hz: float
    n_subcarriers: int
    n_tx: int
    n_rx: int

    def __post_init__(self):
        if self.carrier_hz <= 0:
            raise ValueError("carrier frequency must be positive")
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth must be positive")
        if not (self.n_subcarriers >= self.n_tx >= 1):
            raise ValueError("need n_subcarriers >= n_tx >= 1")
        if self.n_rx < 1:
            raise ValueError("need at least one receive antenna")

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_hz

    @property
    def subcarrier_spacing_hz(self) -> float:
        return self.bandwidth_hz / self.n_subcarriers

    @property
    def sample_interval_s(self) -> float:
        return 1.0 / self.bandwidth_hz

    @property
    def range_resolution_m(self) -> float:
        return SPEED_OF_LIGHT / (2.0 * self.bandwidth_hz)


@dataclass(frozen=True)
class ArrayGeometry:
    """Transmit and receive element offsets from element 0, in meters."""

    tx_offsets: np.ndarray
    rx_offsets: np.ndarray

    def __post_init__(self):
        tx = np.asarray(self.tx_offsets, dtype=float)
        rx = np.asarray(self.rx_offsets, dtype=float)
        object.__setattr__(self, "tx_offsets", tx)
        object.__setattr__(self, "rx_offsets", rx)
        for name, offsets in (("tx", tx), ("rx", rx)):
            if offsets.ndim != 1 or offsets.size == 0:
                raise ValueError(f"{name} offsets must be a non-empty 1-D vector")
            if not np.all(np.isfinite(offsets)) or np.any(offsets < 0):
                raise ValueError(f"{name} offsets must be finite and non-negative")
            if offsets[0] != 0.0:
                raise ValueError(f"{name} offset of the reference element must be 0")

    @property
    def n_tx(self) -> int:
        return self.tx_offsets.size

    @property
    def n_rx(self) -> int:
        return self.rx_offsets.size


def make_ula(count: int, spacing: float) -> np.ndarray:
    """Element offsets of a uniform linear array: [0, d, 2d, ...]."""
    if count < 1:
        raise ValueError("element count must be >= 1")
    if spacing <= 0:
        raise ValueError("element spacing must be positive")
    return spacing * np.arange(count, dtype=float)


def half_wavelength_ula(params: RadarParams) -> ArrayGeometry:
    """Default geometry: half-wavelength ULAs on both the tx and rx side."""
    d = params.wavelength_m / 2.0
    return ArrayGeometry(make_ula(params.n_tx, d), make_ula(params.n_rx, d))


def steering_vector(offsets, angle: float, wavelength: float) -> np.ndarray:
    """Per-element phase response of an array toward `angle`.

    Element i is exp(-j * 2*pi/wavelength * offsets[i] * sin(angle)); the
    reference element (offset 0) is always 1. `angle` is in radians and must
    lie strictly inside (-pi/2, pi/2).
    """
    if wavelength <= 0:
        raise ValueError("wavelength must be positive")
    if abs(angle) >= math.pi / 2:
        raise ValueError("angle must satisfy |angle| < pi/2")
    offsets = np.asarray(offsets, dtype=float)
    return np.exp(-2j * np.pi / wavelength * offsets * math.sin(angle))


def occupied_cells(target_extent_m: float, range_resolution_m: float) -> int:
    """Number of range cells covered by a target of the given extent.

    The tracking-zone length must be chosen at least this large.
    """
    if target_extent_m < 0:
        raise ValueError("target extent must be non-negative")
    if range_resolution_m <= 0:
        raise ValueError("range resolution must be positive")
    return math.ceil(target_extent_m / range_resolution_m)
