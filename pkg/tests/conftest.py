import numpy as np
import pytest

from ofdmradar import (
    RadarParams,
    Scene,
    WaveformConfig,
    build_system,
    point_scene,
)

DOD = np.radians(30.0)
DOA = np.radians(20.0)


@pytest.fixture(scope="session")
def ref_params():
    """Reference system: 3 GHz carrier, 50 MHz bandwidth, 512 subcarriers, 4x4."""
    return RadarParams(
        carrier_hz=3e9, bandwidth_hz=50e6, n_subcarriers=512, n_tx=4, n_rx=4
    )


@pytest.fixture(scope="session")
def ref_system(ref_params):
    """(geom, weights, tx) for the reference system with a 61-cell zone."""
    cfg = WaveformConfig.with_default_roots(512, 4, 61)
    return build_system(ref_params, cfg)


@pytest.fixture(scope="session")
def ref_point_scene():
    """Unit point target in cell 40 of the 61-cell zone."""
    return point_scene(61, 40, 1.0, DOD, DOA)


def random_scene(n_cells, rng, dod=DOD, doa=DOA) -> Scene:
    h = rng.standard_normal(n_cells) + 1j * rng.standard_normal(n_cells)
    return Scene(h=h, dod=dod, doa=doa)
