import math

import numpy as np
import pytest

from ofdmradar import (
    ArrayGeometry,
    RadarParams,
    half_wavelength_ula,
    make_ula,
    occupied_cells,
    steering_vector,
)


def test_params_derived_quantities(ref_params):
    assert ref_params.wavelength_m == pytest.approx(0.1)
    assert ref_params.range_resolution_m == pytest.approx(3.0)
    assert ref_params.sample_interval_s == pytest.approx(2e-8)
    assert ref_params.subcarrier_spacing_hz == pytest.approx(50e6 / 512)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(carrier_hz=0, bandwidth_hz=1, n_subcarriers=4, n_tx=2, n_rx=1),
        dict(carrier_hz=1, bandwidth_hz=0, n_subcarriers=4, n_tx=2, n_rx=1),
        dict(carrier_hz=1, bandwidth_hz=1, n_subcarriers=1, n_tx=2, n_rx=1),
        dict(carrier_hz=1, bandwidth_hz=1, n_subcarriers=4, n_tx=2, n_rx=0),
    ],
)
def test_params_validation(kwargs):
    with pytest.raises(ValueError):
        RadarParams(**kwargs)


def test_make_ula_offsets():
    np.testing.assert_allclose(make_ula(4, 0.05), [0, 0.05, 0.10, 0.15])
    np.testing.assert_allclose(make_ula(1, 1.0), [0.0])


def test_half_wavelength_spacing_at_3ghz(ref_params):
    geom = half_wavelength_ula(ref_params)
    assert geom.tx_offsets[1] == pytest.approx(0.05)
    assert geom.rx_offsets[1] == pytest.approx(0.05)


def test_make_ula_validation():
    with pytest.raises(ValueError):
        make_ula(0, 0.05)
    with pytest.raises(ValueError):
        make_ula(3, 0.0)


def test_geometry_requires_zero_reference():
    with pytest.raises(ValueError):
        ArrayGeometry(tx_offsets=[0.1, 0.2], rx_offsets=[0.0])
    with pytest.raises(ValueError):
        ArrayGeometry(tx_offsets=[0.0], rx_offsets=[0.0, -0.1])


def test_steering_boresight_is_all_ones():
    v = steering_vector(make_ula(5, 0.05), 0.0, 0.1)
    np.testing.assert_allclose(v, np.ones(5), atol=1e-15)


def test_steering_half_wavelength_30deg():
    v = steering_vector(make_ula(4, 0.05), math.radians(30), 0.1)
    np.testing.assert_allclose(v, [1, -1j, -1, 1j], atol=1e-12)


def test_steering_unit_magnitude_and_conjugate_symmetry():
    offsets = make_ula(6, 0.037)
    for angle in np.linspace(-1.4, 1.4, 17):
        v = steering_vector(offsets, angle, 0.1)
        np.testing.assert_allclose(np.abs(v), 1.0, atol=1e-13)
        np.testing.assert_allclose(
            steering_vector(offsets, -angle, 0.1), v.conj(), atol=1e-13
        )


def test_steering_self_gain_is_element_count():
    offsets = make_ula(7, 0.05)
    for angle in np.linspace(-1.5, 1.5, 11):
        v = steering_vector(offsets, angle, 0.1)
        assert abs(np.vdot(v, v)) == pytest.approx(7, abs=1e-12)


def test_steering_rejects_bad_inputs():
    with pytest.raises(ValueError):
        steering_vector([0.0], math.pi / 2, 0.1)
    with pytest.raises(ValueError):
        steering_vector([0.0], 0.0, 0.0)


def test_occupied_cells():
    assert occupied_cells(0.0, 3.0) == 0
    assert occupied_cells(10.0, 3.0) == 4
    assert occupied_cells(3.0, 3.0) == 1
    with pytest.raises(ValueError):
        occupied_cells(-1.0, 3.0)
    with pytest.raises(ValueError):
        occupied_cells(1.0, 0.0)
