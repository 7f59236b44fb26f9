"""Co-located MIMO radar with cyclic-prefix OFDM waveforms.

Interleaved Zadoff-Chu subcarrier weighting gives every transmit antenna a
constant-modulus discrete waveform and the combined signal a flat spectrum
at any departure angle; the matching receiver recovers range-cell
coefficients exactly (no inter-range-cell interference) inside the tracking
zone, with closed-form SNR and beam-pointing-error predictions alongside.
"""

__version__ = "0.1.0"

from .analysis import (
    PointingErrorReport,
    empirical_error_snr,
    empirical_noise_variance,
    empirical_snr,
    max_snr,
    periodicity_check,
    pointing_weights,
    predicted_snr,
    pslr_db,
    snr_error,
)
from .baselines import LfmWaveform, conventional_ofdm_profile, lfm_waveform, matched_filter_profile
from .channel import RxCapture, Scene, apply_doppler_residue, doppler_residue_hz, simulate_rx
from .geometry import (
    SPEED_OF_LIGHT,
    ArrayGeometry,
    RadarParams,
    half_wavelength_ula,
    make_ula,
    occupied_cells,
    steering_vector,
)
from .numerics import complex_gaussian, dft_unitary
from .pipeline import build_system, cp_profile, cp_profile_trials, point_scene
from .receiver import (
    PointingEstimate,
    RangeProfile,
    SpectrumSingularError,
    equivalent_spectrum,
    receive_dbf,
    reconstruct,
    reconstruct_with_pointing_error,
    remove_cp,
)
from .waveform import (
    SubcarrierWeights,
    TxWaveformSet,
    WaveformConfig,
    design_subcarrier_weights,
    papr_db,
    synthesize_tx,
    zadoff_chu_phases,
)
