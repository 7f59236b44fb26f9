"""Deterministic complex-vector primitives shared by every processing stage.

Both transform directions carry the 1/sqrt(N) factor, so a forward transform
followed by the inverse is the identity and vector energy is preserved
(unitary pair). All downstream gain bookkeeping relies on this convention.
"""

import numpy as np

# Recorded in run manifests so output files can name their noise source.
RNG_ALGORITHM = "numpy.random.Generator(PCG64)"


def dft_unitary(x, direction: str = "forward") -> np.ndarray:
    """Unitary DFT of a complex vector.

    Parameters
    ----------
    x : array_like
        Complex samples, length N >= 1.
    direction : str
        "forward" applies the exp(-j2*pi*n*k/N) kernel, "inverse" the
        conjugate kernel. Both are scaled by 1/sqrt(N).

    Returns
    -------
    numpy array of the same length.
    """
    x = np.asarray(x, dtype=complex)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("dft_unitary expects a non-empty 1-D vector")
    scale = np.sqrt(x.size)
    if direction == "forward":
        return np.fft.fft(x) / scale
    if direction == "inverse":
        return np.fft.ifft(x) * scale
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def complex_gaussian(n: int, variance: float, seed: int) -> np.ndarray:
    """Circularly-symmetric complex Gaussian samples, reproducible per seed.

    Real and imaginary parts are i.i.d. zero-mean normal with variance
    `variance / 2`, so each complex sample carries total power `variance`.
    The same seed always yields the same vector.
    """
    if n < 1:
        raise ValueError("sample count must be >= 1")
    if variance <= 0:
        raise ValueError("noise variance must be positive")
    rng = np.random.default_rng(seed)
    parts = rng.standard_normal((2, n))
    return np.sqrt(variance / 2.0) * (parts[0] + 1j * parts[1])
