"""Discrete Fourier transform engine and transform-size utilities.

The convention is normative for the whole package: the forward transform is
unnormalized,

    X_k = sum_{j=0}^{N-1} x_j exp(-2*pi*i*j*k / N),

and the inverse carries the 1/N factor.  Arbitrary lengths (primes included)
are supported exactly; the heavy lifting is delegated to numpy's pocketfft,
which uses mixed-radix/Bluestein factorizations internally.
"""

from __future__ import annotations

import numpy as np

from ._util import as_vector

__all__ = ["dft", "idft", "next_pow2", "fourier_matrix"]


def dft(v) -> np.ndarray:
    """Forward DFT of a 1-d vector under the package convention."""
    return np.fft.fft(as_vector(v))


def idft(v) -> np.ndarray:
    """Inverse DFT (with 1/N normalization) of a 1-d vector."""
    return np.fft.ifft(as_vector(v))


def next_pow2(k: int) -> int:
    """Smallest power of two >= k (k must be a positive integer)."""
    k = int(k)
    if k < 1:
        raise ValueError(f"next_pow2 requires a positive integer, got {k}")
    return 1 << (k - 1).bit_length()


def fourier_matrix(n: int) -> np.ndarray:
    """Unitary Fourier matrix F with F[j, k] = w**(j*k) / sqrt(n), w = exp(2*pi*i/n).

    Its columns are the common eigenvector basis of all order-n circulant
    matrices; it is materialized only for eigenvector reporting and tests.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"fourier_matrix requires a positive order, got {n}")
    j = np.arange(n)
    return np.exp((2j * np.pi / n) * np.outer(j, j)) / np.sqrt(n)
