"""Named test-matrix generators returning structured values.

Every generator returns a Circulant or Toeplitz object.  Random generators
accept a `seed` and are bit-reproducible for a fixed seed (numpy PCG64);
the `complex` flag requests complex entries where it applies.  Decay rates
and band values are explicit parameters with documented defaults.
"""

from __future__ import annotations

import warnings

import numpy as np

from .circulant import Circulant
from .config import config_get
from .toeplitz import Toeplitz

__all__ = ["smtgallery", "GALLERY_NAMES"]


def _rng(params):
    return np.random.default_rng(params.pop("seed", None))


def _square_size(size, name):
    if isinstance(size, (tuple, list)):
        if len(size) == 1:
            size = size[0]
        else:
            raise ValueError(f"{name!r} generates square matrices, got size {size}")
    n = int(size)
    if n < 1:
        raise ValueError(f"size must be positive, got {n}")
    return n

def _rect_size(size):
    if isinstance(size, (tuple, list)):
        if len(size) == 1:
            m = n = int(size[0])
        elif len(size) == 2:
            m, n = int(size[0]), int(size[1])
        else:
            raise ValueError(f"expected one or two dimensions, got {size}")
    else:
        m = n = int(size)
    if m < 1 or n < 1:
        raise ValueError(f"dimensions must be positive, got {m}x{n}")
    return m, n


def _random_values(rng, count, normal, want_complex):
    draw = rng.standard_normal if normal else rng.random
    vals = draw(count)
    if want_complex:
        vals = vals + 1j * draw(count)
    return vals


def _symmetric_from_kernel(n, kernel):
    """Hermitian Toeplitz from one-sided diagonal values kernel(k), k >= 0."""
    col = kernel(np.arange(n))
    return Toeplitz(col)


def _gen_crrand(n, params):
    rng = _rng(params)
    return Circulant(_random_values(rng, n, False, params.pop("complex", False)))


def _gen_crrandn(n, params):
    rng = _rng(params)
    return Circulant(_random_values(rng, n, True, params.pop("complex", False)))


def _gen_tprand(size, params):
    m, n = _rect_size(size)
    rng = _rng(params)
    t = _random_values(rng, m + n - 1, False, params.pop("complex", False))
    return Toeplitz.from_diagonals(t, m, n)


def _gen_tprandn(size, params):
    m, n = _rect_size(size)
    rng = _rng(params)
    t = _random_values(rng, m + n - 1, True, params.pop("complex", False))
    return Toeplitz.from_diagonals(t, m, n)


def _gen_algdec(n, params):
    p = float(params.pop("p", 2.0))
    return _symmetric_from_kernel(n, lambda k: (1.0 + k) ** (-p))


def _gen_expdec(n, params):
    p = float(params.pop("p", 0.5))
    return _symmetric_from_kernel(n, lambda k: np.exp(-p * k))


def _gen_gaussian(n, params):
    p = float(params.pop("p", 0.1))
    return _symmetric_from_kernel(n, lambda k: np.exp(-p * k.astype(float) ** 2))


def _gen_tkms(n, params):
    rho = complex(params.pop("rho", 0.5))
    if rho.imag == 0.0:
        rho = rho.real
    col = rho ** np.arange(n)
    return Toeplitz(col)  # Hermitian completion conjugates the row


def _gen_ttridiag(n, params):
    c = float(params.pop("c", -1.0))  # subdiagonal
    d = float(params.pop("d", 2.0))   # diagonal
    e = float(params.pop("e", -1.0))  # superdiagonal
    t = np.zeros(2 * n - 1)
    t[n - 1] = d
    if n > 1:
        t[n] = c
        t[n - 2] = e
    return Toeplitz.from_diagonals(t, n, n)


def _gen_ttoeppen(n, params):
    a = float(params.pop("a", 1.0))    # second subdiagonal
    b = float(params.pop("b", -10.0))  # subdiagonal
    c = float(params.pop("c", 0.0))    # diagonal
    d = float(params.pop("d", 10.0))   # superdiagonal
    e = float(params.pop("e", 1.0))    # second superdiagonal
    t = np.zeros(2 * n - 1)
    mid = n - 1
    t[mid] = c
    for off, val in ((1, b), (2, a), (-1, d), (-2, e)):
        if 0 <= mid + off < t.shape[0] and abs(off) < n:
            t[mid + off] = val
    return Toeplitz.from_diagonals(t, n, n)


def _gen_ttoeppd(n, params):
    m = int(params.pop("m", n))
    rng = _rng(params)
    w = params.pop("weights", None)
    theta = params.pop("theta", None)
    w = rng.random(m) if w is None else np.asarray(w, dtype=float)
    theta = rng.random(m) if theta is None else np.asarray(theta, dtype=float)
    if w.shape != theta.shape:
        raise ValueError("weights and theta must have the same length")
    if np.any(w <= 0):
        raise ValueError("weights must be positive")
    k = np.arange(n)
    col = np.zeros(n)
    for start in range(0, w.shape[0], 512):  # bounded temporary, m may be large
        block_w = w[start: start + 512]
        block_t = theta[start: start + 512]
        col += block_w @ np.cos(2.0 * np.pi * np.outer(block_t, k))
    return Toeplitz(col)


def _gen_tgrcar(n, params):
    k = int(params.pop("k", 3))
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    col = np.zeros(n)
    col[0] = 1.0
    if n > 1:
        col[1] = -1.0
    row = np.zeros(n)
    row[: min(k + 1, n)] = 1.0
    return Toeplitz(col, row)


def _gen_tparter(n, params):
    d = np.arange(1 - n, n)
    return Toeplitz.from_diagonals(1.0 / (d + 0.5), n, n)


def _gen_tprolate(n, params):
    w = float(params.pop("w", 0.25))
    k = np.arange(1, n)
    col = np.empty(n)
    col[0] = 2.0 * w
    if n > 1:
        col[1:] = np.sin(2.0 * np.pi * w * k) / (np.pi * k)
    return Toeplitz(col)


def _gen_tchow(n, params):
    alpha = float(params.pop("alpha", 1.0))
    delta = float(params.pop("delta", 0.0))
    t = np.zeros(2 * n - 1)
    k = np.arange(-1, n)  # diagonals with t_k = alpha**(k+1), zero below k = -1
    t[k + n - 1] = alpha ** (k + 1.0)
    t[n - 1] += delta
    return Toeplitz.from_diagonals(t, n, n)


def _gen_ttriw(n, params):
    alpha = float(params.pop("alpha", -1.0))
    k = int(params.pop("k", n - 1))
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    col = np.zeros(n)
    col[0] = 1.0
    row = np.zeros(n)
    row[0] = 1.0
    row[1: min(k, n - 1) + 1] = alpha
    return Toeplitz(col, row)


def _gen_tdramadah(n, params):
    k = int(params.pop("k", 1))
    col = np.zeros(n)
    row = np.zeros(n)
    if k == 1:
        # anti-Hadamard pattern: |det| = 1 with a large-norm inverse
        col[:] = 1.0
        col[np.arange(n) % 4 == 1] = 0.0
        col[np.arange(n) % 4 == 2] = 0.0
        col[0] = 1.0
        row[: min(4, n)] = [1.0, 1.0, 0.0, 1.0][: min(4, n)]
    elif k == 2:
        # upper triangular and Toeplitz
        col[0] = 1.0
        row[:] = 1.0
        row[2::2] = 0.0
    elif k == 3:
        # lower Hessenberg, maximal determinant among 0/1 Toeplitz
        col[:] = 1.0
        col[1::2] = 0.0
        row[: min(2, n)] = 1.0
    else:
        raise ValueError(f"tdramadah variant k must be 1, 2 or 3, got {k}")
    return Toeplitz(col, row)


# Fixed trigonometric moments: the symbol is a finite positive combination of
# point frequencies, so the matrix has exact rank <= 2 * len(_PHANS_FREQS)
# and is numerically rank deficient for every larger order.
_PHANS_WEIGHTS = np.array([2.0, 1.0, 0.5, 0.25])
_PHANS_FREQS = np.array([0.05, 0.15, 0.25, 0.40])


def _gen_tphans(n, params):
    if n < 2 * _PHANS_FREQS.shape[0] + 1 and config_get().warnings:
        warnings.warn(
            f"tphans is rank deficient only for orders above "
            f"{2 * _PHANS_FREQS.shape[0]}; a {n}x{n} instance may be full rank",
            stacklevel=3,
        )
    k = np.arange(n)
    col = _PHANS_WEIGHTS @ np.cos(2.0 * np.pi * np.outer(_PHANS_FREQS, k))
    return Toeplitz(col)


_SQUARE_GENERATORS = {
    "crrand": _gen_crrand,
    "crrandn": _gen_crrandn,
    "algdec": _gen_algdec,
    "expdec": _gen_expdec,
    "gaussian": _gen_gaussian,
    "tchow": _gen_tchow,
    "tdramadah": _gen_tdramadah,
    "tgrcar": _gen_tgrcar,
    "tkms": _gen_tkms,
    "tparter": _gen_tparter,
    "tphans": _gen_tphans,
    "tprolate": _gen_tprolate,
    "ttoeppd": _gen_ttoeppd,
    "ttoeppen": _gen_ttoeppen,
    "ttridiag": _gen_ttridiag,
    "ttriw": _gen_ttriw,
}

_RECT_GENERATORS = {
    "tprand": _gen_tprand,
    "tprandn": _gen_tprandn,
}

GALLERY_NAMES = tuple(sorted({**_SQUARE_GENERATORS, **_RECT_GENERATORS}))


def smtgallery(name, size, **params):
    """Build the named test matrix.

    Parameters
    ----------
    name : str
        One of GALLERY_NAMES.
    size : int or (m, n)
        Matrix order; a pair is accepted by the rectangular random
        generators tprand/tprandn.
    **params
        Generator-specific options (decay rate `p`, `rho`, band values,
        `seed`, `complex`, ...).  Unknown options raise.
    """
    key = str(name).lower()
    params = dict(params)
    if key in _RECT_GENERATORS:
        out = _RECT_GENERATORS[key](size, params)
    elif key in _SQUARE_GENERATORS:
        out = _SQUARE_GENERATORS[key](_square_size(size, key), params)
    else:
        raise ValueError(
            f"unknown gallery matrix {name!r}; valid names: {', '.join(GALLERY_NAMES)}"
        )
    if params:
        raise ValueError(
            f"unknown parameter(s) for {key!r}: {', '.join(sorted(params))}"
        )
    return out
