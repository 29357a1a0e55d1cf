"""Circulant preconditioners: Strang, optimal (Frobenius projection) and
superoptimal, plus a dispatching front end with a user-extensible registry.

The Strang preconditioner copies the central diagonals of a square Toeplitz
matrix and wraps them around; it is defined only for Toeplitz input.  The
optimal preconditioner is the Frobenius-norm projection of an arbitrary
square matrix onto the circulant algebra.  The superoptimal preconditioner
minimizes ||I - inv(C) A||_F; in the Fourier basis its eigenvalues have the
closed form

    lambda_i = b_i / conj(a_i),

where a = ev(optimal(A)) and b = ev(optimal(A A*)), which follows from the
first-order optimality conditions diagonal by diagonal.
"""

from __future__ import annotations

import threading

import numpy as np

from ._util import realify
from .circulant import Circulant
from .dft import idft
from .errors import DimensionMismatchError, SingularMatrixError
from .toeplitz import Toeplitz

__all__ = ["strang", "optimal", "superoptimal", "smtcprec", "register_preconditioner"]

# Relative cutoff under which superoptimal refuses to divide by ev(optimal(A)).
ZERO_EIGENVALUE_RTOL = 1e-13


def _require_square(shape, who):
    if shape[0] != shape[1]:
        raise DimensionMismatchError(
            f"{who} preconditioner requires a square matrix, got {shape[0]}x{shape[1]}"
        )


def strang(T: Toeplitz | Circulant) -> Circulant:
    """Strang preconditioner of a square Toeplitz matrix.

    The first column keeps the diagonals t_0..t_{floor(n/2)} and wraps
    t_{j-n} in above that; at the midpoint of an even order the "upper"
    value t_{n/2} is taken.
    """
    if isinstance(T, Circulant):
        T = T.to_toeplitz()
    if not isinstance(T, Toeplitz):
        raise TypeError(
            "the Strang preconditioner is defined only for Toeplitz matrices"
        )
    _require_square(T.shape, "the Strang")
    n = T.shape[0]
    t = T.t
    c = np.zeros(n, dtype=t.dtype)
    half = n // 2
    for j in range(n):
        c[j] = t[j + n - 1] if j <= half else t[j - 1]  # t[j-1] holds t_{j-n}
    return Circulant(c)


def optimal(A: Toeplitz | Circulant | np.ndarray) -> Circulant:
    """Frobenius-norm projection of a square matrix onto the circulants.

    For Toeplitz input the projection has the O(n) closed form
    c_j = (j * t_{j-n} + (n-j) * t_j) / n; dense input is averaged over the
    n circulant-shift diagonals in O(n^2).
    """
    if isinstance(A, Circulant):
        return Circulant._from_parts(A.col, A.ev)
    if isinstance(A, Toeplitz):
        _require_square(A.shape, "the optimal")
        n = A.shape[0]
        t = A.t
        j = np.arange(n)
        c = (n - j) * t[j + n - 1]
        c[1:] += (j[1:] * t[j[1:] - 1])
        return Circulant(c / n)
    A = np.asarray(A)
    if A.ndim != 2:
        raise ValueError("optimal expects a matrix")
    _require_square(A.shape, "the optimal")
    n = A.shape[0]
    c = np.array(
        [np.trace(A, offset=-k) + np.trace(A, offset=n - k) for k in range(n)]
    )
    return Circulant(c / n)


def superoptimal(A: Toeplitz | Circulant | np.ndarray) -> Circulant:
    """Circulant minimizing ||I - inv(C) A||_F.

    Requires ev(optimal(A)) to be nonzero throughout.  For Toeplitz input
    the Gram part ev(optimal(A A*)) is accumulated by applying A* and then
    A to the unit vectors with fast matvecs, so no dense n-by-n product is
    ever formed.
    """
    if isinstance(A, (Toeplitz, Circulant)):
        _require_square(A.shape, "the superoptimal")
    a = optimal(A).ev
    amax = np.abs(a).max()
    if np.abs(a).min() <= ZERO_EIGENVALUE_RTOL * amax:
        raise SingularMatrixError(
            "superoptimal undefined: the optimal preconditioner of the input "
            "has (numerically) zero eigenvalues"
        )
    if isinstance(A, Circulant):
        b = a * np.conj(a)
        real = A.isreal
    elif isinstance(A, Toeplitz):
        b = _gram_projection_ev(A)
        real = A.isreal
    else:
        A = np.asarray(A)
        b = optimal(A @ A.conj().T).ev
        real = not np.iscomplexobj(A)
    lam = b / np.conj(a)
    return Circulant._from_parts(realify(idft(lam), real), lam)


def _gram_projection_ev(T: Toeplitz) -> np.ndarray:
    """ev(optimal(T T*)) via column-by-column fast products."""
    n = T.shape[0]
    TH = T.H
    c = np.zeros(n, dtype=np.complex128)
    e = np.zeros(n)
    rows = np.arange(n)
    for j in range(n):
        e[j] = 1.0
        col = T.matvec(TH.matvec(e))
        e[j] = 0.0
        np.add.at(c, (rows - j) % n, col)
    return np.fft.fft(c / n)


_registry_lock = threading.Lock()
_REGISTRY: dict[str, object] = {
    "strang": strang,
    "optimal": optimal,
    "superoptimal": superoptimal,
}


def register_preconditioner(name: str, constructor) -> None:
    """Add (or replace) a named preconditioner constructor.

    The constructor receives the operand matrix and must return a Circulant.
    Registration is expected at startup only.
    """
    with _registry_lock:
        _REGISTRY[str(name).lower()] = constructor


def smtcprec(kind: str, A) -> Circulant:
    """Build the preconditioner named `kind` for operand `A`."""
    with _registry_lock:
        try:
            builder = _REGISTRY[str(kind).lower()]
        except KeyError:
            raise ValueError(
                f"unknown preconditioner {kind!r}; registered kinds: "
                f"{sorted(_REGISTRY)}"
            ) from None
    return builder(A)
