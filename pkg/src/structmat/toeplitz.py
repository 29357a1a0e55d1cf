"""Toeplitz matrices stored by diagonals, with fast embedded products.

An m-by-n Toeplitz matrix T has entry (i, j) equal to t[i - j], so the
whole matrix is held in a single vector of m + n - 1 diagonal values,
ordered from the top-right diagonal t[1-n] up to the bottom-left t[m-1].

Matrix-vector products embed T in a circulant of order N (either the tight
N = m + n - 1 or the next power of two, per the active embedding policy),
pad the vector with zeros, multiply in the Fourier domain and crop the
result.  The embedding eigenvalues are cached in the `cev` field; with the
`toeprem` setting on (the default) they are computed when the value is
allocated, so each product costs two transforms instead of three.

Values are immutable apart from the idempotent `cev` cache fill, which is
safe under concurrent access: readers observe either no cache or a fully
written one, and duplicated fills produce identical arrays.
"""

from __future__ import annotations

import numpy as np

from ._util import as_vector, frozen, is_scalar, realify, require_finite
from .circulant import (
    ENTRYWISE_MAPS,
    Circulant,
    _as_index_array,
    _is_unit_slice,
    _norm_index,
    _slice_bounds,
)
from .config import Config, EmbeddingPolicy, config_get, embedded_size
from .errors import DimensionMismatchError, UnsupportedOperationError

__all__ = ["Toeplitz"]

_FORBIDDEN_MSG = (
    "no fast {what} is registered for Toeplitz matrices; use the routines in "
    "structmat.solvers (or densify with full()) or supply your own"
)


class Toeplitz:
    """m-by-n Toeplitz matrix stored by diagonals."""

    __array_ufunc__ = None
    __slots__ = ("_t", "_m", "_n", "_policy", "_eager", "_cev")

    def __init__(self, col, row=None, config: Config | None = None):
        """Build from first column and (optionally) first row.

        With `row` omitted the matrix is completed Hermitianly:
        row[k] = conj(col[k]).  When both are given their leading entries
        must agree exactly, since both describe the main diagonal.
        """
        c = require_finite(as_vector(col, "first column"), "first column")
        if row is None:
            r = np.concatenate([c[:1], np.conj(c[1:])])
        else:
            r = require_finite(as_vector(row, "first row"), "first row")
            if c[0] != r[0]:
                raise ValueError(
                    f"first column and first row disagree on the diagonal entry: "
                    f"{c[0]} vs {r[0]}"
                )
        t = np.concatenate([r[:0:-1], c])
        self._init_from_t(t, c.shape[0], r.shape[0], config)

    @classmethod
    def from_diagonals(cls, t, m: int, n: int, config: Config | None = None) -> "Toeplitz":
        """Build an m-by-n Toeplitz directly from its diagonal vector
        (length m + n - 1, ordered t[1-n], ..., t[m-1])."""
        tv = require_finite(as_vector(t, "diagonal vector"), "diagonal vector")
        m, n = int(m), int(n)
        if m < 1 or n < 1:
            raise ValueError(f"dimensions must be positive, got {m}x{n}")
        if tv.shape[0] != m + n - 1:
            raise DimensionMismatchError(
                f"diagonal vector has {tv.shape[0]} entries, expected {m + n - 1} "
                f"for a {m}x{n} matrix"
            )
        obj = cls.__new__(cls)
        obj._init_from_t(tv, m, n, config)
        return obj

    def _init_from_t(self, t, m, n, config):
        cfg = config if config is not None else config_get()
        self._t = frozen(np.ascontiguousarray(t))
        self._m = m
        self._n = n
        self._policy = cfg.embedding
        self._eager = cfg.toeprem
        self._cev = None
        if self._eager:
            self._ensure_cev()

    @classmethod
    def _from_parts(cls, t, m, n, policy, eager, cev) -> "Toeplitz":
        obj = cls.__new__(cls)
        obj._t = frozen(np.ascontiguousarray(t))
        obj._m = m
        obj._n = n
        obj._policy = policy
        obj._eager = eager
        obj._cev = frozen(np.ascontiguousarray(cev)) if cev is not None else None
        return obj

    def _rebuild(self, t, m=None, n=None) -> "Toeplitz":
        """New value with this value's baked policy; cev recomputed per the
        eagerness baked at construction."""
        out = Toeplitz._from_parts(
            t, self._m if m is None else m, self._n if n is None else n,
            self._policy, self._eager, None,
        )
        if out._eager:
            out._ensure_cev()
        return out

    # -- basic data ------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self._m, self._n)

    @property
    def dtype(self):
        return self._t.dtype

    @property
    def isreal(self) -> bool:
        return not np.iscomplexobj(self._t)

    @property
    def t(self) -> np.ndarray:
        """Diagonal vector, t[k] holding diagonal k - (n-1) (read-only view)."""
        return self._t

    @property
    def policy(self) -> EmbeddingPolicy:
        return self._policy

    @property
    def embed_order(self) -> int:
        """Order of the circulant embedding under the baked policy."""
        return embedded_size(self._m, self._n, self._policy)

    @property
    def cev(self) -> np.ndarray | None:
        """Cached embedding eigenvalues, or None if not yet computed."""
        return self._cev

    def full(self) -> np.ndarray:
        """Dense m-by-n array with entries t[i - j]."""
        idx = np.arange(self._m)[:, None] - np.arange(self._n)[None, :] + (self._n - 1)
        return self._t[idx]

    def __repr__(self):
        cev = "none" if self._cev is None else str(self._cev.shape[0])
        return (
            f"Toeplitz(shape={self._m}x{self._n}, dtype={self.dtype}, "
            f"policy={self._policy.value}, cev={cev})"
        )

    def __eq__(self, other):
        if isinstance(other, Toeplitz):
            return self.shape == other.shape and bool(np.array_equal(self._t, other._t))
        return NotImplemented

    __hash__ = None

    # -- embedding and products --------------------------------------------

    def embed(self, policy: EmbeddingPolicy | None = None) -> np.ndarray:
        """First column of the circulant embedding:
        [t0, t1, ..., t[m-1], 0..., t[1-n], ..., t[-1]]."""
        pol = self._policy if policy is None else policy
        size = embedded_size(self._m, self._n, pol)
        e = np.zeros(size, dtype=self.dtype)
        e[: self._m] = self._t[self._n - 1:]
        if self._n > 1:
            e[size - (self._n - 1):] = self._t[: self._n - 1]
        return e

    def _ensure_cev(self) -> np.ndarray:
        cev = self._cev
        if cev is None:
            # idempotent cache fill; concurrent duplicates compute equal arrays
            cev = frozen(np.fft.fft(self.embed()))
            self._cev = cev
        return cev

    def toeprem(self) -> "Toeplitz":
        """Precompute (if needed) the embedding eigenvalues; returns self."""
        self._ensure_cev()
        return self

    def _apply(self, arr):
        """Embedded product along axis 0: zero-pad, multiply spectra, crop."""
        if arr.shape[0] != self._n:
            raise DimensionMismatchError(
                f"operand has leading dimension {arr.shape[0]}, expected {self._n}"
            )
        cev = self._ensure_cev()
        size = cev.shape[0]
        spec = cev.reshape((-1,) + (1,) * (arr.ndim - 1))
        freq = np.fft.fft(arr, n=size, axis=0)
        np.multiply(spec, freq, out=freq)
        out = np.fft.ifft(freq, axis=0)[: self._m]
        return realify(out, self.isreal and not np.iscomplexobj(arr))

    def matvec(self, x) -> np.ndarray:
        """Fast product T @ x via the circulant embedding."""
        return self._apply(as_vector(x, "vector"))

    # -- structure manipulation ------------------------------------------

    def transpose(self, conjugate: bool = False) -> "Toeplitz":
        """Transpose (or conjugate transpose); the diagonal vector reverses
        and the cached spectrum is carried over by permutation/conjugation,
        so no transforms are needed."""
        t = self._t[::-1]
        cev = self._cev
        if conjugate:
            t = np.conj(t)
            new_cev = np.conj(cev) if cev is not None else None
        else:
            if cev is not None:
                size = cev.shape[0]
                new_cev = cev[np.mod(-np.arange(size), size)]
            else:
                new_cev = None
        return Toeplitz._from_parts(t, self._n, self._m, self._policy, self._eager, new_cev)

    @property
    def T(self) -> "Toeplitz":
        return self.transpose(False)

    @property
    def H(self) -> "Toeplitz":
        return self.transpose(True)

    def conj(self) -> "Toeplitz":
        return self.map_entries("conj")

    def map_entries(self, tag: str) -> "Toeplitz":
        """Apply an elementary entrywise map along the diagonals; the cev
        cache is recomputed per the baked policy."""
        try:
            f = ENTRYWISE_MAPS[tag]
        except KeyError:
            raise ValueError(
                f"unknown entrywise map {tag!r}; expected one of "
                f"{sorted(ENTRYWISE_MAPS)}"
            ) from None
        return self._rebuild(f(self._t))

    def scale(self, alpha) -> "Toeplitz":
        """alpha * T; a cached spectrum is scaled rather than recomputed."""
        cev = alpha * self._cev if self._cev is not None else None
        return Toeplitz._from_parts(
            alpha * self._t, self._m, self._n, self._policy, self._eager, cev
        )

    def tril(self, k: int = 0) -> "Toeplitz":
        """Keep diagonals i - j >= -k (at and below the k-th), zero the rest."""
        t = self._t.copy()
        cut = self._n - 1 - int(k)
        t[: max(0, min(cut, t.shape[0]))] = 0
        return self._rebuild(t)

    def triu(self, k: int = 0) -> "Toeplitz":
        """Keep diagonals i - j <= -k (at and above the k-th), zero the rest."""
        t = self._t.copy()
        cut = self._n - int(k)
        t[max(0, min(cut, t.shape[0])):] = 0
        return self._rebuild(t)

    # -- reductions --------------------------------------------------------

    def sum(self) -> np.ndarray:
        """Per-column sums, computed from the diagonal vector."""
        cs = np.concatenate([np.zeros(1, dtype=self.dtype), np.cumsum(self._t)])
        starts = self._n - 1 - np.arange(self._n)
        return cs[starts + self._m] - cs[starts]

    def prod(self) -> np.ndarray:
        """Per-column products, computed from the diagonal vector."""
        out = np.empty(self._n, dtype=self.dtype)
        for j in range(self._n):
            start = self._n - 1 - j
            out[j] = np.prod(self._t[start: start + self._m])
        return out

    def diag(self, k: int = 0) -> np.ndarray:
        """The k-th diagonal (constant by Toeplitz structure)."""
        k = int(k)
        length = min(self._m, self._n - k) if k >= 0 else min(self._m + k, self._n)
        if length <= 0:
            return np.empty(0, dtype=self.dtype)
        return np.full(length, self._t[self._n - 1 - k], dtype=self.dtype)

    # -- deliberately unsupported dense-algebra entry points ----------------

    def inv(self):
        raise UnsupportedOperationError(_FORBIDDEN_MSG.format(what="inverse"))

    def det(self):
        raise UnsupportedOperationError(_FORBIDDEN_MSG.format(what="determinant"))

    def eig(self):
        raise UnsupportedOperationError(_FORBIDDEN_MSG.format(what="eigensolver"))

    # -- indexing ----------------------------------------------------------

    def __getitem__(self, key):
        """T[i, j] is a scalar; contiguous slice pairs stay Toeplitz;
        anything else densifies."""
        if not (isinstance(key, tuple) and len(key) == 2):
            raise TypeError("indexing requires a (rows, cols) pair")
        rows, cols = key
        m, n = self._m, self._n
        if isinstance(rows, (int, np.integer)) and isinstance(cols, (int, np.integer)):
            i = _norm_index(rows, m)
            j = _norm_index(cols, n)
            return self._t[i - j + n - 1]
        if _is_unit_slice(rows) and _is_unit_slice(cols):
            r0, r1 = _slice_bounds(rows, m)
            c0, c1 = _slice_bounds(cols, n)
            m_new, n_new = r1 - r0, c1 - c0
            if m_new == 0 or n_new == 0:
                return np.empty((m_new, n_new), dtype=self.dtype)
            lo = r0 - (c1 - 1) + n - 1
            return self._rebuild(self._t[lo: lo + m_new + n_new - 1], m_new, n_new)
        r_idx = _as_index_array(rows, m)
        c_idx = _as_index_array(cols, n)
        sub = self._t[r_idx[:, None] - c_idx[None, :] + n - 1]
        if isinstance(rows, (int, np.integer)) or isinstance(cols, (int, np.integer)):
            return sub.reshape(-1)
        return sub

    # -- operators ---------------------------------------------------------

    def _coerce_structured(self, other):
        """Convert a structured operand to a shape-checked Toeplitz."""
        if isinstance(other, Circulant):
            other = other.to_toeplitz()
        if isinstance(other, Toeplitz):
            if other.shape != self.shape:
                raise DimensionMismatchError(
                    f"shapes disagree: {self.shape} vs {other.shape}"
                )
            return other
        return None

    def _add_toep(self, other, sign):
        t = self._t + sign * other._t
        cev = None
        if (
            self._cev is not None
            and other._cev is not None
            and self._cev.shape == other._cev.shape
        ):
            cev = self._cev + sign * other._cev
        return Toeplitz._from_parts(t, self._m, self._n, self._policy, self._eager, cev)

    def __add__(self, other):
        if is_scalar(other):
            # every entry sits on some diagonal, so shift the whole vector;
            # the spectrum is refilled lazily on the next product
            return Toeplitz._from_parts(
                self._t + other, self._m, self._n, self._policy, self._eager, None
            )
        st = self._coerce_structured(other)
        if st is not None:
            return self._add_toep(st, 1)
        if isinstance(other, np.ndarray):
            return self.full() + other
        return NotImplemented

    def __radd__(self, other):
        if is_scalar(other):
            return self.__add__(other)
        if isinstance(other, np.ndarray):
            return other + self.full()
        return NotImplemented

    def __sub__(self, other):
        if is_scalar(other):
            return self.__add__(-other)
        st = self._coerce_structured(other)
        if st is not None:
            return self._add_toep(st, -1)
        if isinstance(other, np.ndarray):
            return self.full() - other
        return NotImplemented

    def __rsub__(self, other):
        if is_scalar(other):
            return (-self).__add__(other)
        if isinstance(other, np.ndarray):
            return other - self.full()
        return NotImplemented

    def __neg__(self):
        return self.scale(-1)

    def __pos__(self):
        return self

    def __mul__(self, other):
        # elementwise product; constant diagonals multiply diagonal-wise
        if is_scalar(other):
            return self.scale(other)
        st = self._coerce_structured(other)
        if st is not None:
            return self._rebuild(self._t * st._t)
        if isinstance(other, np.ndarray):
            return self.full() * other
        return NotImplemented

    def __rmul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        if isinstance(other, np.ndarray):
            return other * self.full()
        return NotImplemented

    def __truediv__(self, other):
        if is_scalar(other):
            return self.scale(1.0 / other)
        return NotImplemented

    def __matmul__(self, other):
        # any Toeplitz product beyond matrix-vector densifies: products of
        # Toeplitz matrices are not Toeplitz in general
        if isinstance(other, (Toeplitz, Circulant)):
            if other.shape[0] != self._n:
                raise DimensionMismatchError(
                    f"inner dimensions disagree: {self.shape} @ {other.shape}"
                )
            return self._apply(other.full())
        if isinstance(other, np.ndarray):
            if other.ndim == 1:
                return self.matvec(other)
            if other.ndim == 2:
                return self._apply(other)
        return NotImplemented

    def __rmatmul__(self, other):
        if isinstance(other, np.ndarray):
            if other.ndim == 1:
                return self.transpose()._apply(other)
            if other.ndim == 2:
                return self.transpose()._apply(other.T).T
        return NotImplemented

    def __abs__(self):
        return self.map_entries("abs")
