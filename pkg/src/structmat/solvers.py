"""Linear-system solution for structured operands.

Provides a classical Levinson recursion for square Toeplitz systems (O(n^2),
with breakdown detection on near-singular leading minors), a conjugate
gradient on the normal equations for overdetermined Toeplitz least squares
(fast matvecs, dense QR below a size cutoff), a generic preconditioned
conjugate gradient, and the division dispatcher that routes between the
internal solvers and user-registered replacements according to the active
configuration.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass

import numpy as np

from ._util import as_vector, realify
from .circulant import Circulant
from .config import Config, config_get
from .errors import (
    BreakdownError,
    DimensionMismatchError,
    RankDeficientError,
    StructmatError,
    UnderdeterminedError,
)
from .toeplitz import Toeplitz

__all__ = [
    "SolveFlag",
    "SolveReport",
    "levinson_solve",
    "toep_lstsq",
    "pcg_solve",
    "toep_divide",
    "register_tsolve",
    "register_tsolvels",
]

# Levinson refuses to divide by denominators this small relative to scale.
BREAKDOWN_RTOL = 1e-12
# toep_lstsq uses a dense QR below this column count.
LSTSQ_DENSE_CUTOFF = 64
# QR path flags rank deficiency when the R diagonal spans more than this.
LSTSQ_RDIAG_RTOL = 1e-7
# CGLS stops when ||A*(b - Ax)|| <= LSTSQ_RTOL * ||A*b||.
LSTSQ_RTOL = 1e-12


class SolveFlag(enum.Enum):
    CONVERGED = "converged"
    MAX_ITERATIONS = "max_iterations"
    BREAKDOWN = "breakdown"


@dataclass
class SolveReport:
    """Outcome of an iterative (or direct) solve."""

    iterations: int
    relative_residual: float
    flag: SolveFlag


def levinson_solve(T: Toeplitz, b) -> np.ndarray:
    """Solve a square nonsingular Toeplitz system by Levinson recursion.

    The recursion grows the solution of the leading k-by-k subsystem one
    order at a time, maintaining a forward vector f (inverse's first column)
    and a backward vector w (inverse's last column).  It requires every
    leading principal minor to be (numerically) nonsingular; otherwise a
    BreakdownError is raised and a dense solver should be used instead.
    """
    if not isinstance(T, Toeplitz):
        raise TypeError("levinson_solve expects a Toeplitz matrix")
    m, n = T.shape
    if m != n:
        raise DimensionMismatchError(f"levinson_solve requires a square matrix, got {m}x{n}")
    bv = as_vector(b, "right-hand side")
    if bv.shape[0] != n:
        raise DimensionMismatchError(
            f"right-hand side has length {bv.shape[0]}, expected {n}"
        )
    a = T.t  # a[d + n - 1] holds diagonal d
    scale = np.abs(a).max()
    t0 = a[n - 1]
    if abs(t0) <= BREAKDOWN_RTOL * max(1.0, scale):
        raise BreakdownError(
            "Levinson breakdown at order 1: zero leading entry; "
            "disable the internal solver to fall back to a dense factorization"
        )
    dtype = np.result_type(a.dtype, bv.dtype, np.float64)
    x = np.zeros(n, dtype=dtype)
    f = np.zeros(n, dtype=dtype)  # inverse's first column at the current order
    w = np.zeros(n, dtype=dtype)  # inverse's last column at the current order
    x[0] = bv[0] / t0
    f[0] = 1.0 / t0
    w[0] = 1.0 / t0
    for k in range(1, n):
        # row k of T against the current vectors: sum_j t_{k-j} v_j
        row = a[n: n + k][::-1]
        eps_f = row @ f[:k]
        eta = bv[k] - row @ x[:k]
        # trailing column of T against w: sum_j t_{-1-j} w_j
        colu = a[n - 1 - k: n - 1][::-1]
        delta_w = colu @ w[:k]
        denom = 1.0 - eps_f * delta_w
        if abs(denom) <= BREAKDOWN_RTOL * max(1.0, abs(eps_f * delta_w)):
            raise BreakdownError(
                f"Levinson breakdown at order {k + 1}: singular leading minor; "
                "disable the internal solver to fall back to a dense factorization"
            )
        # padded candidates: (f, 0) maps to e0 + eps_f*ek, (0, w) to dw*e0 + ek
        f_new = np.zeros(k + 1, dtype=dtype)
        f_new[:k] = f[:k]
        f_new[1:] -= eps_f * w[:k]
        w_new = np.zeros(k + 1, dtype=dtype)
        w_new[1:] = w[:k]
        w_new[:k] -= delta_w * f[:k]
        f[: k + 1] = f_new / denom
        w[: k + 1] = w_new / denom
        x[: k + 1] += eta * w[: k + 1]
    return realify(x, T.isreal and not np.iscomplexobj(bv))


def toep_lstsq(T: Toeplitz, b, rtol: float = LSTSQ_RTOL) -> np.ndarray:
    """Least-squares solution of a strictly overdetermined Toeplitz system.

    Below LSTSQ_DENSE_CUTOFF columns a dense Householder QR is used; above
    it, conjugate gradient on the normal equations A* A x = A* b with fast
    Toeplitz products (CGLS).  Underdetermined or numerically rank-deficient
    input raises.
    """
    if not isinstance(T, Toeplitz):
        raise TypeError("toep_lstsq expects a Toeplitz matrix")
    m, n = T.shape
    if m <= n:
        raise UnderdeterminedError(
            f"underdetermined system: {m}x{n} has no more rows than columns"
        )
    bv = as_vector(b, "right-hand side")
    if bv.shape[0] != m:
        raise DimensionMismatchError(
            f"right-hand side has length {bv.shape[0]}, expected {m}"
        )
    real = T.isreal and not np.iscomplexobj(bv)
    if n < LSTSQ_DENSE_CUTOFF:
        A = T.full()
        q, r = np.linalg.qr(A)
        rd = np.abs(np.diag(r))
        if rd.min() <= LSTSQ_RDIAG_RTOL * rd.max():
            raise RankDeficientError(
                "rank deficient: QR diagonal spans more than "
                f"{1 / LSTSQ_RDIAG_RTOL:.0e}"
            )
        from numpy.linalg import solve

        x = solve(r, q.conj().T @ bv)
        return realify(x, real)
    return _cgls(T, bv, rtol, real)


def _cgls(T: Toeplitz, b, rtol, real):
    m, n = T.shape
    TH = T.H
    x = np.zeros(n, dtype=np.complex128)
    r = b.astype(np.complex128)
    s = TH.matvec(r)
    p = s.copy()
    gamma = np.real(np.vdot(s, s))
    target = rtol * np.sqrt(gamma)
    maxit = 5 * n
    for _ in range(maxit):
        q = T.matvec(p)
        qq = np.real(np.vdot(q, q))
        if qq == 0.0 or not np.isfinite(qq):
            break
        alpha = gamma / qq
        x += alpha * p
        r -= alpha * q
        s = TH.matvec(r)
        gamma_new = np.real(np.vdot(s, s))
        if np.sqrt(gamma_new) <= target:
            return realify(x, real)
        p = s + (gamma_new / gamma) * p
        gamma = gamma_new
    raise RankDeficientError(
        f"rank deficient: normal-equations residual stagnated after {maxit} "
        "CGLS iterations"
    )


def _as_operator(A):
    """Normalize an operator argument to (apply, order)."""
    if callable(A):
        return A, None
    if isinstance(A, (Circulant, Toeplitz)):
        if A.shape[0] != A.shape[1]:
            raise DimensionMismatchError("pcg_solve requires a square operator")
        return A.matvec, A.shape[0]
    arr = np.asarray(A)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError("pcg_solve requires a square operator")
    return (lambda v: arr @ v), arr.shape[0]


def pcg_solve(
    apply_A,
    b,
    M: Circulant | None = None,
    tol: float = 1e-7,
    maxit: int | None = None,
) -> tuple[np.ndarray, SolveReport]:
    """Preconditioned conjugate gradient for Hermitian positive definite
    operators.

    `apply_A` may be a callable, a structured matrix, or a dense array; a
    circulant preconditioner is applied through its fast solve each
    iteration.  Iteration stops when the recurrence residual satisfies
    ||b - A x|| <= tol * ||b||; the report carries the recomputed true
    relative residual, and the converged flag is only set once the true
    residual meets the tolerance.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    apply_A, order = _as_operator(apply_A)
    bv = as_vector(b, "right-hand side")
    if order is not None and bv.shape[0] != order:
        raise DimensionMismatchError(
            f"right-hand side has length {bv.shape[0]}, expected {order}"
        )
    if maxit is None:
        maxit = bv.shape[0]
    if maxit < 1:
        raise ValueError(f"maxit must be at least 1, got {maxit}")
    bnorm = np.linalg.norm(bv)
    if bnorm == 0.0:
        return np.zeros_like(bv), SolveReport(0, 0.0, SolveFlag.CONVERGED)

    def precond(v):
        return M.solve(v) if M is not None else v

    x = np.zeros_like(bv, dtype=np.result_type(bv.dtype, np.float64))
    r = bv.copy().astype(x.dtype)
    z = precond(r)
    p = np.array(z, dtype=np.result_type(x.dtype, z.dtype), copy=True)
    x = x.astype(p.dtype)
    r = r.astype(p.dtype)
    rho = np.vdot(r, z)
    iterations = 0
    for iterations in range(1, maxit + 1):
        q = apply_A(p)
        pq = np.vdot(p, q)
        if not np.isfinite(pq) or pq == 0.0:
            rel = float(np.linalg.norm(bv - apply_A(x)) / bnorm)
            return x, SolveReport(iterations, rel, SolveFlag.BREAKDOWN)
        alpha = rho / pq
        x = x + alpha * p
        r = r - alpha * q
        if not np.all(np.isfinite(r)):
            rel = float(np.linalg.norm(bv - apply_A(x)) / bnorm)
            return x, SolveReport(iterations, rel, SolveFlag.BREAKDOWN)
        if np.linalg.norm(r) <= tol * bnorm:
            true_rel = float(np.linalg.norm(bv - apply_A(x)) / bnorm)
            if true_rel <= tol:
                return x, SolveReport(iterations, true_rel, SolveFlag.CONVERGED)
            r = bv - apply_A(x)  # recurrence drifted; restart from the true residual
        z = precond(r)
        rho_new = np.vdot(r, z)
        p = z + (rho_new / rho) * p
        rho = rho_new
    rel = float(np.linalg.norm(bv - apply_A(x)) / bnorm)
    flag = SolveFlag.CONVERGED if rel <= tol else SolveFlag.MAX_ITERATIONS
    return x, SolveReport(iterations, rel, flag)


# -- user-replaceable direct solvers --------------------------------------


def _dense_tsolve(T: Toeplitz, b) -> np.ndarray:
    """Default registered square solver: dense LU on the full matrix."""
    x = np.linalg.solve(T.full(), np.asarray(b))
    return realify(x, T.isreal and not np.iscomplexobj(np.asarray(b)))


def _dense_tsolvels(T: Toeplitz, b) -> np.ndarray:
    """Default registered least-squares solver: dense QR on the full matrix."""
    m, n = T.shape
    if m <= n:
        raise UnderdeterminedError(
            f"underdetermined system: {m}x{n} has no more rows than columns"
        )
    x, *_ = np.linalg.lstsq(T.full(), np.asarray(b), rcond=None)
    return realify(x, T.isreal and not np.iscomplexobj(np.asarray(b)))


_solver_lock = threading.Lock()
_user_solvers = {"tsolve": _dense_tsolve, "tsolvels": _dense_tsolvels}


def register_tsolve(fn) -> None:
    """Replace the solver used for square systems when `intsolve` is off.
    Pass None to clear it (division will then error when toggled off)."""
    with _solver_lock:
        _user_solvers["tsolve"] = fn


def register_tsolvels(fn) -> None:
    """Replace the solver used for overdetermined systems when `intsolvels`
    is off.  Pass None to clear it."""
    with _solver_lock:
        _user_solvers["tsolvels"] = fn


def _registered(name):
    with _solver_lock:
        fn = _user_solvers[name]
    if fn is None:
        raise StructmatError(
            f"the internal solver is disabled and no {name} routine is registered"
        )
    return fn


def toep_divide(T: Toeplitz, b, config: Config | None = None) -> np.ndarray:
    """Toeplitz division dispatcher (the backslash of the package).

    Square systems go to the Levinson solver, overdetermined ones to the
    Toeplitz least-squares solver; either route can be redirected to a
    registered user solver by switching `intsolve` / `intsolvels` off.
    """
    if not isinstance(T, Toeplitz):
        raise TypeError("toep_divide expects a Toeplitz matrix")
    cfg = config if config is not None else config_get()
    m, n = T.shape
    if m == n:
        if cfg.intsolve:
            return levinson_solve(T, b)
        return _registered("tsolve")(T, b)
    if cfg.intsolvels:
        return toep_lstsq(T, b)
    return _registered("tsolvels")(T, b)
