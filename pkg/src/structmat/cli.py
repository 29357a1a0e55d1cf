"""Command-line front end: generate, inspect, precondition, solve, benchmark.

Exit codes are a stable contract: 0 success, 2 usage error, 3 numerical
error (singular / breakdown / rank deficiency), 4 I/O or parse error.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

import numpy as np

from . import __version__
from .circulant import Circulant
from .config import (
    Config,
    EmbeddingPolicy,
    config_get,
    config_reset,
    config_set,
)
from .errors import (
    BreakdownError,
    DimensionMismatchError,
    MatrixFileError,
    RankDeficientError,
    SingularMatrixError,
    StructmatError,
    UnderdeterminedError,
    UnsupportedOperationError,
)
from .fileio import read_matrix, write_matrix
from .gallery import GALLERY_NAMES, smtgallery
from .preconditioners import smtcprec
from .solvers import SolveFlag, SolveReport, pcg_solve, toep_divide, toep_lstsq
from .toeplitz import Toeplitz

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

# Dense comparison columns are dropped from benchmarks above this order.
BENCH_DENSE_CUTOFF = 2048
_BENCH_SEED = 20240901


def _parse_size(text):
    for sep in ("x", "X", ","):
        if sep in text:
            parts = text.split(sep)
            if len(parts) != 2:
                raise ValueError(f"invalid size {text!r}")
            return (int(parts[0]), int(parts[1]))
    return int(text)


def _parse_param_value(raw: str):
    text = raw.strip()
    if "," in text:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    for caster in (int, float):
        try:
            return caster(text)
        except ValueError:
            continue
    lowered = text.lower()
    if lowered in ("true", "on"):
        return True
    if lowered in ("false", "off"):
        return False
    return text


def _collect_params(args) -> dict:
    params = {}
    for key in ("seed", "p", "rho", "w", "alpha", "delta", "k"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    if getattr(args, "complex", False):
        params["complex"] = True
    for item in getattr(args, "param", None) or []:
        if "=" not in item:
            raise ValueError(f"--param expects KEY=VALUE, got {item!r}")
        key, _, raw = item.partition("=")
        params[key.strip()] = _parse_param_value(raw)
    return params


def _apply_global_config(args) -> Config:
    config_reset()
    if getattr(args, "config", None):
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise MatrixFileError(f"cannot read config file: {exc}") from exc
        for lineno, line in enumerate(lines, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            if "=" not in text:
                raise StructmatError(
                    f"{args.config}:{lineno}: expected key=value, got {text!r}"
                )
            key, _, value = text.partition("=")
            config_set(key.strip(), value.strip())
    if getattr(args, "embedding", None):
        config_set("embedding", args.embedding)
    if getattr(args, "no_toeprem", False):
        config_set("toeprem", False)
    if getattr(args, "no_intsolve", False):
        config_set("intsolve", False)
    if getattr(args, "no_intsolvels", False):
        config_set("intsolvels", False)
    if getattr(args, "no_warnings", False):
        config_set("warnings", False)
    return config_get()


def _describe(obj) -> tuple[str, str]:
    if isinstance(obj, Circulant):
        return "circulant", f"{obj.n}x{obj.n}"
    if isinstance(obj, Toeplitz):
        return "toeplitz", f"{obj.shape[0]}x{obj.shape[1]}"
    arr = np.asarray(obj)
    if arr.ndim == 1:
        return "vector", f"{arr.shape[0]}"
    return "dense", f"{arr.shape[0]}x{arr.shape[1]}"


# -- commands --------------------------------------------------------------


def run_gen(args) -> int:
    params = _collect_params(args)
    matrix = smtgallery(args.name, _parse_size(args.size), **params)
    write_matrix(args.output, matrix)
    kind, dims = _describe(matrix)
    print(f"gen: wrote {kind} {dims} ({args.name}) to {args.output}")
    return EXIT_OK


def run_info(args) -> int:
    obj = read_matrix(args.path)
    kind, dims = _describe(obj)
    print(f"type: {kind}")
    print(f"dims: {dims}")
    if isinstance(obj, Circulant):
        print(f"col: {obj.n} entries")
        print(f"ev: {obj.n}")
    elif isinstance(obj, Toeplitz):
        m, n = obj.shape
        print(f"t: {m + n - 1} entries")
        print(f"cev: {obj.cev.shape[0] if obj.cev is not None else 'not computed'}")
    if args.full:
        dense = obj.full() if isinstance(obj, (Circulant, Toeplitz)) else np.asarray(obj)
        if max(dense.shape, default=0) <= 12:
            print(np.array2string(dense, precision=6, suppress_small=True))
        else:
            print("(matrix too large for full display)")
    return EXIT_OK


def run_precond(args) -> int:
    matrix = read_matrix(args.matrix)
    result = smtcprec(args.kind, matrix)
    write_matrix(args.output, result)
    print(f"precond: wrote circulant {result.n}x{result.n} ({args.kind}) to {args.output}")
    return EXIT_OK


def _auto_solve(A, b, config) -> tuple[np.ndarray, SolveReport]:
    if isinstance(A, Toeplitz):
        x = toep_divide(A, b, config)
    elif isinstance(A, Circulant):
        x = A.solve(b)
    else:
        arr = np.asarray(A)
        if arr.shape[0] == arr.shape[1]:
            x = np.linalg.solve(arr, b)
        else:
            x, *_ = np.linalg.lstsq(arr, b, rcond=None)
    res = _relative_residual(A, x, b)
    return x, SolveReport(0, res, SolveFlag.CONVERGED)


def _relative_residual(A, x, b) -> float:
    bnorm = np.linalg.norm(b)
    return float(np.linalg.norm(b - A @ x) / bnorm) if bnorm else 0.0


def run_solve(args) -> int:
    config = config_get()
    A = read_matrix(args.matrix)
    shape = A.shape if not isinstance(A, np.ndarray) else A.shape
    if args.rhs is None and not args.rhs_ones:
        raise StructmatError("solve needs an rhs file or --rhs-ones")
    if args.rhs_ones:
        b = A @ np.ones(shape[1])
        rhs_label = "ones-image"
    else:
        b = read_matrix(args.rhs)
        if not isinstance(b, np.ndarray) or b.ndim != 1:
            raise MatrixFileError(f"{args.rhs}: expected a vector file")
        rhs_label = args.rhs

    start = time.perf_counter()
    method = args.method
    if method == "auto":
        x, report = _auto_solve(A, b, config)
        resolved = "auto"
    elif method == "levinson":
        if not isinstance(A, Toeplitz):
            raise StructmatError("--method levinson requires a Toeplitz matrix file")
        from .solvers import levinson_solve

        x = levinson_solve(A, b)
        report = SolveReport(0, _relative_residual(A, x, b), SolveFlag.CONVERGED)
        resolved = "levinson"
    elif method == "lstsq":
        if not isinstance(A, Toeplitz):
            raise StructmatError("--method lstsq requires a Toeplitz matrix file")
        x = toep_lstsq(A, b)
        report = SolveReport(0, _relative_residual(A, x, b), SolveFlag.CONVERGED)
        resolved = "lstsq"
    else:  # pcg
        M = smtcprec(args.precond, A) if args.precond != "none" else None
        x, report = pcg_solve(A, b, M=M, tol=args.tol, maxit=args.maxit)
        resolved = "pcg"
    wall = time.perf_counter() - start

    if args.output:
        write_matrix(args.output, np.asarray(x))
    print("command: solve")
    print(f"matrix: {args.matrix}")
    print(f"rhs: {rhs_label}")
    print(f"method: {resolved}")
    print(f"precond: {args.precond}")
    print(f"embedding: {config.embedding.value}")
    print(f"toeprem: {'on' if config.toeprem else 'off'}")
    print(f"intsolve: {'on' if config.intsolve else 'off'}")
    print(f"intsolvels: {'on' if config.intsolvels else 'off'}")
    print(f"tol: {args.tol:g}")
    print(f"maxit: {args.maxit if args.maxit is not None else '-'}")
    print(f"iterations: {report.iterations}")
    print(f"relative_residual: {report.relative_residual:.12e}")
    print(f"flag: {report.flag.value}")
    print(f"wall_seconds: {wall:.6f}")
    print(f"output: {args.output or '-'}")
    return EXIT_OK


# -- benchmarks ------------------------------------------------------------


def _median_time(fn, reps: int) -> float:
    # warm up for a fixed minimum time so plan setup, allocator state and
    # CPU frequency ramping do not leak into the samples
    deadline = time.perf_counter() + 0.05
    fn()
    while time.perf_counter() < deadline:
        fn()
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def bench_matvec(sizes, reps, policies, dense_cutoff=BENCH_DENSE_CUTOFF):
    """Fast-vs-dense matvec benchmark rows (op,n,policy,fast,dense,err)."""
    rows = []
    rng = np.random.default_rng(_BENCH_SEED)
    for n in sizes:
        x = rng.standard_normal(n)
        t = rng.standard_normal(2 * n - 1)
        for policy in policies:
            cfg = Config(embedding=policy, toeprem=True)
            T = Toeplitz.from_diagonals(t, n, n, config=cfg)
            fast = _median_time(lambda: T @ x, reps)
            if n <= dense_cutoff:
                A = T.full()
                dense = _median_time(lambda: A @ x, reps)
                ref = A @ x
                err = float(
                    np.max(np.abs(T @ x - ref)) / max(np.max(np.abs(ref)), 1e-300)
                )
                rows.append(("matvec", n, policy.value, fast, dense, err))
            else:
                rows.append(("matvec", n, policy.value, fast, None, None))
    return rows


def bench_solve(sizes, reps, policies, dense_cutoff=BENCH_DENSE_CUTOFF):
    """Levinson-vs-dense-LU solve benchmark rows."""
    from .solvers import levinson_solve

    rows = []
    for n in sizes:
        for policy in policies:
            cfg = Config(embedding=policy, toeprem=True)
            T = smtgallery("tkms", n, rho=0.5)
            T = Toeplitz.from_diagonals(T.t, n, n, config=cfg)
            b = T @ np.ones(n)
            fast = _median_time(lambda: levinson_solve(T, b), reps)
            if n <= dense_cutoff:
                A = T.full()
                dense = _median_time(lambda: np.linalg.solve(A, b), reps)
                ref = np.linalg.solve(A, b)
                got = levinson_solve(T, b)
                err = float(np.linalg.norm(got - ref) / np.linalg.norm(ref))
                rows.append(("solve", n, policy.value, fast, dense, err))
            else:
                rows.append(("solve", n, policy.value, fast, None, None))
    return rows


def run_bench(args) -> int:
    sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    if not sizes or any(n < 1 for n in sizes):
        raise StructmatError(f"invalid --sizes {args.sizes!r}")
    policies = (
        [EmbeddingPolicy.TIGHT, EmbeddingPolicy.POW2]
        if args.policies == "both"
        else [config_get().embedding]
    )
    runner = bench_matvec if args.kind == "matvec" else bench_solve
    rows = runner(sizes, args.reps, policies)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write("op,n,policy,fast_seconds,dense_seconds,max_rel_err\n")
        for op, n, policy, fast, dense, err in rows:
            dense_s = f"{dense:.9f}" if dense is not None else ""
            err_s = f"{err:.3e}" if err is not None else ""
            fh.write(f"{op},{n},{policy},{fast:.9f},{dense_s},{err_s}\n")
    print(f"bench: wrote {len(rows)} rows to {args.output}")
    return EXIT_OK


# -- argument parsing --------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--embedding", choices=["tight", "pow2"],
                        help="circulant-embedding size policy")
    common.add_argument("--no-toeprem", action="store_true",
                        help="skip eager embedding-eigenvalue precomputation")
    common.add_argument("--no-intsolve", action="store_true",
                        help="route square Toeplitz division to the registered solver")
    common.add_argument("--no-intsolvels", action="store_true",
                        help="route overdetermined division to the registered solver")
    common.add_argument("--no-warnings", action="store_true",
                        help="silence non-fatal diagnostics")
    common.add_argument("--config", metavar="FILE",
                        help="key=value configuration file, one entry per line")

    parser = argparse.ArgumentParser(
        prog="structmat",
        description="structured-matrix toolkit: circulant/Toeplitz fast arithmetic",
    )
    parser.add_argument("--version", action="version", version=f"structmat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a gallery matrix")
    p.add_argument("name", help=f"one of: {', '.join(GALLERY_NAMES)}")
    p.add_argument("size", help="order n, or MxN for rectangular generators")
    p.add_argument("-o", "--output", required=True, help="output matrix file")
    p.add_argument("--seed", type=int, help="RNG seed for random generators")
    p.add_argument("--complex", action="store_true", help="complex random entries")
    p.add_argument("--p", type=float, help="decay rate (algdec/expdec/gaussian)")
    p.add_argument("--rho", type=float, help="KMS correlation parameter")
    p.add_argument("--w", type=float, help="prolate bandwidth")
    p.add_argument("--alpha", type=float, help="tchow/ttriw value parameter")
    p.add_argument("--delta", type=float, help="tchow diagonal shift")
    p.add_argument("--k", type=int, help="band count / pattern variant")
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="extra generator parameter (repeatable)")
    p.set_defaults(func=run_gen)

    p = sub.add_parser("info", parents=[common], help="inspect a matrix file")
    p.add_argument("path")
    p.add_argument("--full", action="store_true",
                   help="also print the dense matrix (orders up to 12)")
    p.set_defaults(func=run_info)

    p = sub.add_parser("precond", parents=[common], help="build a circulant preconditioner")
    p.add_argument("kind", help="strang, optimal, superoptimal, or a registered kind")
    p.add_argument("matrix", help="input matrix file")
    p.add_argument("-o", "--output", required=True, help="output circulant file")
    p.set_defaults(func=run_precond)

    p = sub.add_parser("solve", parents=[common], help="solve a linear system")
    p.add_argument("matrix", help="coefficient matrix file")
    p.add_argument("rhs", nargs="?", help="right-hand-side vector file")
    p.add_argument("--rhs-ones", action="store_true",
                   help="use b = A @ ones (prescribed all-ones solution)")
    p.add_argument("--method", choices=["auto", "levinson", "pcg", "lstsq"],
                   default="auto")
    p.add_argument("--precond", choices=["none", "strang", "optimal", "superoptimal"],
                   default="none", help="circulant preconditioner for pcg")
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--maxit", type=int, default=None)
    p.add_argument("-o", "--output", help="write the solution vector here")
    p.set_defaults(func=run_solve)

    p = sub.add_parser("bench", parents=[common], help="benchmark fast vs dense paths")
    p.add_argument("kind", choices=["matvec", "solve"])
    p.add_argument("--sizes", required=True, help="comma-separated orders")
    p.add_argument("--reps", type=int, default=3, help="repetitions (median reported)")
    p.add_argument("--policies", choices=["active", "both"], default="active")
    p.add_argument("-o", "--output", required=True, help="output CSV")
    p.set_defaults(func=run_bench)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        _apply_global_config(args)
        return args.func(args)
    except (SingularMatrixError, BreakdownError, RankDeficientError,
            UnderdeterminedError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (MatrixFileError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_IO
    except (StructmatError, UnsupportedOperationError, DimensionMismatchError,
            ValueError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
