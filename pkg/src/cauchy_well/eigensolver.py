"""Dense symmetric eigensolver: Householder tridiagonalisation, then implicit QL.

``eigh`` returns every eigenpair; ``eigvals_only`` reduces to tridiagonal
form without accumulating the transformation and bisects Sturm sequences for
the lowest few eigenvalues, which is what the large convergence tables need.
Both run on the compiled kernels when they are built.
"""

from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np

from ._backend import kernels
from .errors import EigenSolverError
from .galerkin import GalerkinBlock
from .operator import Parity

__all__ = ["EigenSolveOptions", "EigenPair", "eigh", "eigvals_only", "apply_sign_convention"]

MACHINE_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class EigenSolveOptions:
    compute_vectors: bool = True
    max_iterations_per_eigenvalue: int = 30
    convergence_tol: float = MACHINE_EPS

    def __post_init__(self):
        if self.convergence_tol < MACHINE_EPS:
            raise ValueError("convergence_tol below machine epsilon")
        if self.max_iterations_per_eigenvalue < 30:
            raise ValueError("max_iterations_per_eigenvalue must be >= 30")


@dataclass
class EigenPair:
    """One Ritz value with its coefficient vector in the parity basis.

    ``vector`` and ``residual`` are ``None`` when vectors were not requested.
    """

    value: float
    vector: np.ndarray | None
    parity: Parity | None
    residual: float | None
    block_size: int


def _unpack(block):
    if isinstance(block, GalerkinBlock):
        return np.asarray(block.entries, dtype=float), block.parity
    a = np.asarray(block, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    return a, None


def apply_sign_convention(vectors):
    """Flip columns so the largest-magnitude coefficient of each is positive."""
    vectors = np.array(vectors, dtype=float, copy=True)
    if vectors.size == 0:
        return vectors
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


SAFE_MIN = 2.0**-300
SAFE_MAX = 2.0**300


def _safe_scale(a):
    # squares inside the reductions underflow/overflow outside ~[1e-154, 1e154];
    # rescale by an exact power of two
    amax = float(np.abs(a).max()) if a.size else 0.0
    if amax == 0.0 or SAFE_MIN <= amax <= SAFE_MAX:
        return a, 1.0
    scale = 2.0 ** math.frexp(amax)[1]
    return a / scale, scale


def _tridiagonal(a, want_q):
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * float(np.abs(a).max())):
        raise ValueError("matrix is not symmetric")
    return kernels.tridiagonalize(a, want_q)


def eigh(block, opts: EigenSolveOptions = EigenSolveOptions()) -> list[EigenPair]:
    """All eigenpairs of a symmetric block, ascending by value."""
    a, parity = _unpack(block)
    n = a.shape[0]
    if n == 0:
        return []
    work, scale = _safe_scale(a)
    d, e, q = _tridiagonal(work, opts.compute_vectors)
    values, z, failed = kernels.tql_implicit(
        d, e, q if opts.compute_vectors else None, opts.max_iterations_per_eigenvalue, opts.convergence_tol
    )
    if failed >= 0:
        raise EigenSolverError(
            f"QL iteration did not converge for eigenvalue {failed} within "
            f"{opts.max_iterations_per_eigenvalue} sweeps",
            index=failed,
        )
    order = np.argsort(values, kind="stable")
    values = values[order] * scale
    if not opts.compute_vectors:
        return [EigenPair(float(v), None, parity, None, n) for v in values]
    vectors = apply_sign_convention(z[:, order])
    residuals = np.linalg.norm(work @ vectors - vectors * (values / scale), axis=0) * scale
    return [
        EigenPair(float(values[j]), vectors[:, j].copy(), parity, float(residuals[j]), n) for j in range(n)
    ]


def eigvals_only(block, count: int, opts: EigenSolveOptions = EigenSolveOptions(compute_vectors=False)) -> list[float]:
    """Lowest ``count`` eigenvalues, ascending, by Sturm bisection on the tridiagonal form."""
    a, _ = _unpack(block)
    n = a.shape[0]
    if not 1 <= count <= n:
        raise ValueError(f"count must lie in [1, {n}], got {count}")
    work, scale = _safe_scale(a)
    d, e, _ = _tridiagonal(work, False)
    return [float(v) * scale for v in kernels.bisect_lowest(d, e, int(count), 200)]
