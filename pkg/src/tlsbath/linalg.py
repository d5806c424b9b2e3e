"""Dense linear-algebra kernel shared by every solver in the package.

All routines work on complex matrices of the sizes this library produces
(3x3 Bloch blocks up to a few-thousand-dimensional vectorized Liouvillians),
so a single dense code path is used throughout; there is no sparse machinery.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

__all__ = [
    "SingularMatrixError",
    "NoConvergenceError",
    "KernelDimensionError",
    "solve_linear",
    "eigenvalues",
    "eigenpairs",
    "expm_apply",
    "null_vector",
]

# Pivot threshold for declaring a linear system singular, relative to the
# max-row-sum norm of the matrix.
PIVOT_RTOL = 1e-14

# Eigenvector residual bound ||A v - lambda v|| <= EIG_RTOL * ||A||.
EIG_RTOL = 1e-9

# Singular values below NULL_RTOL * ||A||_inf count as zero when sizing the
# kernel in null_vector.
NULL_RTOL = 1e-10

# Dense expm is cheaper than the action-only algorithm below this order.
_EXPM_DENSE_MAX = 128


class SingularMatrixError(np.linalg.LinAlgError):
    """Linear system is singular to working precision."""


class NoConvergenceError(np.linalg.LinAlgError):
    """Iterative eigenvalue reduction failed to converge."""


class KernelDimensionError(np.linalg.LinAlgError):
    """Matrix kernel is not one-dimensional."""


def _as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError("matrix contains non-finite entries")
    return a


def solve_linear(a, b) -> np.ndarray:
    """Solve ``a @ x = b`` by LU factorization with partial pivoting.

    ``b`` may be a vector or a matrix of stacked right-hand sides.  Raises
    :class:`SingularMatrixError` when the smallest pivot falls below
    ``1e-14 * ||a||_inf``.
    """
    a = _as_matrix(a)
    b = np.asarray(b, dtype=complex)
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    norm = np.linalg.norm(a, np.inf) if a.size else 0.0
    with warnings.catch_warnings():
        # the pivot check below turns the condition into a typed raise
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    pivots = np.abs(np.diagonal(lu))
    if norm == 0.0 or pivots.min() < PIVOT_RTOL * norm:
        raise SingularMatrixError(
            f"matrix singular to working precision "
            f"(min pivot {pivots.min() if a.size else 0.0:.3e}, "
            f"threshold {PIVOT_RTOL * norm:.3e})"
        )
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


def eigenvalues(a) -> np.ndarray:
    """All eigenvalues of a square complex matrix (unordered)."""
    a = _as_matrix(a)
    try:
        return np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:  # QR iteration failed
        raise NoConvergenceError(str(exc)) from exc


def eigenpairs(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and right eigenvectors, residual-checked.

    The recovered pairs must satisfy ``||a v - lam v|| <= 1e-9 ||a||``
    column by column; a violation (defective or badly conditioned problem)
    raises :class:`NoConvergenceError`.
    """
    a = _as_matrix(a)
    try:
        lam, vec = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(str(exc)) from exc
    norm = np.linalg.norm(a, np.inf)
    resid = np.linalg.norm(a @ vec - vec * lam[None, :], axis=0)
    bound = EIG_RTOL * max(norm, np.finfo(float).tiny)
    if np.any(resid > bound):
        raise NoConvergenceError(
            f"eigenvector residual {resid.max():.3e} exceeds {bound:.3e}"
        )
    return lam, vec


def expm_apply(a, v, t: float) -> np.ndarray:
    """Apply the propagator ``exp(a * t)`` to a vector ``v``.

    Scaling-and-squaring for small systems, the action-only algorithm for
    large ones; ``t`` must be nonnegative.
    """
    a = _as_matrix(a)
    v = np.asarray(v, dtype=complex)
    if v.shape[0] != a.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} vs {v.shape}")
    if t < 0:
        raise ValueError("propagation time must be nonnegative")
    if t == 0.0:
        return v.copy()
    if a.shape[0] <= _EXPM_DENSE_MAX:
        return scipy.linalg.expm(a * t) @ v
    return scipy.sparse.linalg.expm_multiply(a * t, v)


def null_vector(a) -> np.ndarray:
    """Unit-norm spanning vector of a one-dimensional matrix kernel.

    Uses a full SVD so the kernel dimension is measured, not assumed:
    if the two smallest singular values both fall below
    ``1e-10 * ||a||_inf`` the kernel is degenerate, and if the smallest
    one stays above the threshold there is no numerical kernel at all;
    both conditions raise :class:`KernelDimensionError`.
    """
    a = _as_matrix(a)
    if a.shape[0] < 2:
        raise ValueError("kernel extraction needs at least a 2x2 matrix")
    norm = np.linalg.norm(a, np.inf)
    _, sing, vh = np.linalg.svd(a)
    tol = NULL_RTOL * max(norm, np.finfo(float).tiny)
    if sing[-1] > tol:
        raise KernelDimensionError(
            f"no numerical kernel: smallest singular value {sing[-1]:.3e} "
            f"exceeds {tol:.3e}"
        )
    if sing[-2] <= tol:
        raise KernelDimensionError(
            f"kernel dimension >= 2: singular values "
            f"{sing[-2]:.3e}, {sing[-1]:.3e} both below {tol:.3e}"
        )
    return vh[-1].conj()
