"""Dense Hermitian eigenvalues, singular values and positive-definite solves.

Thin wrappers around LAPACK (via numpy/scipy) that enforce the input
contracts the rest of the package relies on.  All routines accept stacks of
matrices in the leading dimensions.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import InvalidInputError, SingularOperatorError

HERMITIAN_RTOL = 1e-12


def _as_matrix(M) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim < 2:
        raise InvalidInputError(f"expected a matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidInputError("matrix has non-finite entries")
    return M


def is_hermitian(M, rtol: float = HERMITIAN_RTOL) -> bool:
    M = _as_matrix(M)
    if M.shape[-1] != M.shape[-2]:
        return False
    scale = np.abs(M).max(initial=0.0)
    defect = np.abs(M - np.conj(np.swapaxes(M, -1, -2))).max(initial=0.0)
    return bool(defect <= rtol * scale)


def hermitian_eigenvalues(M) -> np.ndarray:
    """Real eigenvalues in descending order along the last axis."""
    M = _as_matrix(M)
    if not is_hermitian(M):
        raise InvalidInputError("matrix is not Hermitian")
    return np.linalg.eigvalsh(M)[..., ::-1]


def singular_values(M) -> np.ndarray:
    """Singular values in descending order along the last axis."""
    M = _as_matrix(M)
    if 0 in M.shape[-2:]:
        return np.zeros(M.shape[:-2] + (0,))
    return np.linalg.svd(M, compute_uv=False)


def rank_cutoff(values, rtol: float = 1e-12) -> float:
    """Threshold below which spectral values count as zero."""
    values = np.abs(np.asarray(values, dtype=float))
    return rtol * values.max(initial=0.0)


def solve_hpd(M, b, cutoff: float | None = None) -> np.ndarray:
    """Solve ``M x = b`` for Hermitian positive-definite ``M`` (Cholesky).

    Raises :class:`SingularOperatorError` carrying the smallest eigenvalue
    when ``M`` is not numerically positive definite.
    """
    M = _as_matrix(M)
    if M.ndim != 2 or not is_hermitian(M):
        raise InvalidInputError("solve_hpd needs a single Hermitian matrix")
    eig = hermitian_eigenvalues(M)
    lam_min = float(eig[-1]) if eig.size else 0.0
    if cutoff is None:
        cutoff = max(rank_cutoff(eig), np.finfo(float).tiny)
    if lam_min <= cutoff:
        raise SingularOperatorError(
            f"operator is numerically singular (lambda_min={lam_min:.3e})", lambda_min=lam_min)
    try:
        factor = scipy.linalg.cho_factor(M, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise SingularOperatorError(str(exc), lambda_min=lam_min) from exc
    return scipy.linalg.cho_solve(factor, np.asarray(b), check_finite=False)


def operator_norm(M) -> float:
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(singular_values(M)[0])
