"""Dense symmetric-matrix kernel.

Eigendecomposition, principal square roots, Kronecker products and the
column-major ``vec``/``unvec`` pair. Everything here is a pure function of
its inputs.
"""
from typing import Literal, NamedTuple

import numpy as np
from loguru import logger

from .errors import EigenConvergenceError, NotPSDError, NotSymmetricError

SYMMETRY_ATOL = 1e-12
PSD_ATOL = 1e-10
JACOBI_MAX_SWEEPS = 100
JACOBI_TOL = 1e-14

EigenMethod = Literal["eigh", "jacobi"]


class EigenPair(NamedTuple):
    """Orthonormal ``U`` and eigenvalues ``D`` (descending) with ``S = U diag(D) U^T``."""

    U: np.ndarray
    D: np.ndarray


def sym_matrix(S, name: str = "matrix") -> np.ndarray:
    """Validate ``S`` as a SymMatrix and return it as a float array."""
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] < 1:
        raise ValueError(f"{name} must be a non-empty square matrix, got shape {S.shape}")
    asym = float(np.max(np.abs(S - S.T)))
    # absolute tolerance, widened for matrices with large entries
    if asym > SYMMETRY_ATOL * max(1.0, float(np.max(np.abs(S)))):
        raise NotSymmetricError(name, asym)
    return S


def symmetrize(S: np.ndarray) -> np.ndarray:
    return 0.5 * (S + S.T)


def _jacobi(S: np.ndarray, name: str) -> tuple[np.ndarray, np.ndarray]:
    A = np.array(S, dtype=float)
    d = A.shape[0]
    V = np.eye(d)
    threshold = JACOBI_TOL * np.linalg.norm(A)

    def off_norm(M):
        return np.sqrt(max(np.sum(M * M) - np.sum(np.diag(M) ** 2), 0.0))

    off = off_norm(A)
    sweeps = 0
    while off > threshold:
        if sweeps >= JACOBI_MAX_SWEEPS:
            raise EigenConvergenceError(name, sweeps, off)
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c

                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0

                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
        sweeps += 1
        off = off_norm(A)

    logger.debug(f"Jacobi converged for {name} in {sweeps} sweeps")
    return np.diag(A).copy(), V


def sym_eig(S, method: EigenMethod = "eigh", name: str = "matrix") -> EigenPair:
    """Eigendecomposition of a symmetric matrix, eigenvalues sorted descending.

    ``method="eigh"`` uses the LAPACK symmetric driver; ``method="jacobi"``
    runs cyclic Jacobi rotations (100 sweeps max, off-diagonal tolerance
    1e-14 * ||S||_F).
    """
    S = sym_matrix(S, name)
    if method == "jacobi":
        D, U = _jacobi(S, name)
    elif method == "eigh":
        try:
            D, U = np.linalg.eigh(S)
        except np.linalg.LinAlgError as e:
            raise EigenConvergenceError(name, 0, float("nan")) from e
    else:
        raise ValueError(f"Unknown eigen method: {method}")
    order = np.argsort(-D, kind="stable")
    return EigenPair(U=U[:, order], D=D[order])


def _clamped_eigenvalues(D: np.ndarray, scale: float, name: str) -> np.ndarray:
    if D.size and D.min() < -PSD_ATOL * max(1.0, scale):
        raise NotPSDError(name, float(D.min()))
    return np.clip(D, 0.0, None)


def sqrtm_psd(S, method: EigenMethod = "eigh", name: str = "matrix") -> np.ndarray:
    """Principal square root of a PSD matrix.

    Eigenvalues in [-1e-10 * max(1, |lambda|_max), 0) are floating-point
    noise and are clamped to 0; anything lower raises ``NotPSDError``. For
    matrices with entries of order one this is the absolute -1e-10 bound.
    """
    U, D = sym_eig(S, method=method, name=name)
    D = _clamped_eigenvalues(D, float(np.abs(D).max(initial=0.0)), name)
    return symmetrize((U * np.sqrt(D)) @ U.T)


def inv_sqrtm_pd(S, method: EigenMethod = "eigh", name: str = "matrix") -> np.ndarray:
    U, D = sym_eig(S, method=method, name=name)
    if D[-1] <= 0.0:
        raise NotPSDError(name, float(D[-1]))
    return symmetrize((U / np.sqrt(D)) @ U.T)


def trace_sqrtm_psd(S, name: str = "matrix") -> float:
    """``Tr[S^(1/2)]`` for PSD ``S``."""
    D = np.linalg.eigvalsh(sym_matrix(S, name))
    D = _clamped_eigenvalues(D, float(np.abs(D).max(initial=0.0)), name)
    return float(np.sqrt(D).sum())


def kron(A, B) -> np.ndarray:
    return np.kron(np.asarray(A, dtype=float), np.asarray(B, dtype=float))


def vec(M) -> np.ndarray:
    """Stack the columns of ``M``: ``vec(A X B) = (B^T kron A) vec(X)``."""
    return np.asarray(M, dtype=float).reshape(-1, order="F")


def unvec(v, rows: int, cols: int) -> np.ndarray:
    v = np.asarray(v, dtype=float).ravel()
    if v.size != rows * cols:
        raise ValueError(f"cannot unvec a vector of length {v.size} into {rows}x{cols}")
    return v.reshape((rows, cols), order="F")
