"""Gaussian (location-scale) Wasserstein geometry.

Barycenter mean and covariance, the covariance fixed point, optimal affine
transport maps, the closed-form squared W2 cost and the pairwise (scatter)
form of the total transport cost.
"""
from collections.abc import Sequence
from typing import NamedTuple, Union

import numpy as np
from loguru import logger
from pydantic import Field, field_validator, model_validator

from .errors import (
    BarycenterConvergenceError,
    DegenerateBarycenterError,
    NotPSDError,
    SingularCovarianceError,
)
from .matcore import PSD_ATOL, inv_sqrtm_pd, sqrtm_psd, sym_matrix, symmetrize, trace_sqrtm_psd
from .types import ArrayModel

WEIGHT_SUM_TOL = 1e-10
FIXED_POINT_MAX_ITER = 1000
FIXED_POINT_RTOL = 1e-12
FIXED_POINT_RESIDUAL_TOL = 1e-10


def _vector(value) -> np.ndarray:
    value = np.atleast_1d(np.asarray(value, dtype=float))
    if value.ndim != 1:
        raise ValueError("mean must be a vector")
    return value


class GaussianCluster(ArrayModel):
    weight: float = Field(1.0, ge=0.0, le=1.0, description="Cluster weight P_k")
    mean: np.ndarray = Field(..., description="Cluster mean")
    cov: np.ndarray = Field(..., description="Cluster covariance (PSD)")

    @field_validator("mean", mode="before")
    @classmethod
    def _vector_mean(cls, value):
        return _vector(value)

    @field_validator("cov", mode="before")
    @classmethod
    def _psd_cov(cls, value):
        value = np.atleast_2d(np.asarray(value, dtype=float))
        value = sym_matrix(value, "cluster covariance")
        lowest = float(np.linalg.eigvalsh(value)[0])
        if lowest < -PSD_ATOL * max(1.0, float(np.abs(value).max())):
            raise NotPSDError("cluster covariance", lowest)
        return value

    @model_validator(mode="after")
    def _check_shapes(self):
        if self.cov.shape != (self.mean.size, self.mean.size):
            raise ValueError(f"covariance shape {self.cov.shape} does not match mean of size {self.mean.size}")
        return self

    @property
    def dim(self) -> int:
        return self.mean.size

    @property
    def std(self) -> float:
        """sigma_k = sqrt(Tr Sigma_k)."""
        return float(np.sqrt(max(np.trace(self.cov), 0.0)))


class BarycenterGaussian(ArrayModel):
    mean: np.ndarray = Field(..., description="Barycenter mean")
    cov: np.ndarray = Field(..., description="Barycenter covariance")
    iterations: int = Field(0, description="Fixed-point iterations used")
    residual: float = Field(0.0, description="Relative fixed-point residual")

    @field_validator("mean", mode="before")
    @classmethod
    def _vector_mean(cls, value):
        return _vector(value)

    @property
    def std(self) -> float:
        """sigma_y = sqrt(Tr Sigma_y)."""
        return float(np.sqrt(max(np.trace(self.cov), 0.0)))


class AffineMap(ArrayModel):
    A: np.ndarray = Field(..., description="Symmetric positive-definite linear part")
    b: np.ndarray = Field(..., description="Translation")

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return x @ self.A.T + self.b


class FixedPoint(NamedTuple):
    cov: np.ndarray
    iterations: int
    residual: float


def _stack(clusters: Sequence[GaussianCluster]):
    if not clusters:
        raise ValueError("at least one cluster is required")
    weights = np.array([c.weight for c in clusters], dtype=float)
    means = np.stack([c.mean for c in clusters])
    covs = np.stack([c.cov for c in clusters])
    return weights, means, covs


def _check_weights(weights: np.ndarray) -> None:
    total = float(np.sum(weights))
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"weights must sum to 1, got {total!r}")


def _fixed_point_map(S: np.ndarray, covs: np.ndarray, weights: np.ndarray) -> np.ndarray:
    S_half = sqrtm_psd(S, name="Sigma_y")
    T = np.zeros_like(S)
    for k, w in enumerate(weights):
        if w > 0.0:
            T += w * sqrtm_psd(symmetrize(S_half @ covs[k] @ S_half), name=f"Sigma_y^1/2 Sigma_{k} Sigma_y^1/2")
    return symmetrize(T)


def fixed_point_residual(cov_y, covs, weights) -> float:
    """Relative residual ||S - sum_k P_k (S^1/2 Sigma_k S^1/2)^1/2||_F / ||S||_F."""
    S = np.asarray(cov_y, dtype=float)
    T = _fixed_point_map(S, np.asarray(covs, dtype=float), np.asarray(weights, dtype=float))
    return float(np.linalg.norm(S - T) / max(np.linalg.norm(S), np.finfo(float).tiny))


def barycenter_covariance(
    covs,
    weights,
    max_iter: int = FIXED_POINT_MAX_ITER,
    rtol: float = FIXED_POINT_RTOL,
    residual_tol: float = FIXED_POINT_RESIDUAL_TOL,
) -> FixedPoint:
    """Solve Sigma_y = sum_k P_k (Sigma_y^1/2 Sigma_k Sigma_y^1/2)^1/2.

    Iterates S <- S^-1/2 (sum_k P_k (S^1/2 Sigma_k S^1/2)^1/2)^2 S^-1/2 from the
    linear average sum_k P_k Sigma_k.
    """
    covs = np.asarray(covs, dtype=float)
    weights = np.asarray(weights, dtype=float)
    d = covs.shape[-1]

    active = [k for k, w in enumerate(weights) if w > 0.0]
    definite = [k for k in active if np.linalg.eigvalsh(symmetrize(covs[k]))[0] > 0.0]
    if not definite:
        raise DegenerateBarycenterError()

    if d == 1:
        # closed form: sigma_y = sum_k P_k sigma_k
        s = float(np.sum(weights * np.sqrt(np.clip(covs[:, 0, 0], 0.0, None))))
        return FixedPoint(cov=np.array([[s * s]]), iterations=0, residual=0.0)

    S = symmetrize(np.einsum("k,kij->ij", weights, covs))
    residual = np.inf
    for it in range(1, max_iter + 1):
        T = _fixed_point_map(S, covs, weights)
        norm_S = np.linalg.norm(S)
        residual = float(np.linalg.norm(S - T) / norm_S)
        if residual <= residual_tol:
            logger.debug(f"Barycenter fixed point converged by residual in {it} iterations ({residual:.2e})")
            return FixedPoint(cov=S, iterations=it, residual=residual)
        S_inv_half = inv_sqrtm_pd(S, name="Sigma_y")
        S_next = symmetrize(S_inv_half @ T @ T @ S_inv_half)
        change = float(np.linalg.norm(S_next - S) / norm_S)
        S = S_next
        if change <= rtol:
            residual = fixed_point_residual(S, covs, weights)
            logger.debug(f"Barycenter fixed point converged by step size in {it} iterations ({residual:.2e})")
            return FixedPoint(cov=S, iterations=it, residual=residual)

    raise BarycenterConvergenceError(max_iter, residual)


def barycenter(clusters: Sequence[GaussianCluster]) -> BarycenterGaussian:
    weights, means, covs = _stack(clusters)
    _check_weights(weights)
    solution = barycenter_covariance(covs, weights)
    return BarycenterGaussian(
        mean=weights @ means,
        cov=solution.cov,
        iterations=solution.iterations,
        residual=solution.residual,
    )


def isotropic_std(sigmas, weights) -> float:
    """sigma_y = sum_k P_k sigma_k, the barycenter std of isotropic clusters."""
    sigmas = np.asarray(sigmas, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if sigmas.shape != weights.shape:
        raise ValueError("sigmas and weights must have the same length")
    _check_weights(weights)
    return float(weights @ sigmas)


def ot_affine_map(
    source: Union[GaussianCluster, BarycenterGaussian], target: Union[BarycenterGaussian, GaussianCluster]
) -> AffineMap:
    """Optimal transport map T(x) = A x + b pushing ``source`` onto ``target``."""
    cov = source.cov
    if np.linalg.eigvalsh(cov)[0] <= 0.0:
        raise SingularCovarianceError("source covariance")
    cov_half = sqrtm_psd(cov, name="source covariance")
    cov_inv_half = inv_sqrtm_pd(cov, name="source covariance")
    middle = sqrtm_psd(symmetrize(cov_half @ target.cov @ cov_half), name="Sigma^1/2 Sigma_y Sigma^1/2")
    A = symmetrize(cov_inv_half @ middle @ cov_inv_half)
    return AffineMap(A=A, b=target.mean - A @ source.mean)


def w2_gaussian(g1: Union[GaussianCluster, BarycenterGaussian], g2: Union[GaussianCluster, BarycenterGaussian]) -> float:
    """Squared 2-Wasserstein distance between two Gaussians."""
    half = sqrtm_psd(g2.cov, name="second covariance")
    cross = trace_sqrtm_psd(symmetrize(half @ g1.cov @ half), name="cross covariance")
    diff = g1.mean - g2.mean
    value = float(diff @ diff + np.trace(g1.cov) + np.trace(g2.cov) - 2.0 * cross)
    if -1e-10 <= value < 0.0:
        value = 0.0
    return value


def pairwise_total_cost(clusters: Sequence[GaussianCluster]) -> float:
    """1/2 sum_{k,h} P_k P_h W2^2(rho_k, rho_h)."""
    weights, _, _ = _stack(clusters)
    _check_weights(weights)
    total = 0.0
    for k in range(len(clusters)):
        for h in range(k + 1, len(clusters)):
            total += weights[k] * weights[h] * w2_gaussian(clusters[k], clusters[h])
    return float(total)


def transport_cost(clusters: Sequence[GaussianCluster], bary: BarycenterGaussian) -> float:
    """sum_k P_k W2^2(rho_k, mu)."""
    return float(sum(c.weight * w2_gaussian(c, bary) for c in clusters))


def total_covariance(clusters: Sequence[GaussianCluster]) -> np.ndarray:
    """Covariance of the mixture: sum_k P_k (Sigma_k + (m_k - m)(m_k - m)^T)."""
    weights, means, covs = _stack(clusters)
    center = weights @ means
    diffs = means - center
    return symmetrize(np.einsum("k,kij->ij", weights, covs) + np.einsum("k,ki,kj->ij", weights, diffs, diffs))


def variance_decomposition(clusters: Sequence[GaussianCluster]) -> tuple[float, float, float]:
    """Return (Tr Sigma_x, Tr Sigma_y, sum_k P_k W2^2(rho_k, mu)); the first is the sum of the other two."""
    bary = barycenter(clusters)
    return float(np.trace(total_covariance(clusters))), float(np.trace(bary.cov)), transport_cost(clusters, bary)
