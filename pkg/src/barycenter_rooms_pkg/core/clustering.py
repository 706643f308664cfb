"""Discrete factor discovery.

Clusters are scored by the spread of their Wasserstein barycenter: the trace
of Sigma_y for general Gaussian clusters, or sigma_y = sum_k P_k sigma_k for
isotropic ones. Soft runs descend on the assignment matrix with a simplex
projection and Armijo backtracking; hard runs move every sample to the row
minimum of the gradient. k-means and fuzzy k-means are the baselines.

Labels are 1-based wherever they leave this module and 0-based inside it.
"""
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from typing import Literal, NamedTuple, Optional

import numpy as np
from loguru import logger
from pydantic import Field

from ..configuration.addonconfig import ClusterConfig
from .errors import EmptyClusterError, SingularWeightSystemError
from .gaussbary import GaussianCluster, barycenter_covariance
from .matcore import kron, sqrtm_psd, sym_eig, symmetrize, unvec, vec
from .types import ArrayModel, as_labels, as_matrix

ClusterMode = Literal["general", "isotropic"]

ROW_SUM_TOL = 1e-10
EMPTY_MASS = 1e-12
COV_REG_FACTOR = 1e-8
STD_REG_FACTOR = 1e-6
REG_FLOOR = 1e-12


class Moments(NamedTuple):
    weights: np.ndarray
    means: np.ndarray
    covs: np.ndarray
    mass: np.ndarray


class ClusteringResult(ArrayModel):
    algorithm: str = Field(..., description="Registered algorithm name")
    labels: np.ndarray = Field(..., description="Hard labels in [1, K]")
    objective: float = Field(..., description="Final objective of the returned run")
    objective_trace: list[float] = Field(default_factory=list, description="Objective per iteration")
    iterations: int = Field(0, description="Iterations of the returned run")
    converged: bool = Field(True, description="False when the run hit its iteration cap")
    restart: int = Field(0, description="Index of the chosen restart")
    seed: int = Field(0, description="Seed of the chosen restart")

    @property
    def n_clusters(self) -> int:
        return int(self.labels.max()) if self.labels.size else 0


class SoftClusteringResult(ClusteringResult):
    assignment: np.ndarray = Field(..., description="N x K row-stochastic assignment matrix")


class HardClusteringResult(ClusteringResult):
    label_history: list[np.ndarray] = Field(default_factory=list, description="Labels after every iteration")


# ----------------------------------------------------------------------------
# validation and small helpers
# ----------------------------------------------------------------------------


def as_assignment(P, n_samples: Optional[int] = None) -> np.ndarray:
    """Validate ``P`` as an N x K row-stochastic matrix."""
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[1] < 1:
        raise ValueError(f"assignment matrix must be N x K, got shape {P.shape}")
    if n_samples is not None and P.shape[0] != n_samples:
        raise ValueError(f"assignment matrix has {P.shape[0]} rows for {n_samples} samples")
    if not np.all(np.isfinite(P)) or P.min() < -ROW_SUM_TOL:
        raise ValueError("assignment matrix entries must be finite and nonnegative")
    row_error = float(np.abs(P.sum(axis=1) - 1.0).max())
    if row_error > ROW_SUM_TOL:
        raise ValueError(f"assignment rows must sum to 1 (max deviation {row_error:.3e})")
    return np.clip(P, 0.0, None)


def one_hot(labels0: np.ndarray, k: int) -> np.ndarray:
    P = np.zeros((labels0.size, k))
    P[np.arange(labels0.size), labels0] = 1.0
    return P


def harden(P) -> np.ndarray:
    """Argmax labels (1-based) of an assignment matrix, ties to the lowest cluster."""
    P = np.asarray(P, dtype=float)
    return np.argmax(P, axis=1) + 1


def pairwise_sq_dists(X, Y=None) -> np.ndarray:
    """Squared Euclidean distances ``||x_i - y_j||^2``; ``Y`` defaults to ``X``."""
    X = np.asarray(X, dtype=float)
    Y = X if Y is None else np.asarray(Y, dtype=float)
    diffs = X[:, None, :] - Y[None, :, :]
    return np.einsum("ijd,ijd->ij", diffs, diffs)


def default_cov_reg(X: np.ndarray) -> float:
    """1e-8 * Tr(Sigma_x) / d."""
    total = float(X.var(axis=0).sum())
    return COV_REG_FACTOR * total / X.shape[1] if total > 0.0 else REG_FLOOR


def default_std_reg(X: np.ndarray) -> float:
    """1e-6 * sqrt(Tr Sigma_x)."""
    total = float(X.var(axis=0).sum())
    return STD_REG_FACTOR * np.sqrt(total) if total > 0.0 else REG_FLOOR


def _regularizers(X: np.ndarray, cfg: ClusterConfig) -> tuple[float, float]:
    cov_reg = default_cov_reg(X) if cfg.cov_reg is None else cfg.cov_reg
    std_reg = default_std_reg(X) if cfg.std_reg is None else cfg.std_reg
    return cov_reg, std_reg


def _check_problem(X: np.ndarray, k: int) -> None:
    if k < 2:
        raise ValueError(f"at least two clusters are required, got K={k}")
    if X.shape[0] < k:
        raise ValueError(f"cannot form {k} clusters from {X.shape[0]} samples")


def _moments(X: np.ndarray, P: np.ndarray, cov_reg: float) -> Moments:
    mass = P.sum(axis=0)
    empty = np.flatnonzero(mass <= EMPTY_MASS)
    if empty.size:
        raise EmptyClusterError((empty + 1).tolist())
    means = (P.T @ X) / mass[:, None]
    diffs = X[:, None, :] - means[None, :, :]
    covs = np.einsum("ik,ika,ikb->kab", P, diffs, diffs) / mass[:, None, None]
    covs = 0.5 * (covs + covs.transpose(0, 2, 1)) + cov_reg * np.eye(X.shape[1])
    return Moments(weights=mass / X.shape[0], means=means, covs=covs, mass=mass)


# ----------------------------------------------------------------------------
# cluster statistics, objectives and gradients
# ----------------------------------------------------------------------------


def cluster_stats(data, P, cov_reg: Optional[float] = None) -> list[GaussianCluster]:
    """Weights, means and (regularized) covariances of the clusters encoded by ``P``.

    Raises :class:`EmptyClusterError` (1-based indices) when a column of ``P``
    carries no mass; callers re-seed those clusters.
    """
    X = as_matrix(data)
    P = as_assignment(P, X.shape[0])
    eps = default_cov_reg(X) if cov_reg is None else cov_reg
    m = _moments(X, P, eps)
    return [
        GaussianCluster(weight=float(min(max(w, 0.0), 1.0)), mean=mu, cov=cov)
        for w, mu, cov in zip(m.weights, m.means, m.covs)
    ]


def weight_matrices(cov_y, covs, weights) -> list[np.ndarray]:
    """The d^2 x d^2 matrices W_k of the general gradient.

    With M_k = Sigma_y^1/2 Sigma_k Sigma_y^1/2 = U_k diag(D_k) U_k^T and
    r = sqrt(D):

        G   = sum_h P_h (U_h x U_h) diag(r_a r_b / (r_a + r_b)) (U_h x U_h)^T
        L_k = (U_k x U_k) diag(1 / (r_a + r_b)) (U_k x U_k)^T
        W_k = (S x S) G^-1 L_k (S x S),   S = Sigma_y^1/2

    so that vec(I)^T W_k = vec(Sigma_y^1/2 M_k^-1/2 Sigma_y^1/2)^T.
    """
    cov_y = np.asarray(cov_y, dtype=float)
    covs = np.asarray(covs, dtype=float)
    weights = np.asarray(weights, dtype=float)
    S_half = sqrtm_psd(cov_y, name="Sigma_y")
    SS = kron(S_half, S_half)

    bases = []
    for k in range(covs.shape[0]):
        U, D = sym_eig(symmetrize(S_half @ covs[k] @ S_half), name=f"M_{k + 1}")
        r = np.sqrt(np.clip(D, 0.0, None))
        bases.append((kron(U, U), np.outer(r, r).ravel(), np.add.outer(r, r).ravel()))

    G = np.zeros_like(SS)
    for w, (UU, prods, sums) in zip(weights, bases):
        if w > 0.0:
            coef = np.divide(prods, sums, out=np.zeros_like(prods), where=sums > 0.0)
            G += w * (UU * coef) @ UU.T

    W = []
    for k, (UU, _, sums) in enumerate(bases):
        if sums.min() <= np.finfo(float).eps * max(sums.max(), 1.0):
            raise SingularWeightSystemError(k + 1)
        L = (UU / sums) @ UU.T
        try:
            GinvL = np.linalg.solve(G, L)
        except np.linalg.LinAlgError as e:
            raise SingularWeightSystemError(k + 1) from e
        W.append(SS @ GinvL @ SS)
    return W


def _transport_matrices(cov_y: np.ndarray, covs: np.ndarray, weights: np.ndarray) -> np.ndarray:
    d = cov_y.shape[0]
    identity = vec(np.eye(d))
    return np.stack([symmetrize(unvec(W.T @ identity, d, d)) for W in weight_matrices(cov_y, covs, weights)])


def _general_entries(X: np.ndarray, m: Moments, cov_y: Optional[np.ndarray] = None) -> np.ndarray:
    if cov_y is None:
        cov_y = barycenter_covariance(m.covs, m.weights).cov
    A = _transport_matrices(cov_y, m.covs, m.weights)
    diffs = X[:, None, :] - m.means[None, :, :]
    return np.einsum("ika,kab,ikb->ik", diffs, A, diffs) + np.einsum("kab,kba->k", A, m.covs)[None, :]


def grad_general(data, P, cov_reg: Optional[float] = None) -> np.ndarray:
    """Gradient of Tr(Sigma_y) with respect to the assignment matrix.

    Entry (i, k) is vec(I)^T W_k vec[(x_i - xbar_k)(x_i - xbar_k)^T + Sigma_k].
    The exact partial derivative is (entry - Tr Sigma_y) / N; the row constant
    is irrelevant on the simplex.
    """
    X = as_matrix(data)
    P = as_assignment(P, X.shape[0])
    eps = default_cov_reg(X) if cov_reg is None else cov_reg
    return _general_entries(X, _moments(X, P, eps))


def _isotropic_sigmas(X: np.ndarray, P: np.ndarray) -> tuple[Moments, np.ndarray]:
    m = _moments(X, P, 0.0)
    sigmas = np.sqrt(np.clip(np.trace(m.covs, axis1=1, axis2=2), 0.0, None))
    return m, sigmas


def _isotropic_entries(X: np.ndarray, means: np.ndarray, sigmas: np.ndarray, std_reg: float) -> np.ndarray:
    return pairwise_sq_dists(X, means) / (sigmas + std_reg)[None, :] + sigmas[None, :]


def grad_isotropic(data, P, std_reg: Optional[float] = None) -> np.ndarray:
    """Entry (i, k) = ||x_i - xbar_k||^2 / (sigma_k + eps) + sigma_k.

    Twice N times the partial derivative of sigma_y when eps = 0.
    """
    X = as_matrix(data)
    P = as_assignment(P, X.shape[0])
    eps = default_std_reg(X) if std_reg is None else std_reg
    m, sigmas = _isotropic_sigmas(X, P)
    return _isotropic_entries(X, m.means, sigmas, eps)


def default_std_reg_from_dists(D: np.ndarray) -> float:
    """``default_std_reg`` recovered from squared distances: Tr Sigma_x = sum_ij d_ij / (2 N^2)."""
    total = float(D.sum()) / (2.0 * D.shape[0] ** 2)
    return STD_REG_FACTOR * np.sqrt(total) if total > 0.0 else REG_FLOOR


def grad_pairwise(dist2, P, std_reg: Optional[float] = None) -> np.ndarray:
    """sigma_y gradient written through pairwise squared distances only.

    Entry (i, k) = sum_j P_jk d_ij / sqrt(2 sum_jl P_jk P_lk d_jl), N times
    the partial derivative of sigma_y. sqrt(2 sum_jl ...) equals 2 m_k sigma_k
    with m_k the column mass, and sigma_k is guarded by ``std_reg`` (default
    1e-6 times the global std, as for the isotropic gradient).
    """
    D = np.asarray(dist2, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {D.shape}")
    P = as_assignment(P, D.shape[0])
    eps = default_std_reg_from_dists(D) if std_reg is None else std_reg
    DP = D @ P
    Q = np.einsum("jk,jk->k", P, DP)
    mass = P.sum(axis=0)
    floor = np.maximum(2.0 * mass * eps, REG_FLOOR)
    return DP / np.maximum(np.sqrt(2.0 * np.clip(Q, 0.0, None)), floor)[None, :]


def objective_general(data, P, cov_reg: Optional[float] = None) -> float:
    """Tr(Sigma_y) of the Gaussian clusters encoded by ``P``."""
    X = as_matrix(data)
    P = as_assignment(P, X.shape[0])
    eps = default_cov_reg(X) if cov_reg is None else cov_reg
    m = _moments(X, P, eps)
    return float(np.trace(barycenter_covariance(m.covs, m.weights).cov))


def objective_isotropic(data, P) -> float:
    """sigma_y = sum_k P_k sigma_k."""
    X = as_matrix(data)
    P = as_assignment(P, X.shape[0])
    m, sigmas = _isotropic_sigmas(X, P)
    return float(m.weights @ sigmas)


def _pairwise_objective(D: np.ndarray, P: np.ndarray) -> float:
    Q = np.einsum("jk,jk->k", P, D @ P)
    return float(np.sqrt(np.clip(Q, 0.0, None) / 2.0).sum() / D.shape[0])


def sse(data, labels) -> float:
    """Sum of squared distances of every sample to its cluster mean."""
    X = as_matrix(data)
    labels0 = as_labels(labels) - 1
    total = 0.0
    for k in np.unique(labels0):
        members = X[labels0 == k]
        total += float(((members - members.mean(axis=0)) ** 2).sum())
    return total


def fuzzy_objective(data, P, means, exponent: float = 2.0) -> float:
    """J_c = sum_ik P_ik^c ||x_i - xbar_k||^2."""
    X = as_matrix(data)
    P = np.asarray(P, dtype=float)
    return float((P**exponent * pairwise_sq_dists(X, means)).sum())


# ----------------------------------------------------------------------------
# simplex projection
# ----------------------------------------------------------------------------


def project_rows_simplex(M) -> np.ndarray:
    """Euclidean projection of every row onto the probability simplex.

    Sort-and-threshold: the projection of v is max(v - theta, 0) where theta
    is fixed by the largest support size rho with u_rho > (cumsum(u)_rho - 1) / rho.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    n, k = M.shape
    u = -np.sort(-M, axis=1)
    css = np.cumsum(u, axis=1) - 1.0
    ind = np.arange(1, k + 1)
    rho = np.count_nonzero(u - css / ind > 0.0, axis=1)
    theta = css[np.arange(n), rho - 1] / rho
    return np.maximum(M - theta[:, None], 0.0)


# ----------------------------------------------------------------------------
# initialization and empty clusters
# ----------------------------------------------------------------------------


def _init_means(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    return X[rng.choice(X.shape[0], size=k, replace=False)].copy()


def _nearest(X: np.ndarray, means: np.ndarray) -> np.ndarray:
    return np.argmin(pairwise_sq_dists(X, means), axis=1)


def _centroids(X: np.ndarray, labels0: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    counts = np.bincount(labels0, minlength=k)
    sums = np.zeros((k, X.shape[1]))
    np.add.at(sums, labels0, X)
    means = np.divide(sums, counts[:, None], out=np.zeros_like(sums), where=counts[:, None] > 0)
    return means, counts


def _reseed_empty(X: np.ndarray, labels0: np.ndarray, k: int) -> np.ndarray:
    """Move the sample farthest from its centroid into each empty cluster."""
    counts = np.bincount(labels0, minlength=k)
    empty = np.flatnonzero(counts == 0)
    if empty.size == 0:
        return labels0
    labels0 = labels0.copy()
    for cluster in empty:
        means, counts = _centroids(X, labels0, k)
        dist = ((X - means[labels0]) ** 2).sum(axis=1)
        dist[counts[labels0] <= 1] = -np.inf
        labels0[int(np.argmax(dist))] = cluster
    logger.warning(f"Re-seeded empty clusters {(empty + 1).tolist()} at the farthest samples")
    return labels0


def _initial_labels(X: np.ndarray, k: int, rng: np.random.Generator, init_means: Optional[np.ndarray]) -> np.ndarray:
    if init_means is None:
        means = _init_means(X, k, rng)
    else:
        means = np.asarray(init_means, dtype=float)
        if means.shape != (k, X.shape[1]):
            raise ValueError(f"init_means must have shape {(k, X.shape[1])}, got {means.shape}")
    return _reseed_empty(X, _nearest(X, means), k)


# ----------------------------------------------------------------------------
# restarts
# ----------------------------------------------------------------------------


def best_of_restarts(run_one: Callable[[int, int], ClusteringResult], cfg: ClusterConfig, restarts: int) -> ClusteringResult:
    """Run ``run_one(restart, seed)`` for every restart and keep the lowest objective.

    Ties go to the lowest restart index, so the reduction does not depend on
    the order in which concurrent restarts finish.
    """
    seeds = [cfg.seed + r for r in range(restarts)]
    if cfg.workers > 1 and restarts > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(run_one, range(restarts), seeds))
    else:
        results = [run_one(r, s) for r, s in zip(range(restarts), seeds)]
    best = min(results, key=lambda res: (res.objective, res.restart))
    logger.info(
        f"{best.algorithm}: best of {restarts} restarts is #{best.restart} "
        f"(seed {best.seed}, objective {best.objective:.6g}, {best.iterations} iterations)"
    )
    return best


# ----------------------------------------------------------------------------
# soft barycentric clustering
# ----------------------------------------------------------------------------


class _SoftProblem:
    """Objective and gradient of one soft variant over a fixed data matrix."""

    def __init__(self, X: np.ndarray, mode: ClusterMode, cfg: ClusterConfig):
        self.X = X
        self.mode = mode
        self.cov_reg, self.std_reg = _regularizers(X, cfg)
        self.pairwise = mode == "isotropic" and cfg.dissimilarity == "pairwise"
        self.D = pairwise_sq_dists(X) if self.pairwise else None
        n = X.shape[0]
        # gradient entries are this many times smaller than the true partials
        self.scale = 1.0 / (2.0 * n) if mode == "isotropic" and not self.pairwise else 1.0 / n

    def objective(self, P: np.ndarray) -> float:
        if self.pairwise:
            return _pairwise_objective(self.D, P)
        if self.mode == "general":
            m = _moments(self.X, P, self.cov_reg)
            return float(np.trace(barycenter_covariance(m.covs, m.weights).cov))
        m, sigmas = _isotropic_sigmas(self.X, P)
        return float(m.weights @ sigmas)

    def gradient(self, P: np.ndarray) -> np.ndarray:
        if self.pairwise:
            return grad_pairwise(self.D, P, self.std_reg)
        if self.mode == "general":
            return _general_entries(self.X, _moments(self.X, P, self.cov_reg))
        m, sigmas = _isotropic_sigmas(self.X, P)
        return _isotropic_entries(self.X, m.means, sigmas, self.std_reg)


def _soft_run(
    X: np.ndarray,
    k: int,
    problem: _SoftProblem,
    cfg: ClusterConfig,
    restart: int,
    seed: int,
    algorithm: str,
    init_means: Optional[np.ndarray] = None,
) -> SoftClusteringResult:
    rng = np.random.default_rng(seed)
    P = one_hot(_initial_labels(X, k, rng, init_means), k)
    f = problem.objective(P)
    trace = [f]
    converged = False
    iterations = 0

    for iterations in range(1, cfg.max_iters + 1):
        g = problem.gradient(P)
        spread = float((g.max(axis=1) - g.min(axis=1)).max())
        if not np.isfinite(spread) or spread <= 0.0:
            converged = True
            break
        direction = g / spread

        eta = cfg.step
        accepted = False
        for _ in range(cfg.max_backtracks):
            P_new = project_rows_simplex(P - eta * direction)
            if P_new.sum(axis=0).min() > EMPTY_MASS:
                f_new = problem.objective(P_new)
                decrease = cfg.armijo_alpha * problem.scale * float(np.sum(g * (P_new - P)))
                if f_new - f <= decrease:
                    accepted = True
                    break
            eta *= cfg.armijo_beta

        if not accepted:
            logger.debug(f"{algorithm} restart {restart}: backtracking exhausted at iteration {iterations}")
            converged = True
            break

        moved = float(np.abs(P_new - P).max())
        change = abs(f - f_new) / max(abs(f), np.finfo(float).tiny)
        P, f = P_new, f_new
        trace.append(f)
        logger.debug(f"{algorithm} restart {restart} iteration {iterations}: objective {f:.10g} (step {eta:.3g})")
        if moved <= 0.0 or change < cfg.tol:
            converged = True
            break

    if not converged:
        logger.warning(f"{algorithm} restart {restart} reached max_iters={cfg.max_iters}; returning the last iterate")

    return SoftClusteringResult(
        algorithm=algorithm,
        labels=harden(P),
        assignment=P,
        objective=f,
        objective_trace=trace,
        iterations=iterations,
        converged=converged,
        restart=restart,
        seed=seed,
    )


def run_soft(
    data,
    k: int,
    mode: ClusterMode = "general",
    cfg: Optional[ClusterConfig] = None,
    *,
    init_means=None,
) -> SoftClusteringResult:
    """Soft barycentric clustering by projected gradient descent, best of ``cfg.restarts``.

    ``mode="general"`` minimizes Tr(Sigma_y); ``mode="isotropic"`` minimizes
    sigma_y, optionally through pairwise distances only
    (``cfg.dissimilarity="pairwise"``). Every restart starts from the hard
    nearest-mean assignment of K distinct random samples.
    """
    cfg = cfg or ClusterConfig()
    X = as_matrix(data)
    _check_problem(X, k)
    if mode not in ("general", "isotropic"):
        raise ValueError(f"Unknown clustering mode: {mode}")
    problem = _SoftProblem(X, mode, cfg)
    algorithm = "bary-soft" if mode == "general" else "bary-iso-soft"
    restarts = 1 if init_means is not None else cfg.restarts

    def run_one(restart: int, seed: int) -> SoftClusteringResult:
        return _soft_run(X, k, problem, cfg, restart, seed, algorithm, init_means)

    return best_of_restarts(run_one, cfg, restarts)


# ----------------------------------------------------------------------------
# hard barycentric clustering
# ----------------------------------------------------------------------------


def _standardize(m: Moments, cov_reg: float) -> Moments:
    k, d = m.means.shape
    raw = np.trace(m.covs, axis1=1, axis2=2) - d * cov_reg
    pooled = float(m.weights @ raw) / d + cov_reg
    covs = np.broadcast_to(pooled * np.eye(d), (k, d, d)).copy()
    return Moments(weights=np.full(k, 1.0 / k), means=m.means, covs=covs, mass=m.mass)


def _blend(new: Moments, old: Optional[Moments], rate: float) -> Moments:
    if old is None or rate >= 1.0:
        return new
    return Moments(
        weights=new.weights,
        means=rate * new.means + (1.0 - rate) * old.means,
        covs=rate * new.covs + (1.0 - rate) * old.covs,
        mass=new.mass,
    )


def _hard_run(
    X: np.ndarray,
    k: int,
    mode: ClusterMode,
    cfg: ClusterConfig,
    restart: int,
    seed: int,
    algorithm: str,
    init_means: Optional[np.ndarray] = None,
) -> HardClusteringResult:
    cov_reg, std_reg = _regularizers(X, cfg)
    rng = np.random.default_rng(seed)
    labels0 = _initial_labels(X, k, rng, init_means)
    history = [labels0 + 1]
    trace = []
    used = None
    converged = False
    iterations = 0

    for iterations in range(1, cfg.max_iters + 1):
        stats = _moments(X, one_hot(labels0, k), cov_reg if mode == "general" else 0.0)
        if mode == "general":
            trace.append(float(np.trace(barycenter_covariance(stats.covs, stats.weights).cov)))
        else:
            trace.append(float(stats.weights @ np.sqrt(np.trace(stats.covs, axis1=1, axis2=2))))

        if cfg.standard_stats:
            stats = _standardize(stats, cov_reg if mode == "general" else 0.0)
        used = _blend(stats, used, cfg.update_rate)

        if mode == "general":
            entries = _general_entries(X, used)
        else:
            sigmas = np.sqrt(np.clip(np.trace(used.covs, axis1=1, axis2=2), 0.0, None))
            entries = _isotropic_entries(X, used.means, sigmas, std_reg)

        new_labels0 = _reseed_empty(X, np.argmin(entries, axis=1), k)
        history.append(new_labels0 + 1)
        logger.debug(f"{algorithm} restart {restart} iteration {iterations}: objective {trace[-1]:.10g}")
        if np.array_equal(new_labels0, labels0):
            converged = True
            break
        labels0 = new_labels0

    if not converged:
        logger.warning(f"{algorithm} restart {restart} reached max_iters={cfg.max_iters} with labels still changing")

    final = _moments(X, one_hot(labels0, k), cov_reg if mode == "general" else 0.0)
    if mode == "general":
        objective = float(np.trace(barycenter_covariance(final.covs, final.weights).cov))
    else:
        objective = float(final.weights @ np.sqrt(np.trace(final.covs, axis1=1, axis2=2)))

    return HardClusteringResult(
        algorithm=algorithm,
        labels=labels0 + 1,
        objective=objective,
        objective_trace=trace,
        label_history=history,
        iterations=iterations,
        converged=converged,
        restart=restart,
        seed=seed,
    )


def run_hard(
    data,
    k: int,
    mode: ClusterMode = "general",
    cfg: Optional[ClusterConfig] = None,
    *,
    init_means=None,
) -> HardClusteringResult:
    """Hard barycentric clustering (general) or barycentric k-means (isotropic).

    Each iteration recomputes the cluster statistics (smoothed with
    ``cfg.update_rate``), evaluates the gradient and moves every sample to the
    cluster of its row minimum, ties to the lowest index. Stops when no label
    changes.
    """
    cfg = cfg or ClusterConfig()
    X = as_matrix(data)
    _check_problem(X, k)
    if mode not in ("general", "isotropic"):
        raise ValueError(f"Unknown clustering mode: {mode}")
    algorithm = "bary-hard" if mode == "general" else "bary-kmeans"
    restarts = 1 if init_means is not None else cfg.restarts

    def run_one(restart: int, seed: int) -> HardClusteringResult:
        return _hard_run(X, k, mode, cfg, restart, seed, algorithm, init_means)

    return best_of_restarts(run_one, cfg, restarts)


# ----------------------------------------------------------------------------
# baselines
# ----------------------------------------------------------------------------


def _kmeans_run(
    X: np.ndarray,
    k: int,
    cfg: ClusterConfig,
    restart: int,
    seed: int,
    init_means: Optional[np.ndarray] = None,
) -> HardClusteringResult:
    rng = np.random.default_rng(seed)
    labels0 = _initial_labels(X, k, rng, init_means)
    history = [labels0 + 1]
    trace = []
    converged = False
    iterations = 0

    for iterations in range(1, cfg.max_iters + 1):
        means = _moments(X, one_hot(labels0, k), 0.0).means
        trace.append(float(pairwise_sq_dists(X, means)[np.arange(X.shape[0]), labels0].sum()))
        new_labels0 = _reseed_empty(X, _nearest(X, means), k)
        history.append(new_labels0 + 1)
        if np.array_equal(new_labels0, labels0):
            converged = True
            break
        labels0 = new_labels0

    if not converged:
        logger.warning(f"kmeans restart {restart} reached max_iters={cfg.max_iters}")

    return HardClusteringResult(
        algorithm="kmeans",
        labels=labels0 + 1,
        objective=sse(X, labels0 + 1),
        objective_trace=trace,
        label_history=history,
        iterations=iterations,
        converged=converged,
        restart=restart,
        seed=seed,
    )


def kmeans(data, k: int, cfg: Optional[ClusterConfig] = None, *, init_means=None) -> HardClusteringResult:
    """Lloyd's algorithm, best SSE over ``cfg.restarts``."""
    cfg = cfg or ClusterConfig()
    X = as_matrix(data)
    _check_problem(X, k)
    restarts = 1 if init_means is not None else cfg.restarts

    def run_one(restart: int, seed: int) -> HardClusteringResult:
        return _kmeans_run(X, k, cfg, restart, seed, init_means)

    return best_of_restarts(run_one, cfg, restarts)


def fuzzy_memberships(d2: np.ndarray, exponent: float) -> np.ndarray:
    """P_ik proportional to d2_ik^(1 / (1 - c)).

    A sample sitting on a centroid belongs to it alone (lowest index if it
    sits on several).
    """
    d2 = np.asarray(d2, dtype=float)
    P = np.empty_like(d2)
    zero = d2 <= 0.0
    hit = zero.any(axis=1)
    if hit.any():
        P[hit] = 0.0
        P[np.flatnonzero(hit), np.argmax(zero[hit], axis=1)] = 1.0
    rest = ~hit
    if rest.any():
        ratio = d2[rest] / d2[rest].min(axis=1, keepdims=True)
        u = ratio ** (1.0 / (1.0 - exponent))
        P[rest] = u / u.sum(axis=1, keepdims=True)
    return P


def _fuzzy_run(
    X: np.ndarray,
    k: int,
    exponent: float,
    cfg: ClusterConfig,
    restart: int,
    seed: int,
    init_means: Optional[np.ndarray] = None,
) -> SoftClusteringResult:
    rng = np.random.default_rng(seed)
    means = _init_means(X, k, rng) if init_means is None else np.asarray(init_means, dtype=float)
    P = fuzzy_memberships(pairwise_sq_dists(X, means), exponent)
    trace = [fuzzy_objective(X, P, means, exponent)]
    converged = False
    iterations = 0

    for iterations in range(1, cfg.max_iters + 1):
        Pc = P**exponent
        mass = Pc.sum(axis=0)
        means = np.where(mass[:, None] > 0.0, (Pc.T @ X) / np.maximum(mass, np.finfo(float).tiny)[:, None], means)
        P_new = fuzzy_memberships(pairwise_sq_dists(X, means), exponent)
        trace.append(fuzzy_objective(X, P_new, means, exponent))
        delta = float(np.abs(P_new - P).max())
        P = P_new
        if delta < cfg.tol:
            converged = True
            break

    if not converged:
        logger.warning(f"fuzzy-kmeans restart {restart} reached max_iters={cfg.max_iters}")

    return SoftClusteringResult(
        algorithm="fuzzy-kmeans",
        labels=harden(P),
        assignment=P,
        objective=trace[-1],
        objective_trace=trace,
        iterations=iterations,
        converged=converged,
        restart=restart,
        seed=seed,
    )


def fuzzy_kmeans(
    data,
    k: int,
    exponent: Optional[float] = None,
    cfg: Optional[ClusterConfig] = None,
    *,
    init_means=None,
) -> SoftClusteringResult:
    """Fuzzy k-means alternating memberships and P^c-weighted centroids; best J_c over restarts."""
    cfg = cfg or ClusterConfig()
    exponent = cfg.fuzzy_exponent if exponent is None else exponent
    if exponent <= 1.0:
        raise ValueError(f"fuzzy exponent must exceed 1, got {exponent}")
    X = as_matrix(data)
    _check_problem(X, k)
    restarts = 1 if init_means is not None else cfg.restarts

    def run_one(restart: int, seed: int) -> SoftClusteringResult:
        return _fuzzy_run(X, k, exponent, cfg, restart, seed, init_means)

    return best_of_restarts(run_one, cfg, restarts)
