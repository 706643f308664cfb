"""Affine factor discovery over a one-dimensional latent space.

Each sample x_i owns a latent Gaussian nu(z|x_i) = N(zbar_i, eps^2) with the
shared bandwidth eps^2 = alpha^2 ||zbar||^2 / N. Bayes' rule turns those
into conditional clusters rho(x|z) whose means trace the principal curve
xbar(z); the factor is found by stochastic descent on
sigma = int sigma(z) nu(z) dz.
"""
from typing import NamedTuple, Optional

import numpy as np
from loguru import logger
from pydantic import Field
from scipy.integrate import simpson
from scipy.special import logsumexp

from ..configuration.addonconfig import FactorConfig
from .clustering import default_std_reg
from .errors import ConditionalUnderflowError, FactorDivergenceError
from .types import ArrayModel, as_matrix

EPS2_FLOOR = 1e-12
GRID_MARGIN = 8.0
MIN_GRID_MARGIN = 5.0
SMOOTHING_WINDOW = 100


def latent_eps2(zbar, alpha: float) -> float:
    """alpha^2 ||zbar||^2 / N."""
    zbar = np.asarray(zbar, dtype=float).ravel()
    return float(alpha**2 * (zbar @ zbar) / zbar.size)


def _floored_eps2(zbar: np.ndarray, alpha: float) -> float:
    mean_square = float(zbar @ zbar) / zbar.size
    return max(alpha**2 * mean_square, EPS2_FLOOR * (1.0 + mean_square))


class LatentState(ArrayModel):
    zbar: np.ndarray = Field(..., description="Latent means zbar_i")
    alpha: float = Field(..., gt=0.0, lt=1.0, description="Proportion constant")
    eps2: float = Field(..., gt=0.0, description="Latent bandwidth eps^2")

    @classmethod
    def from_zbar(cls, zbar, alpha: float) -> "LatentState":
        zbar = np.asarray(zbar, dtype=float).ravel().copy()
        return cls(zbar=zbar, alpha=alpha, eps2=_floored_eps2(zbar, alpha))

    @property
    def eps(self) -> float:
        return float(np.sqrt(self.eps2))


class ConditionalStats(ArrayModel):
    z: float
    mean: np.ndarray = Field(..., description="Conditional mean xbar(z)")
    std: float = Field(..., ge=0.0, description="Conditional std sigma(z)")
    density: float = Field(..., ge=0.0, description="Latent density nu(z)")
    log_density: float
    likelihoods: np.ndarray = Field(..., description="nu(z|x_i)")
    weights: np.ndarray = Field(..., description="Bayes weights rho(x_i|z), summing to 1")


class PrincipalCurve(ArrayModel):
    z: np.ndarray = Field(..., description="Increasing latent values")
    points: np.ndarray = Field(..., description="Conditional means xbar(z), one row per z")

    def __iter__(self):
        return iter(zip(self.z.tolist(), (p for p in self.points)))

    def __len__(self) -> int:
        return self.z.size

    def rows(self) -> list[list[float]]:
        return [[float(z), *map(float, p)] for z, p in zip(self.z, self.points)]


class AfdResult(ArrayModel):
    state: LatentState
    sigma: float = Field(..., description="Final sigma by quadrature")
    sigma_trace: list[float] = Field(default_factory=list)
    trace_iterations: list[int] = Field(default_factory=list)
    iterations: int = 0


class _Profile(NamedTuple):
    weights: np.ndarray
    means: np.ndarray
    dev2: np.ndarray
    sigma: np.ndarray
    log_nu: np.ndarray
    log_phi: np.ndarray


def _profile(z: np.ndarray, X: np.ndarray, zbar: np.ndarray, eps2: float) -> _Profile:
    log_phi = -((z[:, None] - zbar[None, :]) ** 2) / (2.0 * eps2) - 0.5 * np.log(2.0 * np.pi * eps2)
    lse = logsumexp(log_phi, axis=1)
    bad = ~np.isfinite(lse)
    if bad.any():
        raise ConditionalUnderflowError(float(z[np.argmax(bad)]))
    W = np.exp(log_phi - lse[:, None])
    means = W @ X
    diffs = X[None, :, :] - means[:, None, :]
    dev2 = np.einsum("mnd,mnd->mn", diffs, diffs)
    sigma = np.sqrt(np.clip(np.einsum("mn,mn->m", W, dev2), 0.0, None))
    return _Profile(W, means, dev2, sigma, lse - np.log(zbar.size), log_phi)


def _gradients(z: np.ndarray, prof: _Profile, zbar: np.ndarray, eps2: float, alpha: float, std_reg: float) -> np.ndarray:
    n = zbar.size
    guarded = np.maximum(prof.sigma, std_reg)
    h = prof.sigma[:, None] + prof.dev2 / guarded[:, None]
    offset = z[:, None] - zbar[None, :]
    C = alpha**2 / (n * eps2) * np.einsum("mn,mn->m", h * prof.weights, offset**2 / eps2 - 1.0)
    return 0.5 * (C[:, None] * zbar[None, :] + offset / eps2 * prof.weights * h)


def conditional_stats(z: float, data, state: LatentState) -> ConditionalStats:
    """Bayes conditional of the data at latent value ``z`` (log-domain)."""
    X = as_matrix(data)
    prof = _profile(np.array([float(z)]), X, state.zbar, state.eps2)
    return ConditionalStats(
        z=float(z),
        mean=prof.means[0],
        std=float(prof.sigma[0]),
        density=float(np.exp(prof.log_nu[0])),
        log_density=float(prof.log_nu[0]),
        likelihoods=np.exp(prof.log_phi[0]),
        weights=prof.weights[0],
    )


def afd_gradient(z: float, data, state: LatentState, std_reg: Optional[float] = None) -> np.ndarray:
    """Stochastic gradient G_i(z) of sigma with respect to zbar_i, linear in N.

    With Bayes weights w_j, h_j = sigma(z) + ||x_j - xbar(z)||^2 / sigma(z) and

        C(z)   = alpha^2 / (N eps^2) sum_j h_j w_j ((z - zbar_j)^2 / eps^2 - 1)
        G_i(z) = 1/2 [C(z) zbar_i + w_i h_i (z - zbar_i) / eps^2]

    E_nu[G_i] is the exact partial derivative of sigma; the second factor of C
    comes from differentiating the bandwidth rule.
    """
    X = as_matrix(data)
    eps = default_std_reg(X) if std_reg is None else std_reg
    zz = np.array([float(z)])
    prof = _profile(zz, X, state.zbar, state.eps2)
    return _gradients(zz, prof, state.zbar, state.eps2, state.alpha, eps)[0]


def latent_grid(state: LatentState, nodes: int = 801, margin: float = GRID_MARGIN) -> np.ndarray:
    """Uniform grid over [min zbar - margin*eps, max zbar + margin*eps]."""
    lo = float(state.zbar.min()) - margin * state.eps
    hi = float(state.zbar.max()) + margin * state.eps
    return np.linspace(lo, hi, nodes)


def _check_grid(grid: np.ndarray, state: LatentState) -> np.ndarray:
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size < 3 or np.any(np.diff(grid) <= 0.0):
        raise ValueError("quadrature grid must be strictly increasing with at least 3 nodes")
    lo = float(state.zbar.min()) - MIN_GRID_MARGIN * state.eps
    hi = float(state.zbar.max()) + MIN_GRID_MARGIN * state.eps
    if grid[0] > lo or grid[-1] < hi:
        logger.warning(f"quadrature grid [{grid[0]:.4g}, {grid[-1]:.4g}] does not cover [{lo:.4g}, {hi:.4g}]")
    return grid


def sigma_profile(z, data, state: LatentState) -> tuple[np.ndarray, np.ndarray]:
    """sigma(z) and nu(z) at every value of ``z``."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    prof = _profile(z, as_matrix(data), state.zbar, state.eps2)
    return prof.sigma, np.exp(prof.log_nu)


def sigma_quadrature(data, state: LatentState, grid=None, nodes: int = 801) -> float:
    """int sigma(z) nu(z) dz by composite Simpson quadrature."""
    grid = latent_grid(state, nodes) if grid is None else _check_grid(grid, state)
    sigma, nu = sigma_profile(grid, data, state)
    return float(simpson(sigma * nu, x=grid))


def expected_gradient(data, state: LatentState, grid=None, nodes: int = 801, std_reg: Optional[float] = None) -> np.ndarray:
    """E_nu[G_i] = int G_i(z) nu(z) dz on the same quadrature as :func:`sigma_quadrature`."""
    X = as_matrix(data)
    eps = default_std_reg(X) if std_reg is None else std_reg
    grid = latent_grid(state, nodes) if grid is None else _check_grid(grid, state)
    prof = _profile(grid, X, state.zbar, state.eps2)
    G = _gradients(grid, prof, state.zbar, state.eps2, state.alpha, eps)
    return simpson(G * np.exp(prof.log_nu)[:, None], x=grid, axis=0)


def pc1_scores(data) -> np.ndarray:
    """Projections on the first principal component, scaled to unit RMS."""
    X = as_matrix(data)
    centered = X - X.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    direction = vt[0]
    if direction[np.argmax(np.abs(direction))] < 0.0:
        direction = -direction
    scores = centered @ direction
    rms = float(np.sqrt(np.mean(scores**2)))
    return scores / rms if rms > 0.0 else scores


def smooth_trace(values, window: int = SMOOTHING_WINDOW) -> np.ndarray:
    """Trailing moving average (valid part only)."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return values
    window = max(1, min(window, values.size))
    return np.convolve(values, np.ones(window) / window, mode="valid")


def run_afd(
    data,
    alpha: Optional[float] = None,
    eta: Optional[float] = None,
    iters: Optional[int] = None,
    seed: Optional[int] = None,
    init: Optional[str] = None,
    cfg: Optional[FactorConfig] = None,
) -> AfdResult:
    """Stochastic descent on sigma over the latent means.

    Every iteration samples z from nu (a uniformly chosen component, then
    Gaussian noise of variance eps^2), moves zbar by -eta * G(z) and
    recomputes eps^2. sigma is evaluated by quadrature every
    ``cfg.trace_every`` iterations.
    """
    overrides = {"alpha": alpha, "eta": eta, "iters": iters, "seed": seed, "init": init}
    cfg = cfg or FactorConfig()
    cfg = FactorConfig(**{**cfg.model_dump(), **{k: v for k, v in overrides.items() if v is not None}})

    X = as_matrix(data)
    n = X.shape[0]
    if n < 2:
        raise ValueError("affine factor discovery needs at least two samples")
    std_reg = default_std_reg(X) if cfg.std_reg is None else cfg.std_reg
    rng = np.random.default_rng(cfg.seed)

    zbar = pc1_scores(X) if cfg.init == "pc1" else rng.uniform(-1.0, 1.0, size=n)
    eps2 = _floored_eps2(zbar, cfg.alpha)
    start_norm = max(float(np.linalg.norm(zbar)), np.sqrt(EPS2_FLOOR))
    sigma_trace: list[float] = []
    trace_iterations: list[int] = []
    logger.info(f"Affine factor discovery: N={n}, alpha={cfg.alpha}, eta={cfg.eta}, iters={cfg.iters}, init={cfg.init}")

    for it in range(1, cfg.iters + 1):
        j = int(rng.integers(n))
        z = np.array([zbar[j] + np.sqrt(eps2) * rng.standard_normal()])
        prof = _profile(z, X, zbar, eps2)
        zbar = zbar - cfg.eta * _gradients(z, prof, zbar, eps2, cfg.alpha, std_reg)[0]
        eps2 = _floored_eps2(zbar, cfg.alpha)

        growth = float(np.linalg.norm(zbar)) / start_norm
        if not np.isfinite(growth) or growth > cfg.divergence_factor:
            logger.error(f"Latent means diverged at iteration {it} (growth {growth:.3e})")
            raise FactorDivergenceError(it, growth, sigma_trace)

        if it % cfg.trace_every == 0:
            state = LatentState(zbar=zbar, alpha=cfg.alpha, eps2=eps2)
            sigma_trace.append(sigma_quadrature(X, state, nodes=cfg.trace_nodes))
            trace_iterations.append(it)
            logger.debug(f"iteration {it}: sigma {sigma_trace[-1]:.8g}, eps {np.sqrt(eps2):.4g}")

    state = LatentState(zbar=zbar, alpha=cfg.alpha, eps2=eps2)
    sigma = sigma_quadrature(X, state, nodes=cfg.quad_nodes)
    logger.info(f"Affine factor discovery finished: sigma={sigma:.8g}")
    return AfdResult(
        state=state,
        sigma=sigma,
        sigma_trace=sigma_trace,
        trace_iterations=trace_iterations,
        iterations=cfg.iters,
    )


def principal_curve(data, state: LatentState, num_points: int = 200, seed: int = 0) -> PrincipalCurve:
    """Conditional means xbar(z) at ``num_points`` latent values drawn from nu, sorted by z."""
    if num_points < 1:
        raise ValueError("num_points must be positive")
    X = as_matrix(data)
    rng = np.random.default_rng(seed)
    components = rng.integers(state.zbar.size, size=num_points)
    z = np.sort(state.zbar[components] + state.eps * rng.standard_normal(num_points))
    prof = _profile(z, X, state.zbar, state.eps2)
    return PrincipalCurve(z=z, points=prof.means)
