"""Synthetic benchmarks, the correctness rate and column standardization."""
from typing import Optional, Union

import numpy as np
from pydantic import Field
from scipy.optimize import linear_sum_assignment

from .errors import LabelRangeError
from .types import DataSet, LabeledDataSet, as_labels, as_matrix


class CurveDataSet(DataSet):
    param: np.ndarray = Field(..., description="Ground-truth arc-length parameter of every sample")


def _round_half_up(value: float) -> int:
    return int(np.floor(value + 0.5))


def _gaussian_blobs(rng: np.random.Generator, sizes, means, stds) -> LabeledDataSet:
    blocks, labels = [], []
    for label, (size, mean, std) in enumerate(zip(sizes, means, stds), start=1):
        mean = np.asarray(mean, dtype=float)
        blocks.append(mean + rng.standard_normal((size, mean.size)) * np.asarray(std, dtype=float))
        labels.append(np.full(size, label))
    return LabeledDataSet(data=np.vstack(blocks), labels=np.concatenate(labels), n_classes=len(blocks))


def _check_t(t: float) -> float:
    t = float(t)
    if not t >= 0.0:
        raise ValueError(f"t must be nonnegative, got {t}")
    return t


def expansion_parameters(t: float) -> tuple[list[int], np.ndarray, np.ndarray]:
    """Sizes, means and isotropic stds of the expansion family at ``t``."""
    t = _check_t(t)
    sizes = [100, _round_half_up(100 * (1 + t)), _round_half_up(100 * (1 + 2 * t))]
    means = np.array(
        [
            [0.0, 0.0],
            [0.0, 2.0 + t],
            [(t + 1) / (t + 2) * np.sqrt(12 * (2 * t + 1)), 2 * (1 - t**2) / (t + 2)],
        ]
    )
    stds = np.array([(1 + j * t) / np.sqrt(10.0) for j in range(3)])
    return sizes, means, stds


def gen_expansion(t: float, seed: int = 0) -> LabeledDataSet:
    """Three adjacent balls whose radii and populations grow with ``t``.

    Cluster j (j = 0, 1, 2) has 100(1 + j t) points drawn from
    N(m_j, (1 + j t)^2 / 10 * I).
    """
    sizes, means, stds = expansion_parameters(t)
    rng = np.random.default_rng(seed)
    return _gaussian_blobs(rng, sizes, means, [[s, s] for s in stds])


def gen_dilation(t: float, seed: int = 0) -> LabeledDataSet:
    """Three stacked 100-point Gaussians; the outer two are stretched horizontally by 1 + t."""
    t = _check_t(t)
    rng = np.random.default_rng(seed)
    means = [[0.0, 1.0], [0.0, 0.0], [0.0, -1.0]]
    stds = [[(1 + t) / 5, 1 / 5], [1 / 5, 1 / 5], [(1 + t) / 5, 1 / 5]]
    return _gaussian_blobs(rng, [100, 100, 100], means, stds)


def gen_noisy_line(n: int = 500, noise: float = 0.05, seed: int = 0, length: float = 2.0) -> CurveDataSet:
    """Uniform samples of a segment along (1, 1)/sqrt(2) with isotropic Gaussian noise."""
    rng = np.random.default_rng(seed)
    param = rng.uniform(0.0, length, size=n)
    direction = np.array([1.0, 1.0]) / np.sqrt(2.0)
    data = param[:, None] * direction[None, :] + noise * rng.standard_normal((n, 2))
    return CurveDataSet(data=data, param=param)


def gen_quarter_arc(n: int = 500, noise: float = 0.05, seed: int = 0, radius: float = 1.0) -> CurveDataSet:
    """Uniform samples of the quarter circle of ``radius`` in the first quadrant, plus noise."""
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, np.pi / 2, size=n)
    data = radius * np.column_stack([np.cos(theta), np.sin(theta)]) + noise * rng.standard_normal((n, 2))
    return CurveDataSet(data=data, param=radius * theta)


def gen_branches(
    n_per_branch: int = 150,
    n_branches: int = 3,
    gap: float = 1.0,
    noise: float = 0.02,
    seed: int = 0,
) -> LabeledDataSet:
    """Unit segments laid out left to right with gaps, alternately tilted by +/- 22.5 degrees.

    Mimics fault-line seismicity: several thin branches that no single
    smooth curve should bridge. Labels are the branch index.
    """
    if n_branches < 1:
        raise ValueError("at least one branch is required")
    rng = np.random.default_rng(seed)
    blocks, labels = [], []
    for b in range(n_branches):
        angle = np.pi / 8 if b % 2 == 0 else -np.pi / 8
        s = rng.uniform(0.0, 1.0, size=n_per_branch)
        start = np.array([b * (1.0 + gap), 0.0])
        points = start + s[:, None] * np.array([np.cos(angle), np.sin(angle)])
        blocks.append(points + noise * rng.standard_normal((n_per_branch, 2)))
        labels.append(np.full(n_per_branch, b + 1))
    return LabeledDataSet(data=np.vstack(blocks), labels=np.concatenate(labels), n_classes=n_branches)


def overlap_matrix(truth, pred, n_classes: Optional[int] = None) -> np.ndarray:
    """O[a, b] = mass of true class a + 1 assigned to predicted cluster b + 1."""
    truth = as_labels(truth, n_classes)
    pred = np.asarray(pred)
    if pred.ndim == 2:
        if pred.shape[0] != truth.size:
            raise ValueError(f"{pred.shape[0]} assignment rows for {truth.size} labels")
        P = pred.astype(float)
    else:
        labels = as_labels(pred, n_classes)
        if labels.size != truth.size:
            raise ValueError(f"{labels.size} predicted labels for {truth.size} true labels")
        P = np.zeros((labels.size, int(labels.max())))
        P[np.arange(labels.size), labels - 1] = 1.0
    K = max(int(truth.max()), P.shape[1]) if n_classes is None else n_classes
    if P.shape[1] > K:
        raise LabelRangeError(f"{P.shape[1]} predicted clusters exceed K={K}")
    O = np.zeros((K, K))
    np.add.at(O, truth - 1, np.pad(P, ((0, 0), (0, K - P.shape[1]))))
    return O


def correctness_rate(truth, pred: Union[np.ndarray, list], n_classes: Optional[int] = None) -> float:
    """Best overlap of ``pred`` with ``truth`` over relabelings of the clusters.

    ``pred`` is a label vector or an N x K assignment matrix. The relabeling
    is a linear assignment on the overlap matrix.
    """
    O = overlap_matrix(truth, pred, n_classes)
    rows, cols = linear_sum_assignment(O, maximize=True)
    return float(O[rows, cols].sum() / O.sum())


def normalize_columns(data):
    """Zero mean and unit population std per column; constant columns become 0.

    Returns the same kind of object it was given (array, DataSet or LabeledDataSet).
    """
    X = as_matrix(data)
    if X.shape[0] < 2:
        raise ValueError("normalization needs at least two samples")
    centered = X - X.mean(axis=0)
    std = X.std(axis=0)
    varying = (np.ptp(X, axis=0) > 0.0) & (std > 0.0)
    scaled = np.divide(centered, std, out=np.zeros_like(centered), where=varying[None, :])
    if isinstance(data, LabeledDataSet):
        return LabeledDataSet(data=scaled, labels=data.labels, n_classes=data.n_classes)
    if isinstance(data, DataSet):
        return DataSet(data=scaled)
    return scaled
