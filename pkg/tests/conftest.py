import itertools
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))


def random_spd(rng, d, low=0.2, high=2.0):
    Q, _ = np.linalg.qr(rng.standard_normal((d, d)))
    return (Q * rng.uniform(low, high, size=d)) @ Q.T


def random_weights(rng, k):
    w = rng.uniform(0.2, 1.0, size=k)
    return w / w.sum()


def random_clusters(rng, k, d, commuting=False):
    from barycenter_rooms_pkg.core.gaussbary import GaussianCluster

    weights = random_weights(rng, k)
    Q, _ = np.linalg.qr(rng.standard_normal((d, d)))
    clusters = []
    for w in weights:
        cov = (Q * rng.uniform(0.2, 2.0, size=d)) @ Q.T if commuting else random_spd(rng, d)
        clusters.append(GaussianCluster(weight=float(w), mean=rng.standard_normal(d), cov=0.5 * (cov + cov.T)))
    return clusters


def brute_force_simplex(v):
    """Projection onto the simplex by enumerating every support set."""
    v = np.asarray(v, dtype=float)
    k = v.size
    best, best_dist = None, np.inf
    for size in range(1, k + 1):
        for support in itertools.combinations(range(k), size):
            idx = list(support)
            theta = (v[idx].sum() - 1.0) / size
            x = np.zeros(k)
            x[idx] = v[idx] - theta
            if x[idx].min() < -1e-15:
                continue
            dist = float(((x - v) ** 2).sum())
            if dist < best_dist:
                best, best_dist = x, dist
    return best


def brute_force_correctness(truth, pred, k):
    """Best overlap over every relabeling of the predicted clusters."""
    truth = np.asarray(truth)
    pred = np.asarray(pred)
    best = 0
    for perm in itertools.permutations(range(1, k + 1)):
        mapped = np.array([perm[p - 1] for p in pred])
        best = max(best, int(np.sum(mapped == truth)))
    return best / truth.size


def tangent_direction(rng, n, k):
    """Random direction with zero row sums, so P + h*V stays row-stochastic."""
    V = rng.standard_normal((n, k))
    return V - V.mean(axis=1, keepdims=True)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def sample_config():
    return {
        "id": "barycenter-test",
        "name": "barycenter-test",
        "description": "Test barycenter addon",
        "clustering": {"restarts": 3, "seed": 1},
        "factor": {"iters": 200, "alpha": 0.2},
    }


@pytest.fixture
def three_blobs():
    from barycenter_rooms_pkg.core.types import LabeledDataSet

    gen = np.random.default_rng(7)
    centers = np.array([[0.0, 0.0], [6.0, 0.0], [0.0, 6.0]])
    data = np.vstack([c + 0.5 * gen.standard_normal((30, 2)) for c in centers])
    labels = np.repeat([1, 2, 3], 30)
    return LabeledDataSet(data=data, labels=labels, n_classes=3)


@pytest.fixture
def sample_algorithms():
    def first_half(data, k: int, cfg=None):
        from barycenter_rooms_pkg.core.clustering import kmeans

        return kmeans(data, k, cfg)

    return {"first-half": first_half}
