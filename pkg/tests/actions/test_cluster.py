import importlib
import json
from unittest.mock import patch

import numpy as np

from barycenter_rooms_pkg.actions import cluster
from barycenter_rooms_pkg.tools.registry import AlgorithmRegistry

cluster_module = importlib.import_module("barycenter_rooms_pkg.actions.cluster")


class TestCluster:
    def test_best_of_restarts_record(self, three_blobs, sample_config, tmp_path):
        out = tmp_path / "run.json"
        response = cluster(sample_config, three_blobs, "bary-kmeans", 3, out=str(out))

        assert response.code == 200
        record = response.output.record
        assert record.algorithm == "bary-kmeans"
        assert record.config["restarts"] == 3
        assert record.config["normalize"] is True
        assert record.normalized is True
        assert record.seed == 1
        assert len(record.labels) == three_blobs.n_samples
        assert response.output.correctness >= 0.95
        assert json.loads(out.read_text(encoding="utf-8"))["algorithm"] == "bary-kmeans"

    def test_overrides_win_over_configuration(self, three_blobs, sample_config):
        response = cluster(sample_config, three_blobs, "kmeans", 3, restarts=2, seed=9, normalize=False, workers=2)

        assert response.code == 200
        assert response.output.record.config["restarts"] == 2
        assert response.output.record.config["workers"] == 2
        assert response.output.record.config["normalize"] is False
        assert response.output.record.normalized is False
        assert response.output.record.seed == 9

    def test_soft_algorithm_keeps_assignment(self, three_blobs):
        response = cluster({}, three_blobs.data, "fuzzy-kmeans", 3, restarts=1)

        assert response.code == 200
        assert np.allclose(np.sum(response.output.record.assignment, axis=1), 1.0)
        assert response.output.correctness is None

    def test_unknown_algorithm(self, three_blobs):
        response = cluster({}, three_blobs, "spectral", 3)

        assert response.code == 400
        assert "spectral" in response.message

    def test_k_out_of_range(self, three_blobs):
        assert cluster({}, three_blobs, "kmeans", 1).code == 400
        assert cluster({}, three_blobs, "kmeans", 500).code == 400

    def test_invalid_override(self, three_blobs):
        response = cluster({}, three_blobs, "kmeans", 3, update_rate=2.0)

        assert response.code == 400
        assert "update_rate" in response.message

    def test_algorithm_failure(self, three_blobs):
        def failing(data, k, cfg=None):
            raise RuntimeError("no luck")

        registry = AlgorithmRegistry()
        registry.register("failing", failing)

        with patch.object(cluster_module, "logger") as mock_logger:
            response = cluster({}, three_blobs, "failing", 3, restarts=1, registry=registry)

        assert response.code == 500
        assert response.message == "Cluster failed: no luck"
        mock_logger.error.assert_called_once()
