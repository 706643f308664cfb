import json

import numpy as np
import pytest

from barycenter_rooms_pkg.actions import barycenter


def clusters(weights=(0.5, 0.5)):
    return [
        {"weight": weights[0], "mean": [0.0, 0.0], "cov": [[1.0, 0.0], [0.0, 4.0]]},
        {"weight": weights[1], "mean": [2.0, 2.0], "cov": [[4.0, 0.0], [0.0, 1.0]]},
    ]


class TestBarycenter:
    def test_costs_and_maps(self, tmp_path):
        out = tmp_path / "bary.json"
        response = barycenter({}, clusters(), maps=True, out=str(out))

        assert response.code == 200
        output = response.output
        assert np.allclose(output.barycenter.cov, 2.25 * np.eye(2))
        assert output.std == pytest.approx(np.sqrt(4.5))
        assert output.pairwise_cost == pytest.approx(output.transport_cost, rel=1e-8)
        assert len(output.maps) == 2
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert payload["barycenter"]["mean"] == [1.0, 1.0]
        assert payload["path"] is None

    def test_maps_omitted_by_default(self):
        assert barycenter({}, clusters()).output.maps is None

    def test_weights_must_sum_to_one(self):
        response = barycenter({}, clusters((0.5, 0.4)))

        assert response.code == 400
        assert "sum to 1" in response.message

    def test_malformed_cluster(self):
        assert barycenter({}, [{"weight": 1.0, "mean": [0.0]}]).code == 400

    def test_degenerate_covariances(self):
        payload = [
            {"weight": 0.5, "mean": [0.0, 0.0], "cov": [[0.0, 0.0], [0.0, 0.0]]},
            {"weight": 0.5, "mean": [1.0, 0.0], "cov": [[0.0, 0.0], [0.0, 0.0]]},
        ]
        response = barycenter({}, payload)

        assert response.code == 500
        assert "cov_reg" in response.message
