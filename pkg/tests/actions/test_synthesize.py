import importlib
from unittest.mock import patch

import pytest

from barycenter_rooms_pkg.actions import synthesize
from barycenter_rooms_pkg.core.types import LabeledDataSet
from barycenter_rooms_pkg.storage import load_csv

synthesize_module = importlib.import_module("barycenter_rooms_pkg.actions.synthesize")


class TestSynthesize:
    def test_expansion_written_to_csv(self, tmp_path):
        out = tmp_path / "data.csv"
        response = synthesize({}, "expansion", t=2.2, seed=7, out=str(out))

        assert response.code == 200
        assert response.ok
        assert response.output.n_samples == 960
        assert isinstance(response.output.dataset, LabeledDataSet)
        assert load_csv(out, label_column="label").n_classes == 3

    @pytest.mark.parametrize("family", ["dilation", "line", "arc", "branches"])
    def test_every_family(self, family):
        response = synthesize(None, family, t=1.0, n=30, noise=0.01)

        assert response.code == 200
        assert response.output.dim == 2
        assert response.output.path is None

    def test_unknown_family(self):
        response = synthesize({}, "spiral")

        assert response.code == 400
        assert "Invalid input" in response.message

    def test_negative_parameter(self):
        assert synthesize({}, "dilation", t=-1.0).code == 400

    def test_generator_failure(self):
        with patch.object(synthesize_module, "gen_expansion", side_effect=RuntimeError("boom")), \
             patch.object(synthesize_module, "logger") as mock_logger:
            response = synthesize({}, "expansion", t=1.0)

        assert response.code == 500
        assert response.message == "Synthesize failed: boom"
        mock_logger.error.assert_called_once()
