from unittest.mock import Mock, patch

import pytest

from barycenter_rooms_pkg.configuration import ClusterConfig
from barycenter_rooms_pkg.tools.registry import DEFAULT_ALGORITHMS, AlgorithmRegistry, default_registry


class TestAlgorithmRegistry:
    def test_registry_initialization(self):
        registry = AlgorithmRegistry()

        assert registry.functions == {}
        assert registry.definitions == {}

    def test_register_algorithms_basic(self, sample_algorithms):
        registry = AlgorithmRegistry()

        registry.register_algorithms(sample_algorithms)

        assert registry.names() == ["first-half"]
        assert registry.definitions["first-half"]["description"] == "Run the first-half clustering algorithm"
        assert registry.definitions["first-half"]["objective"] == "objective"

    def test_register_with_descriptions_and_objectives(self, sample_algorithms):
        registry = AlgorithmRegistry()

        registry.register_algorithms(sample_algorithms, {"first-half": "Lloyd"}, {"first-half": "SSE"})

        assert registry.definitions["first-half"]["description"] == "Lloyd"
        assert registry.definitions["first-half"]["objective"] == "SSE"

    def test_input_schema_from_annotations(self, sample_algorithms):
        registry = AlgorithmRegistry()
        registry.register_algorithms(sample_algorithms)
        schema = registry.definitions["first-half"]["input_schema"]

        assert schema["type"] == "object"
        assert "k" in schema["properties"]
        assert set(schema["required"]) == {"data", "k"}

    @patch("barycenter_rooms_pkg.tools.registry.logger")
    def test_schema_failure_falls_back(self, mock_logger):
        registry = AlgorithmRegistry()

        with patch("pydantic.create_model", side_effect=TypeError("boom")):
            registry.register("broken", lambda data, k: None)

        assert registry.definitions["broken"]["input_schema"] == {"type": "object", "properties": {}, "required": []}
        mock_logger.warning.assert_called_once()

    def test_register_rejects_non_callable(self):
        with pytest.raises(TypeError, match="not callable"):
            AlgorithmRegistry().register("nope", 42)

    def test_unknown_algorithm_lists_names(self):
        registry = default_registry()

        with pytest.raises(KeyError, match="bary-kmeans"):
            registry.get_function("spectral")

    def test_run_passes_arguments(self):
        registry = AlgorithmRegistry()
        func = Mock(return_value="result")
        registry.register("mock", func)
        cfg = ClusterConfig()

        assert registry.run("mock", "data", 3, cfg) == "result"
        func.assert_called_once_with("data", 3, cfg)

    def test_get_definitions_returns_copy(self, sample_algorithms):
        registry = AlgorithmRegistry()
        registry.register_algorithms(sample_algorithms)

        registry.get_definitions().clear()

        assert "first-half" in registry.definitions

    def test_clear(self, sample_algorithms):
        registry = AlgorithmRegistry()
        registry.register_algorithms(sample_algorithms)

        registry.clear()

        assert registry.functions == {}
        assert registry.definitions == {}


class TestDefaultRegistry:
    def test_holds_every_algorithm(self):
        assert default_registry().names() == sorted(
            ["kmeans", "fuzzy-kmeans", "bary-soft", "bary-iso-soft", "bary-hard", "bary-kmeans"]
        )

    @pytest.mark.parametrize("name", sorted(DEFAULT_ALGORITHMS))
    def test_every_algorithm_clusters_blobs(self, name, three_blobs):
        result = default_registry().run(name, three_blobs, 3, ClusterConfig(restarts=1, seed=0))

        assert result.algorithm == name
        assert result.labels.shape == (three_blobs.n_samples,)
