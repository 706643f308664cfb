from unittest.mock import Mock, patch

import pytest

from barycenter_rooms_pkg.addon import BarycenterRoomsAddon
from barycenter_rooms_pkg.configuration import CustomAddonConfig


class TestBarycenterRoomsAddon:
    def test_addon_initialization(self):
        addon = BarycenterRoomsAddon()

        assert addon.type == "analytics"
        assert addon.modules == ["actions", "configuration", "core", "storage", "tools"]
        assert addon.config == {}
        assert "bary-kmeans" in addon.algorithm_registry.names()

    def test_logger_property(self):
        addon = BarycenterRoomsAddon()
        logger = addon.logger

        assert hasattr(logger, "debug")
        assert hasattr(logger, "info")
        assert hasattr(logger, "warning")
        assert hasattr(logger, "error")
        assert logger.addon_type == "analytics"

    @patch("barycenter_rooms_pkg.addon.logger")
    def test_logger_prefixes_type(self, mock_logger):
        BarycenterRoomsAddon().logger.info("hello")

        mock_logger.info.assert_called_once_with("[TYPE: ANALYTICS] hello")

    def test_load_algorithms(self, sample_algorithms):
        addon = BarycenterRoomsAddon()

        with patch.object(addon.algorithm_registry, "register_algorithms") as mock_register:
            addon.loadAlgorithms(sample_algorithms, {"first-half": "demo"})

            mock_register.assert_called_once_with(sample_algorithms, {"first-half": "demo"}, None)

    def test_get_algorithms(self):
        addon = BarycenterRoomsAddon()
        expected = {"kmeans": {"name": "kmeans"}}

        with patch.object(addon.algorithm_registry, "get_definitions", return_value=expected):
            assert addon.getAlgorithms() == expected

    def test_clear_algorithms(self):
        addon = BarycenterRoomsAddon()

        addon.clearAlgorithms()

        assert addon.getAlgorithms() == {}

    def test_load_addon_config_success(self, sample_config):
        addon = BarycenterRoomsAddon()

        result = addon.loadAddonConfig(sample_config)

        assert result is True
        assert isinstance(addon.config, CustomAddonConfig)
        assert addon.config.clustering.restarts == 3

    def test_load_addon_config_failure(self):
        addon = BarycenterRoomsAddon()

        with patch("barycenter_rooms_pkg.configuration.CustomAddonConfig", side_effect=Exception("Config error")):
            result = addon.loadAddonConfig({})

            assert result is False

    def test_load_addon_config_invalid(self, sample_config):
        addon = BarycenterRoomsAddon()

        assert addon.loadAddonConfig({**sample_config, "log_level": "LOUD"}) is False
        assert addon.config == {}

    def test_test_method_success(self):
        assert BarycenterRoomsAddon().test() is True

    def test_test_method_missing_component(self):
        addon = BarycenterRoomsAddon()

        with patch("importlib.import_module") as mock_import:
            mock_module = Mock(spec=["__all__"])
            mock_module.__all__ = ["Missing"]
            mock_import.return_value = mock_module

            assert addon.test() is False

    def test_test_method_import_error(self):
        addon = BarycenterRoomsAddon()

        with patch("importlib.import_module", side_effect=ImportError("Module not found")):
            assert addon.test() is False

    def test_test_method_general_error(self):
        addon = BarycenterRoomsAddon()

        with patch("importlib.import_module", side_effect=Exception("General error")):
            assert addon.test() is False

    @patch("barycenter_rooms_pkg.addon.cluster")
    def test_cluster_uses_addon_registry(self, mock_cluster, sample_config):
        addon = BarycenterRoomsAddon()
        addon.loadAddonConfig(sample_config)

        addon.cluster([[0.0], [1.0]], "kmeans", 2, restarts=4)

        mock_cluster.assert_called_once_with(
            addon.config,
            data=[[0.0], [1.0]],
            algorithm="kmeans",
            k=2,
            restarts=4,
            registry=addon.algorithm_registry,
        )

    @pytest.mark.parametrize(
        "method, target, args, kwargs",
        [
            ("synthesize", "synthesize", ("expansion",), {"family": "expansion"}),
            ("factor", "factor", ([[0.0]],), {"data": [[0.0]]}),
            ("evaluate", "evaluate", ("run.json", [1]), {"record": "run.json", "truth": [1]}),
            ("barycenter", "barycenter", ([],), {"clusters": []}),
        ],
    )
    def test_actions_receive_config(self, method, target, args, kwargs):
        addon = BarycenterRoomsAddon()

        with patch(f"barycenter_rooms_pkg.addon.{target}") as mock_action:
            getattr(addon, method)(*args)

            mock_action.assert_called_once_with(addon.config, **kwargs)
