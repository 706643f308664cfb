import importlib

from loguru import logger

from .actions.barycenter import barycenter
from .actions.cluster import cluster
from .actions.evaluate import evaluate
from .actions.factor import factor
from .actions.synthesize import synthesize
from .tools.registry import AlgorithmRegistry, default_registry


class BarycenterRoomsAddon:
    """
    Barycenter Rooms Package Addon Class

    Entry point for external programs: barycentric clustering, affine factor
    discovery, benchmark synthesis and evaluation, each delegated to an
    action with the loaded configuration.
    """
    type = "analytics"

    def __init__(self):
        self.modules = ["actions", "configuration", "core", "storage", "tools"]
        self.config = {}
        self.algorithm_registry = default_registry()

    @property
    def logger(self):
        """Custom logger that prefixes all messages with addon type"""
        class PrefixedLogger:
            def __init__(self, addon_type):
                self.addon_type = addon_type
                self._logger = logger

            def debug(self, message):
                self._logger.debug(f"[TYPE: {self.addon_type.upper()}] {message}")

            def info(self, message):
                self._logger.info(f"[TYPE: {self.addon_type.upper()}] {message}")

            def warning(self, message):
                self._logger.warning(f"[TYPE: {self.addon_type.upper()}] {message}")

            def error(self, message):
                self._logger.error(f"[TYPE: {self.addon_type.upper()}] {message}")

        return PrefixedLogger(self.type)

    def loadAlgorithms(self, algorithm_functions, algorithm_descriptions=None, algorithm_objectives=None):
        self.logger.debug(f"Algorithm functions provided: {list(algorithm_functions.keys())}")
        self.algorithm_registry.register_algorithms(algorithm_functions, algorithm_descriptions, algorithm_objectives)
        self.logger.info(f"Registered algorithms: {self.algorithm_registry.names()}")

    def getAlgorithms(self):
        return self.algorithm_registry.get_definitions()

    def clearAlgorithms(self):
        self.algorithm_registry.clear()

    def synthesize(self, family: str, **kwargs):
        return synthesize(self.config, family=family, **kwargs)

    def cluster(self, data, algorithm: str, k: int, **kwargs):
        self.logger.debug(f"Cluster called with algorithm={algorithm}, k={k}")
        kwargs.setdefault("registry", self.algorithm_registry)
        return cluster(self.config, data=data, algorithm=algorithm, k=k, **kwargs)

    def factor(self, data, **kwargs):
        return factor(self.config, data=data, **kwargs)

    def evaluate(self, record, truth):
        return evaluate(self.config, record=record, truth=truth)

    def barycenter(self, clusters, **kwargs):
        return barycenter(self.config, clusters=clusters, **kwargs)

    def test(self) -> bool:
        """
        Import every module and report its public components.

        Returns:
            bool: True if every module imports and exposes its components, False otherwise
        """
        self.logger.info("Running barycenter-rooms-pkg test...")

        total_components = 0
        for module_name in self.modules:
            try:
                module = importlib.import_module(f"barycenter_rooms_pkg.{module_name}")
                components = getattr(module, "__all__", [])
                missing = [name for name in components if not hasattr(module, name)]
                if missing:
                    raise AttributeError(f"{module_name} does not define {', '.join(missing)}")
                for component_name in components:
                    component = getattr(module, component_name)
                    self.logger.debug(f"Component {component_name} type: {type(component)}")
                total_components += len(components)
                self.logger.info(f"{len(components)} {module_name} loaded correctly, available imports: {', '.join(components)}")
            except ImportError as e:
                self.logger.error(f"Failed to import {module_name}: {e}")
                return False
            except Exception as e:
                self.logger.error(f"Error testing {module_name}: {e}")
                return False
        self.logger.info("Barycenter rooms package test completed successfully!")
        self.logger.info(f"Total components loaded: {total_components} across {len(self.modules)} modules")
        return True

    def loadAddonConfig(self, addon_config: dict):
        """
        Load addon configuration.

        Args:
            addon_config (dict): Addon configuration dictionary

        Returns:
            bool: True if configuration is loaded successfully, False otherwise
        """
        try:
            from barycenter_rooms_pkg.configuration import CustomAddonConfig
            self.config = CustomAddonConfig(**addon_config)
            self.logger.info(f"Addon configuration loaded successfully: {self.config}")
            return True
        except Exception as e:
            self.logger.error(f"Failed to load addon configuration: {e}")
            return False
