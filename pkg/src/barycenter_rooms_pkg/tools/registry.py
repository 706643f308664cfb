from typing import Any, Callable, Optional

from loguru import logger

from ..configuration.addonconfig import ClusterConfig
from ..core.clustering import ClusteringResult, fuzzy_kmeans, kmeans, run_hard, run_soft

Algorithm = Callable[..., ClusteringResult]


def bary_soft(data, k: int, cfg: Optional[ClusterConfig] = None) -> ClusteringResult:
    return run_soft(data, k, "general", cfg)


def bary_iso_soft(data, k: int, cfg: Optional[ClusterConfig] = None) -> ClusteringResult:
    return run_soft(data, k, "isotropic", cfg)


def bary_hard(data, k: int, cfg: Optional[ClusterConfig] = None) -> ClusteringResult:
    return run_hard(data, k, "general", cfg)


def bary_kmeans(data, k: int, cfg: Optional[ClusterConfig] = None) -> ClusteringResult:
    return run_hard(data, k, "isotropic", cfg)


def lloyd_kmeans(data, k: int, cfg: Optional[ClusterConfig] = None) -> ClusteringResult:
    return kmeans(data, k, cfg)


def fuzzy_c_means(data, k: int, cfg: Optional[ClusterConfig] = None) -> ClusteringResult:
    return fuzzy_kmeans(data, k, cfg=cfg)


DEFAULT_ALGORITHMS: dict[str, tuple[Algorithm, str, str]] = {
    "kmeans": (lloyd_kmeans, "Lloyd's k-means", "SSE"),
    "fuzzy-kmeans": (fuzzy_c_means, "Fuzzy k-means", "J_c"),
    "bary-soft": (bary_soft, "Soft barycentric clustering, general covariances", "Tr(Sigma_y)"),
    "bary-iso-soft": (bary_iso_soft, "Soft barycentric clustering, isotropic clusters", "sigma_y"),
    "bary-hard": (bary_hard, "Hard barycentric clustering, general covariances", "Tr(Sigma_y)"),
    "bary-kmeans": (bary_kmeans, "Barycentric k-means (hard, isotropic)", "sigma_y"),
}


class AlgorithmRegistry:
    def __init__(self):
        self.functions: dict[str, Algorithm] = {}
        self.definitions: dict[str, dict[str, Any]] = {}

    def register_algorithms(
        self,
        functions: dict[str, Algorithm],
        descriptions: Optional[dict[str, str]] = None,
        objectives: Optional[dict[str, str]] = None,
    ):
        descriptions = descriptions or {}
        objectives = objectives or {}
        for name, func in functions.items():
            description = descriptions.get(name, f"Run the {name} clustering algorithm")
            self.register(name, func, description, objectives.get(name, "objective"))

    def register(self, name: str, func: Algorithm, description: str = "", objective: str = "objective"):
        if not callable(func):
            raise TypeError(f"Algorithm '{name}' is not callable")
        self.functions[name] = func
        self.definitions[name] = {
            "name": name,
            "description": description or f"Run the {name} clustering algorithm",
            "objective": objective,
            "input_schema": self._convert_annotations_to_schema(func),
        }
        logger.debug(f"Registered clustering algorithm '{name}'")

    def _convert_annotations_to_schema(self, func: Algorithm) -> dict[str, Any]:
        try:
            import inspect

            from pydantic import create_model

            fields = {}
            for param_name, param in inspect.signature(func).parameters.items():
                annotation = Any if param.annotation == inspect.Parameter.empty else param.annotation
                default = ... if param.default == inspect.Parameter.empty else param.default
                fields[param_name] = (annotation, default)
            schema = create_model("AlgorithmSchema", **fields).model_json_schema()
            schema.setdefault("properties", {})
            schema.setdefault("required", [])
            schema.setdefault("type", "object")
            return schema
        except Exception as e:
            logger.warning(f"Schema generation failed for algorithm '{getattr(func, '__name__', func)}': {e}")
            return {"type": "object", "properties": {}, "required": []}

    def names(self) -> list[str]:
        return sorted(self.functions)

    def get_definitions(self) -> dict[str, Any]:
        return self.definitions.copy()

    def get_function(self, name: str) -> Algorithm:
        if name not in self.functions:
            raise KeyError(f"Unknown algorithm '{name}'; registered: {', '.join(self.names())}")
        return self.functions[name]

    def run(self, name: str, data, k: int, cfg: Optional[ClusterConfig] = None) -> ClusteringResult:
        return self.get_function(name)(data, k, cfg)

    def clear(self):
        self.functions.clear()
        self.definitions.clear()


def default_registry() -> AlgorithmRegistry:
    registry = AlgorithmRegistry()
    registry.register_algorithms(
        {name: spec[0] for name, spec in DEFAULT_ALGORITHMS.items()},
        {name: spec[1] for name, spec in DEFAULT_ALGORITHMS.items()},
        {name: spec[2] for name, spec in DEFAULT_ALGORITHMS.items()},
    )
    return registry
