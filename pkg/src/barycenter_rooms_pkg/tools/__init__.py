from .registry import AlgorithmRegistry, default_registry

__all__ = ["AlgorithmRegistry", "default_registry"]
