from .barycenter import barycenter
from .cluster import cluster
from .evaluate import evaluate
from .factor import factor
from .synthesize import synthesize

__all__ = ["barycenter", "cluster", "evaluate", "factor", "synthesize"]
