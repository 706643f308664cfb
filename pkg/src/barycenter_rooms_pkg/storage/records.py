"""JSON records: clustering runs, factor runs and Gaussian cluster lists."""
import json
from pathlib import Path
from typing import Any, Optional, Union

from loguru import logger
from pydantic import BaseModel, Field, ValidationError

from ..core.clustering import ClusteringResult, SoftClusteringResult
from ..core.gaussbary import GaussianCluster

PathLike = Union[str, Path]


class RunRecord(BaseModel):
    algorithm: str = Field(..., description="Registered algorithm name")
    seed: int = Field(..., description="Base seed of the run")
    config: dict[str, Any] = Field(default_factory=dict, description="Configuration echo, enough to rerun")
    n_clusters: int = Field(..., ge=1)
    objective_trace: list[float] = Field(default_factory=list)
    objective: float
    labels: list[int] = Field(..., description="Hard labels in [1, K]")
    assignment: Optional[list[list[float]]] = Field(None, description="Assignment matrix of soft algorithms")
    restart: int = Field(0, description="Chosen restart; its seed is seed + restart")
    iterations: int = 0
    converged: bool = True
    wall_ms: float = Field(0.0, ge=0.0)
    normalized: bool = Field(False, description="Whether data columns were standardized before clustering")

    @classmethod
    def from_result(
        cls, result: ClusteringResult, k: int, config: dict[str, Any], wall_ms: float, normalized: bool = False
    ) -> "RunRecord":
        assignment = result.assignment.tolist() if isinstance(result, SoftClusteringResult) else None
        return cls(
            algorithm=result.algorithm,
            seed=int(config.get("seed", result.seed - result.restart)),
            config=config,
            n_clusters=k,
            objective_trace=[float(v) for v in result.objective_trace],
            objective=float(result.objective),
            labels=[int(v) for v in result.labels],
            assignment=assignment,
            restart=result.restart,
            iterations=result.iterations,
            converged=result.converged,
            wall_ms=wall_ms,
            normalized=normalized,
        )

    def prediction(self):
        """The assignment matrix when present, else the labels."""
        return self.assignment if self.assignment is not None else self.labels


def write_run_record(path: PathLike, record: RunRecord) -> Path:
    path = Path(path)
    path.write_text(record.model_dump_json(indent=2), encoding="utf-8")
    logger.debug(f"Wrote run record of {record.algorithm} to {path}")
    return path


def read_run_record(path: PathLike) -> RunRecord:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"No such run record: {path}")
    return RunRecord.model_validate_json(path.read_text(encoding="utf-8"))


def write_json(path: PathLike, payload: Union[BaseModel, dict]) -> Path:
    path = Path(path)
    text = payload.model_dump_json(indent=2) if isinstance(payload, BaseModel) else json.dumps(payload, indent=2)
    path.write_text(text, encoding="utf-8")
    return path


def read_gaussians(path: PathLike) -> list[GaussianCluster]:
    """Gaussians from JSON: a list, or ``{"clusters": [...]}``, of ``{weight, mean, cov}``."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"No such cluster file: {path}")
    payload = json.loads(path.read_text(encoding="utf-8"))
    return parse_gaussians(payload)


def parse_gaussians(payload) -> list[GaussianCluster]:
    if isinstance(payload, dict):
        payload = payload.get("clusters")
    if not isinstance(payload, list) or not payload:
        raise ValueError("expected a non-empty list of clusters with weight, mean and cov")
    clusters = []
    for index, item in enumerate(payload, start=1):
        if isinstance(item, GaussianCluster):
            clusters.append(item)
            continue
        try:
            clusters.append(GaussianCluster(**item))
        except (TypeError, ValidationError) as e:
            raise ValueError(f"cluster {index}: {e}") from e
    return clusters
