from typing import Optional, Union

import numpy as np
from loguru import logger
from pydantic import Field, ValidationError

from barycenter_rooms_pkg.configuration import ClusterConfig, CustomAddonConfig
from barycenter_rooms_pkg.core.evaluation import correctness_rate, normalize_columns
from barycenter_rooms_pkg.core.types import DataSet, LabeledDataSet, as_dataset
from barycenter_rooms_pkg.storage import RunRecord, write_run_record
from barycenter_rooms_pkg.tools.registry import AlgorithmRegistry, default_registry

from .base import ActionResponse, OutputBase, Stopwatch, UsageSchema, resolve_config


class ActionOutput(OutputBase):
    record: Optional[RunRecord] = Field(None, description="Best-of-restarts run")
    correctness: Optional[float] = Field(None, description="Correctness rate against the data set labels")
    path: Optional[str] = Field(None, description="RunRecord JSON written, if any")


def cluster(
    config: Union[CustomAddonConfig, dict, None],
    data: Union[DataSet, np.ndarray, list],
    algorithm: str,
    k: int,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
    normalize: Optional[bool] = None,
    out: Optional[str] = None,
    registry: Optional[AlgorithmRegistry] = None,
    **overrides,
) -> ActionResponse:
    """Run one registered algorithm with restarts and wrap the winner in a RunRecord.

    ``overrides`` are ClusterConfig fields taking precedence over the
    configured clustering defaults.
    """
    logger.debug(f"Executing cluster: algorithm={algorithm}, k={k}")
    watch = Stopwatch()
    try:
        config = resolve_config(config)
        updates = {name: value for name, value in overrides.items() if value is not None}
        if restarts is not None:
            updates["restarts"] = restarts
        if seed is not None:
            updates["seed"] = seed
        cluster_cfg = ClusterConfig(**{**config.clustering.model_dump(), **updates})
        registry = registry or default_registry()
        func = registry.get_function(algorithm)
        dataset = as_dataset(data)
        if k < 2 or k > dataset.n_samples:
            raise ValueError(f"K must lie in [2, {dataset.n_samples}], got {k}")
    except (KeyError, ValueError, ValidationError) as e:
        logger.error(f"Cluster rejected its input: {e}")
        return ActionResponse(output=ActionOutput(), usage=UsageSchema(), message=f"Invalid input: {e}", code=400)

    try:
        use_normalize = config.normalize if normalize is None else normalize
        features = normalize_columns(dataset) if use_normalize else dataset
        result = func(features, k, cluster_cfg)
        echo = {"algorithm": algorithm, "k": k, "normalize": use_normalize, **cluster_cfg.model_dump()}
        record = RunRecord.from_result(result, k, echo, watch.ms, normalized=use_normalize)

        correctness = None
        if isinstance(dataset, LabeledDataSet):
            correctness = correctness_rate(dataset.labels, record.prediction())
        path = str(write_run_record(out, record)) if out else None

        message = f"Clustering successful: objective {record.objective:.6g}"
        if correctness is not None:
            message += f", correctness {correctness:.4f}"
        logger.info(f"{algorithm} finished in {record.wall_ms:.0f} ms; {message}")
        return ActionResponse(
            output=ActionOutput(record=record, correctness=correctness, path=path),
            usage=UsageSchema(iterations=record.iterations, wall_ms=record.wall_ms),
            message=message,
            code=200,
        )
    except Exception as e:
        logger.error(f"Cluster failed: {str(e)}")
        return ActionResponse(
            output=ActionOutput(),
            usage=UsageSchema(wall_ms=watch.ms),
            message=f"Cluster failed: {str(e)}",
            code=500,
        )
