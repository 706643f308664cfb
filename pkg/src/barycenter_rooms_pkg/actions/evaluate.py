from pathlib import Path
from typing import Optional, Union

import numpy as np
from loguru import logger
from pydantic import Field

from barycenter_rooms_pkg.configuration import CustomAddonConfig
from barycenter_rooms_pkg.core.evaluation import correctness_rate
from barycenter_rooms_pkg.core.types import LabeledDataSet
from barycenter_rooms_pkg.storage import RunRecord, read_run_record

from .base import ActionResponse, OutputBase, Stopwatch, UsageSchema, resolve_config


class ActionOutput(OutputBase):
    correctness: Optional[float] = Field(None, description="Correctness rate in [0, 1]")
    n_samples: int = 0
    algorithm: Optional[str] = None


def evaluate(
    config: Union[CustomAddonConfig, dict, None],
    record: Union[RunRecord, str, Path, np.ndarray, list],
    truth: Union[LabeledDataSet, np.ndarray, list],
) -> ActionResponse:
    """Correctness rate of a run (record, record path, labels or assignment matrix) against true labels."""
    watch = Stopwatch()
    try:
        resolve_config(config)
        if isinstance(record, (str, Path)):
            record = read_run_record(record)
        algorithm = record.algorithm if isinstance(record, RunRecord) else None
        prediction = record.prediction() if isinstance(record, RunRecord) else record
        labels = truth.labels if isinstance(truth, LabeledDataSet) else truth
    except (ValueError, FileNotFoundError) as e:
        logger.error(f"Evaluate rejected its input: {e}")
        return ActionResponse(output=ActionOutput(), usage=UsageSchema(), message=f"Invalid input: {e}", code=400)

    try:
        rate = correctness_rate(labels, prediction)
        logger.info(f"Correctness rate {rate:.6f} over {len(labels)} samples")
        return ActionResponse(
            output=ActionOutput(correctness=rate, n_samples=len(labels), algorithm=algorithm),
            usage=UsageSchema(wall_ms=watch.ms),
            message=f"Correctness rate {rate!r}",
            code=200,
        )
    except Exception as e:
        logger.error(f"Evaluate failed: {str(e)}")
        return ActionResponse(
            output=ActionOutput(),
            usage=UsageSchema(wall_ms=watch.ms),
            message=f"Evaluate failed: {str(e)}",
            code=500,
        )
