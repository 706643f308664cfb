from typing import Literal, Optional, Union

from loguru import logger
from pydantic import BaseModel, Field, ValidationError

from barycenter_rooms_pkg.configuration import CustomAddonConfig
from barycenter_rooms_pkg.core.evaluation import (
    gen_branches,
    gen_dilation,
    gen_expansion,
    gen_noisy_line,
    gen_quarter_arc,
)
from barycenter_rooms_pkg.core.types import DataSet
from barycenter_rooms_pkg.storage import write_dataset_csv

from .base import ActionResponse, OutputBase, Stopwatch, UsageSchema, resolve_config

Family = Literal["expansion", "dilation", "line", "arc", "branches"]


class ActionInput(BaseModel):
    family: Family = Field(..., description="Benchmark family")
    t: float = Field(0.0, ge=0.0, description="Family parameter of expansion / dilation")
    seed: int = Field(0, description="Generator seed")
    n: Optional[int] = Field(None, ge=2, description="Sample count (line, arc) or points per branch")
    noise: Optional[float] = Field(None, ge=0.0, description="Noise std of curve families")


class ActionOutput(OutputBase):
    dataset: Optional[DataSet] = Field(None, description="Generated samples (labeled for cluster families)")
    n_samples: int = 0
    dim: int = 0
    path: Optional[str] = Field(None, description="CSV written, if any")


def _generate(params: ActionInput) -> DataSet:
    curve_kwargs = {k: v for k, v in {"n": params.n, "noise": params.noise}.items() if v is not None}
    if params.family == "expansion":
        return gen_expansion(params.t, params.seed)
    if params.family == "dilation":
        return gen_dilation(params.t, params.seed)
    if params.family == "line":
        return gen_noisy_line(seed=params.seed, **curve_kwargs)
    if params.family == "arc":
        return gen_quarter_arc(seed=params.seed, **curve_kwargs)
    branch_kwargs = {"seed": params.seed}
    if params.n is not None:
        branch_kwargs["n_per_branch"] = params.n
    if params.noise is not None:
        branch_kwargs["noise"] = params.noise
    return gen_branches(**branch_kwargs)


def synthesize(
    config: Union[CustomAddonConfig, dict, None],
    family: str,
    t: float = 0.0,
    seed: int = 0,
    n: Optional[int] = None,
    noise: Optional[float] = None,
    out: Optional[str] = None,
) -> ActionResponse:
    logger.debug(f"Executing synthesize: family={family}, t={t}, seed={seed}")
    watch = Stopwatch()
    try:
        resolve_config(config)
        params = ActionInput(family=family, t=t, seed=seed, n=n, noise=noise)
    except ValidationError as e:
        logger.error(f"Synthesize rejected its input: {e}")
        return ActionResponse(output=ActionOutput(), usage=UsageSchema(), message=f"Invalid input: {e}", code=400)

    try:
        dataset = _generate(params)
        path = str(write_dataset_csv(out, dataset)) if out else None
        logger.info(f"Generated {params.family} data set: {dataset.n_samples} samples in {dataset.dim} dimensions")
        return ActionResponse(
            output=ActionOutput(dataset=dataset, n_samples=dataset.n_samples, dim=dataset.dim, path=path),
            usage=UsageSchema(iterations=0, wall_ms=watch.ms),
            message="Synthesis successful",
            code=200,
        )
    except Exception as e:
        logger.error(f"Synthesize failed: {str(e)}")
        return ActionResponse(
            output=ActionOutput(),
            usage=UsageSchema(wall_ms=watch.ms),
            message=f"Synthesize failed: {str(e)}",
            code=500,
        )
