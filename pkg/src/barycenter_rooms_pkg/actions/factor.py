from typing import Optional, Union

import numpy as np
from loguru import logger
from pydantic import Field, ValidationError

from barycenter_rooms_pkg.configuration import CustomAddonConfig, FactorConfig
from barycenter_rooms_pkg.core.errors import FactorDivergenceError
from barycenter_rooms_pkg.core.evaluation import normalize_columns
from barycenter_rooms_pkg.core.factor import AfdResult, PrincipalCurve, principal_curve, run_afd
from barycenter_rooms_pkg.core.types import DataSet, as_dataset
from barycenter_rooms_pkg.storage import write_curve_csv, write_json

from .base import ActionResponse, OutputBase, Stopwatch, UsageSchema, resolve_config


class ActionOutput(OutputBase):
    result: Optional[AfdResult] = Field(None, description="Final latent state and sigma trace")
    curve: Optional[PrincipalCurve] = Field(None, description="Principal curve sampled from nu")
    sigma_trace: list[float] = Field(default_factory=list, description="sigma at every traced iteration")
    curve_path: Optional[str] = None
    state_path: Optional[str] = None


def factor(
    config: Union[CustomAddonConfig, dict, None],
    data: Union[DataSet, np.ndarray, list],
    alpha: Optional[float] = None,
    eta: Optional[float] = None,
    iters: Optional[int] = None,
    seed: Optional[int] = None,
    init: Optional[str] = None,
    curve_points: Optional[int] = None,
    normalize: bool = False,
    curve_out: Optional[str] = None,
    state_out: Optional[str] = None,
) -> ActionResponse:
    logger.debug(f"Executing factor: alpha={alpha}, eta={eta}, iters={iters}, init={init}")
    watch = Stopwatch()
    try:
        config = resolve_config(config)
        updates = {"alpha": alpha, "eta": eta, "iters": iters, "seed": seed, "init": init, "curve_points": curve_points}
        factor_cfg = FactorConfig(
            **{**config.factor.model_dump(), **{k: v for k, v in updates.items() if v is not None}}
        )
        dataset = as_dataset(data)
        if dataset.n_samples < 2:
            raise ValueError("affine factor discovery needs at least two samples")
    except (ValueError, ValidationError) as e:
        logger.error(f"Factor rejected its input: {e}")
        return ActionResponse(output=ActionOutput(), usage=UsageSchema(), message=f"Invalid input: {e}", code=400)

    try:
        features = normalize_columns(dataset) if normalize else dataset
        result = run_afd(features, cfg=factor_cfg)
        curve = principal_curve(features, result.state, factor_cfg.curve_points, seed=factor_cfg.seed)
        curve_path = str(write_curve_csv(curve_out, curve)) if curve_out else None
        state_path = str(write_json(state_out, result)) if state_out else None
        logger.info(f"Affine factor discovery finished in {watch.ms:.0f} ms; sigma {result.sigma:.6g}")
        return ActionResponse(
            output=ActionOutput(
                result=result,
                curve=curve,
                sigma_trace=result.sigma_trace,
                curve_path=curve_path,
                state_path=state_path,
            ),
            usage=UsageSchema(iterations=result.iterations, wall_ms=watch.ms),
            message=f"Factor discovery successful: sigma {result.sigma:.6g}",
            code=200,
        )
    except FactorDivergenceError as e:
        logger.error(f"Factor discovery diverged: {str(e)}")
        return ActionResponse(
            output=ActionOutput(sigma_trace=e.sigma_trace),
            usage=UsageSchema(iterations=e.iteration, wall_ms=watch.ms),
            message=f"Factor failed: {str(e)}",
            code=500,
        )
    except Exception as e:
        logger.error(f"Factor failed: {str(e)}")
        return ActionResponse(
            output=ActionOutput(),
            usage=UsageSchema(wall_ms=watch.ms),
            message=f"Factor failed: {str(e)}",
            code=500,
        )
