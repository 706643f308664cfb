from typing import Optional, Union

import numpy as np
from loguru import logger
from pydantic import Field

from barycenter_rooms_pkg.configuration import CustomAddonConfig
from barycenter_rooms_pkg.core.gaussbary import (
    AffineMap,
    BarycenterGaussian,
    GaussianCluster,
    barycenter as gaussian_barycenter,
    ot_affine_map,
    pairwise_total_cost,
    transport_cost,
)
from barycenter_rooms_pkg.storage import parse_gaussians, write_json

from .base import ActionResponse, OutputBase, Stopwatch, UsageSchema, resolve_config


class ActionOutput(OutputBase):
    barycenter: Optional[BarycenterGaussian] = None
    std: Optional[float] = Field(None, description="sigma_y = sqrt(Tr Sigma_y)")
    transport_cost: Optional[float] = Field(None, description="sum_k P_k W2^2(rho_k, mu)")
    pairwise_cost: Optional[float] = Field(None, description="1/2 sum_kh P_k P_h W2^2(rho_k, rho_h)")
    maps: Optional[list[AffineMap]] = Field(None, description="Optimal affine maps of every cluster onto the barycenter")
    path: Optional[str] = None


def barycenter(
    config: Union[CustomAddonConfig, dict, None],
    clusters: Union[list[GaussianCluster], list[dict], dict],
    maps: bool = False,
    out: Optional[str] = None,
) -> ActionResponse:
    """Gaussian barycenter of ``clusters`` with both forms of the total transport cost."""
    watch = Stopwatch()
    try:
        resolve_config(config)
        clusters = parse_gaussians(clusters)
        total = float(np.sum([c.weight for c in clusters]))
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"weights must sum to 1, got {total!r}")
    except ValueError as e:
        logger.error(f"Barycenter rejected its input: {e}")
        return ActionResponse(output=ActionOutput(), usage=UsageSchema(), message=f"Invalid input: {e}", code=400)

    try:
        bary = gaussian_barycenter(clusters)
        output = ActionOutput(
            barycenter=bary,
            std=bary.std,
            transport_cost=transport_cost(clusters, bary),
            pairwise_cost=pairwise_total_cost(clusters),
            maps=[ot_affine_map(c, bary) for c in clusters] if maps else None,
        )
        if out:
            output = output.model_copy(update={"path": str(write_json(out, output))})
        logger.info(f"Barycenter of {len(clusters)} Gaussians after {bary.iterations} iterations (residual {bary.residual:.2e})")
        return ActionResponse(
            output=output,
            usage=UsageSchema(iterations=bary.iterations, wall_ms=watch.ms),
            message="Barycenter successful",
            code=200,
        )
    except Exception as e:
        logger.error(f"Barycenter failed: {str(e)}")
        return ActionResponse(
            output=ActionOutput(),
            usage=UsageSchema(wall_ms=watch.ms),
            message=f"Barycenter failed: {str(e)}",
            code=500,
        )
