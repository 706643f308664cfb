from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from .baseconfig import BaseAddonConfig

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


class ClusterConfig(BaseModel):
    seed: int = Field(0, description="Base seed; restart r uses seed + r")
    max_iters: int = Field(500, gt=0, description="Iteration cap of a single run")
    restarts: int = Field(100, ge=1, description="Independent restarts; the lowest objective wins")
    step: float = Field(1.0, gt=0.0, description="Initial step size eta of the projected descent")
    armijo_alpha: float = Field(0.3, gt=0.0, lt=0.5, description="Armijo sufficient-decrease threshold")
    armijo_beta: float = Field(0.5, gt=0.0, lt=1.0, description="Backtracking shortening rate")
    max_backtracks: int = Field(30, ge=1, description="Backtracking attempts before a run stops")
    cov_reg: Optional[float] = Field(
        None, ge=0.0, description="Covariance regularizer; default 1e-8 * Tr(Sigma_x) / d"
    )
    std_reg: Optional[float] = Field(
        None, ge=0.0, description="Standard deviation regularizer; default 1e-6 * global std"
    )
    update_rate: float = Field(1.0, gt=0.0, le=1.0, description="Smoothing rate c of the hard statistics update")
    tol: float = Field(1e-9, gt=0.0, description="Relative objective change (or membership change) stopping tolerance")
    fuzzy_exponent: float = Field(2.0, gt=1.0, description="Fuzzifier c of fuzzy k-means")
    standard_stats: bool = Field(
        False, description="Force equal weights and a shared isotropic covariance in hard runs"
    )
    dissimilarity: Literal["euclidean", "pairwise"] = Field(
        "euclidean", description="Isotropic soft runs may work on pairwise squared distances only"
    )
    workers: int = Field(1, ge=1, description="Threads used to run restarts concurrently")

    model_config = {"validate_assignment": True}


class FactorConfig(BaseModel):
    alpha: float = Field(0.025, gt=0.0, lt=1.0, description="Proportion constant of the latent bandwidth")
    eta: float = Field(0.5, gt=0.0, description="Learning rate of the stochastic descent")
    iters: int = Field(50000, ge=1, description="Stochastic gradient iterations")
    seed: int = Field(0, description="Seed of the latent sampler and the random initialization")
    init: Literal["random", "pc1"] = Field("pc1", description="Initial latent means")
    quad_nodes: int = Field(801, ge=5, description="Simpson nodes used to evaluate sigma")
    trace_every: int = Field(100, ge=1, description="Evaluate sigma every this many iterations")
    trace_nodes: int = Field(201, ge=5, description="Simpson nodes used for the sigma trace")
    divergence_factor: float = Field(1e6, gt=1.0, description="Abort when ||zbar|| grows by this factor")
    std_reg: Optional[float] = Field(None, ge=0.0, description="Guard on sigma(z); default 1e-6 * global std")
    curve_points: int = Field(200, ge=2, description="Points of the exported principal curve")

    model_config = {"validate_assignment": True}

    @model_validator(mode="after")
    def validate_odd_nodes(self):
        for name in ("quad_nodes", "trace_nodes"):
            if getattr(self, name) % 2 == 0:
                raise ValueError(f"{name} must be odd for composite Simpson quadrature")
        return self


class CustomAddonConfig(BaseAddonConfig):
    type: str = Field("analytics", description="Type of the addon")
    clustering: ClusterConfig = Field(default_factory=ClusterConfig, description="Clustering defaults")
    factor: FactorConfig = Field(default_factory=FactorConfig, description="Affine factor discovery defaults")
    normalize: bool = Field(True, description="Standardize external data columns before clustering")
    log_level: str = Field("WARNING", description="Minimum loguru level of the command-line sink")

    @model_validator(mode="after")
    def validate_log_level(self):
        if self.log_level.upper() not in LOG_LEVELS:
            raise ValueError(f"Unknown log level: {self.log_level}")
        return self
