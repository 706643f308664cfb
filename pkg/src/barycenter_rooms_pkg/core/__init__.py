from .clustering import (
    ClusteringResult,
    HardClusteringResult,
    SoftClusteringResult,
    cluster_stats,
    fuzzy_kmeans,
    grad_general,
    grad_isotropic,
    grad_pairwise,
    harden,
    kmeans,
    objective_general,
    objective_isotropic,
    project_rows_simplex,
    run_hard,
    run_soft,
    sse,
    weight_matrices,
)
from .errors import BarycenterError
from .evaluation import (
    correctness_rate,
    gen_branches,
    gen_dilation,
    gen_expansion,
    gen_noisy_line,
    gen_quarter_arc,
    normalize_columns,
)
from .factor import (
    AfdResult,
    ConditionalStats,
    LatentState,
    PrincipalCurve,
    afd_gradient,
    conditional_stats,
    expected_gradient,
    latent_eps2,
    principal_curve,
    run_afd,
    sigma_quadrature,
)
from .gaussbary import (
    AffineMap,
    BarycenterGaussian,
    GaussianCluster,
    barycenter,
    isotropic_std,
    ot_affine_map,
    pairwise_total_cost,
    variance_decomposition,
    w2_gaussian,
)
from .matcore import EigenPair, kron, sqrtm_psd, sym_eig, unvec, vec
from .types import DataSet, LabeledDataSet

__all__ = [
    "AffineMap",
    "AfdResult",
    "BarycenterError",
    "BarycenterGaussian",
    "ClusteringResult",
    "ConditionalStats",
    "DataSet",
    "EigenPair",
    "GaussianCluster",
    "HardClusteringResult",
    "LabeledDataSet",
    "LatentState",
    "PrincipalCurve",
    "SoftClusteringResult",
    "afd_gradient",
    "barycenter",
    "cluster_stats",
    "conditional_stats",
    "correctness_rate",
    "expected_gradient",
    "fuzzy_kmeans",
    "gen_branches",
    "gen_dilation",
    "gen_expansion",
    "gen_noisy_line",
    "gen_quarter_arc",
    "grad_general",
    "grad_isotropic",
    "grad_pairwise",
    "harden",
    "isotropic_std",
    "kmeans",
    "kron",
    "latent_eps2",
    "normalize_columns",
    "objective_general",
    "objective_isotropic",
    "ot_affine_map",
    "pairwise_total_cost",
    "principal_curve",
    "project_rows_simplex",
    "run_afd",
    "run_hard",
    "run_soft",
    "sigma_quadrature",
    "sqrtm_psd",
    "sse",
    "sym_eig",
    "unvec",
    "variance_decomposition",
    "vec",
    "w2_gaussian",
    "weight_matrices",
]
