from typing import Optional, Sequence


class BarycenterError(Exception):
    """Base class for every error raised by the numerical core."""


class NotSymmetricError(BarycenterError, ValueError):
    def __init__(self, name: str, asymmetry: float):
        self.name = name
        self.asymmetry = asymmetry
        super().__init__(f"{name} is not symmetric (max |S - S^T| = {asymmetry:.3e})")


class NotPSDError(BarycenterError, ValueError):
    def __init__(self, name: str, min_eigenvalue: float):
        self.name = name
        self.min_eigenvalue = min_eigenvalue
        super().__init__(f"{name} is not PSD (smallest eigenvalue {min_eigenvalue:.3e})")


class EigenConvergenceError(BarycenterError, RuntimeError):
    def __init__(self, name: str, sweeps: int, off_norm: float):
        self.name = name
        self.sweeps = sweeps
        self.off_norm = off_norm
        super().__init__(
            f"Jacobi eigensolver did not converge for {name} after {sweeps} sweeps "
            f"(off-diagonal norm {off_norm:.3e})"
        )


class DegenerateBarycenterError(BarycenterError, ValueError):
    def __init__(self, message: Optional[str] = None):
        super().__init__(
            message
            or "every weighted covariance P_k*Sigma_k is singular; apply covariance regularization (cov_reg > 0)"
        )


class BarycenterConvergenceError(BarycenterError, RuntimeError):
    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"barycenter fixed point did not converge in {iterations} iterations (relative residual {residual:.3e})"
        )


class SingularCovarianceError(BarycenterError, ValueError):
    def __init__(self, name: str = "source covariance"):
        self.name = name
        super().__init__(f"{name} is singular; regularize it (Sigma + eps*I) before computing a transport map")


class SingularWeightSystemError(BarycenterError, ValueError):
    def __init__(self, cluster: int):
        self.cluster = cluster
        super().__init__(
            f"Kronecker weight system is singular at cluster {cluster}; increase cov_reg"
        )


class EmptyClusterError(BarycenterError, ValueError):
    def __init__(self, clusters: Sequence[int]):
        self.clusters = list(clusters)
        super().__init__(f"empty clusters: {self.clusters}")


class ConditionalUnderflowError(BarycenterError, FloatingPointError):
    def __init__(self, z: float):
        self.z = z
        super().__init__(f"all latent densities underflow at z={z!r}")


class FactorDivergenceError(BarycenterError, RuntimeError):
    def __init__(self, iteration: int, growth: float, sigma_trace: Sequence[float]):
        self.iteration = iteration
        self.growth = growth
        self.sigma_trace = list(sigma_trace)
        super().__init__(f"latent means diverged at iteration {iteration} (norm growth {growth:.3e})")


class LabelRangeError(BarycenterError, ValueError):
    pass


class CsvFormatError(BarycenterError, ValueError):
    def __init__(self, message: str, row: Optional[int] = None, column: Optional[int] = None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")
