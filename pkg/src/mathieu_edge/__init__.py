"""Almost Mathieu operators: true spectra and Hermite-function edge approximations."""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DegenerateVectorError,
    DimensionError,
    MathieuEdgeError,
    NotRepresentableError,
    OracleSizeError,
    ParameterError,
    SolverError,
    SplitMatrixError,
    WindowError,
)
from .operators import (
    OperatorParams,
    PeriodicOperator,
    SymTridiagonal,
    WindowedVector,
    apply,
    apply_infinite,
    build_finite,
    build_periodic,
)
from .edge import (
    approx_eigenvalue,
    approx_eigenvector,
    gamma_of,
    infinite_residual,
    multiplicity_check,
    negative_edge_map,
    translate_modulate,
    validate_regime,
)
from .comparison import ComparisonReport, compare_edge, sweep_accuracy_counts

__all__ = [
    "__version__",
    "ConvergenceError",
    "DegenerateVectorError",
    "DimensionError",
    "MathieuEdgeError",
    "NotRepresentableError",
    "OracleSizeError",
    "ParameterError",
    "SolverError",
    "SplitMatrixError",
    "WindowError",
    "OperatorParams",
    "PeriodicOperator",
    "SymTridiagonal",
    "WindowedVector",
    "apply",
    "apply_infinite",
    "build_finite",
    "build_periodic",
    "approx_eigenvalue",
    "approx_eigenvector",
    "gamma_of",
    "infinite_residual",
    "multiplicity_check",
    "negative_edge_map",
    "translate_modulate",
    "validate_regime",
    "ComparisonReport",
    "compare_edge",
    "sweep_accuracy_counts",
]
