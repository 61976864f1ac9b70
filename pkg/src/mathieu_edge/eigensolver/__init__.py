"""True spectra: Sturm bisection, inverse iteration, Lanczos, and a dense Jacobi oracle."""

from .core import Eigenpair, Residual, Spectrum, residual
from .jacobi import dense_eig_small, jacobi_eigh
from .lanczos import ShiftedInverse, extreme_eigs_lanczos
from .tridiagonal import (
    TridiagonalLU,
    eigenpairs_tridiagonal,
    eigenvalues_bisection,
    eigenvector_inverse_iteration,
    sturm_count,
)

__all__ = [
    "Eigenpair",
    "Residual",
    "Spectrum",
    "residual",
    "dense_eig_small",
    "jacobi_eigh",
    "ShiftedInverse",
    "extreme_eigs_lanczos",
    "TridiagonalLU",
    "eigenpairs_tridiagonal",
    "eigenvalues_bisection",
    "eigenvector_inverse_iteration",
    "sturm_count",
]
