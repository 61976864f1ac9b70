from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from ..errors import DegenerateVectorError, DimensionError
from ..operators import apply

METHODS = ("sturm_bisection", "lanczos", "dense_jacobi")


@dataclass(frozen=True)
class Eigenpair:
    value: float
    vector: np.ndarray
    index_from_top: int
    residual_l2: float


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted in descending order, optionally with eigenpairs."""

    values: np.ndarray
    method: str
    pairs: Optional[tuple] = None
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        v = np.asarray(self.values, dtype=float)
        if np.any(np.diff(v) > 0):
            raise ValueError("spectrum values must be sorted descending")

    def __len__(self):
        return len(self.values)

    def vectors(self) -> np.ndarray:
        """Eigenvectors as columns, in the order of ``values``."""
        if self.pairs is None:
            raise ValueError("spectrum was computed without eigenvectors")
        return np.column_stack([p.vector for p in self.pairs])


class Residual(NamedTuple):
    sup: float
    l2: float


def residual(op, lam: float, v) -> Residual:
    """Sup- and l2-norm of ``op v - lam v``; ``v`` is used as given (no normalization)."""
    v = np.asarray(v)
    if v.ndim != 1:
        raise DimensionError("v must be a vector")
    if not np.any(v):
        raise DegenerateVectorError("residual of the zero vector is meaningless")
    r = apply(op, v) - lam * v
    return Residual(float(np.max(np.abs(r))), float(np.linalg.norm(r)))


def normalize_sign(v: np.ndarray) -> np.ndarray:
    """Scale ``v`` to unit norm with its largest-magnitude entry positive."""
    v = v / np.linalg.norm(v)
    i = int(np.argmax(np.abs(v)))
    return -v if v[i] < 0 else v
