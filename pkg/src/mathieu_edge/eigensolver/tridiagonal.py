"""Sturm-sequence bisection and inverse iteration for symmetric tridiagonal matrices."""

from __future__ import annotations

import math

import numpy as np

from ..errors import ConvergenceError, ParameterError, SplitMatrixError
from ..operators import SymTridiagonal
from .core import Eigenpair, Spectrum, normalize_sign

EPS = np.finfo(float).eps
SAFMIN = np.finfo(float).tiny


def _require_unreduced(T: SymTridiagonal) -> None:
    if T.n > 1 and np.any(T.offdiag == 0.0):
        j = int(np.flatnonzero(T.offdiag == 0.0)[0])
        raise SplitMatrixError(f"off-diagonal entry {j} is zero; deflate first")


def _pivmin(T: SymTridiagonal) -> float:
    e2max = float(np.max(T.offdiag**2)) if T.n > 1 else 0.0
    return SAFMIN * max(1.0, e2max)


def sturm_count(T: SymTridiagonal, x):
    """Number of eigenvalues of ``T`` below ``x``.

    Counts negative pivots of the LDL^T factorization of ``T - x I``.  Pivots
    smaller than ``pivmin`` in magnitude are replaced by ``-pivmin``, so an
    eigenvalue exactly at ``x`` may be counted.  ``x`` may be an array, in
    which case all shifts run through the recurrence together.
    """
    _require_unreduced(T)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    pivmin = _pivmin(T)
    d = T.diag
    e2 = T.offdiag**2
    q = d[0] - xs
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0).astype(np.int64)
    for i in range(1, T.n):
        q = (d[i] - xs) - e2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count if np.ndim(x) else int(count[0])


def default_tol(T: SymTridiagonal) -> float:
    lo, hi = T.gershgorin()
    return 1e-12 * max(hi - lo, 1.0)


def eigenvalues_bisection(
    T: SymTridiagonal,
    k_lo: int = 0,
    k_hi: int | None = None,
    tol: float | None = None,
    max_iter: int = 200,
) -> Spectrum:
    """Eigenvalues of ranks ``k_lo .. k_hi`` counted from the top (0 = largest).

    All requested eigenvalues are bisected simultaneously.  A multiple
    eigenvalue is returned once per rank.
    """
    n = T.n
    if k_hi is None:
        k_hi = n - 1
    if not 0 <= k_lo <= k_hi < n:
        raise ParameterError(f"invalid rank range {k_lo}..{k_hi} for n={n}")
    if tol is None:
        tol = default_tol(T)
    if tol <= 0:
        raise ParameterError("tol must be positive")
    _require_unreduced(T)
    if n == 1:
        return Spectrum(np.array([T.diag[0]]), "sturm_bisection")

    glo, ghi = T.gershgorin()
    pad = 2.0 * EPS * max(abs(glo), abs(ghi)) + 2.0 * _pivmin(T)
    ranks = np.arange(k_lo, k_hi + 1)
    target = n - 1 - ranks  # ascending index of each requested eigenvalue
    lo = np.full(len(ranks), glo - pad)
    hi = np.full(len(ranks), ghi + pad)
    for _ in range(max_iter):
        width = hi - lo
        limit = np.maximum(tol, 2.0 * EPS * np.maximum(np.abs(lo), np.abs(hi)))
        active = width > limit
        if not np.any(active):
            break
        mid = 0.5 * (lo[active] + hi[active])
        c = sturm_count(T, mid)
        above = c > target[active]
        hi[active] = np.where(above, mid, hi[active])
        lo[active] = np.where(above, lo[active], mid)
    else:
        raise ConvergenceError(f"bisection did not reach tol={tol} in {max_iter} steps")
    values = 0.5 * (lo + hi)
    return Spectrum(values, "sturm_bisection", info={"tol": tol, "ranks": ranks})


class TridiagonalLU:
    """LU factorization with partial pivoting of ``T - shift I``.

    Pivots of ``U`` smaller than ``perturb`` are replaced by ``+-perturb`` so
    that solves near an eigenvalue stay finite (inverse-iteration style).
    """

    def __init__(self, dl, d, du, perturb: float = 0.0):
        dl = [float(t) for t in dl]
        d = [float(t) for t in d]
        du = [float(t) for t in du]
        n = len(d)
        du2 = [0.0] * max(n - 2, 0)
        swap = [False] * max(n - 1, 0)
        for i in range(n - 1):
            if abs(d[i]) >= abs(dl[i]):
                if d[i] != 0.0:
                    fact = dl[i] / d[i]
                    dl[i] = fact
                    d[i + 1] -= fact * du[i]
            else:
                fact = d[i] / dl[i]
                d[i] = dl[i]
                dl[i] = fact
                temp = du[i]
                du[i] = d[i + 1]
                d[i + 1] = temp - fact * d[i + 1]
                if i < n - 2:
                    du2[i] = du[i + 1]
                    du[i + 1] = -fact * du[i + 1]
                swap[i] = True
        for i in range(n):
            if abs(d[i]) < perturb or d[i] == 0.0:
                d[i] = math.copysign(max(perturb, SAFMIN), d[i] if d[i] else 1.0)
        self.n = n
        self._dl, self._d, self._du, self._du2, self._swap = dl, d, du, du2, swap

    @classmethod
    def from_matrix(cls, T: SymTridiagonal, shift: float = 0.0, perturb: float = 0.0):
        return cls(T.offdiag, T.diag - shift, T.offdiag, perturb)

    def solve(self, b) -> np.ndarray:
        x = [float(t) for t in b]
        n = self.n
        dl, d, du, du2, swap = self._dl, self._d, self._du, self._du2, self._swap
        for i in range(n - 1):
            if swap[i]:
                x[i], x[i + 1] = x[i + 1], x[i] - dl[i] * x[i + 1]
            else:
                x[i + 1] -= dl[i] * x[i]
        x[n - 1] /= d[n - 1]
        if n > 1:
            x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2]
        for i in range(n - 3, -1, -1):
            x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i]
        return np.array(x)


def _orthogonalize(v: np.ndarray, basis) -> np.ndarray:
    for _ in range(2):
        for u in basis:
            v = v - (u @ v) * u
    return v


def eigenvector_inverse_iteration(
    T: SymTridiagonal,
    lam: float,
    seed: int = 0,
    *,
    against=(),
    tol: float | None = None,
    max_iter: int = 20,
    index_from_top: int = -1,
) -> Eigenpair:
    """Eigenvector for the eigenvalue estimate ``lam`` by inverse iteration.

    ``against`` holds unit vectors (e.g. already computed members of a
    cluster) that the iterate is kept orthogonal to.
    """
    _require_unreduced(T)
    norm = T.norm_inf()
    glo, ghi = T.gershgorin()
    slack = 1e-8 * max(norm, 1.0)
    if not glo - slack <= lam <= ghi + slack:
        raise ParameterError(f"lambda={lam} lies outside the Gershgorin interval")
    if tol is None:
        tol = 1e-8 * max(norm, 1.0)
    n = T.n
    if n == 1:
        return Eigenpair(float(T.diag[0]), np.ones(1), max(index_from_top, 0), 0.0)

    lu = TridiagonalLU.from_matrix(T, lam, perturb=EPS * max(norm, 1.0))
    rng = np.random.default_rng(seed)
    v = _orthogonalize(rng.standard_normal(n), against)
    v /= np.linalg.norm(v)
    best = None
    for it in range(max_iter):
        w = _orthogonalize(lu.solve(v), against)
        nrm = np.linalg.norm(w)
        if not np.isfinite(nrm) or nrm == 0.0:
            v = _orthogonalize(rng.standard_normal(n), against)
            v /= np.linalg.norm(v)
            continue
        v = w / nrm
        tv = T.apply(v)
        rq = float(v @ tv)
        res = float(np.linalg.norm(tv - rq * v))
        if best is None or res < best[2]:
            best = (rq, v, res)
        # one extra sweep after meeting tol polishes the vector cheaply
        if res <= tol and it >= 1:
            break
    else:
        if best is None or best[2] > tol:
            raise ConvergenceError(f"inverse iteration stalled at residual {best and best[2]}")
    rq, v, res = best
    return Eigenpair(rq, normalize_sign(v), index_from_top, res)


def eigenpairs_tridiagonal(
    T: SymTridiagonal,
    k_lo: int = 0,
    k_hi: int | None = None,
    tol: float | None = None,
    seed: int = 0,
    cluster_tol: float | None = None,
    vector_tol: float | None = None,
) -> Spectrum:
    """Bisection eigenvalues plus inverse-iteration eigenvectors for ranks ``k_lo..k_hi``.

    Vectors whose eigenvalues lie within ``cluster_tol`` of each other are
    orthogonalized against one another.
    """
    spec = eigenvalues_bisection(T, k_lo, k_hi, tol)
    if cluster_tol is None:
        cluster_tol = 1e-3 * max(T.norm_inf(), 1.0)
    pairs = []
    for i, lam in enumerate(spec.values):
        cluster = [p.vector for p in pairs if abs(p.value - lam) <= cluster_tol]
        pair = eigenvector_inverse_iteration(
            T, float(lam), seed + i, against=cluster, tol=vector_tol, index_from_top=k_lo + i
        )
        # keep the bisection value: it is accurate to tol, the Rayleigh quotient to residual^2/gap
        pairs.append(Eigenpair(float(lam), pair.vector, k_lo + i, pair.residual_l2))
    return Spectrum(spec.values, "sturm_bisection", tuple(pairs), dict(spec.info))
