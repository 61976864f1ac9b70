"""Pair true edge eigenvalues with their closed-form approximations."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .edge import EDGES, approx_eigenvalue, approx_eigenvector, gamma_of
from .eigensolver import eigenpairs_tridiagonal, extreme_eigs_lanczos, residual
from .hermite import sign_changes
from .errors import ParameterError
from .operators import OperatorParams, build_finite, build_periodic

OPERATORS = ("periodic", "finite")
PERSISTENCE = 3
SIGN_ZERO_TOL = 1e-8  # relative to max |entry|, for computed eigenvectors


@dataclass(frozen=True)
class EdgeRecord:
    m: int
    true_value: float
    approx_value: float
    abs_err: float
    residual_sup: float
    residual_l2: float
    sign_changes_true: int
    sign_changes_approx: int

    def as_row(self) -> tuple:
        return (
            self.m, self.true_value, self.approx_value, self.abs_err, self.residual_sup,
            self.residual_l2, self.sign_changes_true, self.sign_changes_approx,
        )


@dataclass(frozen=True)
class AccuracyCount:
    count: int
    threshold: float
    saturated: bool  # no persistent exceedance inside the computed range


@dataclass(frozen=True)
class ComparisonReport:
    params: OperatorParams
    operator: str
    edge: str
    gamma: float
    records: tuple
    within_gamma: AccuracyCount
    within_gamma_sq: AccuracyCount
    metadata: dict = field(default_factory=dict)

    @property
    def counts(self) -> dict:
        return {"within_gamma": self.within_gamma.count, "within_gamma_sq": self.within_gamma_sq.count}

    @property
    def abs_errs(self) -> np.ndarray:
        return np.array([r.abs_err for r in self.records])

    @property
    def true_values(self) -> np.ndarray:
        return np.array([r.true_value for r in self.records])

    @property
    def approx_values(self) -> np.ndarray:
        return np.array([r.approx_value for r in self.records])


def accuracy_count(errors, threshold: float, persistence: int = PERSISTENCE) -> AccuracyCount:
    """Leading run of ``errors`` below ``threshold``, ignoring short excursions.

    The count is the first ``M`` at which ``persistence`` consecutive errors
    exceed the threshold.  If no such run starts inside the data the result
    is flagged ``saturated`` and equals ``len(errors)``.
    """
    if persistence < 1:
        raise ParameterError("persistence must be at least 1")
    bad = np.asarray(errors) > threshold
    for M in range(len(bad) - persistence + 1):
        if bad[M : M + persistence].all():
            return AccuracyCount(M, threshold, False)
    return AccuracyCount(len(bad), threshold, True)


def _true_edge(params, M_top, operator, edge, tol, seed):
    n = params.n
    if operator == "periodic":
        which = "top" if edge == "positive" else "bottom"
        spec = extreme_eigs_lanczos(build_periodic(params), M_top, which=which, tol=tol, seed=seed)
        pairs = list(spec.pairs)
        op = build_periodic(params)
        method = "lanczos"
    else:
        op = build_finite(params)
        if edge == "positive":
            spec = eigenpairs_tridiagonal(op, 0, M_top - 1, seed=seed)
        else:
            spec = eigenpairs_tridiagonal(op, n - M_top, n - 1, seed=seed)
        pairs = list(spec.pairs)
        method = "sturm_bisection"
    if edge == "negative":
        pairs = pairs[::-1]  # m = 0 is the most negative eigenvalue
    return op, pairs, method


def compare_edge(
    params: OperatorParams,
    M_top: int,
    operator: str = "periodic",
    edge: str = "positive",
    tol: float = 1e-9,
    seed: int = 0,
) -> ComparisonReport:
    """Pair the rank-``m`` true edge eigenvalue with ``approx_eigenvalue(m)`` for ``m < M_top``.

    True pairs come from shift-invert Lanczos (``operator="periodic"``) or
    bisection plus inverse iteration (``"finite"``).  Residuals are those of
    the unnormalized approximate pair against the chosen operator.
    """
    if operator not in OPERATORS:
        raise ParameterError(f"operator must be one of {OPERATORS}, got {operator!r}")
    if edge not in EDGES:
        raise ParameterError(f"edge must be one of {EDGES}, got {edge!r}")
    n = params.n
    if not 1 <= M_top <= n // 4:
        raise ParameterError(f"M_top must lie in 1..n/4={n // 4}, got {M_top}")
    g = gamma_of(params)
    op, pairs, method = _true_edge(params, M_top, operator, edge, tol, seed)

    records = []
    for m, p in enumerate(pairs):
        lam = approx_eigenvalue(m, params, edge)
        vec = approx_eigenvector(m, params, edge)
        res = residual(op, lam, vec.samples)
        zt = SIGN_ZERO_TOL * float(np.max(np.abs(p.vector)))
        records.append(
            EdgeRecord(
                m=m,
                true_value=float(p.value),
                approx_value=lam,
                abs_err=abs(float(p.value) - lam),
                residual_sup=res.sup,
                residual_l2=res.l2,
                sign_changes_true=sign_changes(p.vector, zt),
                sign_changes_approx=sign_changes(vec.samples),
            )
        )
    errs = np.array([r.abs_err for r in records])
    meta = {
        "pairing": "descending rank" if edge == "positive" else "ascending rank (most negative first)",
        "count_rule": f"first m starting {PERSISTENCE} consecutive exceedances",
        "solver": method,
        "sign_zero_tol": SIGN_ZERO_TOL,
        "residual_vector": "unnormalized samples",
    }
    return ComparisonReport(
        params=params,
        operator=operator,
        edge=edge,
        gamma=g,
        records=tuple(records),
        within_gamma=accuracy_count(errs, g),
        within_gamma_sq=accuracy_count(errs, g * g),
        metadata=meta,
    )


@dataclass(frozen=True)
class SweepRow:
    n: int
    gamma: float
    count_within_gamma: int
    count_within_gamma_sq: int
    sqrt_inv_gamma: float
    saturated: bool = False

    def as_row(self) -> tuple:
        return (self.n, self.gamma, self.count_within_gamma, self.count_within_gamma_sq, self.sqrt_inv_gamma)


def _sweep_one(args) -> SweepRow:
    params, operator, tol, seed = args
    n = params.n
    g = gamma_of(params)
    cap = n // 4
    k = min(cap, int(math.ceil(3.0 * math.sqrt(1.0 / g))) + 10)
    while True:
        rep = compare_edge(params, k, operator=operator, tol=tol, seed=seed)
        sat = rep.within_gamma.saturated or rep.within_gamma_sq.saturated
        if not sat or k == cap:
            break
        k = min(cap, 2 * k)
    return SweepRow(
        n=n,
        gamma=g,
        count_within_gamma=rep.within_gamma.count,
        count_within_gamma_sq=rep.within_gamma_sq.count,
        sqrt_inv_gamma=math.sqrt(1.0 / g),
        saturated=sat,
    )


def sweep_accuracy_counts(
    n_list, make_params, operator: str = "periodic", tol: float = 1e-9, seed: int = 0,
    workers: int = 1,
) -> list[SweepRow]:
    """Accuracy counts within ``gamma`` and ``gamma^2`` for each ``n``.

    ``make_params`` maps ``n`` to :class:`OperatorParams`.  With ``workers > 1``
    the per-``n`` jobs run in a process pool; rows are always returned sorted
    by ``n``.
    """
    ns = sorted(set(int(n) for n in n_list))
    if not ns:
        raise ParameterError("empty sweep")
    jobs = [(make_params(n), operator, tol, seed) for n in ns]
    for (p, *_), n in zip(jobs, ns):
        if p.n != n:
            raise ParameterError(f"make_params({n}) returned n={p.n}")
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            rows = list(pool.map(_sweep_one, jobs))
    else:
        rows = [_sweep_one(j) for j in jobs]
    return sorted(rows, key=lambda r: r.n)


__all__ = [
    "AccuracyCount",
    "ComparisonReport",
    "EdgeRecord",
    "OPERATORS",
    "PERSISTENCE",
    "SweepRow",
    "accuracy_count",
    "compare_edge",
    "sweep_accuracy_counts",
]
