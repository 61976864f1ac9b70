"""Dense symmetric eigensolver by cyclic Jacobi rotations (trust anchor for small n)."""

from __future__ import annotations

import numpy as np

from ..errors import DimensionError, OracleSizeError
from .core import Eigenpair, Spectrum, normalize_sign

MAX_ORACLE_N = 1024


def _round_robin(n: int):
    """Pairings of 0..n-1 (n even) into n/2 disjoint pairs per round, n-1 rounds."""
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        p = np.array(players[: n // 2])
        q = np.array(players[n // 2 :][::-1])
        rounds.append((np.minimum(p, q), np.maximum(p, q)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _off(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigh(M, rel_tol: float = 1e-12, max_sweeps: int = 50):
    """Eigen-decomposition ``M = V diag(w) V^T`` by parallel-ordered cyclic Jacobi.

    Each round applies ``n/2`` rotations on disjoint index pairs at once, so a
    round is a handful of vectorized row/column updates.  Returns unsorted
    ``(w, V, sweeps)``.
    """
    a = np.array(M, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("matrix must be square")
    if not np.allclose(a, a.T, rtol=0, atol=1e-12 * max(np.max(np.abs(a)), 1.0)):
        raise DimensionError("matrix must be symmetric")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return np.diag(a).copy(), v, 0
    # odd sizes get a decoupled dummy row/column
    size = n + (n % 2)
    if size != n:
        a = np.pad(a, ((0, 1), (0, 1)))
        v = np.eye(size)
    target = rel_tol * max(np.linalg.norm(a), np.finfo(float).tiny)
    rounds = _round_robin(size)
    sweeps = 0
    while _off(a) > target and sweeps < max_sweeps:
        sweeps += 1
        for p, q in rounds:
            apq = a[p, q]
            app = a[p, p]
            aqq = a[q, q]
            nz = np.abs(apq) > 1e-300
            if not np.any(nz):
                continue
            safe = np.where(nz, apq, 1.0)
            tau = (aqq - app) / (2.0 * safe)
            t = np.sign(tau) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            t = np.where(tau == 0.0, 1.0, t)
            t = np.where(nz, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            ap = a[:, p].copy()
            aq = a[:, q]
            a[:, p] = c * ap - s * aq
            a[:, q] = s * ap + c * aq
            ap = a[p, :].copy()
            aq = a[q, :]
            a[p, :] = c[:, None] * ap - s[:, None] * aq
            a[q, :] = s[:, None] * ap + c[:, None] * aq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp = v[:, p].copy()
            vq = v[:, q]
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
    w = np.diag(a).copy()
    if size != n:
        w, v = w[:n], v[:n, :n]
    return w, v, sweeps


def dense_eig_small(M) -> Spectrum:
    """Full spectrum with eigenvectors of a dense symmetric matrix, ``n <= 1024``."""
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    if n > MAX_ORACLE_N:
        raise OracleSizeError(f"dense oracle limited to n <= {MAX_ORACLE_N}, got {n}")
    w, v, sweeps = jacobi_eigh(M)
    order = np.argsort(-w, kind="stable")
    pairs = []
    for rank, i in enumerate(order):
        vec = normalize_sign(v[:, i])
        res = float(np.linalg.norm(M @ vec - w[i] * vec))
        pairs.append(Eigenpair(float(w[i]), vec, rank, res))
    return Spectrum(w[order], "dense_jacobi", tuple(pairs), {"sweeps": sweeps})
