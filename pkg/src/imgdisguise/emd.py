"""Exact Earth-Mover (Wasserstein-1) distance for small uniform point clouds.

With equal-size clouds and uniform weights every optimal coupling can be taken
to be a permutation, so the transport problem reduces to an assignment that we
solve by enumeration. On the real line the sorted matching is optimal.
"""
from __future__ import annotations

import itertools

import numpy as np

from .errors import ShapeError

MAX_BRUTE_FORCE = 9


def as_cloud(points) -> np.ndarray:
    """Coerce to an (n, d) float array. A flat sequence is read as n points in 1-D."""
    p = np.asarray(points, dtype=np.float64)
    if p.ndim == 1:
        p = p[:, None]
    if p.ndim != 2 or p.shape[0] == 0 or p.shape[1] == 0:
        raise ShapeError(f"point cloud must be non-empty with shape (n, d), got {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ShapeError("point cloud contains NaN or Inf")
    return p


def _check_pair(a, b):
    a, b = as_cloud(a), as_cloud(b)
    if a.shape[0] != b.shape[0]:
        raise ShapeError(f"clouds must have equal size, got {a.shape[0]} and {b.shape[0]}")
    if a.shape[1] != b.shape[1]:
        raise ShapeError(f"dimension mismatch {a.shape[1]} vs {b.shape[1]}")
    return a, b


def wasserstein_1d(a, b) -> float:
    a, b = _check_pair(a, b)
    if a.shape[1] != 1:
        raise ShapeError("wasserstein_1d needs one-dimensional clouds")
    return float(np.mean(np.abs(np.sort(a[:, 0]) - np.sort(b[:, 0]))))


def emd_exact(a, b, norm: str = "euclidean") -> tuple[float, tuple[int, ...]]:
    """Minimum mean transport cost over all n! assignments.

    Returns ``(cost, perm)`` where point ``a[i]`` is sent to ``b[perm[i]]``.
    Ties go to the lexicographically first permutation, so identical clouds
    yield the identity.
    """
    if norm != "euclidean":
        raise ShapeError(f"unsupported norm {norm!r}")
    a, b = _check_pair(a, b)
    n = a.shape[0]
    if n > MAX_BRUTE_FORCE:
        raise ShapeError(f"brute force limited to n <= {MAX_BRUTE_FORCE}, got {n}")
    cost = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=-1)
    rows = np.arange(n)
    best, best_perm = np.inf, None
    for perm in itertools.permutations(range(n)):
        total = cost[rows, perm].sum()
        if total < best:
            best, best_perm = total, perm
    return float(best / n), best_perm
