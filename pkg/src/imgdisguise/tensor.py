"""Dense float64 matrices and a seeded generator.

Matrices are plain 2-D ``numpy.ndarray`` objects of dtype float64. The helpers
here validate shapes and finiteness so that the rest of the package can rely
on those invariants. Randomness comes from numpy's PCG64 bit generator; a
given seed replays the same stream within one numpy build.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import ShapeError

Prng = np.random.Generator


def make_prng(seed: int) -> Prng:
    if not 0 <= int(seed) < 2**64:
        raise ShapeError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(int(seed)))


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    return _finite(m)


def _finite(m: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(m)):
        raise ShapeError("matrix contains NaN or Inf")
    return m


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols))


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return _finite(a @ b)


def add(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"cannot add {a.shape} and {b.shape}")
    return _finite(a + b)


def scale(a, s: float) -> np.ndarray:
    return _finite(as_matrix(a) * float(s))


def map_elementwise(a, f: Callable[[float], float]) -> np.ndarray:
    a = as_matrix(a)
    out = np.fromiter((f(v) for v in a.ravel()), dtype=np.float64, count=a.size)
    return _finite(out.reshape(a.shape))


def relu(v):
    return np.maximum(v, 0.0)


def clamp(a, lo: float, hi: float) -> np.ndarray:
    if lo > hi:
        raise ShapeError(f"clamp bounds reversed: lo={lo} > hi={hi}")
    return np.clip(as_matrix(a), lo, hi)


def uniform(prng: Prng, rows: int, cols: int, lo: float, hi: float) -> np.ndarray:
    """I.i.d. draws from [lo, hi). Advances ``prng``."""
    if not lo < hi:
        raise ShapeError(f"uniform needs lo < hi, got [{lo}, {hi})")
    if rows < 1 or cols < 1:
        raise ShapeError(f"bad shape ({rows}, {cols})")
    # numpy documents [low, high) but rounding can land on hi for tiny ranges
    out = prng.uniform(lo, hi, size=(rows, cols))
    return np.where(out >= hi, np.nextafter(hi, lo), out)
