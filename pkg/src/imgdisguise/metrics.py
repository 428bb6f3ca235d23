"""Pixel-space fidelity between two 8-bit images."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ShapeError
from .image_io import Image

PEAK = 255.0


@dataclass(frozen=True)
class Fidelity:
    mse: float
    psnr_db: float  # math.inf when the images are identical


def mse(a: Image, b: Image) -> float:
    if a.pixels.shape != b.pixels.shape:
        raise ShapeError(f"size mismatch {a.width}x{a.height} vs {b.width}x{b.height}")
    d = a.pixels.astype(np.float64) - b.pixels.astype(np.float64)
    return float(np.mean(d * d))


def psnr_from_mse(m: float) -> float:
    if m == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / m)


def psnr(a: Image, b: Image) -> float:
    return psnr_from_mse(mse(a, b))


def fidelity(a: Image, b: Image) -> Fidelity:
    m = mse(a, b)
    return Fidelity(m, psnr_from_mse(m))
