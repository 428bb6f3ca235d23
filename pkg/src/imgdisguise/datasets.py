"""Bundled 256x256 grayscale test images.

``lena``, ``baboon`` and ``fruits`` come from the OpenCV sample data and
``cameraman`` from scikit-image; each was center-cropped, converted to luma
and resampled to 256x256. ``fruits`` stands in for the classic Peppers image.
"""
from __future__ import annotations

from importlib import resources

from .image_io import Image, downscale_box, read_pgm

NAMES = ("lena", "baboon", "fruits", "cameraman")
NATIVE_SIDE = 256


def load_standard(name: str, side: int = NATIVE_SIDE) -> Image:
    """Load a bundled image, box-downscaled to ``side`` (must divide 256)."""
    if name not in NAMES:
        raise KeyError(f"unknown image {name!r}; choose from {NAMES}")
    data = resources.files(__package__).joinpath("data", f"{name}.pgm").read_bytes()
    img = read_pgm(data)
    if side == NATIVE_SIDE:
        return img
    if side < 1 or NATIVE_SIDE % side:
        raise ValueError(f"side {side} does not divide {NATIVE_SIDE}")
    return downscale_box(img, NATIVE_SIDE // side)
