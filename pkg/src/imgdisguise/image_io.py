"""8-bit grayscale images, binary PGM files and pixel/vector conversion."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import tensor
from .errors import PgmError, ShapeError

_WHITESPACE = b" \t\r\n\x0b\x0c"


@dataclass(frozen=True, eq=False)
class Image:
    """Row-major uint8 raster; ``pixels`` has shape (height, width)."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or 0 in px.shape:
            raise ShapeError(f"image pixels must be a non-empty 2-D array, got {px.shape}")
        if px.dtype != np.uint8:
            if np.any((px < 0) | (px > 255)) or np.any(px != np.round(px)):
                raise ShapeError("pixel values must be integers in [0, 255]")
            px = px.astype(np.uint8)
        px = np.ascontiguousarray(px)
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @classmethod
    def from_flat(cls, width: int, height: int, values) -> "Image":
        values = np.asarray(values)
        if values.size != width * height:
            raise ShapeError(f"{values.size} pixels for a {width}x{height} image")
        return cls(values.reshape(height, width))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Image):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )

    def __repr__(self):
        return f"Image({self.width}x{self.height})"


def _skip_space_and_comments(data: bytes, pos: int) -> int:
    while pos < len(data):
        if data[pos] in _WHITESPACE:
            pos += 1
        elif data[pos] == ord("#"):
            while pos < len(data) and data[pos] not in b"\r\n":
                pos += 1
        else:
            break
    return pos


def _read_int(data: bytes, pos: int, what: str) -> tuple[int, int]:
    pos = _skip_space_and_comments(data, pos)
    start = pos
    while pos < len(data) and data[pos] in b"0123456789":
        pos += 1
    if pos == start:
        raise PgmError(f"expected {what}", start)
    return int(data[start:pos]), pos


def read_pgm(data: bytes) -> Image:
    """Parse a binary (P5) PGM with maxval 255. Header comments are allowed."""
    if data[:2] != b"P5":
        raise PgmError(f"bad magic {data[:2]!r}, expected b'P5'", 0)
    pos = 2
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise PgmError("expected whitespace after magic", pos)
    width, pos = _read_int(data, pos, "width")
    height, pos = _read_int(data, pos, "height")
    maxval_at = _skip_space_and_comments(data, pos)
    maxval, pos = _read_int(data, pos, "maxval")
    if width < 1 or height < 1:
        raise PgmError(f"non-positive size {width}x{height}", maxval_at)
    if maxval != 255:
        raise PgmError(f"unsupported maxval {maxval}, only 255 is accepted", maxval_at)
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise PgmError("expected a single whitespace byte after maxval", pos)
    pos += 1
    n = width * height
    if len(data) - pos < n:
        raise PgmError(f"truncated pixel data: need {n} bytes, have {len(data) - pos}", len(data))
    px = np.frombuffer(data, dtype=np.uint8, count=n, offset=pos)
    return Image(px.reshape(height, width).copy())


def write_pgm(img: Image) -> bytes:
    return f"P5\n{img.width} {img.height}\n255\n".encode("ascii") + img.pixels.tobytes()


def load_pgm(path) -> Image:
    return read_pgm(Path(path).read_bytes())


def save_pgm(img: Image, path) -> None:
    Path(path).write_bytes(write_pgm(img))


def quantize(values) -> np.ndarray:
    """round(clamp(v, 0, 1) * 255), ties away from zero, as uint8."""
    v = np.clip(np.asarray(values, dtype=np.float64), 0.0, 1.0) * 255.0
    return np.floor(v + 0.5).astype(np.uint8)


def to_vector(img: Image) -> np.ndarray:
    if img.width != img.height:
        raise ShapeError(f"image must be square, got {img.width}x{img.height}")
    return img.pixels.reshape(-1, 1).astype(np.float64) / 255.0


def from_vector(v, side: int) -> Image:
    v = tensor.as_matrix(v)
    if v.shape != (side * side, 1):
        raise ShapeError(f"vector shape {v.shape} does not match a {side}x{side} image")
    return Image(quantize(v).reshape(side, side))


def downscale_box(img: Image, factor: int) -> Image:
    """Average non-overlapping factor x factor blocks, rounding ties up."""
    if factor < 1 or img.width % factor or img.height % factor:
        raise ShapeError(f"factor {factor} does not divide {img.width}x{img.height}")
    h, w = img.height // factor, img.width // factor
    sums = img.pixels.astype(np.int64).reshape(h, factor, w, factor).sum(axis=(1, 3))
    n = factor * factor
    # integer form of floor(sum / n + 1/2)
    return Image(((2 * sums + n) // (2 * n)).astype(np.uint8))
