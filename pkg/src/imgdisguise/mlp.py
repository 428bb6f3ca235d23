"""Two-layer perceptrons with hand-written backpropagation.

The generator maps a flattened N*N image through 64 hidden units back to N*N
outputs; the critic maps N*N inputs through 64 hidden units to one unbounded
score. Column vectors throughout: ``x`` has shape (in_dim, 1).
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import IntEnum
from typing import Callable

import numpy as np
from scipy.special import expit

from . import tensor
from .errors import ShapeError


class Activation(IntEnum):
    # values double as keyfile codes
    RELU = 0
    SIGMOID = 1
    LINEAR = 2

    @classmethod
    def parse(cls, value) -> "Activation":
        if isinstance(value, str):
            try:
                return cls[value.upper()]
            except KeyError:
                raise ShapeError(f"unknown activation {value!r}") from None
        return cls(value)

    def apply(self, z):
        if self is Activation.RELU:
            return np.maximum(z, 0.0)
        if self is Activation.SIGMOID:
            return expit(z)
        return z

    def derivative(self, z, a):
        """d act / dz given pre-activation ``z`` and output ``a``."""
        if self is Activation.RELU:
            return (z > 0).astype(np.float64)
        if self is Activation.SIGMOID:
            return a * (1.0 - a)
        return np.ones_like(z)


@dataclass(frozen=True, eq=False)
class MlpParams:
    w1: np.ndarray  # hidden x in
    b1: np.ndarray  # hidden x 1
    w2: np.ndarray  # out x hidden
    b2: np.ndarray  # out x 1
    hidden_act: Activation = Activation.RELU
    out_act: Activation = Activation.LINEAR

    def __post_init__(self):
        for name in ("w1", "b1", "w2", "b2"):
            object.__setattr__(self, name, tensor.as_matrix(getattr(self, name)))
        object.__setattr__(self, "hidden_act", Activation.parse(self.hidden_act))
        object.__setattr__(self, "out_act", Activation.parse(self.out_act))
        h, n = self.w1.shape
        o = self.w2.shape[0]
        if self.b1.shape != (h, 1) or self.w2.shape != (o, h) or self.b2.shape != (o, 1):
            raise ShapeError(
                f"inconsistent shapes w1={self.w1.shape} b1={self.b1.shape} "
                f"w2={self.w2.shape} b2={self.b2.shape}"
            )

    @property
    def in_dim(self) -> int:
        return self.w1.shape[1]

    @property
    def hidden_dim(self) -> int:
        return self.w1.shape[0]

    @property
    def out_dim(self) -> int:
        return self.w2.shape[0]

    @property
    def n_params(self) -> int:
        return sum(a.size for a in self.arrays())

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.w1, self.b1, self.w2, self.b2

    def with_arrays(self, w1, b1, w2, b2) -> "MlpParams":
        return replace(self, w1=w1, b1=b1, w2=w2, b2=b2)

    def map(self, f: Callable[[np.ndarray], np.ndarray]) -> "MlpParams":
        return self.with_arrays(*(f(a) for a in self.arrays()))

    def __eq__(self, other):
        """Bit-exact equality of every parameter and both activations."""
        if not isinstance(other, MlpParams):
            return NotImplemented
        return (
            self.hidden_act == other.hidden_act
            and self.out_act == other.out_act
            and all(
                a.shape == b.shape and a.tobytes() == b.tobytes()
                for a, b in zip(self.arrays(), other.arrays())
            )
        )


@dataclass(frozen=True, eq=False)
class Gradients:
    """Gradients with the shapes of :class:`MlpParams`, plus dL/dx."""

    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray
    x: np.ndarray

    def arrays(self):
        return self.w1, self.b1, self.w2, self.b2


@dataclass(frozen=True, eq=False)
class ForwardCache:
    x: np.ndarray
    z1: np.ndarray
    a1: np.ndarray
    z2: np.ndarray
    y: np.ndarray


def glorot_limit(fan_in: int, fan_out: int) -> float:
    return float(np.sqrt(6.0 / (fan_in + fan_out)))


def init_mlp(prng, in_dim, hidden_dim, out_dim, hidden_act="relu", out_act="linear"):
    """Glorot-uniform weights, zero biases. Draws w1 then w2 from ``prng``."""
    if min(in_dim, hidden_dim, out_dim) < 1:
        raise ShapeError(f"dimensions must be >= 1, got {(in_dim, hidden_dim, out_dim)}")
    s1 = glorot_limit(in_dim, hidden_dim)
    s2 = glorot_limit(hidden_dim, out_dim)
    w1 = tensor.uniform(prng, hidden_dim, in_dim, -s1, s1)
    w2 = tensor.uniform(prng, out_dim, hidden_dim, -s2, s2)
    return MlpParams(
        w1, tensor.zeros(hidden_dim, 1), w2, tensor.zeros(out_dim, 1), hidden_act, out_act
    )


def forward(p: MlpParams, x) -> tuple[np.ndarray, ForwardCache]:
    x = tensor.as_matrix(x)
    if x.shape != (p.in_dim, 1):
        raise ShapeError(f"input shape {x.shape} does not match ({p.in_dim}, 1)")
    z1 = p.w1 @ x + p.b1
    a1 = p.hidden_act.apply(z1)
    z2 = p.w2 @ a1 + p.b2
    y = p.out_act.apply(z2)
    return y, ForwardCache(x, z1, a1, z2, y)


def backward(p: MlpParams, cache: ForwardCache, dL_dy) -> Gradients:
    dL_dy = tensor.as_matrix(dL_dy)
    if dL_dy.shape != (p.out_dim, 1) or cache.z1.shape != (p.hidden_dim, 1):
        raise ShapeError(f"upstream gradient {dL_dy.shape} does not fit ({p.out_dim}, 1)")
    dz2 = dL_dy * p.out_act.derivative(cache.z2, cache.y)
    dw2 = dz2 @ cache.a1.T
    da1 = p.w2.T @ dz2
    dz1 = da1 * p.hidden_act.derivative(cache.z1, cache.a1)
    dw1 = dz1 @ cache.x.T
    dx = p.w1.T @ dz1
    return Gradients(dw1, dz1, dw2, dz2, dx)


def gradient_check(p: MlpParams, x, loss, h: float = 1e-5, backward_fn=backward) -> float:
    """Largest relative gap between analytic and central-difference gradients.

    ``loss(y)`` must return ``(value, dL_dy)``. ``backward_fn`` is swappable so
    tests can confirm that a wrong gradient is caught.
    """
    x = tensor.as_matrix(x)
    y, cache = forward(p, x)
    _, dy = loss(y)
    analytic = backward_fn(p, cache, dy).arrays()

    def value(q):
        return loss(forward(q, x)[0])[0]

    worst = 0.0
    originals = p.arrays()
    for k, base in enumerate(originals):
        for idx in np.ndindex(base.shape):
            arrays = [a.copy() for a in originals]
            arrays[k][idx] = base[idx] + h
            up = value(p.with_arrays(*arrays))
            arrays[k][idx] = base[idx] - h
            down = value(p.with_arrays(*arrays))
            numeric = (up - down) / (2 * h)
            a = analytic[k][idx]
            err = abs(a - numeric) / max(1e-8, abs(a) + abs(numeric))
            worst = max(worst, err)
    return worst

