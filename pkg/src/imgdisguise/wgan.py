"""Adversarial training of a generator that maps one disguise image to one original.

Both "distributions" are point masses: the real sample is the original image,
the fake sample is G(disguise). Each generator iteration runs ``n_critic``
RMSProp steps on the critic (followed by weight clipping), then one RMSProp
step on the generator with gradients taken through the frozen critic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, TextIO

import numpy as np

from . import tensor
from .errors import ShapeError
from .image_io import Image, from_vector, quantize, to_vector
from .metrics import psnr_from_mse
from .mlp import Activation, MlpParams, backward, forward, init_mlp

HIDDEN_DIM = 64


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 5e-5
    clip_c: float = 0.01
    n_critic: int = 5
    max_iters: int = 2000
    seed: int = 0
    target_psnr_db: Optional[float] = None
    image_side: int = 256
    hidden_dim: int = HIDDEN_DIM

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ShapeError(f"learning_rate must be > 0, got {self.learning_rate}")
        if not self.clip_c > 0:
            raise ShapeError(f"clip_c must be > 0, got {self.clip_c}")
        if self.n_critic < 1:
            raise ShapeError(f"n_critic must be >= 1, got {self.n_critic}")
        if self.max_iters < 0:
            raise ShapeError(f"max_iters must be >= 0, got {self.max_iters}")
        if self.image_side < 1 or self.hidden_dim < 1:
            raise ShapeError("image_side and hidden_dim must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ShapeError(f"seed must fit in 64 bits, got {self.seed}")


@dataclass(frozen=True, eq=False)
class RmsPropState:
    acc: tuple[np.ndarray, ...]
    rho: float = 0.9
    eps: float = 1e-8

    @classmethod
    def zeros_like(cls, p: MlpParams, rho: float = 0.9, eps: float = 1e-8) -> "RmsPropState":
        return cls(tuple(np.zeros_like(a) for a in p.arrays()), rho, eps)


class IterationRecord(NamedTuple):
    iteration: int
    critic_loss: float
    gen_loss: float
    w_estimate: float
    mse: float  # reconstruction MSE in [0, 1] pixel units

    def log_line(self) -> str:
        return "\t".join([str(self.iteration)] + [repr(float(v)) for v in self[1:]])


@dataclass
class TrainHistory:
    records: list[IterationRecord] = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    def __eq__(self, other):
        if not isinstance(other, TrainHistory):
            return NotImplemented
        return [tuple(r) for r in self.records] == [tuple(r) for r in other.records]


def critic_loss(f_fake, f_real) -> float:
    """mean(f_fake) - mean(f_real); minimized by the critic."""
    f_fake, f_real = np.asarray(f_fake, float).ravel(), np.asarray(f_real, float).ravel()
    if f_fake.size != f_real.size or f_fake.size == 0:
        raise ShapeError(f"critic scores must have equal non-zero length, got "
                         f"{f_fake.size} and {f_real.size}")
    return float(np.mean(f_fake) - np.mean(f_real))


def generator_loss(f_fake) -> float:
    f_fake = np.asarray(f_fake, float).ravel()
    if f_fake.size == 0:
        raise ShapeError("generator_loss needs at least one critic score")
    return float(-np.mean(f_fake))


def rmsprop_step(params: MlpParams, grads, state: RmsPropState, lr: float):
    g_arrays = grads.arrays() if hasattr(grads, "arrays") else tuple(grads)
    p_arrays = params.arrays()
    if len(g_arrays) != 4 or len(state.acc) != 4:
        raise ShapeError("expected four gradient and accumulator arrays")
    new_p, new_acc = [], []
    for p, g, s in zip(p_arrays, g_arrays, state.acc):
        if p.shape != g.shape or p.shape != s.shape:
            raise ShapeError(f"shape mismatch param {p.shape} grad {g.shape} acc {s.shape}")
        s = state.rho * s + (1.0 - state.rho) * g * g
        new_acc.append(s)
        new_p.append(p - lr * g / (np.sqrt(s) + state.eps))
    return params.with_arrays(*new_p), RmsPropState(tuple(new_acc), state.rho, state.eps)


def clip_critic(critic: MlpParams, c: float) -> MlpParams:
    if not c > 0:
        raise ShapeError(f"clip constant must be > 0, got {c}")
    return critic.map(lambda a: tensor.clamp(a, -c, c))


def _check_image(img: Image, side: int, role: str):
    if img.width != side or img.height != side:
        raise ShapeError(f"{role} image is {img.width}x{img.height}, config expects {side}x{side}")


def init_pair(cfg: TrainConfig) -> tuple[MlpParams, MlpParams]:
    """Fresh (generator, critic). The generator is drawn first from Prng(seed)."""
    prng = tensor.make_prng(cfg.seed)
    n = cfg.image_side * cfg.image_side
    generator = init_mlp(prng, n, cfg.hidden_dim, n, Activation.RELU, Activation.SIGMOID)
    critic = init_mlp(prng, n, cfg.hidden_dim, 1, Activation.RELU, Activation.LINEAR)
    return generator, critic


def train_pair(
    disguise: Image,
    original: Image,
    cfg: TrainConfig,
    *,
    log: Optional[TextIO] = None,
    check_clip: bool = False,
    on_critic_step: Optional[Callable[[MlpParams], None]] = None,
) -> tuple[MlpParams, TrainHistory]:
    """Train G so that G(disguise) reproduces ``original``.

    ``log`` receives one tab-separated line per generator iteration.
    ``check_clip`` asserts the clipping bound after every critic update and
    ``on_critic_step`` sees every post-clip critic; both exist for tests.
    """
    _check_image(disguise, cfg.image_side, "disguise")
    _check_image(original, cfg.image_side, "original")
    generator, critic = init_pair(cfg)
    history = TrainHistory()
    x = to_vector(disguise)
    real = to_vector(original)
    target_px = original.pixels.reshape(-1, 1).astype(np.float64)
    g_state = RmsPropState.zeros_like(generator)
    c_state = RmsPropState.zeros_like(critic)
    ones = np.ones((1, 1))
    lr, c = cfg.learning_rate, cfg.clip_c

    for it in range(cfg.max_iters):
        fake, _ = forward(generator, x)
        for _ in range(cfg.n_critic):
            f_fake, cache_fake = forward(critic, fake)
            f_real, cache_real = forward(critic, real)
            d_loss = critic_loss(f_fake, f_real)
            g_fake = backward(critic, cache_fake, ones)
            g_real = backward(critic, cache_real, ones)
            grads = [gf - gr for gf, gr in zip(g_fake.arrays(), g_real.arrays())]
            critic, c_state = rmsprop_step(critic, grads, c_state, lr)
            critic = clip_critic(critic, c)
            if check_clip:
                assert all(np.all(np.abs(a) <= c) for a in critic.arrays()), "clip violated"
            if on_critic_step is not None:
                on_critic_step(critic)

        fake, cache_g = forward(generator, x)
        f_fake, cache_fake = forward(critic, fake)
        g_loss = generator_loss(f_fake)
        # d(-f)/d(fake) through the frozen critic, then into G
        d_fake = backward(critic, cache_fake, -ones).x
        generator, g_state = rmsprop_step(generator, backward(generator, cache_g, d_fake),
                                          g_state, lr)

        out, _ = forward(generator, x)
        rec = IterationRecord(it, d_loss, g_loss, -d_loss, float(np.mean((out - real) ** 2)))
        history.records.append(rec)
        if log is not None:
            log.write(rec.log_line() + "\n")
        if cfg.target_psnr_db is not None:
            px_mse = float(np.mean((quantize(out).astype(np.float64) - target_px) ** 2))
            if psnr_from_mse(px_mse) >= cfg.target_psnr_db:
                break
    return generator, history


def reveal(generator: MlpParams, disguise: Image) -> Image:
    """Run the disguise image through the generator and requantize to 8 bits."""
    if disguise.width != disguise.height:
        raise ShapeError(f"disguise image must be square, got {disguise.width}x{disguise.height}")
    n = disguise.width * disguise.width
    if generator.in_dim != n or generator.out_dim != n:
        raise ShapeError(
            f"generator maps {generator.in_dim} -> {generator.out_dim}, "
            f"image needs {n} -> {n}"
        )
    y, _ = forward(generator, to_vector(disguise))
    return from_vector(y, disguise.width)
