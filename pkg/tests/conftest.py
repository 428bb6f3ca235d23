import numpy as np
import pytest

from imgdisguise import init_mlp
from imgdisguise.tensor import make_prng


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_mlp(seed, dims=(5, 4, 3), acts=("relu", "linear"), scale=1.0):
    """Small net with nonzero biases so every parameter gets exercised."""
    p = init_mlp(make_prng(seed), *dims, *acts)
    r = np.random.default_rng(seed + 10_000)
    return p.with_arrays(
        p.w1 * scale, r.normal(size=p.b1.shape) * 0.5, p.w2 * scale, r.normal(size=p.b2.shape) * 0.5
    )
