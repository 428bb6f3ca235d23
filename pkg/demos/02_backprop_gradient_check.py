"""Hand-written backprop checked against central finite differences."""
import numpy as np

from imgdisguise import forward, gradient_check, init_mlp
from imgdisguise.tensor import make_prng

rng = np.random.default_rng(1)
target = rng.normal(size=(3, 1))


def loss(y):
    d = y - target
    return 0.5 * float(np.sum(d * d)), d


# %% Every activation pairing on a 5 -> 4 -> 3 net
for hidden in ("relu", "sigmoid", "linear"):
    for out in ("relu", "sigmoid", "linear"):
        p = init_mlp(make_prng(3), 5, 4, 3, hidden, out)
        err = gradient_check(p, rng.normal(size=(5, 1)), loss)
        print(f"{hidden:>7} -> {out:<7} max relative error {err:.2e}")

# %% A generator-shaped net squashes its output into (0, 1)
g = init_mlp(make_prng(0), 64, 64, 64, "relu", "sigmoid")
y, _ = forward(g, rng.uniform(size=(64, 1)))
print("generator output range:", y.min(), y.max())
