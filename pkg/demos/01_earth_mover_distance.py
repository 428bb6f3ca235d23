"""Earth-Mover distance on tiny point clouds.

With equal-size, uniformly weighted clouds the optimal transport plan is a
permutation, so we can find it by trying every assignment. On the line the
answer is simply "match sorted points".
"""
import numpy as np

from imgdisguise import emd_exact, wasserstein_1d

# %% Two masses on the line
print("delta(0) vs delta(1):", wasserstein_1d([0.0], [1.0]))
print("{0,2} vs {1,3}:", wasserstein_1d([0, 2], [1, 3]))

# %% The sorted formula agrees with brute force
rng = np.random.default_rng(0)
a, b = rng.normal(size=6), rng.normal(size=6)
cost, perm = emd_exact(a, b)
print(f"sorted: {wasserstein_1d(a, b):.12f}  brute force: {cost:.12f}")

# %% In the plane the optimal plan moves each point straight up
cost, perm = emd_exact([(0, 0), (1, 0)], [(0, 1), (1, 1)])
print("2-D cost", cost, "assignment", perm)
