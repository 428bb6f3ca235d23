"""Plot the critic's Wasserstein estimate and reconstruction error over training.

Writes the same tab-separated log the CLI produces with ``train --log``.
Requires matplotlib.
"""
import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from imgdisguise import TrainConfig, load_standard, train_pair

buf = io.StringIO()
train_pair(load_standard("cameraman", 32), load_standard("baboon", 32),
           TrainConfig(image_side=32, max_iters=1500), log=buf)
# columns: iter, critic_loss, gen_loss, w_estimate, mse
log = np.loadtxt(io.StringIO(buf.getvalue()), delimiter="\t")

fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(6, 5))
ax1.plot(log[:, 0], log[:, 3])
ax1.set_ylabel("W estimate")
ax2.semilogy(log[:, 0], log[:, 4])
ax2.set_ylabel("MSE")
ax2.set_xlabel("generator iteration")
fig.tight_layout()
fig.savefig("training_log.png", dpi=100)
print("wrote training_log.png")
