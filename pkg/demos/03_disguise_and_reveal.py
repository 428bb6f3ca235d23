"""Hide Lena behind Baboon, then reveal it with the keyfile.

Runs at 32x32 so it finishes in well under a minute. Pass ``--side 256`` to
use the full-resolution network (slow).
"""
import argparse
import tempfile
from pathlib import Path

from imgdisguise import TrainConfig, load_key, load_standard, psnr, reveal, save_key, save_pgm, train_pair

parser = argparse.ArgumentParser()
parser.add_argument("--side", type=int, default=32)
parser.add_argument("--iters", type=int, default=2000)
args = parser.parse_args()

disguise = load_standard("baboon", args.side)
original = load_standard("lena", args.side)

# %% Sender: train a generator for this (disguise, original) pair
cfg = TrainConfig(image_side=args.side, max_iters=args.iters)
generator, history = train_pair(disguise, original, cfg)
for rec in history.records[:: max(1, len(history) // 10)]:
    print(f"iter {rec.iteration:5d}  W estimate {rec.w_estimate:+.3e}  mse {rec.mse:.2e}")

out = Path(tempfile.mkdtemp())
(out / "lena.key").write_bytes(save_key(generator))
save_pgm(disguise, out / "baboon.pgm")
print("keyfile:", out / "lena.key", (out / "lena.key").stat().st_size, "bytes")

# %% Receiver: only the disguise image and the keyfile are needed
key = load_key((out / "lena.key").read_bytes())
revealed = reveal(key, disguise)
save_pgm(revealed, out / "revealed.pgm")
print(f"revealed vs original: {psnr(revealed, original):.2f} dB")

# %% The key only works with its own disguise image
for name in ("fruits", "cameraman", "lena"):
    wrong = reveal(key, load_standard(name, args.side))
    print(f"feeding {name:>9}: {psnr(wrong, original):.2f} dB")
