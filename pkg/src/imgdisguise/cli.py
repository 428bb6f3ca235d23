"""Command line front end: ``imgdisguise {train,reveal,verify,inspect}``.

Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 keyfile
corruption or version error.
"""
from __future__ import annotations

import argparse
import functools
import math
import os
import sys
import tempfile
from pathlib import Path

from .errors import KeyfileError, PgmError, ShapeError
from .image_io import Image, downscale_box, load_pgm, write_pgm
from .keyfile import load_key, read_header, save_key
from .metrics import fidelity
from .wgan import TrainConfig, reveal, train_pair

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_KEY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _write_atomic(path, data: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fit(img: Image, side: int, role: str) -> Image:
    """Accept an image at ``side`` or any integer multiple of it."""
    if img.width != img.height:
        raise UsageError(f"{role} image must be square, got {img.width}x{img.height}")
    if img.width == side:
        return img
    if img.width % side:
        raise UsageError(f"{role} image is {img.width}x{img.height}; --size {side} does not divide it")
    return downscale_box(img, img.width // side)


@functools.lru_cache(maxsize=None)
def build_parser() -> argparse.ArgumentParser:
    defaults = TrainConfig()
    p = _Parser(prog="imgdisguise", description="Hide an image behind a disguise image and a keyfile.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    t = sub.add_parser("train", help="train a keyfile mapping --disguise to --original")
    t.add_argument("--disguise", required=True)
    t.add_argument("--original", required=True)
    t.add_argument("--key-out", required=True)
    t.add_argument("--size", type=int, default=defaults.image_side)
    t.add_argument("--iters", type=int, default=defaults.max_iters)
    t.add_argument("--lr", type=float, default=defaults.learning_rate)
    t.add_argument("--clip", type=float, default=defaults.clip_c)
    t.add_argument("--n-critic", type=int, default=defaults.n_critic)
    t.add_argument("--seed", type=int, default=defaults.seed)
    t.add_argument("--target-psnr", type=float, default=None)
    t.add_argument("--log", default=None, help="write per-iteration TSV log here")

    r = sub.add_parser("reveal", help="reconstruct the original from disguise + key")
    r.add_argument("--disguise", required=True)
    r.add_argument("--key", required=True)
    r.add_argument("--out", required=True)

    v = sub.add_parser("verify", help="print MSE and PSNR between two PGM files")
    v.add_argument("--a", required=True)
    v.add_argument("--b", required=True)

    i = sub.add_parser("inspect", help="describe a keyfile")
    i.add_argument("--key", required=True)
    return p


def _fmt(v: float) -> str:
    return "inf" if math.isinf(v) else format(v, ".10g")


def _train(args, out):
    try:
        cfg = TrainConfig(
            learning_rate=args.lr, clip_c=args.clip, n_critic=args.n_critic,
            max_iters=args.iters, seed=args.seed, target_psnr_db=args.target_psnr,
            image_side=args.size,
        )
    except ShapeError as exc:
        raise UsageError(str(exc)) from None
    disguise = _fit(load_pgm(args.disguise), cfg.image_side, "disguise")
    original = _fit(load_pgm(args.original), cfg.image_side, "original")
    if args.log:
        with open(args.log, "w") as log:
            generator, history = train_pair(disguise, original, cfg, log=log)
    else:
        generator, history = train_pair(disguise, original, cfg)
    _write_atomic(args.key_out, save_key(generator))
    print(f"iterations={len(history)}", file=out)


def _reveal(args, out):
    key = load_key(Path(args.key).read_bytes())
    disguise = load_pgm(args.disguise)
    side = math.isqrt(key.in_dim)
    if side * side == key.in_dim:
        disguise = _fit(disguise, side, "disguise")
    try:
        img = reveal(key, disguise)
    except ShapeError as exc:
        raise UsageError(str(exc)) from None
    _write_atomic(args.out, write_pgm(img))


def _verify(args, out):
    f = fidelity(load_pgm(args.a), load_pgm(args.b))
    out.write(f"mse={_fmt(f.mse)}\npsnr_db={_fmt(f.psnr_db)}\n")


def _inspect(args, out):
    h = read_header(Path(args.key).read_bytes())
    for k in ("version", "in_dim", "hidden_dim", "out_dim"):
        out.write(f"{k}={h[k]}\n")
    out.write(f"hidden_act={h['hidden_act'].name.lower()}\nout_act={h['out_act'].name.lower()}\n")


VERBS = {"train": _train, "reveal": _reveal, "verify": _verify, "inspect": _inspect}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        VERBS[args.verb](args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except KeyfileError as exc:
        print(f"keyfile error: {exc}", file=err)
        return EXIT_KEY
    except (OSError, PgmError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_IO
    except ShapeError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run())
