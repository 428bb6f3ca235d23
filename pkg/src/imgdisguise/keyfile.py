"""Binary keyfile: the serialized generator that unlocks a disguise image.

Layout, all little-endian::

    offset  size  field
    0       4     magic b"IDG1"
    4       2     version (u16, currently 1)
    6       4     in_dim (u32)
    10      4     hidden_dim (u32)
    14      4     out_dim (u32)
    18      1     hidden activation code (0 relu, 1 sigmoid, 2 linear)
    19      1     output activation code
    20      8*P   float64 payload: w1, b1, w2, b2, each row-major
    20+8P   4     CRC-32 (IEEE) of every preceding byte

with P = hidden*in + hidden + out*hidden + out.
"""
from __future__ import annotations

import struct
import zlib

import numpy as np

from .errors import KeyCorruptionError, KeyFormatError, KeyVersionError
from .mlp import Activation, MlpParams

MAGIC = b"IDG1"
VERSION = 1
_HEADER = struct.Struct("<4sHIIIBB")
_CRC = struct.Struct("<I")


def payload_size(in_dim: int, hidden_dim: int, out_dim: int) -> int:
    return 8 * (hidden_dim * in_dim + hidden_dim + out_dim * hidden_dim + out_dim)


def save_key(g: MlpParams) -> bytes:
    header = _HEADER.pack(
        MAGIC, VERSION, g.in_dim, g.hidden_dim, g.out_dim, int(g.hidden_act), int(g.out_act)
    )
    payload = b"".join(np.ascontiguousarray(a, dtype="<f8").tobytes() for a in g.arrays())
    body = header + payload
    return body + _CRC.pack(zlib.crc32(body))


def read_header(data: bytes) -> dict:
    """Validate magic, version and length, and return the header fields."""
    if len(data) < 4 or data[:4] != MAGIC:
        if len(data) < 4 and MAGIC.startswith(data):
            raise KeyCorruptionError(f"truncated keyfile: only {len(data)} bytes")
        raise KeyFormatError(f"bad magic {data[:4]!r}, expected {MAGIC!r}")
    if len(data) < _HEADER.size + _CRC.size:
        raise KeyCorruptionError(f"truncated keyfile: only {len(data)} bytes")
    _, version, n_in, n_hidden, n_out, act_h, act_o = _HEADER.unpack_from(data)
    if version != VERSION:
        raise KeyVersionError(f"unsupported keyfile version {version}, expected {VERSION}")
    expected = _HEADER.size + payload_size(n_in, n_hidden, n_out) + _CRC.size
    if len(data) != expected:
        kind = "truncated" if len(data) < expected else "oversized"
        raise KeyCorruptionError(
            f"{kind} keyfile: {len(data)} bytes, header dims imply {expected}"
        )
    (stored,) = _CRC.unpack_from(data, len(data) - _CRC.size)
    actual = zlib.crc32(data[: -_CRC.size])
    if stored != actual:
        raise KeyCorruptionError(f"checksum mismatch: stored {stored:08x}, computed {actual:08x}")
    if min(n_in, n_hidden, n_out) < 1:
        raise KeyFormatError(f"zero dimension in header {(n_in, n_hidden, n_out)}")
    try:
        hidden_act, out_act = Activation(act_h), Activation(act_o)
    except ValueError as exc:
        raise KeyFormatError(f"unknown activation code: {exc}") from None
    return {
        "version": version,
        "in_dim": n_in,
        "hidden_dim": n_hidden,
        "out_dim": n_out,
        "hidden_act": hidden_act,
        "out_act": out_act,
    }


def load_key(data: bytes) -> MlpParams:
    data = bytes(data)
    h = read_header(data)
    n_in, n_hidden, n_out = h["in_dim"], h["hidden_dim"], h["out_dim"]
    values = np.frombuffer(data, dtype="<f8", offset=_HEADER.size,
                           count=payload_size(n_in, n_hidden, n_out) // 8)
    if not np.all(np.isfinite(values)):
        raise KeyFormatError("payload contains NaN or Inf")
    shapes = [(n_hidden, n_in), (n_hidden, 1), (n_out, n_hidden), (n_out, 1)]
    arrays, start = [], 0
    for shape in shapes:
        size = shape[0] * shape[1]
        arrays.append(values[start:start + size].astype(np.float64).reshape(shape))
        start += size
    return MlpParams(*arrays, h["hidden_act"], h["out_act"])
