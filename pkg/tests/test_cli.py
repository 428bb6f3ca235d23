import io

import numpy as np
import pytest

from imgdisguise import Image, downscale_box, load_standard, save_pgm
from imgdisguise.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def pair(tmp_path):
    d, o = tmp_path / "d.pgm", tmp_path / "o.pgm"
    save_pgm(load_standard("baboon", 8), d)
    save_pgm(load_standard("lena", 8), o)
    return d, o


def train(tmp_path, pair, name="k.key", *extra):
    key = tmp_path / name
    code, _, err = call("train", "--disguise", str(pair[0]), "--original", str(pair[1]),
                        "--key-out", str(key), "--size", "8", "--iters", "60", *extra)
    assert code == 0, err
    return key


def test_verify_identical(pair):
    code, out, _ = call("verify", "--a", str(pair[0]), "--b", str(pair[0]))
    assert code == 0
    assert out == "mse=0\npsnr_db=inf\n"


def test_verify_known_values(tmp_path):
    a, b = tmp_path / "a.pgm", tmp_path / "b.pgm"
    save_pgm(Image(np.zeros((4, 4), np.uint8)), a)
    save_pgm(Image(np.full((4, 4), 255, np.uint8)), b)
    assert call("verify", "--a", str(a), "--b", str(b))[1] == "mse=65025\npsnr_db=0\n"


def test_train_reveal_inspect(tmp_path, pair):
    key = train(tmp_path, pair)
    out = tmp_path / "out.pgm"
    assert call("reveal", "--disguise", str(pair[0]), "--key", str(key), "--out", str(out))[0] == 0
    code, text, _ = call("verify", "--a", str(out), "--b", str(pair[1]))
    assert code == 0 and text.startswith("mse=")
    code, text, _ = call("inspect", "--key", str(key))
    assert code == 0
    assert text == ("version=1\nin_dim=64\nhidden_dim=64\nout_dim=64\n"
                    "hidden_act=relu\nout_act=sigmoid\n")


def test_train_log(tmp_path, pair):
    log = tmp_path / "t.log"
    train(tmp_path, pair, "k.key", "--log", str(log))
    lines = log.read_text().splitlines()
    assert len(lines) == 60 and len(lines[0].split("\t")) == 5


def test_train_downscales_multiple_of_size(tmp_path):
    d, o = tmp_path / "d.pgm", tmp_path / "o.pgm"
    save_pgm(load_standard("baboon", 32), d)
    save_pgm(load_standard("lena", 32), o)
    key = train(tmp_path, (d, o))
    assert "in_dim=64" in call("inspect", "--key", str(key))[1]


def test_corrupted_key_leaves_no_output(tmp_path, pair):
    key = train(tmp_path, pair)
    data = bytearray(key.read_bytes())
    data[100] ^= 0xFF
    key.write_bytes(bytes(data))
    out = tmp_path / "out.pgm"
    code, _, err = call("reveal", "--disguise", str(pair[0]), "--key", str(key), "--out", str(out))
    assert code == 3 and "checksum" in err
    assert not out.exists()
    assert list(tmp_path.glob("*.tmp")) == []


def test_usage_errors(tmp_path, pair):
    assert call()[0] == 1
    assert call("train", "--disguise", "x")[0] == 1
    assert call("bogus")[0] == 1
    code, _, _ = call("train", "--disguise", str(pair[0]), "--original", str(pair[1]),
                      "--key-out", str(tmp_path / "k"), "--size", "8", "--clip", "0")
    assert code == 1
    code, _, _ = call("train", "--disguise", str(pair[0]), "--original", str(pair[1]),
                      "--key-out", str(tmp_path / "k"), "--size", "3")
    assert code == 1


def test_reveal_size_handling(tmp_path, pair):
    key = train(tmp_path, pair)
    big, odd = tmp_path / "big.pgm", tmp_path / "odd.pgm"
    save_pgm(load_standard("baboon", 32), big)
    save_pgm(Image(np.zeros((12, 12), np.uint8)), odd)
    out = tmp_path / "revealed.pgm"
    assert call("reveal", "--disguise", str(odd), "--key", str(key), "--out", str(out))[0] == 1
    assert not out.exists()
    # a multiple of the key's side is box-downscaled like in train
    assert call("reveal", "--disguise", str(big), "--key", str(key), "--out", str(out))[0] == 0
    small, direct = tmp_path / "small.pgm", tmp_path / "direct.pgm"
    save_pgm(downscale_box(load_standard("baboon", 32), 4), small)
    assert call("reveal", "--disguise", str(small), "--key", str(key), "--out", str(direct))[0] == 0
    assert out.read_bytes() == direct.read_bytes()


def test_io_errors(tmp_path, pair):
    assert call("verify", "--a", str(tmp_path / "missing.pgm"), "--b", str(pair[0]))[0] == 2
    junk = tmp_path / "junk.pgm"
    junk.write_bytes(b"P2\n1 1\n255\n0")
    code, _, err = call("verify", "--a", str(junk), "--b", str(pair[0]))
    assert code == 2 and "offset" in err
    assert call("inspect", "--key", str(tmp_path / "nope.key"))[0] == 2


def test_bad_magic_key_exit_3(tmp_path, pair):
    key = tmp_path / "k.key"
    key.write_bytes(b"NOPE" + bytes(40))
    assert call("inspect", "--key", str(key))[0] == 3


def test_identical_flags_identical_keys(tmp_path, pair):
    a = train(tmp_path, pair, "a.key", "--seed", "5")
    b = train(tmp_path, pair, "b.key", "--seed", "5")
    c = train(tmp_path, pair, "c.key", "--seed", "6")
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() != c.read_bytes()
