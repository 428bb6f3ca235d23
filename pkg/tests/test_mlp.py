import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_mlp
from imgdisguise import Activation, MlpParams, ShapeError, backward, forward, gradient_check, init_mlp
from imgdisguise.mlp import Gradients
from imgdisguise.tensor import make_prng

PAIRINGS = list(itertools.product(["relu", "sigmoid", "linear"], repeat=2))


def quadratic(target):
    def loss(y):
        d = y - target
        return 0.5 * float(np.sum(d * d)), d
    return loss


def zero_params(i, h, o, out_act):
    return MlpParams(np.zeros((h, i)), np.zeros((h, 1)), np.zeros((o, h)), np.zeros((o, 1)),
                     "relu", out_act)


def test_init_deterministic_and_bounded():
    a = init_mlp(make_prng(7), 1024, 64, 1024, "relu", "sigmoid")
    b = init_mlp(make_prng(7), 1024, 64, 1024, "relu", "sigmoid")
    assert a == b
    assert not a.b1.any() and not a.b2.any()
    # sqrt(6 / (1024 + 64)) = 0.07426...
    assert np.abs(a.w1).max() <= 0.0743
    assert np.abs(a.w1).max() > 0.07


def test_init_rejects_zero_dims():
    with pytest.raises(ShapeError):
        init_mlp(make_prng(0), 0, 4, 4)


def test_forward_zero_params():
    y, _ = forward(zero_params(6, 3, 4, "sigmoid"), np.ones((6, 1)))
    assert np.all(y == 0.5)
    y, _ = forward(zero_params(6, 3, 4, "linear"), np.ones((6, 1)))
    assert not y.any()


def test_forward_hand_evaluated():
    p = MlpParams([[2.0]], [[0.0]], [[3.0]], [[1.0]], "relu", "linear")
    y, _ = forward(p, [[2.0]])
    assert y.tolist() == [[13.0]]


def test_forward_shape_mismatch():
    with pytest.raises(ShapeError):
        forward(zero_params(3, 2, 1, "linear"), np.ones((4, 1)))


def test_params_shape_validation():
    with pytest.raises(ShapeError):
        MlpParams(np.zeros((3, 2)), np.zeros((3, 1)), np.zeros((1, 4)), np.zeros((1, 1)))


def test_backward_zero_upstream():
    p = random_mlp(0)
    _, cache = forward(p, np.ones((5, 1)))
    g = backward(p, cache, np.zeros((3, 1)))
    assert all(not a.any() for a in g.arrays())


def test_backward_hand_differentiated():
    a, b, x = 1.5, -0.7, 2.0
    p = MlpParams([[a]], [[0.0]], [[b]], [[0.0]], "linear", "linear")
    _, cache = forward(p, [[x]])
    g = backward(p, cache, [[1.0]])
    assert g.w2[0, 0] == pytest.approx(a * x)
    assert g.w1[0, 0] == pytest.approx(b * x)
    assert g.x[0, 0] == pytest.approx(a * b)


def test_backward_shape_mismatch():
    p = random_mlp(1)
    _, cache = forward(p, np.ones((5, 1)))
    with pytest.raises(ShapeError):
        backward(p, cache, np.ones((2, 1)))


@pytest.mark.parametrize("hidden_act,out_act", PAIRINGS)
def test_gradient_check_random_net(hidden_act, out_act, rng):
    p = random_mlp(3, acts=(hidden_act, out_act))
    err = gradient_check(p, rng.normal(size=(5, 1)), quadratic(rng.normal(size=(3, 1))))
    assert err < 1e-4


def test_input_gradient_finite_difference(rng):
    p = random_mlp(5, acts=("sigmoid", "sigmoid"))
    x = rng.normal(size=(5, 1))
    loss = quadratic(rng.normal(size=(3, 1)))
    _, cache = forward(p, x)
    dx = backward(p, cache, loss(cache.y)[1]).x
    h = 1e-5
    for i in range(5):
        e = np.zeros((5, 1))
        e[i] = h
        num = (loss(forward(p, x + e)[0])[0] - loss(forward(p, x - e)[0])[0]) / (2 * h)
        assert dx[i, 0] == pytest.approx(num, rel=1e-6, abs=1e-9)


def test_gradient_check_zero_case():
    p = zero_params(3, 2, 2, "linear")
    assert gradient_check(p, np.zeros((3, 1)), lambda y: (0.0, np.zeros_like(y))) == 0.0


def test_gradient_check_catches_fault(rng):
    def corrupted(p, cache, dy):
        g = backward(p, cache, dy)
        w1 = g.w1.copy()
        idx = np.unravel_index(np.argmax(np.abs(w1)), w1.shape)
        w1[idx] *= 2
        return Gradients(w1, g.b1, g.w2, g.b2, g.x)

    p = random_mlp(4)
    err = gradient_check(p, rng.normal(size=(5, 1)), quadratic(np.zeros((3, 1))), backward_fn=corrupted)
    assert err > 0.1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31), st.floats(-3, 3))
def test_sigmoid_head_strictly_inside_unit_interval(seed, shift):
    p = random_mlp(seed, acts=("relu", "sigmoid"))
    y, _ = forward(p, np.full((5, 1), shift))
    assert np.all((y > 0) & (y < 1))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**31))
def test_forward_is_pure(seed):
    p = random_mlp(seed)
    x = np.random.default_rng(seed).normal(size=(5, 1))
    assert forward(p, x)[0].tobytes() == forward(p, x)[0].tobytes()


def test_activation_codes():
    assert [int(a) for a in Activation] == [0, 1, 2]
    assert Activation.parse("Sigmoid") is Activation.SIGMOID
