import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opinionstrength.corpus import NegStrength, PosStrength
from opinionstrength.features import FeaturizedDoc, SparseVector
from opinionstrength.model import (LinearModel, MajorityModel, ModelError, TrainConfig, load_model,
                                   loss_and_grad, predict, predict_many, save_model, standardize_fit,
                                   train_linear, train_majority)


def fdocs(X, pos, neg=None):
    neg = [1] * len(pos) if neg is None else neg
    return [FeaturizedDoc(str(i), np.asarray(x), PosStrength(int(p)), NegStrength(-int(q)))
            for i, (x, p, q) in enumerate(zip(X, pos, neg))]


@pytest.fixture
def separable():
    rng = np.random.default_rng(0)
    X = rng.integers(0, 3, size=(20, 12))
    X[:10, 0] = rng.integers(1, 3, size=10)
    X[10:, 0] = 0
    y = np.where(X[:, 0] > 0, 1, 2)
    return fdocs(X, y)


def test_separable_training_accuracy(separable):
    model = train_linear(separable, "positive")
    X = np.array([d.features for d in separable])
    assert (predict_many(model, X) == [d.label("positive") for d in separable]).all()


def test_logistic_also_separates(separable):
    model = train_linear(separable, "positive", TrainConfig(loss="logistic"))
    X = np.array([d.features for d in separable])
    assert (predict_many(model, X) == [d.label("positive") for d in separable]).all()


def test_bitwise_determinism(separable):
    a = train_linear(separable, "positive", TrainConfig(seed=11))
    b = train_linear(separable, "positive", TrainConfig(seed=11))
    assert np.array_equal(a.weights, b.weights) and np.array_equal(a.bias, b.bias)


def test_all_zero_features_use_bias():
    docs = fdocs(np.zeros((9, 12)), [1, 1, 1, 1, 1, 2, 2, 3, 3])
    model = train_linear(docs, "positive")
    pred = predict(model, np.zeros(12))
    assert pred.cls == int(np.argmax(model.bias)) + 1
    assert pred.cls == 1


def test_single_class_rejected():
    with pytest.raises(ModelError, match="majority"):
        train_linear(fdocs(np.eye(3), [2, 2, 2]), "positive")


@pytest.mark.parametrize("labels, expected", [([1, 1, 4], 1), ([2, 2, 3, 3], 2), ([5, 5, 5], 5)])
def test_majority(labels, expected):
    m = train_majority(fdocs(np.zeros((len(labels), 2)), labels), "positive")
    assert m.predicted_class == expected
    assert predict(m, np.ones(2)).cls == expected


def test_majority_negative_scale_magnitudes():
    m = train_majority(fdocs(np.zeros((3, 2)), [1, 1, 1], [4, 4, 2]), "negative")
    assert m.predicted_class == 4


def test_majority_empty():
    with pytest.raises(ModelError):
        train_majority([], "positive")


def _manual_model(W, b):
    d = W.shape[1]
    return LinearModel(np.asarray(W, float), np.asarray(b, float), np.zeros(d), np.ones(d), "grouped", "positive")


def test_one_hot_weights():
    model = _manual_model(np.eye(5, 12), np.zeros(5))
    e3 = np.zeros(12)
    e3[2] = 1
    assert predict(model, e3).cls == 3


def test_tie_goes_to_smaller_class():
    W = np.zeros((5, 2))
    b = np.array([0.0, 1.0, 0.0, 1.0, 0.0])
    assert predict(_manual_model(W, b), np.zeros(2)).cls == 2


def test_dimension_mismatch():
    with pytest.raises(ModelError, match="expects 12, got 3"):
        predict(_manual_model(np.eye(5, 12), np.zeros(5)), np.zeros(3))


def test_predict_accepts_sparse():
    model = _manual_model(np.eye(5, 12), np.zeros(5))
    assert predict(model, SparseVector((3,), (2,))).cls == 4


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=12, max_size=12), st.floats(1e-3, 1e3))
def test_argmax_scale_invariance(x, k):
    rng = np.random.default_rng(3)
    W, b = rng.normal(size=(5, 12)), rng.normal(size=5)
    a = predict(_manual_model(W, b), np.array(x)).cls
    assert predict(_manual_model(k * W, k * b), np.array(x)).cls == a


def test_standardization():
    rng = np.random.default_rng(1)
    X = rng.poisson(2.0, size=(50, 12)).astype(float)
    X[:, 5] = 3.0
    mean, std = standardize_fit(X)
    Z = (X - mean) / std
    varying = X.std(axis=0) > 0
    assert np.all(np.abs(Z.mean(axis=0)) < 1e-9)
    assert np.all(np.abs(Z[:, varying].var(axis=0) - 1) < 1e-9)
    assert std[5] == 1.0


def _numeric_grad(f, A, h=1e-5):
    G = np.zeros_like(A)
    it = np.nditer(A, flags=["multi_index"])
    for _ in it:
        i = it.multi_index
        old = A[i]
        A[i] = old + h
        up = f()
        A[i] = old - h
        down = f()
        A[i] = old
        G[i] = (up - down) / (2 * h)
    return G


def _rel_err(a, b):
    return np.max(np.abs(a - b) / np.maximum(np.maximum(np.abs(a), np.abs(b)), 1e-8))


@pytest.mark.parametrize("seed", range(5))
def test_logistic_gradient_check(seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(7, 12))
    Y = np.where(rng.random((7, 5)) < 0.3, 1.0, -1.0)
    W, b = rng.normal(size=(5, 12)), rng.normal(size=5)
    _, gW, gb = loss_and_grad(W, b, X, Y, "logistic", 0.01)
    f = lambda: loss_and_grad(W, b, X, Y, "logistic", 0.01)[0]
    assert _rel_err(gW, _numeric_grad(f, W)) < 1e-5
    assert _rel_err(gb, _numeric_grad(f, b)) < 1e-5


def test_save_load_round_trip(tmp_path, separable):
    model = train_linear(separable, "positive")
    p1, p2 = tmp_path / "m1.json", tmp_path / "m2.json"
    save_model(model, p1)
    save_model(model, p2)
    assert p1.read_bytes() == p2.read_bytes()
    loaded = load_model(p1)
    X = np.random.default_rng(9).normal(size=(100, 12)) * 3
    assert np.array_equal(model.decision(X), loaded.decision(X))
    assert (loaded.mode, loaded.scale, loaded.feature_dim) == ("grouped", "positive", 12)


def test_majority_round_trip(tmp_path):
    p = tmp_path / "maj.json"
    save_model(MajorityModel(4, "negative"), p)
    assert load_model(p) == MajorityModel(4, "negative")


@pytest.mark.parametrize("mutate", [
    lambda t: t.replace('"opinionstrength.model"', '"other"'),
    lambda t: t.replace('"version": 1', '"version": 99'),
    lambda t: t[: len(t) // 2],
])
def test_corrupted_model_file(tmp_path, separable, mutate):
    p = tmp_path / "m.json"
    save_model(train_linear(separable, "positive"), p)
    p.write_text(mutate(p.read_text(encoding="utf-8")), encoding="utf-8")
    with pytest.raises(ModelError):
        load_model(p)


def test_train_config_validation():
    for bad in (dict(epochs=0), dict(learning_rate=0), dict(l2=-1), dict(loss="squared")):
        with pytest.raises(ValueError):
            TrainConfig(**bad)
