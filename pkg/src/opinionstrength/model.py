"""Multiclass classifiers for one sentiment scale.

``LinearModel`` is a one-vs-rest linear separator over standardized
features, trained by seeded mini-batch gradient descent on the hinge
(linear SVM) or logistic loss.  ``MajorityModel`` is the constant
baseline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .features import FeaturizedDoc, to_matrix

__all__ = [
    "ModelError",
    "TrainConfig",
    "LinearModel",
    "MajorityModel",
    "Prediction",
    "standardize_fit",
    "loss_and_grad",
    "train_linear",
    "train_majority",
    "predict",
    "predict_many",
    "save_model",
    "load_model",
    "model_to_dict",
    "model_from_dict",
]

N_CLASSES = 5
MODEL_FORMAT = "opinionstrength.model"
MODEL_VERSION = 1


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 200
    learning_rate: float = 0.1
    l2: float = 1e-3
    seed: int = 0
    loss: str = "hinge"
    batch_size: int = 32

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be > 0")
        if self.l2 < 0:
            raise ValueError("l2 must be >= 0")
        if self.loss not in ("hinge", "logistic"):
            raise ValueError(f"loss must be 'hinge' or 'logistic', got {self.loss!r}")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")

    def to_dict(self) -> dict:
        return {"epochs": self.epochs, "learning_rate": self.learning_rate, "l2": self.l2,
                "seed": self.seed, "loss": self.loss, "batch_size": self.batch_size}


@dataclass(frozen=True)
class Prediction:
    cls: int
    scores: Tuple[float, ...]


@dataclass
class LinearModel:
    weights: np.ndarray   # (5, feature_dim)
    bias: np.ndarray      # (5,)
    mean: np.ndarray      # (feature_dim,)
    std: np.ndarray       # (feature_dim,)
    mode: str
    scale: str

    def __post_init__(self):
        d = self.mean.shape[0]
        if self.weights.shape != (N_CLASSES, d) or self.bias.shape != (N_CLASSES,) \
                or self.std.shape != (d,):
            raise ModelError("inconsistent linear model shapes")

    @property
    def feature_dim(self) -> int:
        return self.mean.shape[0]

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (X - self.mean) / self.std

    def decision(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] != self.feature_dim:
            raise ModelError(f"feature dimension mismatch: model expects {self.feature_dim}, got {X.shape[1]}")
        return self.transform(X) @ self.weights.T + self.bias


@dataclass(frozen=True)
class MajorityModel:
    predicted_class: int
    scale: str

    def decision(self, X: np.ndarray) -> np.ndarray:
        n = np.atleast_2d(np.asarray(X)).shape[0]
        s = np.zeros((n, N_CLASSES))
        s[:, self.predicted_class - 1] = 1.0
        return s


def _labels(docs: Sequence[FeaturizedDoc], scale: str) -> np.ndarray:
    return np.array([d.label(scale) for d in docs], dtype=np.int64)


def standardize_fit(X: np.ndarray):
    """Per-column mean and std; constant columns get std 1."""
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    std[std == 0] = 1.0
    return mean, std


def _dscore(margins: np.ndarray, Y: np.ndarray, loss: str) -> np.ndarray:
    n = margins.shape[0]
    if loss == "hinge":
        return -Y * (margins < 1.0) / n
    if loss == "logistic":
        # d/dm log(1 + e^-m) = -sigmoid(-m) = -exp(-logaddexp(0, m))
        return -Y * np.exp(-np.logaddexp(0.0, margins)) / n
    raise ValueError(f"unknown loss {loss!r}")


def _grad(W, b, X, Y, loss, l2):
    dscore = _dscore(Y * (X @ W.T + b), Y, loss)
    return dscore.T @ X + l2 * W, dscore.sum(axis=0)


def loss_and_grad(W: np.ndarray, b: np.ndarray, X: np.ndarray, Y: np.ndarray,
                  loss: str = "hinge", l2: float = 0.0):
    """Summed one-vs-rest objective and its gradient.

    ``Y`` holds +1/-1 targets with shape (n, k).  Each class contributes
    its mean binary loss plus ``l2 / 2 * ||w_c||^2``; the bias is not
    regularized.  For hinge the gradient is a subgradient.
    """
    n = X.shape[0]
    margins = Y * (X @ W.T + b)
    dscore = _dscore(margins, Y, loss)
    if loss == "hinge":
        value = np.maximum(0.0, 1.0 - margins).sum() / n
    else:
        value = np.logaddexp(0.0, -margins).sum() / n
    value += 0.5 * l2 * np.sum(W * W)
    return value, dscore.T @ X + l2 * W, dscore.sum(axis=0)


def train_linear(docs: Sequence[FeaturizedDoc], scale: str, config: Optional[TrainConfig] = None,
                 feature_dim: Optional[int] = None, mode: str = "grouped") -> LinearModel:
    config = TrainConfig() if config is None else config
    y = _labels(docs, scale)
    if len(np.unique(y)) < 2:
        raise ModelError(
            f"training set has a single {scale} class; use train_majority for this case"
        )
    if feature_dim is None:
        first = docs[0].features
        if not isinstance(first, np.ndarray):
            raise ModelError("feature_dim is required for sparse features")
        feature_dim = first.shape[0]
    X = to_matrix(docs, feature_dim)
    return fit_linear(X, y, scale, config, mode)


def fit_linear(X: np.ndarray, y: np.ndarray, scale: str, config: TrainConfig,
               mode: str = "grouped") -> LinearModel:
    """Array-level trainer behind :func:`train_linear`."""
    n, d = X.shape
    mean, std = standardize_fit(X)
    Z = (X - mean) / std
    Y = np.where(y[:, None] == np.arange(1, N_CLASSES + 1)[None, :], 1.0, -1.0)

    W = np.zeros((N_CLASSES, d))
    b = np.zeros(N_CLASSES)
    rng = np.random.default_rng(config.seed)
    bs = config.batch_size
    lr = config.learning_rate
    for _ in range(config.epochs):
        order = rng.permutation(n)
        for start in range(0, n, bs):
            idx = order[start:start + bs]
            gW, gb = _grad(W, b, Z[idx], Y[idx], config.loss, config.l2)
            W -= lr * gW
            b -= lr * gb
    return LinearModel(W, b, mean, std, mode, scale)


def train_majority(docs: Sequence[FeaturizedDoc], scale: str) -> MajorityModel:
    if len(docs) == 0:
        raise ModelError("cannot train a majority model on zero documents")
    counts = np.bincount(_labels(docs, scale), minlength=N_CLASSES + 1)[1:]
    return MajorityModel(int(np.argmax(counts)) + 1, scale)


def predict_many(model: Union[LinearModel, MajorityModel], X: np.ndarray) -> np.ndarray:
    """Predicted classes (1..5) for the rows of ``X``; ties go to the smaller class."""
    return np.argmax(model.decision(X), axis=1) + 1


def predict(model: Union[LinearModel, MajorityModel], features) -> Prediction:
    if hasattr(features, "dense"):
        if isinstance(model, LinearModel):
            features = features.dense(model.feature_dim)
        else:
            features = np.zeros(1)
    scores = model.decision(np.asarray(features, dtype=np.float64))[0]
    return Prediction(int(np.argmax(scores)) + 1, tuple(float(s) for s in scores))


def model_to_dict(model: Union[LinearModel, MajorityModel]) -> dict:
    if isinstance(model, MajorityModel):
        return {"kind": "majority", "scale": model.scale, "predicted_class": model.predicted_class}
    return {
        "kind": "linear",
        "mode": model.mode,
        "scale": model.scale,
        "feature_dim": model.feature_dim,
        "mean": model.mean.tolist(),
        "std": model.std.tolist(),
        "weights": model.weights.tolist(),
        "bias": model.bias.tolist(),
    }


def model_from_dict(rec: dict) -> Union[LinearModel, MajorityModel]:
    try:
        if rec["kind"] == "majority":
            return MajorityModel(int(rec["predicted_class"]), rec["scale"])
        if rec["kind"] != "linear":
            raise ModelError(f"unknown model kind {rec['kind']!r}")
        d = int(rec["feature_dim"])
        model = LinearModel(
            weights=np.array(rec["weights"], dtype=np.float64).reshape(N_CLASSES, d),
            bias=np.array(rec["bias"], dtype=np.float64),
            mean=np.array(rec["mean"], dtype=np.float64),
            std=np.array(rec["std"], dtype=np.float64),
            mode=rec["mode"],
            scale=rec["scale"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ModelError):
            raise
        raise ModelError(f"invalid model record: {exc}") from None
    return model


def dumps_payload(kind: str, payload: dict) -> str:
    doc = {"format": MODEL_FORMAT, "version": MODEL_VERSION, "content": kind, **payload}
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=1) + "\n"


def loads_payload(text: str, kind: str, source="<string>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"{source}: not a valid model file ({exc.msg})") from None
    if not isinstance(doc, dict) or doc.get("format") != MODEL_FORMAT:
        raise ModelError(f"{source}: missing or wrong format header")
    if doc.get("version") != MODEL_VERSION:
        raise ModelError(f"{source}: unsupported model version {doc.get('version')!r} "
                         f"(expected {MODEL_VERSION})")
    if doc.get("content") != kind:
        raise ModelError(f"{source}: expected {kind!r} content, found {doc.get('content')!r}")
    return doc


def save_model(model: Union[LinearModel, MajorityModel], path) -> None:
    Path(path).write_text(dumps_payload("model", {"model": model_to_dict(model)}), encoding="utf-8")


def load_model(path) -> Union[LinearModel, MajorityModel]:
    path = Path(path)
    doc = loads_payload(path.read_text(encoding="utf-8"), "model", path)
    if "model" not in doc:
        raise ModelError(f"{path}: no model record")
    return model_from_dict(doc["model"])
