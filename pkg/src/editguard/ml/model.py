"""The four classifiers and the shared trained-model container.

All algorithms are implemented here directly (no ML library underneath):
a CART tree, a bagged forest with per-node feature subsampling, a
standardizing k-nearest-neighbors store, and gradient-boosted regression
trees on logistic loss. Training is deterministic for a fixed seed; per-tree
RNG streams are derived from ``(seed, tree_index)`` so the forest could be
grown in parallel without changing the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from ..core import FeatureVector
from ..errors import InsufficientRowsError, SchemaMismatchError
from . import tree
from .data import Dataset, ModelParams, seed_stream


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-z))


@dataclass
class TrainedModel:
    """A persisted-ready classifier: algorithm tag, hyperparameters, the
    feature ordering it was trained with, and the fitted state."""

    algo: str
    params: ModelParams
    feature_names: tuple[str, ...]
    payload: dict
    metadata: dict = field(default_factory=dict)

    def predict_row(self, x: Sequence[float]) -> tuple[int, float]:
        """(class, probability of class 1) for one encoded row."""
        if len(x) != len(self.feature_names):
            raise SchemaMismatchError(
                f"expected {len(self.feature_names)} features, got {len(x)}"
            )
        return _PREDICTORS[self.algo](self, x)

    def predict_proba(self, x: Sequence[float]) -> float:
        return self.predict_row(x)[1]

    def to_dict(self) -> dict:
        return {
            "algo": self.algo,
            "params": self.params.to_dict(),
            "feature_names": list(self.feature_names),
            "payload": _PAYLOAD_TO_DICT[self.algo](self.payload),
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrainedModel":
        algo = d["algo"]
        return cls(
            algo=algo,
            params=ModelParams.from_dict(d["params"]),
            feature_names=tuple(d["feature_names"]),
            payload=_PAYLOAD_FROM_DICT[algo](d["payload"]),
            metadata=dict(d["metadata"]),
        )


def predict(model: TrainedModel, fv: Union[FeatureVector, Sequence[float]]) -> tuple[int, float]:
    """Classify one feature vector: returns (class, score) where score is the
    model's probability of class 1 and ties go to class 1."""
    if isinstance(fv, FeatureVector):
        row = fv.as_floats()
    else:
        row = list(fv)
    return model.predict_row(row)


def _check_trainable(data: Dataset) -> bool:
    """Raise on empty input; return True when only one class is present, in
    which case trainers produce a flagged constant model instead of failing."""
    data.require_nonempty()
    n0, n1 = data.class_counts()
    return n0 == 0 or n1 == 0


# -- CART ------------------------------------------------------------------

def train_cart(data: Dataset, params: ModelParams) -> TrainedModel:
    degenerate = _check_trainable(data)
    root = tree.grow_classifier(
        data.X, data.y, params.max_depth, params.min_samples_split
    )
    meta = {"degenerate_single_class": degenerate}
    return TrainedModel("cart", params, data.feature_names, {"tree": root}, meta)


def _predict_cart(model: TrainedModel, x) -> tuple[int, float]:
    p = tree.walk(model.payload["tree"], x).prob
    return (1 if p >= 0.5 else 0, p)


# -- Random forest -----------------------------------------------------------

def train_random_forest(data: Dataset, params: ModelParams) -> TrainedModel:
    degenerate = _check_trainable(data)
    n = len(data)
    n_features = data.n_features
    m = max(1, math.isqrt(n_features) + (0 if math.isqrt(n_features) ** 2 == n_features else 1))
    trees = []
    for t in range(params.n_trees):
        rng = seed_stream(params.seed, t)
        boot = rng.integers(0, n, size=n)

        def pick():
            return sorted(rng.choice(n_features, size=m, replace=False).tolist())

        trees.append(
            tree.grow_classifier(
                data.X[boot], data.y[boot], params.max_depth,
                params.min_samples_split, feature_picker=pick,
            )
        )
    meta = {"degenerate_single_class": degenerate}
    return TrainedModel("rf", params, data.feature_names, {"trees": trees}, meta)


def _predict_rf(model: TrainedModel, x) -> tuple[int, float]:
    trees = model.payload["trees"]
    votes = sum(1 for t in trees if tree.walk(t, x).prob >= 0.5)
    score = votes / len(trees)
    return (1 if score >= 0.5 else 0, score)


# -- K-nearest neighbors -----------------------------------------------------

def train_knn(data: Dataset, params: ModelParams) -> TrainedModel:
    degenerate = _check_trainable(data)
    if len(data) < params.k_neighbors:
        raise InsufficientRowsError(
            f"{len(data)} rows < k_neighbors={params.k_neighbors}"
        )
    means = data.X.mean(axis=0)
    stds = data.X.std(axis=0)
    # Zero-variance features contribute nothing to the distance.
    scale = np.where(stds > 0, 1.0 / np.where(stds > 0, stds, 1.0), 0.0)
    payload = {
        "means": means,
        "scale": scale,
        "rows": (data.X - means) * scale,
        "labels": data.y.copy(),
    }
    meta = {"degenerate_single_class": degenerate}
    return TrainedModel("knn", params, data.feature_names, payload, meta)


def _predict_knn(model: TrainedModel, x) -> tuple[int, float]:
    p = model.payload
    q = (np.asarray(x, dtype=np.float64) - p["means"]) * p["scale"]
    d2 = ((p["rows"] - q) ** 2).sum(axis=1)
    # Distance ties resolved by lower row index.
    order = np.lexsort((np.arange(d2.size), d2))
    k = model.params.k_neighbors
    top = order[:k]
    votes1 = int(p["labels"][top].sum())
    score = votes1 / k
    if 2 * votes1 == k:
        cls = int(p["labels"][order[0]])
    else:
        cls = 1 if votes1 * 2 > k else 0
    return (cls, score)


# -- Gradient-boosted trees ---------------------------------------------------

def _logloss(y: np.ndarray, p: np.ndarray) -> float:
    p = np.clip(p, 1e-12, 1 - 1e-12)
    return float(-(y * np.log(p) + (1 - y) * np.log(1 - p)).mean())


def train_gradboost(data: Dataset, params: ModelParams, l2_lambda: float = 1.0) -> TrainedModel:
    degenerate = _check_trainable(data)
    y = data.y.astype(np.float64)
    base_rate = float(y.mean())
    meta: dict = {"degenerate_single_class": degenerate}
    if degenerate:
        payload = {"init_score": 0.0, "base_rate": base_rate, "trees": []}
        return TrainedModel("gbt", params, data.feature_names, payload, meta)

    init = math.log(base_rate / (1.0 - base_rate))
    scores = np.full(len(data), init)
    trees: list = []
    curve: list[float] = []
    for _ in range(params.n_trees):
        prob = _sigmoid(scores)
        residuals = y - prob
        hessians = prob * (1.0 - prob)
        t = tree.grow_regressor(
            data.X, residuals, hessians, params.max_depth,
            params.min_samples_split, l2_lambda,
        )
        contrib = np.array([tree.walk(t, row).value for row in data.X])
        scores = scores + params.learning_rate * contrib
        trees.append(t)
        curve.append(_logloss(y, _sigmoid(scores)))
    meta["train_logloss"] = curve
    payload = {"init_score": init, "base_rate": base_rate, "trees": trees}
    return TrainedModel("gbt", params, data.feature_names, payload, meta)


def _predict_gbt(model: TrainedModel, x) -> tuple[int, float]:
    p = model.payload
    if model.metadata.get("degenerate_single_class"):
        score = p["base_rate"]
        return (1 if score >= 0.5 else 0, score)
    total = p["init_score"] + model.params.learning_rate * sum(
        tree.walk(t, x).value for t in p["trees"]
    )
    score = float(_sigmoid(total))
    return (1 if score >= 0.5 else 0, score)


# -- Dispatch tables -----------------------------------------------------------

_TRAINERS = {
    "cart": train_cart,
    "rf": train_random_forest,
    "knn": train_knn,
    "gbt": train_gradboost,
}

_PREDICTORS = {
    "cart": _predict_cart,
    "rf": _predict_rf,
    "knn": _predict_knn,
    "gbt": _predict_gbt,
}


def train(data: Dataset, params: ModelParams) -> TrainedModel:
    return _TRAINERS[params.algo](data, params)


def _cart_payload_to_dict(p):
    return {"tree": tree.node_to_dict(p["tree"])}


def _cart_payload_from_dict(d):
    return {"tree": tree.node_from_dict(d["tree"])}


def _rf_payload_to_dict(p):
    return {"trees": [tree.node_to_dict(t) for t in p["trees"]]}


def _rf_payload_from_dict(d):
    return {"trees": [tree.node_from_dict(t) for t in d["trees"]]}


def _knn_payload_to_dict(p):
    return {
        "means": p["means"].tolist(),
        "scale": p["scale"].tolist(),
        "rows": p["rows"].tolist(),
        "labels": p["labels"].tolist(),
    }


def _knn_payload_from_dict(d):
    return {
        "means": np.array(d["means"], dtype=np.float64),
        "scale": np.array(d["scale"], dtype=np.float64),
        "rows": np.array(d["rows"], dtype=np.float64).reshape(len(d["rows"]), -1),
        "labels": np.array(d["labels"], dtype=np.int64),
    }


def _gbt_payload_to_dict(p):
    return {
        "init_score": p["init_score"],
        "base_rate": p["base_rate"],
        "trees": [tree.node_to_dict(t) for t in p["trees"]],
    }


def _gbt_payload_from_dict(d):
    return {
        "init_score": float(d["init_score"]),
        "base_rate": float(d["base_rate"]),
        "trees": [tree.node_from_dict(t) for t in d["trees"]],
    }


_PAYLOAD_TO_DICT = {
    "cart": _cart_payload_to_dict,
    "rf": _rf_payload_to_dict,
    "knn": _knn_payload_to_dict,
    "gbt": _gbt_payload_to_dict,
}

_PAYLOAD_FROM_DICT = {
    "cart": _cart_payload_from_dict,
    "rf": _rf_payload_from_dict,
    "knn": _knn_payload_from_dict,
    "gbt": _gbt_payload_from_dict,
}
