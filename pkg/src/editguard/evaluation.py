"""Metrics, reason-level confusion accounting, quartile edit categories,
rule baselines, and feature ranking by information gain and Shapley values."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyBackgroundError, LengthMismatchError
from .ml.data import Dataset, seed_stream
from .ml.model import TrainedModel


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    def __post_init__(self) -> None:
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def swapped(self) -> "ConfusionMatrix":
        """The same matrix with the negative class treated as positive."""
        return ConfusionMatrix(tp=self.tn, fp=self.fn, tn=self.tp, fn=self.fp)

    def to_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn}


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f1: float
    accuracy: float

    def to_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "accuracy": self.accuracy,
        }


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def metrics(cm: ConfusionMatrix) -> Metrics:
    """Standard precision/recall/F1/accuracy; any 0/0 evaluates to 0."""
    precision = _ratio(cm.tp, cm.tp + cm.fp)
    recall = _ratio(cm.tp, cm.tp + cm.fn)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    accuracy = _ratio(cm.tp + cm.tn, cm.total)
    return Metrics(precision, recall, f1, accuracy)


def confusion_from_predictions(
    predicted: Sequence[int], actual: Sequence[int]
) -> ConfusionMatrix:
    if len(predicted) != len(actual):
        raise LengthMismatchError("predicted and actual lengths differ")
    tp = fp = tn = fn = 0
    for p, a in zip(predicted, actual):
        if p == 1 and a == 1:
            tp += 1
        elif p == 1:
            fp += 1
        elif a == 1:
            fn += 1
        else:
            tn += 1
    return ConfusionMatrix(tp, fp, tn, fn)


def reason_confusion(
    identified: Sequence[frozenset], expected: Sequence[frozenset]
) -> ConfusionMatrix:
    """Instance-level accounting of reason sets: a hit requires the
    identified set to equal the expected set exactly."""
    if len(identified) != len(expected):
        raise LengthMismatchError("identified and expected lengths differ")
    tp = fp = tn = fn = 0
    for ident, expect in zip(identified, expected):
        ident, expect = set(ident), set(expect)
        if ident == expect:
            if ident:
                tp += 1
            else:
                tn += 1
        elif not ident:
            fn += 1
        else:
            fp += 1
    return ConfusionMatrix(tp, fp, tn, fn)


@dataclass(frozen=True)
class Quartiles:
    q1: float
    q2: float
    q3: float

    def __post_init__(self) -> None:
        if not (self.q1 <= self.q2 <= self.q3):
            raise ValueError("quartiles must be ordered q1 <= q2 <= q3")

    def to_dict(self) -> dict:
        return {"q1": self.q1, "q2": self.q2, "q3": self.q3}

    @classmethod
    def from_dict(cls, d: dict) -> "Quartiles":
        return cls(float(d["q1"]), float(d["q2"]), float(d["q3"]))

    @classmethod
    def of(cls, distances: Sequence[float]) -> "Quartiles":
        q1, q2, q3 = np.quantile(np.asarray(distances, dtype=np.float64), [0.25, 0.5, 0.75])
        return cls(float(q1), float(q2), float(q3))


class EditCategory(enum.Enum):
    TRIVIAL = "trivial"
    SMALL = "small"
    MEDIUM = "medium"
    MAJOR = "major"


def edit_category(norm_distance: float, q: Quartiles) -> EditCategory:
    """Bucket a normalized edit distance by training-corpus quartiles;
    intervals are left-open, right-closed."""
    if norm_distance < 0:
        raise ValueError("distance must be non-negative")
    if norm_distance <= q.q1:
        return EditCategory.TRIVIAL
    if norm_distance <= q.q2:
        return EditCategory.SMALL
    if norm_distance <= q.q3:
        return EditCategory.MEDIUM
    return EditCategory.MAJOR


class BaselineMode(enum.Enum):
    REJECT_TRIVIAL = "reject_trivial"
    REJECT_NON_TRIVIAL = "reject_non_trivial"


def baseline_predict(category: EditCategory, mode: BaselineMode) -> int:
    if mode is BaselineMode.REJECT_TRIVIAL:
        return 1 if category is EditCategory.TRIVIAL else 0
    return 0 if category is EditCategory.TRIVIAL else 1


def _entropy_bits(labels: np.ndarray) -> float:
    if labels.size == 0:
        return 0.0
    _, counts = np.unique(labels, return_counts=True)
    p = counts / labels.size
    return float(-(p * np.log2(p)).sum())


def information_gain(
    values: Sequence[float], labels: Sequence[int], bins: int = 10
) -> float:
    """Reduction of label entropy (in bits) from conditioning on a feature.

    Columns with at most two distinct values are treated as categories;
    continuous columns are discretized into equal-frequency bins with
    duplicate bin edges merged.
    """
    values = np.asarray(values, dtype=np.float64)
    labels = np.asarray(labels)
    if values.shape[0] != labels.shape[0]:
        raise LengthMismatchError("values and labels lengths differ")
    if values.size == 0:
        raise ValueError("columns must be non-empty")

    distinct = np.unique(values)
    if distinct.size <= 2:
        categories = values
    else:
        edges = np.unique(np.quantile(values, np.linspace(0.0, 1.0, bins + 1)))
        categories = np.searchsorted(edges[1:-1], values, side="left")

    h_c = _entropy_bits(labels)
    h_cond = 0.0
    for cat in np.unique(categories):
        mask = categories == cat
        h_cond += mask.mean() * _entropy_bits(labels[mask])
    return max(0.0, h_c - h_cond)


@dataclass
class ShapleyResult:
    """Per-instance attributions of the model's class-1 score, their Monte
    Carlo standard errors, and the mean-absolute ranking per feature."""

    attributions: np.ndarray  # (n_instances, n_features)
    stderr: np.ndarray        # (n_instances, n_features)
    ranking: dict[str, float]

    def ranked_features(self) -> list[tuple[str, float]]:
        return sorted(self.ranking.items(), key=lambda kv: (-kv[1], kv[0]))


def shapley_importance(
    model: TrainedModel,
    background: Dataset,
    instances: Dataset,
    n_permutations: int = 200,
    seed: int = 0,
) -> ShapleyResult:
    """Permutation-sampling Shapley values of the model's class-1 score.

    For each sampled permutation one background row is drawn; features are
    switched from the background value to the instance value in permutation
    order and the score deltas are credited to the switched feature.
    Deterministic for a fixed seed (per-permutation derived RNG streams).
    """
    if len(background) == 0:
        raise EmptyBackgroundError("background dataset has no rows")
    n_features = instances.n_features
    n_inst = len(instances)
    attributions = np.zeros((n_inst, n_features))
    stderr = np.zeros((n_inst, n_features))
    bg = background.X

    for i in range(n_inst):
        x = instances.X[i]
        contrib = np.zeros((n_permutations, n_features))
        for p in range(n_permutations):
            rng = seed_stream(seed, i, p)
            order = rng.permutation(n_features)
            z = bg[rng.integers(len(bg))].tolist()
            prev = model.predict_proba(z)
            for j in order:
                z[j] = x[j]
                cur = model.predict_proba(z)
                contrib[p, j] = cur - prev
                prev = cur
        attributions[i] = contrib.mean(axis=0)
        if n_permutations > 1:
            stderr[i] = contrib.std(axis=0, ddof=1) / math.sqrt(n_permutations)

    mean_abs = np.abs(attributions).mean(axis=0)
    ranking = {name: float(mean_abs[j]) for j, name in enumerate(instances.feature_names)}
    return ShapleyResult(attributions, stderr, ranking)


def rank_by_information_gain(data: Dataset, bins: int = 10) -> list[tuple[str, float]]:
    """All features ranked by information gain against the labels, best first."""
    scores = {
        name: information_gain(data.X[:, j], data.y, bins=bins)
        for j, name in enumerate(data.feature_names)
    }
    return sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
