"""Dataset container and model hyperparameters."""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime
from typing import Optional, Sequence

import numpy as np

from ..core import FEATURE_NAMES, Label, LabeledExample
from ..errors import EmptyDatasetError

# Seeds are combined with stream indices through SeedSequence, which wants
# non-negative entropy words.
_SEED_MASK = (1 << 64) - 1


def seed_stream(*parts: int) -> np.random.Generator:
    """Deterministic RNG derived from a seed plus stream indices, so parallel
    and serial consumers draw identical values."""
    return np.random.default_rng([p & _SEED_MASK for p in parts])


@dataclass
class Dataset:
    """Feature matrix plus 0/1 labels (1 = rejected) and optional timestamps."""

    X: np.ndarray
    y: np.ndarray
    feature_names: tuple[str, ...] = FEATURE_NAMES
    timestamps: Optional[list[datetime]] = None

    def __post_init__(self) -> None:
        self.X = np.asarray(self.X, dtype=np.float64)
        self.y = np.asarray(self.y, dtype=np.int64)
        if self.X.ndim != 2:
            raise ValueError("X must be a 2-D matrix")
        if self.X.shape[1] != len(self.feature_names):
            raise ValueError(
                f"row width {self.X.shape[1]} != {len(self.feature_names)} feature names"
            )
        if self.X.shape[0] != self.y.shape[0]:
            raise ValueError("X and y row counts differ")
        if self.y.size and not np.isin(self.y, (0, 1)).all():
            raise ValueError("labels must be 0 or 1")
        if self.timestamps is not None and len(self.timestamps) != self.X.shape[0]:
            raise ValueError("timestamps length differs from row count")

    def __len__(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    def class_counts(self) -> tuple[int, int]:
        n1 = int(self.y.sum())
        return len(self) - n1, n1

    def require_nonempty(self) -> None:
        if len(self) == 0:
            raise EmptyDatasetError("dataset has no rows")

    def select_features(self, names: Sequence[str]) -> "Dataset":
        idx = [self.feature_names.index(n) for n in names]
        return Dataset(self.X[:, idx], self.y, tuple(names), self.timestamps)

    @classmethod
    def from_examples(cls, examples: Sequence[LabeledExample]) -> "Dataset":
        X = np.array([ex.features.as_floats() for ex in examples], dtype=np.float64)
        if X.size == 0:
            X = X.reshape(0, len(FEATURE_NAMES))
        y = np.array(
            [1 if ex.label is Label.REJECTED else 0 for ex in examples], dtype=np.int64
        )
        return cls(X, y, FEATURE_NAMES, [ex.timestamp for ex in examples])


ALGORITHMS = ("cart", "rf", "knn", "gbt")

_DEFAULT_DEPTH = {"cart": 5, "rf": 5, "gbt": 3, "knn": 5}


@dataclass(frozen=True)
class ModelParams:
    """Hyperparameters, defaulting to the tuned values: tree depth 5 for the
    single tree and the forest, 3 for boosting, 46 neighbors."""

    algo: str
    max_depth: int
    n_trees: int = 100
    k_neighbors: int = 46
    learning_rate: float = 0.1
    min_samples_split: int = 2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algo!r}")
        for name in ("max_depth", "n_trees", "k_neighbors", "min_samples_split"):
            if getattr(self, name) < (0 if name == "n_trees" else 1):
                raise ValueError(f"{name} out of range")

    @classmethod
    def defaults(cls, algo: str, seed: int = 0, **overrides) -> "ModelParams":
        params = cls(algo=algo, max_depth=_DEFAULT_DEPTH.get(algo, 5), seed=seed)
        return replace(params, **overrides) if overrides else params

    def to_dict(self) -> dict:
        return {
            "algo": self.algo,
            "max_depth": self.max_depth,
            "n_trees": self.n_trees,
            "k_neighbors": self.k_neighbors,
            "learning_rate": self.learning_rate,
            "min_samples_split": self.min_samples_split,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelParams":
        return cls(
            algo=d["algo"],
            max_depth=int(d["max_depth"]),
            n_trees=int(d["n_trees"]),
            k_neighbors=int(d["k_neighbors"]),
            learning_rate=float(d["learning_rate"]),
            min_samples_split=int(d["min_samples_split"]),
            seed=int(d["seed"]),
        )
