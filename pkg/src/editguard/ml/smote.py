"""Synthetic minority oversampling.

New minority rows are drawn on the segment between a minority row and one of
its k nearest minority neighbors, until both classes have equal counts.
Deterministic for a fixed seed.
"""

from __future__ import annotations

import numpy as np

from ..errors import TooFewMinoritySamplesError
from .data import Dataset, seed_stream


def smote(data: Dataset, k: int = 5, seed: int = 0) -> Dataset:
    data.require_nonempty()
    n0, n1 = data.class_counts()
    if n0 == n1:
        return data
    minority_label = 1 if n1 < n0 else 0
    n_min, n_maj = min(n0, n1), max(n0, n1)
    if n_min < 2:
        raise TooFewMinoritySamplesError("minority class needs at least 2 rows")
    if k < 1 or k > n_min - 1:
        raise TooFewMinoritySamplesError(
            f"k={k} must lie in [1, minority_size - 1 = {n_min - 1}]"
        )

    min_idx = np.nonzero(data.y == minority_label)[0]
    Xm = data.X[min_idx]

    # k nearest minority neighbors per minority row (self excluded, distance
    # ties resolved by lower index).
    diff = Xm[:, None, :] - Xm[None, :, :]
    d2 = (diff * diff).sum(axis=2)
    np.fill_diagonal(d2, np.inf)
    neighbor_ids = np.empty((n_min, k), dtype=np.int64)
    order_cols = np.arange(n_min)
    for i in range(n_min):
        order = np.lexsort((order_cols, d2[i]))
        neighbor_ids[i] = order[:k]

    rng = seed_stream(seed)
    synth = np.empty((n_maj - n_min, data.n_features), dtype=np.float64)
    sources = np.empty(n_maj - n_min, dtype=np.int64)
    for j in range(n_maj - n_min):
        i = j % n_min
        nn = neighbor_ids[i][rng.integers(k)]
        lam = rng.random()
        synth[j] = Xm[i] + lam * (Xm[nn] - Xm[i])
        sources[j] = min_idx[i]

    X = np.vstack([data.X, synth])
    y = np.concatenate([data.y, np.full(len(synth), minority_label, dtype=np.int64)])
    timestamps = None
    if data.timestamps is not None:
        timestamps = list(data.timestamps) + [data.timestamps[s] for s in sources]
    return Dataset(X, y, data.feature_names, timestamps)
