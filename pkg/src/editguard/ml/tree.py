"""Binary decision trees grown greedily, shared by the single-tree
classifier, the forest and the boosting stages.

Split thresholds are midpoints between consecutive distinct sorted feature
values. Ties in score are broken by lowest feature index, then lowest
threshold (guaranteed by ascending candidate enumeration with strictly-better
updates). Classification nodes split on the best candidate even when its
immediate Gini gain is zero (an XOR-shaped node needs the zero-gain split to
become separable one level down); regression nodes require a strict
squared-error reduction.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence, Union

import numpy as np

_EPS = 1e-12


class Split:
    __slots__ = ("feature", "threshold", "left", "right")

    def __init__(self, feature: int, threshold: float, left, right):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right


class Leaf:
    """Terminal node: ``counts`` per class for classification trees,
    a real ``value`` for regression trees."""

    __slots__ = ("counts", "value")

    def __init__(self, counts: Optional[tuple[int, int]] = None,
                 value: Optional[float] = None):
        self.counts = counts
        self.value = value

    @property
    def prob(self) -> float:
        n0, n1 = self.counts
        return n1 / (n0 + n1)


Node = Union[Split, Leaf]


def walk(node: Node, x: Sequence[float]) -> Leaf:
    while isinstance(node, Split):
        node = node.left if x[node.feature] <= node.threshold else node.right
    return node


def depth(node: Node) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + max(depth(node.left), depth(node.right))


def node_to_dict(node: Node) -> dict:
    if isinstance(node, Leaf):
        if node.counts is not None:
            return {"counts": [int(node.counts[0]), int(node.counts[1])]}
        return {"value": float(node.value)}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "left": node_to_dict(node.left),
        "right": node_to_dict(node.right),
    }


def node_from_dict(d: dict) -> Node:
    if "counts" in d:
        return Leaf(counts=(int(d["counts"][0]), int(d["counts"][1])))
    if "value" in d:
        return Leaf(value=float(d["value"]))
    return Split(
        int(d["feature"]),
        float(d["threshold"]),
        node_from_dict(d["left"]),
        node_from_dict(d["right"]),
    )


def _gini_from_counts(n0: float, n1: float) -> float:
    n = n0 + n1
    if n == 0:
        return 0.0
    return 1.0 - (n0 * n0 + n1 * n1) / (n * n)


def _best_split_gini(X, y, idx, features):
    """Best (feature, threshold) by Gini reduction on the rows in idx, or
    None when no candidate boundary exists. Gini concavity guarantees the
    winning gain is never negative."""
    n = idx.size
    total1 = int(y[idx].sum())
    total0 = n - total1
    parent = _gini_from_counts(total0, total1)
    best_gain = -1.0
    best = None
    for f in features:
        xs = X[idx, f]
        order = np.argsort(xs, kind="stable")
        xs_sorted = xs[order]
        ys_sorted = y[idx][order]
        cum1 = np.cumsum(ys_sorted)
        boundary = np.nonzero(xs_sorted[:-1] < xs_sorted[1:])[0]
        for b in boundary:
            nl = b + 1
            nr = n - nl
            l1 = int(cum1[b])
            gl = _gini_from_counts(nl - l1, l1)
            gr = _gini_from_counts(nr - (total1 - l1), total1 - l1)
            gain = parent - (nl * gl + nr * gr) / n
            if gain > best_gain:
                best_gain = gain
                best = (f, (xs_sorted[b] + xs_sorted[b + 1]) / 2.0)
    return best


def _best_split_sse(X, r, idx, features):
    """Best (feature, threshold) by squared-error reduction of the residuals."""
    n = idx.size
    rv = r[idx]
    total = rv.sum()
    base = total * total / n
    best_gain = _EPS
    best = None
    for f in features:
        xs = X[idx, f]
        order = np.argsort(xs, kind="stable")
        xs_sorted = xs[order]
        rs_sorted = rv[order]
        cum = np.cumsum(rs_sorted)
        boundary = np.nonzero(xs_sorted[:-1] < xs_sorted[1:])[0]
        for b in boundary:
            nl = b + 1
            nr = n - nl
            sl = cum[b]
            sr = total - sl
            gain = sl * sl / nl + sr * sr / nr - base
            if gain > best_gain:
                best_gain = gain
                best = (f, (xs_sorted[b] + xs_sorted[b + 1]) / 2.0)
    return best


FeaturePicker = Callable[[], Sequence[int]]


def grow_classifier(
    X: np.ndarray,
    y: np.ndarray,
    max_depth: int,
    min_samples_split: int,
    feature_picker: Optional[FeaturePicker] = None,
) -> Node:
    n_features = X.shape[1]
    all_features = tuple(range(n_features))

    def build(idx: np.ndarray, level: int) -> Node:
        n1 = int(y[idx].sum())
        counts = (idx.size - n1, n1)
        if (
            level >= max_depth
            or idx.size < min_samples_split
            or n1 == 0
            or n1 == idx.size
        ):
            return Leaf(counts=counts)
        feats = all_features if feature_picker is None else feature_picker()
        found = _best_split_gini(X, y, idx, feats)
        if found is None:
            return Leaf(counts=counts)
        f, thr = found
        mask = X[idx, f] <= thr
        return Split(f, thr, build(idx[mask], level + 1), build(idx[~mask], level + 1))

    return build(np.arange(X.shape[0]), 0)


def grow_regressor(
    X: np.ndarray,
    residuals: np.ndarray,
    hessians: np.ndarray,
    max_depth: int,
    min_samples_split: int,
    l2_lambda: float = 1.0,
) -> Node:
    """Regression tree on residuals; each leaf holds one Newton step
    ``sum(residuals) / (sum(hessians) + lambda)``."""

    def leaf(idx: np.ndarray) -> Leaf:
        value = residuals[idx].sum() / (hessians[idx].sum() + l2_lambda)
        return Leaf(value=float(value))

    def build(idx: np.ndarray, level: int) -> Node:
        if level >= max_depth or idx.size < min_samples_split:
            return leaf(idx)
        found = _best_split_sse(X, residuals, idx, tuple(range(X.shape[1])))
        if found is None:
            return leaf(idx)
        f, thr = found
        mask = X[idx, f] <= thr
        return Split(f, thr, build(idx[mask], level + 1), build(idx[~mask], level + 1))

    return build(np.arange(X.shape[0]), 0)
