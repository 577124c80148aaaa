import numpy as np
import pytest

from editguard.errors import InsufficientRowsError
from editguard.ml import Dataset, ModelParams, predict, train_knn


def _ds(X, y):
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    return Dataset(X, np.asarray(y), tuple(f"f{i}" for i in range(X.shape[1])))


def test_k1_returns_label_of_matching_row():
    data = _ds([0.0, 1.0, 2.0], [0, 1, 0])
    model = train_knn(data, ModelParams.defaults("knn", k_neighbors=1))
    assert predict(model, [1.0]) == (1, 1.0)
    assert predict(model, [0.0]) == (0, 0.0)


def test_k3_hand_computed_neighborhood():
    data = _ds([0.0, 0.1, 5.0, 5.1], [0, 0, 1, 1])
    model = train_knn(data, ModelParams.defaults("knn", k_neighbors=3))
    cls, score = predict(model, [0.05])
    assert cls == 0
    assert score == pytest.approx(1 / 3)


def test_constant_feature_does_not_change_predictions():
    X = [[0.0, 7.0], [0.1, 7.0], [5.0, 7.0], [5.1, 7.0]]
    data_with = _ds(X, [0, 0, 1, 1])
    data_without = _ds([[0.0], [0.1], [5.0], [5.1]], [0, 0, 1, 1])
    params = ModelParams.defaults("knn", k_neighbors=3)
    m_with = train_knn(data_with, params)
    m_without = train_knn(data_without, params)
    for q in (0.05, 2.0, 4.9, 6.0):
        assert m_with.predict_row([q, 7.0]) == m_without.predict_row([q])


def test_insufficient_rows():
    data = _ds([0.0, 1.0], [0, 1])
    with pytest.raises(InsufficientRowsError):
        train_knn(data, ModelParams.defaults("knn", k_neighbors=3))


def test_vote_fraction_definition_46_neighbors():
    # 46 rows total, 30 of class 1: with k=46 every query sees all rows.
    X = [[float(i)] for i in range(46)]
    y = [1] * 30 + [0] * 16
    model = train_knn(_ds(X, y), ModelParams.defaults("knn", k_neighbors=46))
    assert predict(model, [20.0]) == (1, 30 / 46)


def test_vote_tie_broken_by_nearest_neighbor():
    # k=2 forces a 1-1 vote split; the closer row decides the class.
    data = _ds([0.0, 1.0], [0, 1])
    model = train_knn(data, ModelParams.defaults("knn", k_neighbors=2))
    cls0, score0 = predict(model, [0.1])
    cls1, score1 = predict(model, [0.9])
    assert (cls0, score0) == (0, 0.5)
    assert (cls1, score1) == (1, 0.5)


def test_distance_tie_broken_by_lower_row_index():
    # Rows symmetric around the mean sit at exactly equal distance from a
    # query at the mean; the earlier row wins the k=1 neighborhood.
    data = _ds([[1.0], [-1.0]], [1, 0])
    model = train_knn(data, ModelParams.defaults("knn", k_neighbors=1))
    assert predict(model, [0.0]) == (1, 1.0)
