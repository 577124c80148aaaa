import json

import numpy as np
import pytest

from editguard.errors import EmptyDatasetError
from editguard.ml import Dataset, ModelParams, TrainedModel, predict, train_random_forest
from editguard.ml.tree import depth

from conftest import accuracy, make_separable


def test_separable_data_high_accuracy():
    train, test = make_separable(seed=7)
    model = train_random_forest(train, ModelParams.defaults("rf", seed=1))
    assert accuracy(model, test) >= 0.95


def test_shuffled_labels_near_chance():
    train, test = make_separable(seed=7, shuffle_labels=True)
    model = train_random_forest(train, ModelParams.defaults("rf", seed=1))
    assert abs(accuracy(model, test) - 0.50) <= 0.07


def test_same_seed_identical_models_and_predictions():
    train, test = make_separable(n=120, seed=3)
    params = ModelParams.defaults("rf", seed=42)
    m1 = train_random_forest(train, params)
    m2 = train_random_forest(train, params)
    assert json.dumps(m1.to_dict(), sort_keys=True) == json.dumps(m2.to_dict(), sort_keys=True)
    for row in test.X:
        assert m1.predict_row(row.tolist()) == m2.predict_row(row.tolist())


def test_different_seed_changes_model():
    train, _ = make_separable(n=120, seed=3)
    m1 = train_random_forest(train, ModelParams.defaults("rf", seed=1))
    m2 = train_random_forest(train, ModelParams.defaults("rf", seed=2))
    assert json.dumps(m1.to_dict()) != json.dumps(m2.to_dict())


def test_every_tree_respects_max_depth():
    train, _ = make_separable(n=150, seed=9)
    model = train_random_forest(train, ModelParams.defaults("rf", seed=0))
    assert len(model.payload["trees"]) == 100
    assert all(depth(t) <= 5 for t in model.payload["trees"])


def test_score_is_vote_fraction():
    # Hand-assembled forest: 73 of 100 constant trees vote class 1.
    trees = [{"counts": [0, 1]}] * 73 + [{"counts": [1, 0]}] * 27
    model = TrainedModel.from_dict(
        {
            "algo": "rf",
            "params": ModelParams.defaults("rf").to_dict(),
            "feature_names": ["f0"],
            "payload": {"trees": trees},
            "metadata": {},
        }
    )
    assert predict(model, [0.0]) == (1, 0.73)


def test_empty_dataset_raises():
    data = Dataset(np.zeros((0, 3)), np.zeros(0, dtype=int), ("a", "b", "c"))
    with pytest.raises(EmptyDatasetError):
        train_random_forest(data, ModelParams.defaults("rf"))


def test_single_class_flagged():
    data = Dataset(np.ones((5, 2)), np.ones(5, dtype=int), ("a", "b"))
    model = train_random_forest(data, ModelParams.defaults("rf", n_trees=5))
    assert model.metadata["degenerate_single_class"] is True
    assert predict(model, [0.0, 0.0]) == (1, 1.0)
