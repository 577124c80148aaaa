"""From-scratch classifier suite: CART, random forest, k-nearest neighbors,
gradient-boosted trees, and SMOTE oversampling."""

from .data import ALGORITHMS, Dataset, ModelParams, seed_stream
from .model import (
    TrainedModel,
    predict,
    train,
    train_cart,
    train_gradboost,
    train_knn,
    train_random_forest,
)
from .smote import smote

__all__ = [
    "ALGORITHMS",
    "Dataset",
    "ModelParams",
    "TrainedModel",
    "predict",
    "seed_stream",
    "smote",
    "train",
    "train_cart",
    "train_gradboost",
    "train_knn",
    "train_random_forest",
]
