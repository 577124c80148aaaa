"""editguard: predict whether a suggested Q&A post edit will be rejected,
and identify the likely rejection reasons."""

from .core import (
    EditDecision,
    EditPair,
    FEATURE_NAMES,
    FeatureVector,
    Label,
    LabeledExample,
    ParsedBody,
    Reason,
    RejectionReason,
)
from .features import LinkCheckPolicy, extract_features
from .pipeline import (
    ModelBundle,
    decide_edit,
    load_model,
    run_experiment,
    save_model,
    train_bundle,
)

__version__ = "0.1.0"

__all__ = [
    "EditDecision",
    "EditPair",
    "FEATURE_NAMES",
    "FeatureVector",
    "Label",
    "LabeledExample",
    "LinkCheckPolicy",
    "ModelBundle",
    "ParsedBody",
    "Reason",
    "RejectionReason",
    "decide_edit",
    "extract_features",
    "load_model",
    "run_experiment",
    "save_model",
    "train_bundle",
    "__version__",
]
