"""Identify the potential rejection reasons once an edit is predicted rejected.

Most reason families are read straight off the feature vector. Undesired
text/code addition/removal cannot be (added and removed content looks like
any other content), so four single-feature random forests are trained on how
much of the channel the diff touches; without trained sub-models a
configurable ratio threshold stands in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import FeatureVector, OtherSubtag, Reason, RejectionReason, sort_reasons
from .ml.data import Dataset, ModelParams
from .ml.model import TrainedModel, train_random_forest
from .ml.smote import smote
from .postparse import extract_diff_spans, normalize_text, parse_post

REPUTATION_THRESHOLD = 2000

# Sub-model slots, in persisted order.
SUBTASKS = ("added_text", "removed_text", "added_code", "removed_code")


@dataclass(frozen=True)
class LengthFeatures:
    """How much of each channel the edit adds or removes, as character-count
    ratios of the channel's total size across the revision."""

    added_text_ratio: float = 0.0
    removed_text_ratio: float = 0.0
    added_code_ratio: float = 0.0
    removed_code_ratio: float = 0.0

    def __post_init__(self) -> None:
        for name in SUBTASKS:
            v = getattr(self, f"{name}_ratio")
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}_ratio must lie in [0, 1], got {v}")

    def ratio(self, subtask: str) -> float:
        return getattr(self, f"{subtask}_ratio")

    def to_dict(self) -> dict:
        return {f"{name}_ratio": self.ratio(name) for name in SUBTASKS}

    @classmethod
    def from_dict(cls, d: dict) -> "LengthFeatures":
        return cls(**{k: float(v) for k, v in d.items()})


def _ratio(span_chars: int, total_chars: int) -> float:
    return min(1.0, span_chars / max(total_chars, 1))


def length_features_from_revision(revision_html: str) -> LengthFeatures:
    """Length features from a rendered revision-diff fragment."""
    added_text, removed_text, added_code, removed_code = extract_diff_spans(
        revision_html
    )
    parsed = parse_post(revision_html)
    total_text = len(parsed.text_plain)
    total_code = len(parsed.code_plain)
    return LengthFeatures(
        added_text_ratio=_ratio(len(added_text), total_text),
        removed_text_ratio=_ratio(len(removed_text), total_text),
        added_code_ratio=_ratio(len(added_code), total_code),
        removed_code_ratio=_ratio(len(removed_code), total_code),
    )


def _diff_counts(before: str, after: str) -> tuple[int, int]:
    """Characters added and removed between two strings (opcode-level)."""
    import difflib

    added = removed = 0
    matcher = difflib.SequenceMatcher(a=before, b=after, autojunk=False)
    for op, i1, i2, j1, j2 in matcher.get_opcodes():
        if op in ("replace", "delete"):
            removed += i2 - i1
        if op in ("replace", "insert"):
            added += j2 - j1
    return added, removed


def length_features_from_bodies(
    body_before_html: str, body_after_html: str
) -> LengthFeatures:
    """Length features computed directly from the before/after bodies, for
    callers that only have the two versions rather than a rendered diff."""
    before = parse_post(body_before_html)
    after = parse_post(body_after_html)
    tb = normalize_text(before.text_plain)
    ta = normalize_text(after.text_plain)
    cb = normalize_text(before.code_plain)
    ca = normalize_text(after.code_plain)
    added_t, removed_t = _diff_counts(tb, ta)
    added_c, removed_c = _diff_counts(cb, ca)
    total_t = len(tb) + len(ta)
    total_c = len(cb) + len(ca)
    return LengthFeatures(
        added_text_ratio=_ratio(added_t, total_t),
        removed_text_ratio=_ratio(removed_t, total_t),
        added_code_ratio=_ratio(added_c, total_c),
        removed_code_ratio=_ratio(removed_c, total_c),
    )


@dataclass
class ReasonModels:
    """Four random forests over the matching length ratio, one per sub-task.
    Slots may be None when a sub-task had no usable training data; those fall
    back to the ratio threshold."""

    added_text: Optional[TrainedModel] = None
    removed_text: Optional[TrainedModel] = None
    added_code: Optional[TrainedModel] = None
    removed_code: Optional[TrainedModel] = None
    fallback_threshold: float = 0.35

    def model(self, subtask: str) -> Optional[TrainedModel]:
        return getattr(self, subtask)

    def fires(self, subtask: str, lengths: LengthFeatures) -> bool:
        value = lengths.ratio(subtask)
        if value <= 0.0:
            return False  # channel untouched in that direction
        model = self.model(subtask)
        if model is None:
            return value >= self.fallback_threshold
        cls, _ = model.predict_row([value])
        return cls == 1

    def to_dict(self) -> dict:
        return {
            "fallback_threshold": self.fallback_threshold,
            "models": {
                name: (self.model(name).to_dict() if self.model(name) else None)
                for name in SUBTASKS
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReasonModels":
        kwargs = {
            name: (TrainedModel.from_dict(m) if m is not None else None)
            for name, m in d["models"].items()
        }
        return cls(fallback_threshold=float(d["fallback_threshold"]), **kwargs)


def train_reason_models(
    labeled: Sequence[tuple[LengthFeatures, dict[str, bool]]],
    params: Optional[ModelParams] = None,
    seed: int = 0,
    fallback_threshold: float = 0.35,
) -> ReasonModels:
    """Fit the four sub-classifiers on SMOTE-balanced single-feature data.

    ``labeled`` pairs each LengthFeatures with per-sub-task boolean labels
    (missing keys mean the row does not apply to that sub-task).
    """
    if not labeled:
        from .errors import EmptyDatasetError

        raise EmptyDatasetError("no labeled length-feature rows")
    if params is None:
        params = ModelParams.defaults("rf", seed=seed)
    models = ReasonModels(fallback_threshold=fallback_threshold)
    for subtask in SUBTASKS:
        rows = [
            (lf.ratio(subtask), 1 if labels[subtask] else 0)
            for lf, labels in labeled
            if subtask in labels
        ]
        if not rows:
            continue
        X = np.array([[v] for v, _ in rows])
        y = np.array([lab for _, lab in rows])
        n1 = int(y.sum())
        if n1 == 0 or n1 == len(y):
            continue  # single-class sub-task: leave the threshold fallback
        data = Dataset(X, y, (f"{subtask}_ratio",))
        minority = min(n1, len(y) - n1)
        if minority >= 2:
            data = smote(data, k=min(5, minority - 1), seed=seed)
        setattr(models, subtask, train_random_forest(data, params))
    return models


_FLAG_REASONS: tuple[tuple[str, Reason], ...] = (
    ("text_format", Reason(RejectionReason.UNDESIRED_TEXT_FORMATTING)),
    ("code_format", Reason(RejectionReason.UNDESIRED_CODE_FORMATTING)),
    ("complete_change", Reason(RejectionReason.OTHER, OtherSubtag.COMPLETE_CHANGE)),
    ("deface_post", Reason(RejectionReason.OTHER, OtherSubtag.DEFACE_POST)),
    ("status", Reason(RejectionReason.STATUS_UPDATE)),
    ("gratitude", Reason(RejectionReason.GRATITUDE_ADD_REMOVE)),
    ("greetings", Reason(RejectionReason.GREETINGS_ADD_REMOVE)),
    ("signature", Reason(RejectionReason.SIGNATURE_ADD_REMOVE)),
    ("deprecation_note", Reason(RejectionReason.DEPRECATION_NOTE_ADD_REMOVE)),
    ("duplication_note", Reason(RejectionReason.DUPLICATION_NOTE_ADD_REMOVE)),
    ("reference_modification", Reason(RejectionReason.UNDESIRED_REFERENCE_MODIFICATION)),
    ("inactive_hyperlink", Reason(RejectionReason.UNDESIRED_REFERENCE_MODIFICATION)),
)


def identify_rule_reasons(fv: FeatureVector) -> set[Reason]:
    """Reasons read directly from true feature flags."""
    return {reason for flag, reason in _FLAG_REASONS if getattr(fv, flag)}


def identify_reasons(
    fv: FeatureVector,
    lengths: Optional[LengthFeatures] = None,
    models: Optional[ReasonModels] = None,
    reputation_threshold: int = REPUTATION_THRESHOLD,
    fallback_threshold: float = 0.35,
) -> list[Reason]:
    """Full reason identification for an edit already predicted rejected.

    Rule reasons are unioned with the length-model verdicts; when nothing
    fires and the editor's reputation is below the threshold, the community
    trust reason is emitted alone. Output is canonically ordered.
    """
    found = identify_rule_reasons(fv)
    if lengths is not None:
        effective = models if models is not None else ReasonModels(
            fallback_threshold=fallback_threshold
        )
        if effective.fires("added_text", lengths) or effective.fires(
            "removed_text", lengths
        ):
            found.add(Reason(RejectionReason.UNDESIRED_TEXT_ADD_REMOVE))
        if effective.fires("added_code", lengths) or effective.fires(
            "removed_code", lengths
        ):
            found.add(Reason(RejectionReason.UNDESIRED_CODE_ADD_REMOVE))
    if not found and fv.reputation < reputation_threshold:
        return [Reason(RejectionReason.COMMUNITY_TRUST)]
    return sort_reasons(found)
