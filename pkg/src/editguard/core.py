"""Domain types shared by every other module.

All types here are immutable after construction and safe to share across
threads. Serialization helpers (``to_dict`` / ``from_dict``) round-trip every
type exactly; file formats built on top of them live in ``pipeline``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional


class RejectionReason(enum.Enum):
    """The 19-category taxonomy of why a suggested edit gets rolled back.

    Declaration order is the canonical order used for sorting reason lists
    in classifier output and reports.
    """

    UNDESIRED_TEXT_FORMATTING = "undesired_text_formatting"
    UNDESIRED_TEXT_ADD_REMOVE = "undesired_text_add_remove"
    UNDESIRED_TEXT_CHANGE = "undesired_text_change"
    INCORRECT_TEXT_CHANGE = "incorrect_text_change"
    UNDESIRED_CODE_FORMATTING = "undesired_code_formatting"
    UNDESIRED_CODE_ADD_REMOVE = "undesired_code_add_remove"
    UNDESIRED_CODE_CHANGE = "undesired_code_change"
    INCORRECT_CODE_CHANGE = "incorrect_code_change"
    STATUS_UPDATE = "status_update"
    EMOTION_ADD_REMOVE = "emotion_add_remove"
    GRATITUDE_ADD_REMOVE = "gratitude_add_remove"
    GREETINGS_ADD_REMOVE = "greetings_add_remove"
    UNDESIRED_REFERENCE_MODIFICATION = "undesired_reference_modification"
    SIGNATURE_ADD_REMOVE = "signature_add_remove"
    PARTIAL_ACCEPTANCE = "partial_acceptance"
    DEPRECATION_NOTE_ADD_REMOVE = "deprecation_note_add_remove"
    DUPLICATION_NOTE_ADD_REMOVE = "duplication_note_add_remove"
    COMMUNITY_TRUST = "community_trust"
    OTHER = "other"

    @property
    def order(self) -> int:
        return _REASON_ORDER[self]

    @property
    def machine_identifiable(self) -> bool:
        return self in MACHINE_IDENTIFIABLE_REASONS


_REASON_ORDER = {r: i for i, r in enumerate(RejectionReason)}

# Reasons the automatic reason classifier is allowed to emit. The remaining
# variants exist in the taxonomy (and may appear in labeled corpora) but are
# never produced automatically.
MACHINE_IDENTIFIABLE_REASONS = frozenset(
    {
        RejectionReason.UNDESIRED_TEXT_FORMATTING,
        RejectionReason.UNDESIRED_CODE_FORMATTING,
        RejectionReason.UNDESIRED_TEXT_ADD_REMOVE,
        RejectionReason.UNDESIRED_CODE_ADD_REMOVE,
        RejectionReason.STATUS_UPDATE,
        RejectionReason.GRATITUDE_ADD_REMOVE,
        RejectionReason.GREETINGS_ADD_REMOVE,
        RejectionReason.UNDESIRED_REFERENCE_MODIFICATION,
        RejectionReason.SIGNATURE_ADD_REMOVE,
        RejectionReason.DEPRECATION_NOTE_ADD_REMOVE,
        RejectionReason.DUPLICATION_NOTE_ADD_REMOVE,
        RejectionReason.COMMUNITY_TRUST,
        RejectionReason.OTHER,
    }
)


class OtherSubtag(enum.Enum):
    """Sub-categories folded under ``RejectionReason.OTHER``."""

    DEFACE_POST = "deface_post"
    COMPLETE_CHANGE = "complete_change"
    SPAM = "spam"


_SUBTAG_ORDER = {s: i for i, s in enumerate(OtherSubtag)}


@dataclass(frozen=True, order=False)
class Reason:
    """A taxonomy tag, optionally refined by an ``OTHER`` sub-tag."""

    tag: RejectionReason
    subtag: Optional[OtherSubtag] = None

    def __post_init__(self) -> None:
        if self.subtag is not None and self.tag is not RejectionReason.OTHER:
            raise ValueError("subtag is only valid with RejectionReason.OTHER")

    @property
    def sort_key(self) -> tuple[int, int]:
        sub = -1 if self.subtag is None else _SUBTAG_ORDER[self.subtag]
        return (self.tag.order, sub)

    @property
    def wire_tag(self) -> str:
        if self.subtag is not None:
            return f"{self.tag.value}_{self.subtag.value}"
        return self.tag.value

    @classmethod
    def from_wire_tag(cls, tag: str) -> "Reason":
        try:
            return cls(RejectionReason(tag))
        except ValueError:
            pass
        if tag.startswith("other_"):
            return cls(RejectionReason.OTHER, OtherSubtag(tag[len("other_"):]))
        raise ValueError(f"unknown reason tag: {tag!r}")


def sort_reasons(reasons) -> list[Reason]:
    """Deduplicate and order reasons canonically (taxonomy order)."""
    return sorted(set(reasons), key=lambda r: r.sort_key)


class Label(enum.Enum):
    ACCEPTED = 0
    REJECTED = 1


def parse_timestamp(value: str) -> datetime:
    """Parse an ISO-8601 instant to a UTC datetime at second precision."""
    raw = value.strip()
    if raw.endswith("Z"):
        raw = raw[:-1] + "+00:00"
    ts = datetime.fromisoformat(raw)
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc).replace(microsecond=0)


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class EditPair:
    """One suggested edit: the post body before and after, plus editor info."""

    id: str
    timestamp: datetime
    body_before_html: str
    body_after_html: str
    editor_name: str
    other_party_name: Optional[str] = None
    editor_reputation: int = 1

    def __post_init__(self) -> None:
        if self.body_before_html == "" and self.body_after_html == "":
            raise ValueError("body_before_html and body_after_html are both empty")
        if self.editor_reputation < 0:
            raise ValueError("editor_reputation must be non-negative")

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "timestamp": format_timestamp(self.timestamp),
            "body_before_html": self.body_before_html,
            "body_after_html": self.body_after_html,
            "editor_name": self.editor_name,
            "editor_reputation": self.editor_reputation,
        }
        if self.other_party_name is not None:
            d["other_party_name"] = self.other_party_name
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EditPair":
        return cls(
            id=str(d["id"]),
            timestamp=parse_timestamp(d["timestamp"]),
            body_before_html=d["body_before_html"],
            body_after_html=d["body_after_html"],
            editor_name=d["editor_name"],
            other_party_name=d.get("other_party_name"),
            editor_reputation=int(d["editor_reputation"]),
        )


@dataclass(frozen=True)
class ParsedBody:
    """A post body split into text and code channels.

    ``*_with_tags`` keep markup, ``*_plain`` are tag-stripped with entities
    decoded. ``hyperlinks`` preserves document order and duplicates. The
    ``diff_*`` fields are only populated when the input was a rendered
    revision-diff fragment.
    """

    text_with_tags: str = ""
    text_plain: str = ""
    code_with_tags: str = ""
    code_plain: str = ""
    hyperlinks: tuple[str, ...] = ()
    diff_added_text: str = ""
    diff_removed_text: str = ""
    diff_added_code: str = ""
    diff_removed_code: str = ""

    def to_dict(self) -> dict:
        return {
            "text_with_tags": self.text_with_tags,
            "text_plain": self.text_plain,
            "code_with_tags": self.code_with_tags,
            "code_plain": self.code_plain,
            "hyperlinks": list(self.hyperlinks),
            "diff_added_text": self.diff_added_text,
            "diff_removed_text": self.diff_removed_text,
            "diff_added_code": self.diff_added_code,
            "diff_removed_code": self.diff_removed_code,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ParsedBody":
        return cls(
            text_with_tags=d["text_with_tags"],
            text_plain=d["text_plain"],
            code_with_tags=d["code_with_tags"],
            code_plain=d["code_plain"],
            hyperlinks=tuple(d["hyperlinks"]),
            diff_added_text=d["diff_added_text"],
            diff_removed_text=d["diff_removed_text"],
            diff_added_code=d["diff_added_code"],
            diff_removed_code=d["diff_removed_code"],
        )


# Canonical field ordering for every matrix layout, persisted model and
# ranking table. Pinned by a golden test; do not reorder.
FEATURE_NAMES: tuple[str, ...] = (
    "text_format",
    "code_format",
    "text_modification",
    "code_modification",
    "deface_post",
    "complete_change",
    "status",
    "gratitude",
    "greetings",
    "reference_modification",
    "inactive_hyperlink",
    "signature",
    "deprecation_note",
    "duplication_note",
    "reputation",
)

_BOOL_FEATURES = frozenset(
    n for n in FEATURE_NAMES
    if n not in ("text_modification", "code_modification", "reputation")
)


@dataclass(frozen=True)
class FeatureVector:
    """The 15 predictor values computed for one suggested edit."""

    text_format: bool = False
    code_format: bool = False
    text_modification: float = 0.0
    code_modification: float = 0.0
    deface_post: bool = False
    complete_change: bool = False
    status: bool = False
    gratitude: bool = False
    greetings: bool = False
    reference_modification: bool = False
    inactive_hyperlink: bool = False
    signature: bool = False
    deprecation_note: bool = False
    duplication_note: bool = False
    reputation: int = 0

    def __post_init__(self) -> None:
        if self.text_modification < 0 or self.code_modification < 0:
            raise ValueError("modification scores must be non-negative")
        if self.reputation < 0:
            raise ValueError("reputation must be non-negative")

    def as_floats(self) -> list[float]:
        """Encode in canonical order; booleans become 0.0/1.0."""
        return [float(getattr(self, name)) for name in FEATURE_NAMES]

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in FEATURE_NAMES}

    @classmethod
    def from_dict(cls, d: dict) -> "FeatureVector":
        kwargs = {}
        for name in FEATURE_NAMES:
            v = d[name]
            if name in _BOOL_FEATURES:
                kwargs[name] = bool(v)
            elif name == "reputation":
                kwargs[name] = int(v)
            else:
                kwargs[name] = float(v)
        return cls(**kwargs)


@dataclass(frozen=True)
class LabeledExample:
    """A feature vector with its observed outcome, for training/evaluation."""

    features: FeatureVector
    label: Label
    reasons: frozenset[Reason] = frozenset()
    timestamp: datetime = datetime(1970, 1, 1, tzinfo=timezone.utc)

    def __post_init__(self) -> None:
        if self.label is Label.ACCEPTED and self.reasons:
            raise ValueError("accepted examples cannot carry rejection reasons")

    def to_dict(self) -> dict:
        return {
            "features": self.features.to_dict(),
            "label": "rejected" if self.label is Label.REJECTED else "accepted",
            "reasons": [r.wire_tag for r in sort_reasons(self.reasons)],
            "timestamp": format_timestamp(self.timestamp),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LabeledExample":
        return cls(
            features=FeatureVector.from_dict(d["features"]),
            label=Label.REJECTED if d["label"] == "rejected" else Label.ACCEPTED,
            reasons=frozenset(Reason.from_wire_tag(t) for t in d["reasons"]),
            timestamp=parse_timestamp(d["timestamp"]),
        )


@dataclass(frozen=True)
class EditDecision:
    """Verdict for one suggested edit: decision, confidence and reasons."""

    decision: Label
    score: float
    reasons: tuple[Reason, ...] = ()
    feature_vector: FeatureVector = field(default_factory=FeatureVector)

    def __post_init__(self) -> None:
        if not 0.0 <= self.score <= 1.0:
            raise ValueError("score must lie in [0, 1]")
        if self.decision is Label.ACCEPTED and self.reasons:
            raise ValueError("accepted decisions carry no reasons")

    def to_dict(self) -> dict:
        return {
            "decision": "rejected" if self.decision is Label.REJECTED else "accepted",
            "score": self.score,
            "reasons": [r.wire_tag for r in self.reasons],
            "features": self.feature_vector.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EditDecision":
        return cls(
            decision=Label.REJECTED if d["decision"] == "rejected" else Label.ACCEPTED,
            score=float(d["score"]),
            reasons=tuple(Reason.from_wire_tag(t) for t in d["reasons"]),
            feature_vector=FeatureVector.from_dict(d["features"]),
        )
