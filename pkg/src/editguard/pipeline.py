"""Data ingestion, chronological splitting, model persistence, the online
decision path, and end-to-end experiment orchestration."""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .core import (
    EditDecision,
    EditPair,
    FEATURE_NAMES,
    FeatureVector,
    Label,
    Reason,
)
from .errors import (
    AllRowsInvalidError,
    CorruptModelError,
    EmptyDatasetError,
    SchemaVersionError,
    SplitError,
)
from .evaluation import (
    BaselineMode,
    ConfusionMatrix,
    EditCategory,
    Metrics,
    Quartiles,
    baseline_predict,
    confusion_from_predictions,
    edit_category,
    metrics,
    rank_by_information_gain,
    reason_confusion,
    shapley_importance,
)
from .features import (
    LinkCheckPolicy,
    ScoringTable,
    extract_features,
    levenshtein,
)
from .ml import Dataset, ModelParams, TrainedModel, train
from .postparse import normalize_text, parse_post
from .reasons import (
    LengthFeatures,
    ReasonModels,
    identify_reasons,
    length_features_from_bodies,
    train_reason_models,
)

SCHEMA_VERSION = 1

REQUIRED_FIELDS = (
    "id",
    "timestamp",
    "body_before_html",
    "body_after_html",
    "editor_name",
    "editor_reputation",
)


@dataclass(frozen=True)
class IngestRecord:
    pair: EditPair
    label: Optional[Label] = None
    reasons: frozenset[Reason] = frozenset()


@dataclass(frozen=True)
class RowError:
    row: int
    message: str


@dataclass
class IngestResult:
    records: list[IngestRecord]
    errors: list[RowError]


def _record_from_dict(d: dict) -> IngestRecord:
    missing = []
    for f in REQUIRED_FIELDS:
        if f not in d or d[f] is None:
            missing.append(f)
        elif d[f] == "" and not f.startswith("body_"):
            # Bodies may legitimately be empty strings, other fields may not.
            missing.append(f)
    if missing:
        raise ValueError(f"missing required field(s): {', '.join(missing)}")
    pair = EditPair.from_dict(d)
    label: Optional[Label] = None
    raw_label = d.get("label")
    if raw_label not in (None, ""):
        if raw_label not in ("rejected", "accepted"):
            raise ValueError(f"label must be 'rejected' or 'accepted', got {raw_label!r}")
        label = Label.REJECTED if raw_label == "rejected" else Label.ACCEPTED
    raw_reasons = d.get("reasons") or []
    if isinstance(raw_reasons, str):
        raw_reasons = [t for t in raw_reasons.split(";") if t]
    reasons = frozenset(Reason.from_wire_tag(t) for t in raw_reasons)
    if reasons and label is not Label.REJECTED:
        raise ValueError("reasons are only valid on rejected rows")
    return IngestRecord(pair, label, reasons)


def ingest(path: Union[str, Path], fmt: Optional[str] = None) -> IngestResult:
    """Read an edit corpus from a jsonl or csv file.

    Malformed rows are collected as row errors rather than aborting; the only
    fatal cases are a missing file and a file where every row is invalid.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(str(path))
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "jsonl"
    if fmt not in ("jsonl", "csv"):
        raise ValueError(f"unknown format {fmt!r}")

    records: list[IngestRecord] = []
    errors: list[RowError] = []

    def consume(row_no: int, d: dict) -> None:
        try:
            records.append(_record_from_dict(d))
        except (ValueError, KeyError, TypeError) as exc:
            errors.append(RowError(row_no, str(exc)))

    if fmt == "jsonl":
        with path.open(encoding="utf-8") as fh:
            for row_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    d = json.loads(line)
                except json.JSONDecodeError as exc:
                    errors.append(RowError(row_no, f"invalid json: {exc}"))
                    continue
                consume(row_no, d)
    else:
        with path.open(encoding="utf-8", newline="") as fh:
            for row_no, d in enumerate(csv.DictReader(fh), start=1):
                cleaned = {k: v for k, v in d.items() if v not in (None, "")}
                for body in ("body_before_html", "body_after_html"):
                    cleaned.setdefault(body, d.get(body) or "")
                consume(row_no, cleaned)

    if not records and errors:
        raise AllRowsInvalidError(
            f"all {len(errors)} row(s) failed to parse; first: {errors[0].message}"
        )
    return IngestResult(records, errors)


def _default_sort_key(item):
    pair = getattr(item, "pair", item)
    ident = getattr(pair, "id", "")
    return (pair.timestamp, ident)


def chronological_split(items: Sequence, train_fraction: float = 0.7, key=None):
    """Stable timestamp-ascending split (ties by id): the earliest
    ``floor(n * fraction)`` items train, the rest test."""
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must lie strictly between 0 and 1")
    if not items:
        raise SplitError("no rows to split")
    ordered = sorted(items, key=key or _default_sort_key)
    n_train = math.floor(len(ordered) * train_fraction)
    if n_train == 0:
        raise SplitError("split would leave the training set empty")
    if n_train == len(ordered):
        raise SplitError("split would leave the test set empty")
    return ordered[:n_train], ordered[n_train:]


# -- Model persistence ---------------------------------------------------------


@dataclass
class ModelBundle:
    """Everything the decision path needs: the edit predictor plus the
    optional reason sub-models, edit-category quartiles, and the reputation
    scoring table used for offline corpora."""

    predictor: TrainedModel
    quartiles: Optional[Quartiles] = None
    reason_models: Optional[ReasonModels] = None
    scoring_table: ScoringTable = field(default_factory=ScoringTable)

    def to_payload(self) -> dict:
        return {
            "predictor": self.predictor.to_dict(),
            "quartiles": self.quartiles.to_dict() if self.quartiles else None,
            "reason_models": self.reason_models.to_dict() if self.reason_models else None,
            "scoring_table": self.scoring_table.to_dict(),
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "ModelBundle":
        return cls(
            predictor=TrainedModel.from_dict(payload["predictor"]),
            quartiles=(
                Quartiles.from_dict(payload["quartiles"])
                if payload.get("quartiles")
                else None
            ),
            reason_models=(
                ReasonModels.from_dict(payload["reason_models"])
                if payload.get("reason_models")
                else None
            ),
            scoring_table=ScoringTable.from_dict(payload["scoring_table"]),
        )


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def save_model(bundle: Union[ModelBundle, TrainedModel], path: Union[str, Path]) -> Path:
    """Write a versioned, checksummed model document. Floats keep their exact
    shortest-round-trip decimal form, so loading reproduces predictions bit
    for bit on any platform."""
    if isinstance(bundle, TrainedModel):
        bundle = ModelBundle(predictor=bundle)
    payload = bundle.to_payload()
    doc = {
        "schema_version": SCHEMA_VERSION,
        "checksum": hashlib.sha256(_canonical_json(payload).encode("utf-8")).hexdigest(),
        "payload": payload,
    }
    path = Path(path)
    path.write_text(_canonical_json(doc), encoding="utf-8")
    return path


def load_model(path: Union[str, Path]) -> ModelBundle:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CorruptModelError(f"{path}: not a parseable model document ({exc})")
    if not isinstance(doc, dict) or "payload" not in doc or "checksum" not in doc:
        raise CorruptModelError(f"{path}: missing document envelope")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"{path}: model schema version {version}, this build reads version {SCHEMA_VERSION}"
        )
    digest = hashlib.sha256(_canonical_json(doc["payload"]).encode("utf-8")).hexdigest()
    if digest != doc["checksum"]:
        raise CorruptModelError(f"{path}: checksum mismatch, file is damaged")
    return ModelBundle.from_payload(doc["payload"])


# -- Online decision path --------------------------------------------------------


def decide_edit(
    pair: EditPair,
    bundle: ModelBundle,
    link_policy: LinkCheckPolicy = LinkCheckPolicy.disabled(),
    reputation_threshold: int = 2000,
    link_checker=None,
) -> EditDecision:
    """Classify one edit exactly as the trained pipeline would."""
    fv = extract_features(pair, link_policy, link_checker)
    row = [float(getattr(fv, name)) for name in bundle.predictor.feature_names]
    cls, score = bundle.predictor.predict_row(row)
    if cls == 1:
        lengths = length_features_from_bodies(
            pair.body_before_html, pair.body_after_html
        )
        reasons = tuple(
            identify_reasons(fv, lengths, bundle.reason_models, reputation_threshold)
        )
        return EditDecision(Label.REJECTED, float(score), reasons, fv)
    return EditDecision(Label.ACCEPTED, float(score), (), fv)


# -- Experiment orchestration ----------------------------------------------------


@dataclass(frozen=True)
class PreparedExample:
    pair: EditPair
    features: FeatureVector
    lengths: LengthFeatures
    norm_distance: float
    label: Label
    reasons: frozenset[Reason]

    @property
    def timestamp(self):
        return self.pair.timestamp

    @property
    def id(self):
        return self.pair.id


def _combined_plain(body_html: str) -> str:
    parsed = parse_post(body_html)
    text = normalize_text(parsed.text_plain)
    code = normalize_text(parsed.code_plain)
    if text and code:
        return text + " " + code
    return text or code


def _norm_distance(pair: EditPair) -> float:
    before = _combined_plain(pair.body_before_html)
    after = _combined_plain(pair.body_after_html)
    return levenshtein(before, after) / max(len(before), 1)


def prepare_examples(
    records: Sequence[IngestRecord],
    link_policy: LinkCheckPolicy = LinkCheckPolicy.disabled(),
) -> list[PreparedExample]:
    """Feature-extract labeled records, keeping input order."""
    prepared = []
    for rec in records:
        if rec.label is None:
            continue
        prepared.append(
            PreparedExample(
                pair=rec.pair,
                features=extract_features(rec.pair, link_policy),
                lengths=length_features_from_bodies(
                    rec.pair.body_before_html, rec.pair.body_after_html
                ),
                norm_distance=_norm_distance(rec.pair),
                label=rec.label,
                reasons=rec.reasons,
            )
        )
    return prepared


def _dataset_of(examples: Sequence[PreparedExample]) -> Dataset:
    X = np.array([ex.features.as_floats() for ex in examples], dtype=np.float64)
    if X.size == 0:
        X = X.reshape(0, len(FEATURE_NAMES))
    y = np.array([1 if ex.label is Label.REJECTED else 0 for ex in examples], dtype=np.int64)
    return Dataset(X, y, FEATURE_NAMES, [ex.pair.timestamp for ex in examples])


@dataclass
class ModelEvaluation:
    rejected: Metrics
    accepted: Metrics
    accuracy: float
    confusion: ConfusionMatrix
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "rejected": self.rejected.to_dict(),
            "accepted": self.accepted.to_dict(),
            "accuracy": self.accuracy,
            "confusion": self.confusion.to_dict(),
            "notes": self.notes,
        }


def evaluate_predictions(predicted: Sequence[int], actual: Sequence[int]) -> ModelEvaluation:
    cm = confusion_from_predictions(predicted, actual)
    rejected = metrics(cm)
    accepted = metrics(cm.swapped())
    return ModelEvaluation(rejected, accepted, rejected.accuracy, cm)


@dataclass
class EvaluationReport:
    """Structured output of one experiment run; rendering lives in ``report``."""

    seed: int
    dataset: dict
    quartiles: Quartiles
    category_distribution: dict
    models: dict[str, ModelEvaluation]
    baselines: dict[str, ModelEvaluation]
    reason_section: dict
    rankings: dict[str, list[tuple[str, float]]]
    ablation: list[dict]
    ingest_errors: int
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "dataset": self.dataset,
            "quartiles": self.quartiles.to_dict(),
            "category_distribution": self.category_distribution,
            "models": {k: v.to_dict() for k, v in self.models.items()},
            "baselines": {k: v.to_dict() for k, v in self.baselines.items()},
            "reasons": self.reason_section,
            "rankings": {
                k: [[name, score] for name, score in v] for k, v in self.rankings.items()
            },
            "ablation": self.ablation,
            "ingest_errors": self.ingest_errors,
            "notes": self.notes,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


def _reason_training_rows(
    train_examples: Sequence[PreparedExample],
) -> list[tuple[LengthFeatures, dict[str, bool]]]:
    """Sub-task training rows for the add/remove classifiers.

    A row without the add/remove reason contributes a negative to every
    sub-task its diff touches. A row carrying the reason contributes a
    positive only to the dominant direction of that channel: the label covers
    addition and removal jointly, so the channel's minor incidental diff side
    must not be treated as an undesired example.
    """
    from .core import RejectionReason

    rows = []
    text_reason = Reason(RejectionReason.UNDESIRED_TEXT_ADD_REMOVE)
    code_reason = Reason(RejectionReason.UNDESIRED_CODE_ADD_REMOVE)
    for ex in train_examples:
        lf = ex.lengths
        labels: dict[str, bool] = {}
        for reason, added_key, removed_key, added, removed in (
            (text_reason, "added_text", "removed_text",
             lf.added_text_ratio, lf.removed_text_ratio),
            (code_reason, "added_code", "removed_code",
             lf.added_code_ratio, lf.removed_code_ratio),
        ):
            if reason in ex.reasons:
                if added > 0 and added >= removed:
                    labels[added_key] = True
                if removed > 0 and removed >= added:
                    labels[removed_key] = True
            else:
                if added > 0:
                    labels[added_key] = False
                if removed > 0:
                    labels[removed_key] = False
        if labels:
            rows.append((ex.lengths, labels))
    return rows


def _subsample(data: Dataset, cap: int) -> Dataset:
    if len(data) <= cap:
        return data
    idx = np.linspace(0, len(data) - 1, cap).round().astype(int)
    ts = [data.timestamps[i] for i in idx] if data.timestamps else None
    return Dataset(data.X[idx], data.y[idx], data.feature_names, ts)


def run_experiment(
    data_path: Union[str, Path],
    seed: int = 0,
    link_policy: LinkCheckPolicy = LinkCheckPolicy.disabled(),
    train_fraction: float = 0.7,
    ranking_method: str = "shapley",
    fmt: Optional[str] = None,
    shap_permutations: int = 200,
    shap_max_instances: int = 16,
    shap_max_background: int = 32,
    ablation_min_features: int = 4,
) -> EvaluationReport:
    """Ingest, split chronologically, train all four classifiers plus both
    rule baselines, and assemble the full evaluation report. Fully
    reproducible for a fixed seed."""
    if ranking_method not in ("shapley", "infogain"):
        raise ValueError("ranking_method must be 'shapley' or 'infogain'")
    result = ingest(data_path, fmt)
    prepared = prepare_examples(result.records, link_policy)
    if not prepared:
        raise EmptyDatasetError("no labeled rows in input")

    train_ex, test_ex = chronological_split(prepared, train_fraction)
    train_ds = _dataset_of(train_ex)
    test_ds = _dataset_of(test_ex)
    actual = test_ds.y.tolist()
    notes: list[str] = []

    models: dict[str, ModelEvaluation] = {}
    trained: dict[str, TrainedModel] = {}
    for algo in ("cart", "rf", "knn", "gbt"):
        params = ModelParams.defaults(algo, seed=seed)
        if algo == "knn" and params.k_neighbors > len(train_ds):
            params = replace(params, k_neighbors=len(train_ds))
            notes.append(f"knn: k reduced to {params.k_neighbors} (training rows)")
        model = train(train_ds, params)
        trained[algo] = model
        predicted = [model.predict_row(row.tolist())[0] for row in test_ds.X]
        ev = evaluate_predictions(predicted, actual)
        if model.metadata.get("degenerate_single_class"):
            ev.notes.append("degenerate: single-class training data")
        models[algo] = ev

    quartiles = Quartiles.of([ex.norm_distance for ex in train_ex])
    categories_test = [edit_category(ex.norm_distance, quartiles) for ex in test_ex]
    baselines = {
        mode.value: evaluate_predictions(
            [baseline_predict(c, mode) for c in categories_test], actual
        )
        for mode in BaselineMode
    }

    distribution: dict[str, dict[str, int]] = {
        c.value: {"rejected": 0, "accepted": 0} for c in EditCategory
    }
    for ex in prepared:
        cat = edit_category(ex.norm_distance, quartiles)
        key = "rejected" if ex.label is Label.REJECTED else "accepted"
        distribution[cat.value][key] += 1

    has_reason_labels = any(ex.reasons for ex in prepared)
    reason_models: Optional[ReasonModels] = None
    if has_reason_labels:
        rows = _reason_training_rows(train_ex)
        if rows:
            reason_models = train_reason_models(rows, seed=seed)
        rf = trained["rf"]
        identified = []
        expected = []
        for ex in test_ex:
            cls, _ = rf.predict_row(ex.features.as_floats())
            if cls == 1:
                found = identify_reasons(ex.features, ex.lengths, reason_models)
            else:
                found = []
            identified.append(frozenset(found))
            expected.append(ex.reasons)
        cm = reason_confusion(identified, expected)
        reason_section = {
            "confusion": cm.to_dict(),
            "metrics": metrics(cm).to_dict(),
            "skipped": None,
        }
    else:
        reason_section = {"skipped": "no reason labels"}

    info_ranking = rank_by_information_gain(train_ds)
    shap = shapley_importance(
        trained["rf"],
        _subsample(train_ds, shap_max_background),
        _subsample(test_ds, shap_max_instances),
        n_permutations=shap_permutations,
        seed=seed,
    )
    rankings = {"infogain": info_ranking, "shapley": shap.ranked_features()}

    ablation_ranking = rankings[ranking_method]
    ordered_features = [name for name, _ in ablation_ranking]
    ablation: list[dict] = []
    for keep in range(len(ordered_features), max(ablation_min_features, 1) - 1, -1):
        kept = [n for n in FEATURE_NAMES if n in set(ordered_features[:keep])]
        if keep == len(ordered_features):
            ev = models["rf"]
        else:
            sub_params = ModelParams.defaults("rf", seed=seed)
            sub_model = train(train_ds.select_features(kept), sub_params)
            sub_test = test_ds.select_features(kept)
            predicted = [sub_model.predict_row(row.tolist())[0] for row in sub_test.X]
            ev = evaluate_predictions(predicted, actual)
        ablation.append(
            {
                "kept_features": keep,
                "dropped": ordered_features[keep:],
                "rejected": ev.rejected.to_dict(),
                "accepted": ev.accepted.to_dict(),
                "accuracy": ev.accuracy,
            }
        )

    n1 = sum(1 for ex in prepared if ex.label is Label.REJECTED)
    n0 = len(prepared) - n1
    report = EvaluationReport(
        seed=seed,
        dataset={
            "rows": len(prepared),
            "train_rows": len(train_ex),
            "test_rows": len(test_ex),
            "accepted": n0,
            "rejected": n1,
            "reason_labeled_rows": sum(1 for ex in prepared if ex.reasons),
        },
        quartiles=quartiles,
        category_distribution=distribution,
        models=models,
        baselines=baselines,
        reason_section=reason_section,
        rankings=rankings,
        ablation=ablation,
        ingest_errors=len(result.errors),
        notes=notes,
    )
    return report


def train_bundle(
    data_path: Union[str, Path],
    algo: str = "rf",
    seed: int = 0,
    link_policy: LinkCheckPolicy = LinkCheckPolicy.disabled(),
    train_fraction: float = 0.7,
    fmt: Optional[str] = None,
) -> tuple[ModelBundle, ModelEvaluation]:
    """Train one algorithm on the chronological training split and return the
    deployable bundle plus its held-out evaluation."""
    result = ingest(data_path, fmt)
    prepared = prepare_examples(result.records, link_policy)
    if not prepared:
        raise EmptyDatasetError("no labeled rows in input")
    train_ex, test_ex = chronological_split(prepared, train_fraction)
    train_ds = _dataset_of(train_ex)
    params = ModelParams.defaults(algo, seed=seed)
    if algo == "knn" and params.k_neighbors > len(train_ds):
        params = replace(params, k_neighbors=len(train_ds))
    model = train(train_ds, params)
    predicted = [model.predict_row(row.tolist())[0] for row in _dataset_of(test_ex).X]
    evaluation = evaluate_predictions(
        predicted, [1 if ex.label is Label.REJECTED else 0 for ex in test_ex]
    )

    reason_models = None
    if any(ex.reasons for ex in train_ex):
        rows = _reason_training_rows(train_ex)
        if rows:
            reason_models = train_reason_models(rows, seed=seed)
    bundle = ModelBundle(
        predictor=model,
        quartiles=Quartiles.of([ex.norm_distance for ex in train_ex]),
        reason_models=reason_models,
    )
    return bundle, evaluation


def evaluate_bundle(
    data_path: Union[str, Path],
    bundle: ModelBundle,
    seed: int = 0,
    link_policy: LinkCheckPolicy = LinkCheckPolicy.disabled(),
    train_fraction: float = 0.7,
    fmt: Optional[str] = None,
    shap_permutations: int = 200,
    shap_max_instances: int = 16,
    shap_max_background: int = 32,
) -> EvaluationReport:
    """Evaluate an already-trained bundle on the chronological test split of
    a labeled corpus. Produces the same report shape as ``run_experiment``
    but with a single model entry and no ablation (the bundle is fixed)."""
    result = ingest(data_path, fmt)
    prepared = prepare_examples(result.records, link_policy)
    if not prepared:
        raise EmptyDatasetError("no labeled rows in input")
    train_ex, test_ex = chronological_split(prepared, train_fraction)
    train_ds = _dataset_of(train_ex)
    test_ds = _dataset_of(test_ex)
    actual = test_ds.y.tolist()

    names = bundle.predictor.feature_names

    def encode(ex: PreparedExample) -> list[float]:
        return [float(getattr(ex.features, n)) for n in names]

    predicted = [bundle.predictor.predict_row(encode(ex))[0] for ex in test_ex]
    algo = bundle.predictor.algo
    models = {algo: evaluate_predictions(predicted, actual)}

    quartiles = bundle.quartiles or Quartiles.of([ex.norm_distance for ex in train_ex])
    categories_test = [edit_category(ex.norm_distance, quartiles) for ex in test_ex]
    baselines = {
        mode.value: evaluate_predictions(
            [baseline_predict(c, mode) for c in categories_test], actual
        )
        for mode in BaselineMode
    }
    distribution: dict[str, dict[str, int]] = {
        c.value: {"rejected": 0, "accepted": 0} for c in EditCategory
    }
    for ex in prepared:
        cat = edit_category(ex.norm_distance, quartiles)
        distribution[cat.value]["rejected" if ex.label is Label.REJECTED else "accepted"] += 1

    if any(ex.reasons for ex in prepared):
        identified = []
        expected = []
        for ex, cls in zip(test_ex, predicted):
            found = (
                identify_reasons(ex.features, ex.lengths, bundle.reason_models)
                if cls == 1
                else []
            )
            identified.append(frozenset(found))
            expected.append(ex.reasons)
        cm = reason_confusion(identified, expected)
        reason_section = {
            "confusion": cm.to_dict(),
            "metrics": metrics(cm).to_dict(),
            "skipped": None,
        }
    else:
        reason_section = {"skipped": "no reason labels"}

    shap = shapley_importance(
        bundle.predictor,
        _subsample(train_ds.select_features(names), shap_max_background),
        _subsample(test_ds.select_features(names), shap_max_instances),
        n_permutations=shap_permutations,
        seed=seed,
    )
    rankings = {
        "infogain": rank_by_information_gain(train_ds),
        "shapley": shap.ranked_features(),
    }
    n1 = sum(1 for ex in prepared if ex.label is Label.REJECTED)
    return EvaluationReport(
        seed=seed,
        dataset={
            "rows": len(prepared),
            "train_rows": len(train_ex),
            "test_rows": len(test_ex),
            "accepted": len(prepared) - n1,
            "rejected": n1,
            "reason_labeled_rows": sum(1 for ex in prepared if ex.reasons),
        },
        quartiles=quartiles,
        category_distribution=distribution,
        models=models,
        baselines=baselines,
        reason_section=reason_section,
        rankings=rankings,
        ablation=[],
        ingest_errors=len(result.errors),
    )
