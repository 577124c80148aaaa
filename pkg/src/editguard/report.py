"""Render an EvaluationReport as text tables, delimited files and figures.

``write_outputs`` materializes the full report bundle in a directory:
``report.json`` plus one CSV per table and one PNG per chart.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .pipeline import EvaluationReport, ModelEvaluation

_MODEL_LABELS = {
    "cart": "Decision tree",
    "rf": "Random forest",
    "knn": "K-nearest neighbors",
    "gbt": "Gradient boosting",
    "reject_trivial": "Baseline: reject trivial",
    "reject_non_trivial": "Baseline: reject non-trivial",
}


def _label(key: str) -> str:
    return _MODEL_LABELS.get(key, key)


def _pct(x: float) -> str:
    return f"{100 * x:5.1f}%"


def _metrics_row(name: str, ev: ModelEvaluation) -> str:
    r, a = ev.rejected, ev.accepted
    return (
        f"{name:<28} {_pct(r.precision)} {_pct(r.recall)} {_pct(r.f1)} | "
        f"{_pct(a.precision)} {_pct(a.recall)} {_pct(a.f1)} | {_pct(ev.accuracy)}"
    )


def render_text(report: EvaluationReport) -> str:
    lines: list[str] = []
    ds = report.dataset
    lines.append("== Dataset ==")
    lines.append(
        f"rows={ds['rows']} (train={ds['train_rows']}, test={ds['test_rows']}) "
        f"rejected={ds['rejected']} accepted={ds['accepted']} "
        f"reason-labeled={ds['reason_labeled_rows']} ingest-errors={report.ingest_errors}"
    )
    q = report.quartiles
    lines.append(f"edit-distance quartiles: q1={q.q1:.4f} q2={q.q2:.4f} q3={q.q3:.4f}")
    lines.append("")
    lines.append("== Edit categories ==")
    for cat, counts in report.category_distribution.items():
        lines.append(
            f"{cat:<8} rejected={counts['rejected']:<4} accepted={counts['accepted']}"
        )
    lines.append("")
    lines.append("== Classifier performance ==")
    header = (
        f"{'model':<28} {'prec':>6} {'rec':>6} {'f1':>6} | "
        f"{'prec':>6} {'rec':>6} {'f1':>6} | {'acc':>6}"
    )
    lines.append(f"{'':<28} {'rejected':^20} | {'accepted':^20} |")
    lines.append(header)
    for key, ev in report.models.items():
        lines.append(_metrics_row(_label(key), ev))
        for note in ev.notes:
            lines.append(f"    note: {note}")
    for key, ev in report.baselines.items():
        lines.append(_metrics_row(_label(key), ev))
    lines.append("")
    lines.append("== Reason identification ==")
    if report.reason_section.get("skipped"):
        lines.append(f"skipped: {report.reason_section['skipped']}")
    else:
        cm = report.reason_section["confusion"]
        m = report.reason_section["metrics"]
        lines.append(
            f"TP={cm['tp']} FP={cm['fp']} TN={cm['tn']} FN={cm['fn']}  "
            f"precision={_pct(m['precision'])} recall={_pct(m['recall'])} "
            f"f1={_pct(m['f1'])} accuracy={_pct(m['accuracy'])}"
        )
    lines.append("")
    for method, ranking in report.rankings.items():
        lines.append(f"== Feature ranking ({method}) ==")
        for name, score in ranking:
            lines.append(f"{name:<26} {score:.6f}")
        lines.append("")
    if report.ablation:
        lines.append("== Feature ablation (drop lowest-ranked first) ==")
        lines.append(
            f"{'kept':>4}  {'rej prec':>8} {'rej rec':>8} {'rej f1':>8} {'accuracy':>8}"
        )
        for row in report.ablation:
            r = row["rejected"]
            lines.append(
                f"{row['kept_features']:>4}  {_pct(r['precision']):>8} "
                f"{_pct(r['recall']):>8} {_pct(r['f1']):>8} {_pct(row['accuracy']):>8}"
            )
        lines.append("")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def _write_metrics_csv(report: EvaluationReport, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["model", "class", "precision", "recall", "f1", "accuracy",
             "tp", "fp", "tn", "fn"]
        )
        for group in (report.models, report.baselines):
            for key, ev in group.items():
                cm = ev.confusion
                w.writerow(
                    [key, "rejected", ev.rejected.precision, ev.rejected.recall,
                     ev.rejected.f1, ev.accuracy, cm.tp, cm.fp, cm.tn, cm.fn]
                )
                w.writerow(
                    [key, "accepted", ev.accepted.precision, ev.accepted.recall,
                     ev.accepted.f1, ev.accuracy, cm.tp, cm.fp, cm.tn, cm.fn]
                )


def _write_rankings_csv(report: EvaluationReport, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["method", "rank", "feature", "score"])
        for method, ranking in report.rankings.items():
            for rank, (name, score) in enumerate(ranking, start=1):
                w.writerow([method, rank, name, score])


def _write_ablation_csv(report: EvaluationReport, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["kept_features", "dropped", "rejected_precision", "rejected_recall",
             "rejected_f1", "accepted_precision", "accepted_recall", "accepted_f1",
             "accuracy"]
        )
        for row in report.ablation:
            w.writerow(
                [row["kept_features"], ";".join(row["dropped"]),
                 row["rejected"]["precision"], row["rejected"]["recall"],
                 row["rejected"]["f1"], row["accepted"]["precision"],
                 row["accepted"]["recall"], row["accepted"]["f1"], row["accuracy"]]
            )


def _figure_model_metrics(report: EvaluationReport, path: Path) -> None:
    keys = list(report.models) + list(report.baselines)
    evs = list(report.models.values()) + list(report.baselines.values())
    metrics_names = ["precision", "recall", "f1", "accuracy"]
    fig, ax = plt.subplots(figsize=(9, 4.5))
    width = 0.8 / max(len(keys), 1)
    for i, (key, ev) in enumerate(zip(keys, evs)):
        values = [ev.rejected.precision, ev.rejected.recall, ev.rejected.f1, ev.accuracy]
        xs = [j + i * width for j in range(len(metrics_names))]
        ax.bar(xs, values, width=width, label=_label(key))
    ax.set_xticks([j + 0.4 - width / 2 for j in range(len(metrics_names))])
    ax.set_xticklabels(metrics_names)
    ax.set_ylim(0, 1)
    ax.set_ylabel("score (rejected class)")
    ax.set_title("Classifier performance on held-out test split")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _figure_ranking(ranking, title: str, ylabel: str, path: Path) -> None:
    names = [name for name, _ in ranking]
    scores = [score for _, score in ranking]
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.bar(range(len(names)), scores, color="#444444")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=90, fontsize=8)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _figure_ablation(report: EvaluationReport, path: Path) -> None:
    kept = [row["kept_features"] for row in report.ablation]
    acc = [row["accuracy"] for row in report.ablation]
    f1 = [row["rejected"]["f1"] for row in report.ablation]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(kept, acc, marker="o", label="accuracy")
    ax.plot(kept, f1, marker="s", label="rejected F1")
    ax.invert_xaxis()
    ax.set_xlabel("features kept (dropping lowest-ranked)")
    ax.set_ylabel("score")
    ax.set_ylim(0, 1)
    ax.set_title("Effect of dropping low-ranked features")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_outputs(report: EvaluationReport, out_dir: Union[str, Path]) -> list[Path]:
    """Write report.json, the CSV tables and the charts; returns the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    json_path = out / "report.json"
    json_path.write_text(report.to_json(), encoding="utf-8")
    written.append(json_path)

    text_path = out / "report.txt"
    text_path.write_text(render_text(report), encoding="utf-8")
    written.append(text_path)

    for name, writer in (
        ("metrics.csv", _write_metrics_csv),
        ("rankings.csv", _write_rankings_csv),
    ):
        p = out / name
        writer(report, p)
        written.append(p)
    if report.ablation:
        p = out / "ablation.csv"
        _write_ablation_csv(report, p)
        written.append(p)

    p = out / "model_metrics.png"
    _figure_model_metrics(report, p)
    written.append(p)
    for method, ranking in report.rankings.items():
        p = out / f"ranking_{method}.png"
        ylabel = "information gain (bits)" if method == "infogain" else "mean |attribution|"
        _figure_ranking(ranking, f"Feature ranking ({method})", ylabel, p)
        written.append(p)
    if report.ablation:
        p = out / "ablation.png"
        _figure_ablation(report, p)
        written.append(p)
    return written
