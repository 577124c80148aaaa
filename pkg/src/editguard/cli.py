"""Command-line entry point.

Exit codes: 0 success (or "accepted" for predict), 2 usage errors, 3 the
predict verdict was "rejected" (usable as a pre-submit hook), 4 data errors,
5 model errors, 6 I/O errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from .core import EditPair, FEATURE_NAMES, Label, parse_timestamp
from .errors import (
    AllRowsInvalidError,
    CorruptModelError,
    EditGuardError,
    EmptyDatasetError,
    InsufficientRowsError,
    SchemaMismatchError,
    SchemaVersionError,
    SplitError,
)
from .features import LinkCheckPolicy, extract_features

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REJECTED = 3
EXIT_DATA = 4
EXIT_MODEL = 5
EXIT_IO = 6

_DATA_ERRORS = (AllRowsInvalidError, EmptyDatasetError, InsufficientRowsError, SplitError)
_MODEL_ERRORS = (CorruptModelError, SchemaMismatchError, SchemaVersionError)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _fail(code: int, message: str) -> CliError:
    return CliError(code, message)


def _read_text(path: str, what: str) -> str:
    p = Path(path)
    if not p.exists():
        raise _fail(EXIT_IO, f"{what} file not found: {path}")
    try:
        return p.read_text(encoding="utf-8")
    except OSError as exc:
        raise _fail(EXIT_IO, f"cannot read {what} file {path}: {exc}")


def _load_bundle(path: str):
    from .pipeline import load_model

    p = Path(path)
    if not p.exists():
        raise _fail(EXIT_MODEL, f"model file not found: {path}")
    try:
        return load_model(p)
    except _MODEL_ERRORS as exc:
        raise _fail(EXIT_MODEL, str(exc))


def _pair_from_args(args) -> EditPair:
    before = _read_text(args.before, "before")
    after = _read_text(args.after, "after")
    try:
        return EditPair(
            id="cli",
            timestamp=parse_timestamp("1970-01-01T00:00:00Z"),
            body_before_html=before,
            body_after_html=after,
            editor_name=args.user_name,
            other_party_name=getattr(args, "other_party_name", None),
            editor_reputation=args.reputation,
        )
    except ValueError as exc:
        raise _fail(EXIT_DATA, str(exc))


def _link_policy(args) -> LinkCheckPolicy:
    if getattr(args, "enable_link_checks", False):
        return LinkCheckPolicy.network()
    return LinkCheckPolicy.disabled()


def _cmd_train(args) -> int:
    from .pipeline import save_model, train_bundle

    bundle, evaluation = train_bundle(
        args.data,
        algo=args.algo,
        seed=args.seed,
        link_policy=_link_policy(args),
        train_fraction=args.train_fraction,
        fmt=args.format,
    )
    save_model(bundle, args.out)
    if args.json:
        print(json.dumps({"model": args.out, "held_out": evaluation.to_dict()}, indent=2))
    else:
        r = evaluation.rejected
        print(f"model written to {args.out}")
        print(
            f"held-out ({args.algo}): precision={r.precision:.3f} recall={r.recall:.3f} "
            f"f1={r.f1:.3f} accuracy={evaluation.accuracy:.3f}"
        )
        for note in evaluation.notes:
            print(f"note: {note}")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    from . import report as report_mod
    from .pipeline import evaluate_bundle, run_experiment

    if args.model:
        bundle = _load_bundle(args.model)
        report = evaluate_bundle(
            args.data,
            bundle,
            seed=args.seed,
            link_policy=_link_policy(args),
            train_fraction=args.train_fraction,
            fmt=args.format,
        )
    else:
        report = run_experiment(
            args.data,
            seed=args.seed,
            link_policy=_link_policy(args),
            train_fraction=args.train_fraction,
            ranking_method=args.ranking,
            fmt=args.format,
        )
    if args.out_dir:
        written = report_mod.write_outputs(report, args.out_dir)
        print(f"wrote {len(written)} report files to {args.out_dir}", file=sys.stderr)
    if args.out:
        Path(args.out).write_text(report.to_json(), encoding="utf-8")
    print(report.to_json() if args.json else report_mod.render_text(report), end="")
    return EXIT_OK


def _cmd_predict(args) -> int:
    from .pipeline import decide_edit

    bundle = _load_bundle(args.model)
    pair = _pair_from_args(args)
    decision = decide_edit(pair, bundle, _link_policy(args))
    if args.json:
        print(json.dumps(decision.to_dict(), indent=2))
    else:
        verdict = "rejected" if decision.decision is Label.REJECTED else "accepted"
        print(f"decision: {verdict} (score {decision.score:.3f})")
        for r in decision.reasons:
            print(f"reason: {r.wire_tag}")
    return EXIT_REJECTED if decision.decision is Label.REJECTED else EXIT_OK


def _cmd_features(args) -> int:
    pair = _pair_from_args(args)
    fv = extract_features(pair, _link_policy(args))
    if args.json:
        print(json.dumps(fv.to_dict(), indent=2))
    else:
        for name in FEATURE_NAMES:
            print(f"{name:<24} {getattr(fv, name)}")
    return EXIT_OK


def _cmd_rank(args) -> int:
    from .evaluation import rank_by_information_gain, shapley_importance
    from .ml import ModelParams, train
    from .pipeline import (
        _dataset_of,
        _subsample,
        chronological_split,
        ingest,
        prepare_examples,
    )

    result = ingest(args.data, args.format)
    prepared = prepare_examples(result.records, _link_policy(args))
    if not prepared:
        raise EmptyDatasetError("no labeled rows in input")
    train_ex, test_ex = chronological_split(prepared, args.train_fraction)
    train_ds = _dataset_of(train_ex)

    if args.method == "infogain":
        ranking = rank_by_information_gain(train_ds)
    else:
        if args.model:
            model = _load_bundle(args.model).predictor
        else:
            model = train(train_ds, ModelParams.defaults("rf", seed=args.seed))
        shap = shapley_importance(
            model,
            _subsample(train_ds, 32),
            _subsample(_dataset_of(test_ex), 16),
            n_permutations=args.permutations,
            seed=args.seed,
        )
        ranking = shap.ranked_features()

    if args.json:
        print(json.dumps([[name, score] for name, score in ranking], indent=2))
    else:
        for rank_i, (name, score) in enumerate(ranking, start=1):
            print(f"{rank_i:>2}. {name:<26} {score:.6f}")
    return EXIT_OK


def _resolve(flag, env_name: str, config: dict, key: str, default, cast):
    if flag is not None:
        return flag
    env = os.environ.get(env_name)
    if env is not None:
        return cast(env)
    if key in config:
        return cast(config[key])
    return default


def _cmd_serve(args) -> int:
    from .service import serve

    config: dict = {}
    if args.config:
        config = json.loads(_read_text(args.config, "config"))

    def as_bool(v) -> bool:
        if isinstance(v, bool):
            return v
        return str(v).lower() in ("1", "true", "yes", "on")

    port = _resolve(args.port, "EDITGUARD_PORT", config, "port", 8080, int)
    host = _resolve(args.host, "EDITGUARD_HOST", config, "host", "127.0.0.1", str)
    model = _resolve(args.model, "EDITGUARD_MODEL", config, "model", None, str)
    link_checks = _resolve(
        True if args.enable_link_checks else None,
        "EDITGUARD_ENABLE_LINK_CHECKS", config, "enable_link_checks", False, as_bool,
    )
    cors = _resolve(args.cors_origin, "EDITGUARD_CORS_ORIGIN", config, "cors_origin", "*", str)
    messages = _resolve(args.messages, "EDITGUARD_MESSAGES", config, "messages", None, str)

    if model is not None and not Path(model).exists():
        raise _fail(EXIT_MODEL, f"model file not found: {model}")
    serve(
        model_path=model,
        port=port,
        host=host,
        enable_link_checks=link_checks,
        cors_origin=cors,
        messages_path=messages,
    )
    return EXIT_OK


def _add_edit_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--before", required=True, help="file with the HTML body before the edit")
    p.add_argument("--after", required=True, help="file with the HTML body after the edit")
    p.add_argument("--reputation", required=True, type=int, help="editor reputation score")
    p.add_argument("--user-name", required=True, help="name of the editing user")
    p.add_argument("--other-party-name", default=None,
                   help="post owner name, used by the signature detector")
    p.add_argument("--enable-link-checks", action="store_true",
                   help="probe hyperlinks over the network (off by default)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="editguard",
        description="Predict whether a suggested post edit will be rejected, and why.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train one classifier and write a model bundle")
    p.add_argument("--data", required=True, help="labeled corpus (jsonl or csv)")
    p.add_argument("--algo", default="rf", choices=["cart", "rf", "knn", "gbt"],
                   help="learning algorithm (default rf)")
    p.add_argument("--out", required=True, help="output model path")
    p.add_argument("--seed", type=int, default=0, help="training seed")
    p.add_argument("--train-fraction", type=float, default=0.7,
                   help="chronological training fraction (default 0.7)")
    p.add_argument("--format", choices=["jsonl", "csv"], default=None,
                   help="input format (default: by extension)")
    p.add_argument("--enable-link-checks", action="store_true",
                   help="probe hyperlinks during feature extraction")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("evaluate", help="run the evaluation harness on a labeled corpus")
    p.add_argument("--data", required=True, help="labeled corpus (jsonl or csv)")
    p.add_argument("--model", default=None,
                   help="evaluate this model bundle; omit to train and compare all four algorithms")
    p.add_argument("--seed", type=int, default=0, help="seed for training and rankings")
    p.add_argument("--train-fraction", type=float, default=0.7)
    p.add_argument("--ranking", choices=["shapley", "infogain"], default="shapley",
                   help="ranking used for the ablation table (default shapley)")
    p.add_argument("--format", choices=["jsonl", "csv"], default=None)
    p.add_argument("--out", default=None, help="also write the JSON report to this file")
    p.add_argument("--out-dir", default=None,
                   help="write the full report bundle (JSON, CSV tables, PNG figures) here")
    p.add_argument("--enable-link-checks", action="store_true")
    p.add_argument("--json", action="store_true", help="print JSON instead of tables")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("predict", help="classify one edit; exit code 3 means rejected")
    p.add_argument("--model", required=True, help="model bundle path")
    _add_edit_args(p)
    p.add_argument("--json", action="store_true", help="print the decision as JSON")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("features", help="print the 15-value feature vector for one edit")
    _add_edit_args(p)
    p.add_argument("--json", action="store_true", help="print the vector as JSON")
    p.set_defaults(func=_cmd_features)

    p = sub.add_parser("rank", help="rank features by information gain or Shapley importance")
    p.add_argument("--data", required=True, help="labeled corpus (jsonl or csv)")
    p.add_argument("--method", required=True, choices=["infogain", "shapley"])
    p.add_argument("--model", default=None,
                   help="model for Shapley ranking (default: train a forest on the split)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--permutations", type=int, default=200,
                   help="Monte Carlo permutations per instance (default 200)")
    p.add_argument("--train-fraction", type=float, default=0.7)
    p.add_argument("--format", choices=["jsonl", "csv"], default=None)
    p.add_argument("--enable-link-checks", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("serve", help="run the HTTP prediction service")
    p.add_argument("--port", type=int, default=None, help="listen port (default 8080)")
    p.add_argument("--host", default=None, help="bind address (default 127.0.0.1)")
    p.add_argument("--model", default=None, help="model bundle to load at startup")
    p.add_argument("--enable-link-checks", action="store_true",
                   help="enable hyperlink probing per request")
    p.add_argument("--cors-origin", default=None,
                   help="allowed cross-origin pattern (default *)")
    p.add_argument("--messages", default=None, help="reason message catalog (JSON)")
    p.add_argument("--config", default=None,
                   help="JSON config file; precedence is flags > environment > config")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc}", file=sys.stderr)
        return EXIT_IO
    except _MODEL_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except _DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, EditGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
