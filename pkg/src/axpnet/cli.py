"""Command-line surface: ingestion, prediction, explanation, audits, SMT export.

Exit codes: 0 success, 2 usage/configuration error, 3 data error,
4 ambiguous decision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .audit import audit_bias, feature_impact, mine_combinations
from .errors import AmbiguousDecisionError, IngestError, ModelFormatError, SchemaError
from .explain import compute_explanation, is_sufficient, weight_order
from .ingest import load_dataset, read_binarized, write_binarized
from .model import (
    Decision,
    NEGATIVE,
    NeuralModel,
    POSITIVE,
    load_model,
    logit,
    predict,
)
from .oracle import PartialAssignment, export_smtlib
from .render import (
    OUTCOME_WORD,
    bias_report_to_dict,
    combination_reports_to_dict,
    impact_table_to_dict,
    render_bias_report,
    render_combination_reports,
    render_explanation,
    render_impact_table,
)

MODEL_ENV_VAR = "AXPNET_MODEL"

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_AMBIGUOUS = 4


class UsageError(Exception):
    pass


def _load_model(args) -> NeuralModel:
    path = args.model or os.environ.get(MODEL_ENV_VAR)
    if not path:
        raise UsageError(f"--model is required (or set {MODEL_ENV_VAR})")
    return load_model(path)


def _load_data(model: NeuralModel, args) -> np.ndarray:
    if not args.data:
        raise UsageError("--data is required for this command")
    return read_binarized(args.data, schema=model.schema).features


def _resolve_instance(model: NeuralModel, args) -> tuple[np.ndarray, int | None]:
    spec = args.instance
    if spec is None:
        raise UsageError("--instance is required for this command")
    n = model.n_inputs
    bits = spec.split(",") if "," in spec else list(spec)
    if len(bits) == n and all(b in ("0", "1") for b in bits):
        return np.array([int(b) for b in bits], dtype=np.int8), None
    try:
        index = int(spec)
    except ValueError:
        raise UsageError(
            f"--instance must be an index or an inline {n}-bit vector"
        ) from None
    data = _load_data(model, args)
    if not 0 <= index < data.shape[0]:
        raise UsageError(f"instance index {index} outside dataset of {data.shape[0]} rows")
    return data[index], index


def _resolve_order(model: NeuralModel, spec: str | None):
    if spec in (None, "ascending"):
        return None
    if spec == "weight":
        return weight_order(model)
    try:
        return [int(v) for v in spec.split(",")]
    except ValueError:
        raise UsageError(f"--order must be 'ascending', 'weight', or a permutation") from None


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_ingest(args) -> int:
    dataset = load_dataset(args.data)
    write_binarized(args.out, dataset.features, dataset.labels)
    print(dataset.stats.summary())
    return 0


def cmd_predict(args) -> int:
    model = _load_model(args)
    if args.instance is not None:
        instance, _ = _resolve_instance(model, args)
        d = predict(model, instance)
        value = logit(model, instance)
        if args.format == "json":
            _emit(args, json.dumps({"decision": int(d), "logit": value}))
        else:
            _emit(args, f"{OUTCOME_WORD[d]} (logit {value:+.6g})")
        return 0
    data = _load_data(model, args)
    rows = []
    for idx in range(data.shape[0]):
        value = logit(model, data[idx])
        try:
            d = int(predict(model, data[idx]))
        except AmbiguousDecisionError:
            d = None
        rows.append({"index": idx, "decision": d, "logit": value})
    if args.format == "json":
        _emit(args, json.dumps({"predictions": rows}))
    else:
        lines = [
            f"{r['index']}\t"
            + ("ambiguous" if r["decision"] is None else OUTCOME_WORD[Decision(r["decision"])])
            for r in rows
        ]
        _emit(args, "\n".join(lines))
    return 0


def cmd_explain(args) -> int:
    model = _load_model(args)
    instance, index = _resolve_instance(model, args)
    order = _resolve_order(model, args.order)
    explanation = compute_explanation(model, instance, order=order, instance_index=index)
    _self_check(model, instance, explanation)
    if args.format == "json":
        _emit(args, json.dumps(explanation.to_dict(model.schema)))
    else:
        _emit(args, render_explanation(explanation, model.schema))
    return 0


def _self_check(model, instance, explanation) -> None:
    # Never print an explanation violating sufficiency or minimality.
    vars_ = sorted(explanation.feature_indices)
    if not is_sufficient(model, instance, vars_):
        raise RuntimeError("internal error: explanation is not sufficient")
    for v in vars_:
        if is_sufficient(model, instance, [u for u in vars_ if u != v]):
            raise RuntimeError("internal error: explanation is not minimal")


def _resolve_protected(model: NeuralModel, args) -> int:
    if args.protected is not None:
        try:
            return model.schema.feature_index(args.protected)
        except SchemaError as exc:
            raise UsageError(str(exc)) from None
    if model.schema.protected is not None:
        return model.schema.protected
    raise UsageError("--protected is required (model schema declares none)")


def cmd_bias_audit(args) -> int:
    model = _load_model(args)
    data = _load_data(model, args)
    p = _resolve_protected(model, args)
    report = audit_bias(model, data, p)
    if args.format == "json":
        _emit(args, json.dumps(bias_report_to_dict(report, model.schema)))
    else:
        _emit(args, render_bias_report(report, model.schema))
    return 0


def cmd_feature_impact(args) -> int:
    model = _load_model(args)
    data = _load_data(model, args)
    impact = feature_impact(model, data)
    if args.format == "json":
        _emit(args, json.dumps(impact_table_to_dict(impact, model.schema)))
    else:
        _emit(args, render_impact_table(impact, model.schema))
    return 0


def cmd_mine_combos(args) -> int:
    model = _load_model(args)
    data = _load_data(model, args)
    impact = feature_impact(model, data)
    min_count = args.min_count if args.min_count > 0 else None
    top_k = args.top_k if args.top_k > 0 else None
    reports = [
        mine_combinations(
            impact, outcome, max_size=args.max_size, min_count=min_count, top_k=top_k
        )
        for outcome in (NEGATIVE, POSITIVE)
    ]
    if args.format == "json":
        _emit(args, json.dumps(combination_reports_to_dict(reports)))
    else:
        _emit(args, render_combination_reports(reports))
    return 0


def cmd_export_smt(args) -> int:
    model = _load_model(args)
    instance, _ = _resolve_instance(model, args)
    d = predict(model, instance)
    free = []
    if args.free:
        try:
            free = [model.schema.feature_index(ref.strip()) for ref in args.free.split(",")]
        except SchemaError as exc:
            raise UsageError(str(exc)) from None
    partial = PartialAssignment.from_instance(instance, free=free)
    _emit(args, export_smtlib(model, partial, d))
    return 0


def _add_common(parser, data=True, model=True, fmt=True):
    if model:
        parser.add_argument("--model", help=f"portable weights document (default ${MODEL_ENV_VAR})")
    if data:
        parser.add_argument("--data", help="binarized dataset file")
    if fmt:
        parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="axpnet",
        description="Minimal abductive explanations and audits for ReLU classifiers "
        "over Boolean features.",
    )
    parser.add_argument("--version", action="version", version=f"axpnet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="binarize a raw survey CSV")
    p.add_argument("--data", required=True, help="raw survey CSV with header")
    p.add_argument("--out", required=True, help="binarized dataset file to write")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("predict", help="decide one instance or a whole dataset")
    _add_common(p)
    p.add_argument("--instance", help="row index into --data, or inline bit vector")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("explain", help="minimal abductive explanation for one decision")
    _add_common(p)
    p.add_argument("--instance", required=True)
    p.add_argument("--order", help="'ascending' (default), 'weight', or a permutation")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("bias-audit", help="per-decision bias audit over a dataset")
    _add_common(p)
    p.add_argument("--protected", help="protected feature name or index")
    p.set_defaults(func=cmd_bias_audit)

    p = sub.add_parser("feature-impact", help="per-feature criticality counts")
    _add_common(p)
    p.set_defaults(func=cmd_feature_impact)

    p = sub.add_parser("mine-combos", help="critical feature combinations per outcome")
    _add_common(p)
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument(
        "--min-count", type=int, default=0,
        help="absolute support threshold; 0 means 5%% of the outcome class",
    )
    p.add_argument(
        "--top-k", type=int, default=0,
        help="restrict candidates to the k most critical features (0 = all)",
    )
    p.set_defaults(func=cmd_mine_combos)

    p = sub.add_parser("export-smt", help="SMT-LIB2 script for the flip query")
    _add_common(p, fmt=False)
    p.add_argument("--instance", required=True)
    p.add_argument("--free", help="comma-separated features to leave free")
    p.set_defaults(func=cmd_export_smt)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IngestError, ModelFormatError, SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except AmbiguousDecisionError as exc:
        print(f"error: ambiguous decision: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS


if __name__ == "__main__":
    sys.exit(main())
