"""Feedforward ReLU classifiers over Boolean features.

A model is a stack of dense layers: ReLU on every hidden layer, a single
linear output unit whose pre-threshold value is the *logit*.  The decision
rule is fixed across the whole package: logit >= 0 means the positive
class.  Logits closer to zero than :data:`AMBIGUITY_MARGIN` are rejected
with :class:`AmbiguousDecisionError` instead of silently rounded, so that
thresholded prediction and the completion search in :mod:`axpnet.oracle`
can never disagree.

Everything here is immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousDecisionError, ModelFormatError, SchemaError

# |logit| below this margin is treated as "too close to the boundary".
AMBIGUITY_MARGIN = 1e-9

ACTIVATION = "relu"
OUTPUT_RULE = "logit_ge_0"


class Decision(enum.IntEnum):
    """Binary outcome: 1 = positive (seeks treatment), 0 = negative."""

    NEGATIVE = 0
    POSITIVE = 1


NEGATIVE = Decision.NEGATIVE
POSITIVE = Decision.POSITIVE


@dataclass(frozen=True)
class FeatureSchema:
    """Names and question text for the Boolean input features.

    ``protected``, when set, is the index of the sensitive feature used by
    the bias audit (Gender in the survey schema).
    """

    names: tuple[str, ...]
    questions: tuple[str, ...]
    protected: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "questions", tuple(self.questions))
        if not self.names:
            raise SchemaError("schema needs at least one feature")
        if any(not n for n in self.names):
            raise SchemaError("feature names must be nonempty")
        if len(set(self.names)) != len(self.names):
            raise SchemaError("feature names must be unique")
        if len(self.questions) != len(self.names):
            raise SchemaError(
                f"{len(self.questions)} questions for {len(self.names)} features"
            )
        if self.protected is not None:
            p = int(self.protected)
            if not 0 <= p < len(self.names):
                raise SchemaError(f"protected index {p} outside [0, {len(self.names)})")
            object.__setattr__(self, "protected", p)

    @property
    def n(self) -> int:
        return len(self.names)

    def feature_index(self, ref: int | str) -> int:
        """Resolve a feature reference: index, name, or 'x<i>' shorthand."""
        if isinstance(ref, (int, np.integer)):
            i = int(ref)
            if not 0 <= i < self.n:
                raise SchemaError(f"feature index {i} outside [0, {self.n})")
            return i
        if ref in self.names:
            return self.names.index(ref)
        if ref.isdigit():
            return self.feature_index(int(ref))
        if ref.startswith("x") and ref[1:].isdigit():
            return self.feature_index(int(ref[1:]))
        raise SchemaError(f"unknown feature {ref!r}")

    @classmethod
    def generic(cls, n: int, protected: int | None = None) -> "FeatureSchema":
        """Anonymous n-feature schema, used by tests and demos."""
        return cls(
            names=tuple(f"x{i}" for i in range(n)),
            questions=tuple(f"Is feature {i} set?" for i in range(n)),
            protected=protected,
        )


def as_instance(values, n: int | None = None) -> np.ndarray:
    """Validate and normalize a Boolean feature vector to an int8 array."""
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise SchemaError(f"instance must be 1-D, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise SchemaError(f"instance has {arr.shape[0]} features, schema has {n}")
    out = arr.astype(np.int8)
    if not np.array_equal(out, arr) or not np.all((out == 0) | (out == 1)):
        raise SchemaError("instance values must all be 0 or 1")
    return out


@dataclass(frozen=True, eq=False)
class NeuralModel:
    """Immutable ReLU network with a single-logit output.

    ``layers`` is an ordered tuple of (weights, bias) pairs; weights are
    row-major (out_width, in_width).  All layers except the last are
    followed by ReLU; the last produces the raw logit.
    """

    schema: FeatureSchema
    layers: tuple[tuple[np.ndarray, np.ndarray], ...]

    def __post_init__(self):
        clean = []
        width = self.schema.n
        for li, (w, b) in enumerate(self.layers):
            w = np.ascontiguousarray(np.asarray(w, dtype=np.float64))
            b = np.ascontiguousarray(np.asarray(b, dtype=np.float64))
            if w.ndim != 2 or b.ndim != 1:
                raise SchemaError(f"layer {li}: weights must be 2-D, bias 1-D")
            if w.shape[1] != width:
                raise SchemaError(
                    f"layer {li}: input width {w.shape[1]}, expected {width}"
                )
            if b.shape[0] != w.shape[0]:
                raise SchemaError(
                    f"layer {li}: bias width {b.shape[0]} != output width {w.shape[0]}"
                )
            if not (np.isfinite(w).all() and np.isfinite(b).all()):
                raise SchemaError(f"layer {li}: weights and biases must be finite")
            w.flags.writeable = False
            b.flags.writeable = False
            clean.append((w, b))
            width = w.shape[0]
        if not clean:
            raise SchemaError("model needs at least one layer")
        if width != 1:
            raise SchemaError(f"output layer must have width 1, got {width}")
        object.__setattr__(self, "layers", tuple(clean))
        # Signed weight splits for interval propagation, and the per-input
        # first-layer weight mass used as the branching heuristic.
        pos = tuple(np.maximum(w, 0.0) for w, _ in clean)
        neg = tuple(np.minimum(w, 0.0) for w, _ in clean)
        object.__setattr__(self, "_w_pos", pos)
        object.__setattr__(self, "_w_neg", neg)
        object.__setattr__(self, "_input_mass", np.abs(clean[0][0]).sum(axis=0))

    @property
    def n_inputs(self) -> int:
        return self.schema.n

    @property
    def input_weight_mass(self) -> np.ndarray:
        """Column-wise |weight| mass of the first layer, one value per feature."""
        return self._input_mass

    def signed_weights(self):
        """Per-layer (positive part, negative part) weight splits."""
        return self._w_pos, self._w_neg


def logit(model: NeuralModel, instance) -> float:
    """Exact forward evaluation of the output neuron's pre-threshold value."""
    x = as_instance(instance, model.n_inputs)
    h = x.astype(np.float64)
    last = len(model.layers) - 1
    for li, (w, b) in enumerate(model.layers):
        h = w @ h + b
        if li < last:
            np.maximum(h, 0.0, out=h)
    return float(h[0])


def batch_logits(model: NeuralModel, instances: np.ndarray) -> np.ndarray:
    """Logits for a (rows, n) matrix of instances.

    Row-wise results may differ from :func:`logit` by float rounding of the
    order of machine epsilon; callers that decide anything near the
    threshold must re-confirm with :func:`logit`.
    """
    x = np.asarray(instances)
    if x.ndim != 2 or x.shape[1] != model.n_inputs:
        raise SchemaError(f"expected (rows, {model.n_inputs}) matrix, got {x.shape}")
    h = x.astype(np.float64)
    last = len(model.layers) - 1
    for li, (w, b) in enumerate(model.layers):
        h = h @ w.T + b
        if li < last:
            np.maximum(h, 0.0, out=h)
    return h[:, 0]


def predict(model: NeuralModel, instance) -> Decision:
    """Thresholded decision: positive iff logit >= 0.

    Raises :class:`AmbiguousDecisionError` when |logit| < AMBIGUITY_MARGIN;
    such instances are too close to the boundary for sound explanation.
    """
    value = logit(model, instance)
    if abs(value) < AMBIGUITY_MARGIN:
        raise AmbiguousDecisionError(value)
    return POSITIVE if value >= 0 else NEGATIVE


def single_layer(weights, bias, schema: FeatureSchema | None = None) -> NeuralModel:
    """One-neuron model: logit = weights . x + bias.  Convenience builder."""
    w = np.atleast_2d(np.asarray(weights, dtype=np.float64))
    b = np.atleast_1d(np.asarray(bias, dtype=np.float64))
    if schema is None:
        schema = FeatureSchema.generic(w.shape[1])
    return NeuralModel(schema=schema, layers=((w, b),))


def model_to_dict(model: NeuralModel) -> dict:
    """Portable weights document as a JSON-ready dict."""
    doc = {
        "n": model.n_inputs,
        "feature_names": list(model.schema.names),
        "questions": list(model.schema.questions),
        "layers": [
            {"weights": w.tolist(), "bias": b.tolist()} for w, b in model.layers
        ],
        "activation": ACTIVATION,
        "output_rule": OUTPUT_RULE,
    }
    if model.schema.protected is not None:
        doc["protected_index"] = model.schema.protected
    return doc


def model_from_dict(doc: dict) -> NeuralModel:
    """Validate and build a model from a parsed weights document."""
    if not isinstance(doc, dict):
        raise ModelFormatError("weights document must be a JSON object")
    for key in ("n", "feature_names", "questions", "layers", "activation", "output_rule"):
        if key not in doc:
            raise ModelFormatError(f"weights document missing field {key!r}")
    if doc["activation"] != ACTIVATION:
        raise ModelFormatError(f"unsupported activation {doc['activation']!r}")
    if doc["output_rule"] != OUTPUT_RULE:
        raise ModelFormatError(f"unsupported output rule {doc['output_rule']!r}")
    try:
        schema = FeatureSchema(
            names=tuple(doc["feature_names"]),
            questions=tuple(doc["questions"]),
            protected=doc.get("protected_index"),
        )
        if schema.n != int(doc["n"]):
            raise SchemaError(f"n={doc['n']} but {schema.n} feature names")
        layers = tuple(
            (layer["weights"], layer["bias"]) for layer in doc["layers"]
        )
        return NeuralModel(schema=schema, layers=layers)
    except (SchemaError, KeyError, TypeError) as exc:
        raise ModelFormatError(f"invalid weights document: {exc}") from exc


def save_model(model: NeuralModel, path) -> None:
    """Write the portable weights document (decimal text round-trips bit-exactly)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, indent=1)
        fh.write("\n")


def load_model(path) -> NeuralModel:
    """Load and validate a portable weights document."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelFormatError(f"cannot read weights document {path}: {exc}") from exc
    return model_from_dict(doc)
