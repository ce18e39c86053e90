#!/usr/bin/env python3
"""Walkthrough: building classifiers, evaluating them, moving them around.

Run: python3 demos/01_models_and_decisions.py
"""

import tempfile
from pathlib import Path

import numpy as np

from axpnet import (
    FeatureSchema,
    NeuralModel,
    load_model,
    logit,
    predict,
    save_model,
    single_layer,
)

print("=" * 64)
print("Single neurons as Boolean gates")
print("=" * 64)

# logit = x0 + x1 - 1.5  =>  positive only when both features are on
and_gate = single_layer([1.0, 1.0], [-1.5])
for bits in ([0, 0], [0, 1], [1, 0], [1, 1]):
    print(f"  AND{tuple(bits)} -> logit {logit(and_gate, bits):+.2f}"
          f" -> {predict(and_gate, bits).name.lower()}")

or_gate = single_layer([1.0, 1.0], [-0.5])
print(f"\n  OR(0,0) -> {predict(or_gate, [0, 0]).name.lower()}")
print(f"  OR(1,0) -> {predict(or_gate, [1, 0]).name.lower()}")

print()
print("=" * 64)
print("A hidden layer: |x0 - x1| - 0.5, an XOR-style decision")
print("=" * 64)

xor_like = NeuralModel(
    FeatureSchema.generic(2),
    layers=(
        ([[1.0, -1.0], [-1.0, 1.0]], [0.0, 0.0]),  # relu(x0-x1), relu(x1-x0)
        ([[1.0, 1.0]], [-0.5]),
    ),
)
for bits in ([0, 0], [0, 1], [1, 0], [1, 1]):
    print(f"  XOR-ish{tuple(bits)} -> logit {logit(xor_like, bits):+.2f}"
          f" -> {predict(xor_like, bits).name.lower()}")

print()
print("=" * 64)
print("Portable weights documents")
print("=" * 64)

rng = np.random.default_rng(3)
schema = FeatureSchema(
    names=("sensor_a", "sensor_b", "sensor_c"),
    questions=("Is sensor A on?", "Is sensor B on?", "Is sensor C on?"),
)
model = NeuralModel(
    schema,
    layers=(
        (rng.normal(size=(4, 3)), rng.normal(size=4)),
        (rng.normal(size=(1, 4)), rng.normal(size=1)),
    ),
)

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "model.json"
    save_model(model, path)
    print(f"  wrote {path.stat().st_size} bytes")
    loaded = load_model(path)
    x = [1, 0, 1]
    print(f"  original logit {logit(model, x)!r}")
    print(f"  reloaded logit {logit(loaded, x)!r}  (bit-identical)")
