#!/usr/bin/env python3
"""Walkthrough: minimal abductive explanations and the per-decision bias test.

Run: python3 demos/02_explanations.py
"""

import numpy as np

from axpnet import (
    FeatureSchema,
    NeuralModel,
    POSITIVE,
    PartialAssignment,
    bound_logit,
    compute_explanation,
    compute_explanation_excluding,
    exists_counterexample,
    is_biased_decision,
    is_sufficient,
    predict,
    single_layer,
    weight_order,
)

print("=" * 64)
print("The flip query behind everything")
print("=" * 64)

and_gate = single_layer([1.0, 1.0], [-1.5])
partial = PartialAssignment.from_instance([1, 1], free=[1])
answer = exists_counterexample(and_gate, partial, POSITIVE)
print(f"  AND decided (1,1) positive; can completions of (1,?) flip it?")
print(f"  -> flips={answer.flips}, witness={tuple(answer.witness)}")
print(f"  interval bound with both free: {bound_logit(and_gate, PartialAssignment(np.array([-1, -1])))}")

print()
print("=" * 64)
print("Explanations: sufficient and minimal by construction")
print("=" * 64)

xp = compute_explanation(and_gate, [1, 1])
print(f"  AND(1,1): every literal is load-bearing -> {xp.conjunction()}")

or_gate = single_layer([1.0, 1.0], [-0.5])
xp = compute_explanation(or_gate, [1, 1])
print(f"  OR(1,1): one literal suffices          -> {xp.conjunction()}")
print(f"     sufficient({sorted(xp.feature_indices)})? {is_sufficient(or_gate, [1, 1], xp.feature_indices)}")
print(f"     sufficient(nothing)? {is_sufficient(or_gate, [1, 1], set())}")

print()
print("Different sweep orders may pick different (equally valid) explanations:")
rng = np.random.default_rng(12)
model = NeuralModel(
    FeatureSchema.generic(6),
    layers=(
        (rng.uniform(-2, 2, size=(5, 6)), rng.uniform(-1, 1, size=5)),
        (rng.uniform(-2, 2, size=(1, 5)), rng.uniform(-1, 1, size=1)),
    ),
)
x = np.array([1, 0, 1, 1, 0, 1], dtype=np.int8)
print(f"  instance {tuple(int(v) for v in x)} -> {predict(model, x).name.lower()}")
print(f"  ascending order : {compute_explanation(model, x).conjunction()}")
print(f"  reversed order  : {compute_explanation(model, x, order=list(reversed(range(6)))).conjunction()}")
print(f"  weight order    : {compute_explanation(model, x, order=weight_order(model)).conjunction()}")

print()
print("=" * 64)
print("Constrained explanations and the bias test")
print("=" * 64)

print("  Can the 6-feature decision above be justified without feature x0?")
without = compute_explanation_excluding(model, x, excluded={0})
print(f"  -> {without.conjunction() if without else 'no explanation avoids x0'}")
print(f"  is the decision biased on x0? {is_biased_decision(model, x, 0)}")

projection = single_layer([1.0, 0.0, 0.0], [-0.5])  # decision IS feature 0
print("\n  A model that only reads its protected feature:")
for bits in ([1, 0, 1], [0, 1, 1]):
    print(f"    {tuple(bits)}: biased on x0? {is_biased_decision(projection, bits, 0)},"
          f" explanation without x0: {compute_explanation_excluding(projection, bits, excluded={0})}")
