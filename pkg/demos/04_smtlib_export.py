#!/usr/bin/env python3
"""Walkthrough: exporting the flip query as an SMT-LIB2 script.

The script is satisfiable exactly when some completion of the partial
assignment receives the opposite decision, so external solvers can
cross-check the built-in search.

Run: python3 demos/04_smtlib_export.py
"""

import numpy as np

from axpnet import (
    FeatureSchema,
    NeuralModel,
    POSITIVE,
    PartialAssignment,
    exists_counterexample,
    export_smtlib,
    single_layer,
)

and_gate = single_layer([1.0, 1.0], [-1.5])

print("=" * 64)
print("Fully fixed (1,1), decision positive: nothing can flip -> unsat")
print("=" * 64)
print(export_smtlib(and_gate, PartialAssignment.from_instance([1, 1]), POSITIVE))

print("=" * 64)
print("Free x1: completion (1,0) flips -> sat")
print("=" * 64)
partial = PartialAssignment.from_instance([1, 1], free=[1])
print(export_smtlib(and_gate, partial, POSITIVE))
print(f"built-in search agrees: flips={exists_counterexample(and_gate, partial, POSITIVE).flips}")

print()
print("=" * 64)
print("Hidden layers become ite-encoded rectified linear terms")
print("=" * 64)
rng = np.random.default_rng(5)
model = NeuralModel(
    FeatureSchema.generic(3),
    layers=(
        (rng.normal(size=(2, 3)).round(2), rng.normal(size=2).round(2)),
        (rng.normal(size=(1, 2)).round(2), rng.normal(size=1).round(2)),
    ),
)
print(export_smtlib(model, PartialAssignment(np.array([1, -1, -1])), POSITIVE))
