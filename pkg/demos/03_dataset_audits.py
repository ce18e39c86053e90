#!/usr/bin/env python3
"""Walkthrough: dataset-level bias, feature influence, and combination mining.

Uses a seeded random classifier over the 19-feature survey schema and a
synthetic binarized dataset, then renders the three audit reports.

Run: python3 demos/03_dataset_audits.py
"""

import numpy as np

from axpnet import (
    NEGATIVE,
    POSITIVE,
    SURVEY_SCHEMA,
    NeuralModel,
    audit_bias,
    critical_features,
    feature_impact,
    mine_combinations,
    predict,
)
from axpnet.render import (
    render_bias_report,
    render_combination_reports,
    render_impact_table,
)

rng = np.random.default_rng(42)

model = NeuralModel(
    SURVEY_SCHEMA,
    layers=(
        (rng.uniform(-1.2, 1.2, size=(16, 19)), rng.uniform(-0.5, 0.5, size=16)),
        (rng.uniform(-1.2, 1.2, size=(1, 16)), rng.uniform(-0.5, 0.5, size=1)),
    ),
)
data = rng.integers(0, 2, size=(400, 19)).astype(np.int8)

print("=" * 64)
print("One instance, up close")
print("=" * 64)
x = data[0]
print(f"  prediction: {predict(model, x).name.lower()}")
crit = sorted(critical_features(model, x))
print(f"  critical features (in every explanation): {['x%d' % v for v in crit]}")

print()
print("=" * 64)
print(f"Bias audit over {data.shape[0]} instances (protected: gender, x1)")
print("=" * 64)
report = audit_bias(model, data, SURVEY_SCHEMA.protected)
print(render_bias_report(report, SURVEY_SCHEMA))

print()
print("=" * 64)
print("Feature influence")
print("=" * 64)
impact = feature_impact(model, data)
print(render_impact_table(impact, SURVEY_SCHEMA))

print()
print("=" * 64)
print("Critical combinations (size <= 3, support >= 5% of each outcome)")
print("=" * 64)
reports = [
    mine_combinations(impact, outcome, max_size=3)
    for outcome in (NEGATIVE, POSITIVE)
]
print(render_combination_reports(reports))

print()
print("Consistency check: the bias audit is the impact-table row of x1:",
      (report.biased_negative, report.biased_positive)
      == (int(impact.critical_negative[1]), int(impact.critical_positive[1])))
