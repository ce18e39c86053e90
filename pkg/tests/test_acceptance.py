"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines.  Everything here uses randomly generated or hand-built models; the
reference survey-model table counts are used for arithmetic validation
only, since the original trained weights were never released.
"""

from itertools import combinations
from time import perf_counter

import numpy as np
import pytest

from axpnet import (
    AmbiguousDecisionError,
    NEGATIVE,
    POSITIVE,
    BiasAuditReport,
    FeatureSchema,
    NeuralModel,
    PartialAssignment,
    audit_bias,
    compute_explanation,
    exhaustive_oracle,
    exists_counterexample,
    export_smtlib,
    feature_impact,
    is_biased_decision,
    is_sufficient,
    mine_combinations,
    predict,
)
from conftest import decision_table, minimal_sufficient_subsets, random_model
from smt_eval import Script


def report(line: str):
    print(f"\nACCEPTANCE PASS — {line}")


def _unambiguous_instance(rng, model):
    for _ in range(64):
        x = rng.integers(0, 2, size=model.n_inputs).astype(np.int8)
        try:
            predict(model, x)
            return x
        except AmbiguousDecisionError:
            continue
    raise RuntimeError("could not sample an unambiguous instance")


def test_axp_soundness_and_minimality():
    rng = np.random.default_rng(101)
    start = perf_counter()
    checked = 0
    for _ in range(200):
        n = int(rng.integers(3, 13))
        model = random_model(rng, n=n, max_hidden_layers=2, max_units=8)
        for _ in range(20):
            x = _unambiguous_instance(rng, model)
            xp = compute_explanation(model, x)
            vars_ = sorted(xp.feature_indices)
            assert is_sufficient(model, x, vars_), "explanation not sufficient"
            for v in vars_:
                rest = [u for u in vars_ if u != v]
                assert not is_sufficient(model, x, rest), (
                    f"explanation not minimal: x{v} removable"
                )
            checked += 1
    elapsed = perf_counter() - start
    assert checked == 4000
    assert elapsed < 300, f"soundness/minimality sweep took {elapsed:.1f}s"
    report(
        "AXP soundness & minimality: 200 models x 20 instances, "
        f"4000/4000 sound and minimal in {elapsed:.1f}s"
    )


def test_oracle_completeness():
    rng = np.random.default_rng(202)
    agree = 0
    for _ in range(500):
        n = int(rng.integers(2, 17))
        model = random_model(rng, n=n)
        vals = rng.integers(0, 2, size=n).astype(np.int8)
        vals[rng.random(n) < rng.uniform(0.2, 1.0)] = -1
        partial = PartialAssignment(vals)
        d = POSITIVE if rng.random() < 0.5 else NEGATIVE
        assert (
            exists_counterexample(model, partial, d).flips
            == exhaustive_oracle(model, partial, d).flips
        )
        agree += 1
    report(f"oracle completeness: search vs enumeration agree on {agree}/500 queries")


def test_bias_definition_equivalence():
    rng = np.random.default_rng(303)
    checked = 0
    for _ in range(50):
        n = int(rng.integers(2, 9))
        model = random_model(rng, n=n)
        table = decision_table(model)
        x = _unambiguous_instance(rng, model)
        p = int(rng.integers(0, n))
        subsets = minimal_sufficient_subsets(table, x, n)
        in_every = all(p in s for s in subsets)
        assert is_biased_decision(model, x, p) == in_every
        checked += 1
    report(
        "bias-definition equivalence: matches subset-lattice membership "
        f"on {checked}/50 models"
    )


def test_combination_mining_correctness():
    rng = np.random.default_rng(404)
    models_checked = 0
    for _ in range(8):
        n = int(rng.integers(3, 9))
        model = random_model(rng, n=n)
        table = decision_table(model)
        data = rng.integers(0, 2, size=(30, n)).astype(np.int8)
        impact = feature_impact(model, data)
        for outcome in (NEGATIVE, POSITIVE):
            mined = {
                row.features: row.count
                for row in mine_combinations(impact, outcome, max_size=3, min_count=1).rows
            }
            brute = {}
            for idx, crit, d in zip(
                impact.instance_indices, impact.critical_sets, impact.outcomes
            ):
                if d != outcome:
                    continue
                axps = minimal_sufficient_subsets(table, data[idx], n)
                always = frozenset.intersection(*axps) if axps else frozenset()
                for size in range(1, 4):
                    for combo in combinations(sorted(always), size):
                        brute[combo] = brute.get(combo, 0) + 1
            assert mined == brute, f"mined counts diverge for outcome {outcome}"
            singles = {
                row.features[0]: row.count
                for row in mine_combinations(impact, outcome, max_size=1, min_count=1).rows
            }
            for v in range(n):
                assert singles.get(v, 0) == impact.critical_count(v, outcome)
        models_checked += 1
    report(
        "combination mining: counts equal brute force over all minimal "
        f"sufficient subsets on {models_checked} models; singletons match the impact table"
    )


def test_partition_invariant():
    rng = np.random.default_rng(505)
    for _ in range(10):
        n = int(rng.integers(3, 8))
        model = random_model(rng, n=n, protected=0)
        data = rng.integers(0, 2, size=(int(rng.integers(10, 120)), n))
        rep = audit_bias(model, data, 0)
        assert (
            rep.unbiased + rep.biased_negative + rep.biased_positive + rep.ambiguous
            == rep.total == data.shape[0]
        )
    # reference arithmetic of the original survey audit
    reference = BiasAuditReport(
        unbiased=864, biased_negative=290, biased_positive=103,
        ambiguous=0, total=1257, protected=1,
    )
    assert reference.unbiased + reference.biased_negative + reference.biased_positive == 1257
    assert reference.unbiased_ratio == pytest.approx(0.6873508, abs=1e-6)
    report(
        "partition invariant: audit counts partition every dataset; "
        "reference split 864+290+103 = 1257 (68.73% unbiased) validated"
    )


def test_performance_envelope():
    rng = np.random.default_rng(606)
    schema = FeatureSchema.generic(19, protected=1)
    model = NeuralModel(
        schema,
        layers=(
            (rng.uniform(-2, 2, size=(16, 19)), rng.uniform(-2, 2, size=16)),
            (rng.uniform(-2, 2, size=(1, 16)), rng.uniform(-2, 2, size=1)),
        ),
    )
    x = _unambiguous_instance(rng, model)
    start = perf_counter()
    xp = compute_explanation(model, x)
    explain_time = perf_counter() - start
    assert explain_time < 5.0, f"single explanation took {explain_time:.2f}s"
    assert xp.literals  # sanity: non-degenerate output

    data = rng.integers(0, 2, size=(1257, 19)).astype(np.int8)
    start = perf_counter()
    rep = audit_bias(model, data, 1)
    audit_time = perf_counter() - start
    assert audit_time < 600, f"bias audit took {audit_time:.1f}s"
    assert rep.total == 1257
    report(
        f"performance: 19-feature/16-unit explanation in {explain_time:.2f}s (< 5s); "
        f"1257-instance bias audit in {audit_time:.2f}s (< 10min)"
    )


def test_smt_export_faithfulness():
    rng = np.random.default_rng(707)
    for _ in range(100):
        n = int(rng.integers(2, 7))
        model = random_model(rng, n=n)
        vals = rng.integers(0, 2, size=n).astype(np.int8)
        vals[rng.random(n) < rng.uniform(0.2, 1.0)] = -1
        partial = PartialAssignment(vals)
        d = POSITIVE if rng.random() < 0.5 else NEGATIVE
        script_sat = Script(export_smtlib(model, partial, d)).satisfiable()
        assert script_sat == exists_counterexample(model, partial, d).flips
    report(
        "SMT export faithfulness: script satisfiability matches the oracle "
        "on 100/100 queries"
    )
