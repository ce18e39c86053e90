"""Dataset-level analyses: bias audit, feature influence, combination mining.

All three reduce to per-instance *critical feature* sets.  A feature is
critical for a decision when freeing it alone admits a counterexample;
equivalently (by monotonicity of sufficiency) it appears in every minimal
abductive explanation of that decision.  Outcome attribution always uses
the model's prediction, never the dataset label.  Instances whose
prediction sits inside the ambiguity margin are excluded and counted
separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import AmbiguousDecisionError, SchemaError
from .model import (
    AMBIGUITY_MARGIN,
    Decision,
    NeuralModel,
    POSITIVE,
    as_instance,
    batch_logits,
    logit,
    predict,
)


def critical_features(model: NeuralModel, instance) -> frozenset[int]:
    """Features whose single-feature relaxation flips the decision.

    Returns {v : fixing everything except v is not sufficient}.  With one
    free feature the only completion besides the instance itself is the
    instance with that feature flipped, so one batched forward pass over the
    n flipped vectors decides all memberships.
    """
    inst = as_instance(instance, model.n_inputs)
    d = predict(model, inst)
    flipped = np.repeat(inst[None, :], model.n_inputs, axis=0)
    diag = np.arange(model.n_inputs)
    flipped[diag, diag] = 1 - flipped[diag, diag]
    values = batch_logits(model, flipped)
    crit = set()
    for v in range(model.n_inputs):
        value = values[v]
        if abs(value) < 2.0 * AMBIGUITY_MARGIN:
            value = logit(model, flipped[v])
            if abs(value) < AMBIGUITY_MARGIN:
                raise AmbiguousDecisionError(value)
        if (value >= 0) != (d == POSITIVE):
            crit.add(v)
    return frozenset(crit)


@dataclass(frozen=True)
class BiasAuditReport:
    """Partition of a dataset by the per-decision bias test."""

    unbiased: int
    biased_negative: int
    biased_positive: int
    ambiguous: int
    total: int
    protected: int
    ambiguous_indices: tuple[int, ...] = ()

    def __post_init__(self):
        parts = self.unbiased + self.biased_negative + self.biased_positive
        if parts + self.ambiguous != self.total:
            raise ValueError(
                f"bias counts {parts}+{self.ambiguous} do not partition {self.total}"
            )

    @property
    def unbiased_ratio(self) -> float:
        return self.unbiased / self.total if self.total else 0.0


@dataclass(frozen=True)
class FeatureImpactTable:
    """Per-feature criticality counts plus the per-instance sets they came from.

    ``critical_sets``, ``outcomes`` and ``instance_indices`` are aligned over
    the audited (unambiguous) instances and feed the combination miner.
    """

    non_influenced: np.ndarray
    critical_negative: np.ndarray
    critical_positive: np.ndarray
    critical_sets: tuple[frozenset[int], ...]
    outcomes: tuple[Decision, ...]
    instance_indices: tuple[int, ...]
    total: int
    ambiguous_indices: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return self.non_influenced.shape[0]

    @property
    def audited(self) -> int:
        return len(self.critical_sets)

    def critical_count(self, feature: int, outcome: Decision | None = None) -> int:
        if outcome is None:
            return int(
                self.critical_negative[feature] + self.critical_positive[feature]
            )
        if Decision(outcome) == POSITIVE:
            return int(self.critical_positive[feature])
        return int(self.critical_negative[feature])


@dataclass(frozen=True)
class CombinationRow:
    features: tuple[int, ...]
    count: int
    whole_ratio: float
    outcome_ratio: float
    outcome: Decision


@dataclass(frozen=True)
class CombinationReport:
    """Feature sets contained in every explanation of many instances."""

    rows: tuple[CombinationRow, ...]
    outcome: Decision
    max_size: int
    min_count: int
    outcome_total: int
    dataset_total: int


def _as_matrix(model: NeuralModel, dataset) -> np.ndarray:
    x = np.asarray(dataset)
    if x.ndim != 2 or x.shape[1] != model.n_inputs:
        raise SchemaError(
            f"dataset must be (rows, {model.n_inputs}), got shape {x.shape}"
        )
    return x.astype(np.int8)


def feature_impact(model: NeuralModel, dataset) -> FeatureImpactTable:
    """Count, per feature and predicted outcome, the decisions it is critical for."""
    x = _as_matrix(model, dataset)
    n = model.n_inputs
    crit_neg = np.zeros(n, dtype=np.int64)
    crit_pos = np.zeros(n, dtype=np.int64)
    sets, outcomes, kept, ambiguous = [], [], [], []
    for idx in range(x.shape[0]):
        try:
            d = predict(model, x[idx])
            crit = critical_features(model, x[idx])
        except AmbiguousDecisionError:
            ambiguous.append(idx)
            continue
        counter = crit_pos if d == POSITIVE else crit_neg
        for v in crit:
            counter[v] += 1
        sets.append(crit)
        outcomes.append(d)
        kept.append(idx)
    audited = len(sets)
    non_influenced = audited - crit_neg - crit_pos
    return FeatureImpactTable(
        non_influenced=non_influenced,
        critical_negative=crit_neg,
        critical_positive=crit_pos,
        critical_sets=tuple(sets),
        outcomes=tuple(outcomes),
        instance_indices=tuple(kept),
        total=x.shape[0],
        ambiguous_indices=tuple(ambiguous),
    )


def audit_bias(model: NeuralModel, dataset, protected) -> BiasAuditReport:
    """Classify every instance's decision as biased or unbiased w.r.t. ``protected``.

    A decision is biased when the protected feature is critical for it, i.e.
    every minimal sufficient literal set contains it; biased decisions are
    split by predicted outcome.
    """
    x = _as_matrix(model, dataset)
    p = model.schema.feature_index(protected)
    unbiased = biased_neg = biased_pos = 0
    ambiguous = []
    flipped = x.copy()
    flipped[:, p] = 1 - flipped[:, p]
    for idx in range(x.shape[0]):
        try:
            d = predict(model, x[idx])
            value = logit(model, flipped[idx])
            if abs(value) < AMBIGUITY_MARGIN:
                raise AmbiguousDecisionError(value)
        except AmbiguousDecisionError:
            ambiguous.append(idx)
            continue
        biased = (value >= 0) != (d == POSITIVE)
        if not biased:
            unbiased += 1
        elif d == POSITIVE:
            biased_pos += 1
        else:
            biased_neg += 1
    return BiasAuditReport(
        unbiased=unbiased,
        biased_negative=biased_neg,
        biased_positive=biased_pos,
        ambiguous=len(ambiguous),
        total=x.shape[0],
        protected=p,
        ambiguous_indices=tuple(ambiguous),
    )


def _apriori_candidates(frequent: set[frozenset[int]], size: int) -> set[frozenset[int]]:
    """Classic level-wise candidate generation with subset pruning."""
    out = set()
    for a, b in combinations(frequent, 2):
        union = a | b
        if len(union) != size:
            continue
        if all(frozenset(sub) in frequent for sub in combinations(union, size - 1)):
            out.add(union)
    return out


def mine_combinations(
    impact: FeatureImpactTable,
    outcome: Decision,
    max_size: int = 3,
    min_count: int | None = None,
    top_k: int | None = None,
) -> CombinationReport:
    """Frequent feature sets contained in every explanation of an instance.

    A set S is counted for instance x iff S is a subset of x's critical
    features, which (by monotonicity of sufficiency) holds exactly when
    every minimal abductive explanation of x contains all of S.  Support is
    anti-monotone in S, so mining is the classic level-wise sweep.  ``top_k``
    optionally restricts candidate features to the k most critical ones for
    this outcome.
    """
    if max_size < 1:
        raise ValueError(f"max_size must be >= 1, got {max_size}")
    outcome = Decision(outcome)
    masks = [
        sum(1 << v for v in crit)
        for crit, d in zip(impact.critical_sets, impact.outcomes)
        if d == outcome
    ]
    outcome_total = len(masks)
    if min_count is None:
        min_count = max(1, math.ceil(0.05 * outcome_total))
    if min_count < 1:
        min_count = 1
    items = [
        v
        for v in range(impact.n)
        if impact.critical_count(v, outcome) >= min_count
    ]
    if top_k is not None:
        ranked = sorted(
            range(impact.n),
            key=lambda v: (-impact.critical_count(v, outcome), v),
        )[:top_k]
        items = [v for v in items if v in set(ranked)]

    def support(mask: int) -> int:
        return sum(1 for m in masks if m & mask == mask)

    rows = []
    frequent = set()
    for v in items:
        count = support(1 << v)
        if count >= min_count:
            frequent.add(frozenset({v}))
            rows.append((frozenset({v}), count))
    size = 2
    while frequent and size <= max_size:
        nxt = set()
        for cand in _apriori_candidates(frequent, size):
            count = support(sum(1 << v for v in cand))
            if count >= min_count:
                nxt.add(cand)
                rows.append((cand, count))
        frequent = nxt
        size += 1

    whole = impact.total
    ordered = sorted(rows, key=lambda r: (-r[1], tuple(sorted(r[0]))))
    return CombinationReport(
        rows=tuple(
            CombinationRow(
                features=tuple(sorted(s)),
                count=c,
                whole_ratio=c / whole if whole else 0.0,
                outcome_ratio=c / outcome_total if outcome_total else 0.0,
                outcome=outcome,
            )
            for s, c in ordered
        ),
        outcome=outcome,
        max_size=max_size,
        min_count=min_count,
        outcome_total=outcome_total,
        dataset_total=whole,
    )
