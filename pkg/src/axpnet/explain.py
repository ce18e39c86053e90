"""Minimal abductive explanations and the per-decision bias test.

An explanation for a decision is a subset of the instance's literals that
is sufficient (every completion of it receives the same decision) and
minimal (dropping any single literal admits a counterexample).  The
computation is the greedy deletion sweep: start from the full instance,
tentatively free each feature in turn, and re-fix it only when a flipping
completion exists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SchemaError
from .model import Decision, FeatureSchema, NeuralModel, as_instance, predict
from .oracle import FREE, PartialAssignment, exists_counterexample


@dataclass(frozen=True)
class Explanation:
    """Minimal sufficient literal set for one decision.

    ``literals`` holds (feature index, value) pairs in ascending index
    order, each matching the source instance.
    """

    literals: tuple[tuple[int, int], ...]
    decision: Decision
    instance: np.ndarray
    instance_index: int | None = None

    def __post_init__(self):
        inst = as_instance(self.instance)
        inst = inst.copy()
        inst.flags.writeable = False
        object.__setattr__(self, "instance", inst)
        lits = tuple(sorted((int(i), int(v)) for i, v in self.literals))
        for i, v in lits:
            if not 0 <= i < inst.shape[0]:
                raise SchemaError(f"literal index {i} outside instance")
            if inst[i] != v:
                raise SchemaError(f"literal x{i}={v} contradicts the instance")
        object.__setattr__(self, "literals", lits)
        object.__setattr__(self, "decision", Decision(self.decision))

    @property
    def feature_indices(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.literals)

    def conjunction(self) -> str:
        """Literal-form string, e.g. 'x3 ∧ x7 ∧ ¬x9'."""
        parts = [f"x{i}" if v else f"¬x{i}" for i, v in self.literals]
        return " ∧ ".join(parts)

    def to_dict(self, schema: FeatureSchema | None = None) -> dict:
        names = schema.names if schema is not None else None
        return {
            "instance_index": self.instance_index,
            "decision": int(self.decision),
            "literals": [
                {
                    "feature": i,
                    "name": names[i] if names else f"x{i}",
                    "value": v,
                }
                for i, v in self.literals
            ],
            "conjunction": self.conjunction(),
        }


def weight_order(model: NeuralModel) -> list[int]:
    """Feature permutation by descending first-layer |weight| mass."""
    mass = model.input_weight_mass
    return sorted(range(model.n_inputs), key=lambda j: (-mass[j], j))


def _validate_order(order, n: int) -> list[int]:
    if order is None:
        return list(range(n))
    order = [int(v) for v in order]
    if sorted(order) != list(range(n)):
        raise SchemaError(f"order must be a permutation of 0..{n - 1}")
    return order


def is_sufficient(model: NeuralModel, instance, subset) -> bool:
    """True iff fixing the instance's literals on ``subset`` pins the decision.

    Frees every feature outside ``subset`` and asks the oracle whether any
    completion flips predict(instance).
    """
    inst = as_instance(instance, model.n_inputs)
    d = predict(model, inst)
    partial = PartialAssignment.from_fixed(inst, subset)
    return not exists_counterexample(model, partial, d).flips


def compute_explanation(
    model: NeuralModel, instance, order=None, instance_index: int | None = None
) -> Explanation:
    """Greedy deletion sweep producing a minimal abductive explanation.

    Visits features in ``order`` (default: ascending index), drops each
    literal, and reinstates it iff some completion then flips the decision.
    """
    inst = as_instance(instance, model.n_inputs)
    d = predict(model, inst)
    order = _validate_order(order, model.n_inputs)
    state = inst.copy()
    for v in order:
        kept = state[v]
        state[v] = FREE
        if exists_counterexample(model, PartialAssignment(state), d).flips:
            state[v] = kept
    literals = tuple(
        (i, int(inst[i])) for i in range(model.n_inputs) if state[i] != FREE
    )
    return Explanation(
        literals=literals, decision=d, instance=inst, instance_index=instance_index
    )


def compute_explanation_excluding(
    model: NeuralModel,
    instance,
    excluded,
    order=None,
    instance_index: int | None = None,
) -> Explanation | None:
    """Minimal explanation avoiding ``excluded`` features, or None.

    None means no sufficient literal set avoids the excluded features, i.e.
    freeing them already admits a counterexample.
    """
    inst = as_instance(instance, model.n_inputs)
    d = predict(model, inst)
    excluded = {model.schema.feature_index(e) for e in excluded}
    order = _validate_order(order, model.n_inputs)
    state = inst.copy()
    for v in excluded:
        state[v] = FREE
    if excluded and exists_counterexample(model, PartialAssignment(state), d).flips:
        return None
    for v in order:
        if v in excluded:
            continue
        kept = state[v]
        state[v] = FREE
        if exists_counterexample(model, PartialAssignment(state), d).flips:
            state[v] = kept
    literals = tuple(
        (i, int(inst[i])) for i in range(model.n_inputs) if state[i] != FREE
    )
    return Explanation(
        literals=literals, decision=d, instance=inst, instance_index=instance_index
    )


def is_biased_decision(model: NeuralModel, instance, protected: int) -> bool:
    """True iff every minimal sufficient literal set contains ``protected``.

    Equivalent to: freeing the protected feature alone breaks sufficiency of
    the remaining full assignment, so no explanation can avoid it.
    """
    p = model.schema.feature_index(protected)
    subset = [i for i in range(model.n_inputs) if i != p]
    return not is_sufficient(model, instance, subset)
