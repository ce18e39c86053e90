"""Shared builders and independent reference oracles.

The reference implementations here deliberately avoid the package's numpy
evaluation and search paths: forward passes are plain Python loops and the
flip/sufficiency checks are raw enumerations, so package results are always
checked against an independent route.
"""

from __future__ import annotations

from itertools import combinations, product

import numpy as np
import pytest

from axpnet import FeatureSchema, NeuralModel, single_layer


def make_model(layers, protected=None) -> NeuralModel:
    n = np.asarray(layers[0][0]).shape[1]
    return NeuralModel(FeatureSchema.generic(n, protected=protected), layers=tuple(layers))


def and_model() -> NeuralModel:
    return single_layer([1.0, 1.0], [-1.5])


def or_model() -> NeuralModel:
    return single_layer([1.0, 1.0], [-0.5])


def constant_model(n=2, value=-1.0) -> NeuralModel:
    return single_layer([0.0] * n, [value])


def projection_model(n=2, feature=0) -> NeuralModel:
    w = [0.0] * n
    w[feature] = 1.0
    return single_layer(w, [-0.5])


def xor_like_model() -> NeuralModel:
    return make_model([([[1.0, -1.0], [-1.0, 1.0]], [0.0, 0.0]), ([[1.0, 1.0]], [-0.5])])


def random_model(rng, n=None, max_hidden_layers=2, max_units=8, protected=None):
    """Random ReLU net with U[-2, 2] weights, matching the acceptance recipe."""
    if n is None:
        n = int(rng.integers(3, 13))
    depth = int(rng.integers(0, max_hidden_layers + 1))
    widths = [n] + [int(rng.integers(1, max_units + 1)) for _ in range(depth)] + [1]
    layers = []
    for i in range(len(widths) - 1):
        w = rng.uniform(-2.0, 2.0, size=(widths[i + 1], widths[i]))
        b = rng.uniform(-2.0, 2.0, size=widths[i + 1])
        layers.append((w, b))
    return make_model(layers, protected=protected)


def random_instance(rng, n):
    return rng.integers(0, 2, size=n).astype(np.int8)


# ---------------------------------------------------------------------------
# Independent reference evaluation (pure Python, no numpy linear algebra).

def naive_logit(model: NeuralModel, instance) -> float:
    h = [float(v) for v in instance]
    last = len(model.layers) - 1
    for li, (w, b) in enumerate(model.layers):
        out = []
        for u in range(w.shape[0]):
            acc = float(b[u])
            for j in range(w.shape[1]):
                acc += float(w[u, j]) * h[j]
            out.append(max(acc, 0.0) if li < last else acc)
        h = out
    return h[0]


def naive_decision(model, instance) -> int:
    return 1 if naive_logit(model, instance) >= 0 else 0


def completions(partial_values):
    """All full assignments extending a (-1 = free) state vector, index order."""
    free = [i for i, v in enumerate(partial_values) if v == -1]
    base = [int(v) if v != -1 else 0 for v in partial_values]
    for bits in product((0, 1), repeat=len(free)):
        row = list(base)
        for i, bit in zip(free, bits):
            row[i] = bit
        yield row


def naive_flips(model, partial_values, d) -> tuple[bool, list | None]:
    for row in completions(partial_values):
        if naive_decision(model, row) != int(d):
            return True, row
    return False, None


def decision_table(model) -> dict[tuple, int]:
    """Decision of every point of the Boolean cube, via the naive evaluator."""
    n = model.n_inputs
    return {
        bits: naive_decision(model, bits) for bits in product((0, 1), repeat=n)
    }


def sufficient_by_table(table, instance, subset, n) -> bool:
    inst = tuple(int(v) for v in instance)
    d = table[inst]
    free = [i for i in range(n) if i not in set(subset)]
    for bits in product((0, 1), repeat=len(free)):
        row = list(inst)
        for i, bit in zip(free, bits):
            row[i] = bit
        if table[tuple(row)] != d:
            return False
    return True


def minimal_sufficient_subsets(table, instance, n) -> list[frozenset]:
    """Every minimal sufficient feature subset, by full lattice enumeration."""
    suff = {}
    for size in range(n + 1):
        for subset in combinations(range(n), size):
            suff[frozenset(subset)] = sufficient_by_table(table, instance, subset, n)
    out = []
    for subset, ok in suff.items():
        if not ok:
            continue
        if all(not suff[subset - {v}] for v in subset):
            out.append(subset)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
