"""Complete decision procedure for the flip query, plus its SMT-LIB export.

The query: given a partial assignment (some features fixed, the rest free)
and a decision d, does any completion of the fixed part receive a decision
different from d?  :func:`exists_counterexample` answers it exactly with a
depth-first branch-and-bound over the free features, pruning subtrees whose
interval logit bounds keep every completion confidently on d's side of the
threshold.  :func:`exhaustive_oracle` is the brute-force reference used by
the test suite, and :func:`export_smtlib` emits the same query as an
SMT-LIB2 script for cross-validation with external solvers.

Determinism: completions are conceptually scanned in lexicographic order
over the free features sorted by descending first-layer |weight| column
mass (ties broken by index), with value 0 before 1.  The returned witness
is the first flipping completion in that order; pruning only ever removes
subtrees with no flip and no near-boundary completion, so it cannot change
the outcome.

Ambiguity: a completion whose |logit| falls inside the margin is neither a
confident flip nor confidently d and raises AmbiguousDecisionError.
exists_counterexample raises on the first such completion it would reach;
exhaustive_oracle checks every completion, so on hand-built near-boundary
queries it can raise where the search already returned a confident witness.
The two always agree on ``flips`` for unambiguous queries.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

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
)

FREE = -1

# Below this many free features a node is resolved by one vectorized scan
# instead of further branching.
_LEAF_BATCH_CAP = 12

# Batch logits within this widened band get re-confirmed by scalar logit()
# so GEMM-vs-GEMV rounding skew can never misclassify a boundary case.
_CONFIRM_BAND = 2.0 * AMBIGUITY_MARGIN


@dataclass(frozen=True, eq=False)
class PartialAssignment:
    """Per-feature state vector: 0 or 1 when fixed, FREE (-1) otherwise."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values)
        if arr.ndim != 1 or arr.shape[0] == 0:
            raise SchemaError("partial assignment must be a nonempty vector")
        out = arr.astype(np.int8)
        if not np.array_equal(out, arr) or not np.all((out >= -1) & (out <= 1)):
            raise SchemaError("partial assignment entries must be -1 (free), 0, or 1")
        out = out.copy()
        out.flags.writeable = False
        object.__setattr__(self, "values", out)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def free_indices(self) -> np.ndarray:
        return np.flatnonzero(self.values == FREE)

    @property
    def fixed_indices(self) -> np.ndarray:
        return np.flatnonzero(self.values != FREE)

    @classmethod
    def from_instance(cls, instance, free=()) -> "PartialAssignment":
        """Fix every feature at the instance's value except those in ``free``."""
        vals = as_instance(instance).copy()
        free = np.asarray(list(free), dtype=np.intp)
        vals[free] = FREE
        return cls(vals)

    @classmethod
    def from_fixed(cls, instance, fixed) -> "PartialAssignment":
        """Fix only the features in ``fixed`` at the instance's values."""
        inst = as_instance(instance)
        vals = np.full(inst.shape[0], FREE, dtype=np.int8)
        fixed = np.asarray(list(fixed), dtype=np.intp)
        vals[fixed] = inst[fixed]
        return cls(vals)

    def extends(self, completion) -> bool:
        """True iff ``completion`` agrees with every fixed feature."""
        comp = as_instance(completion, self.n)
        fixed = self.values != FREE
        return bool(np.array_equal(comp[fixed], self.values[fixed]))


@dataclass(frozen=True)
class OracleAnswer:
    """Result of a flip query: does some completion decide differently?"""

    flips: bool
    witness: np.ndarray | None = None


def _check_compatible(model: NeuralModel, partial: PartialAssignment) -> None:
    if partial.n != model.n_inputs:
        raise SchemaError(
            f"partial assignment has {partial.n} features, model has {model.n_inputs}"
        )


def _bound_on(model: NeuralModel, vals: np.ndarray) -> tuple[float, float]:
    lo = np.where(vals == FREE, 0.0, vals).astype(np.float64)
    hi = np.where(vals == FREE, 1.0, vals).astype(np.float64)
    w_pos, w_neg = model.signed_weights()
    last = len(model.layers) - 1
    for li, (_, b) in enumerate(model.layers):
        new_lo = w_pos[li] @ lo + w_neg[li] @ hi + b
        new_hi = w_pos[li] @ hi + w_neg[li] @ lo + b
        if li < last:
            np.maximum(new_lo, 0.0, out=new_lo)
            np.maximum(new_hi, 0.0, out=new_hi)
        lo, hi = new_lo, new_hi
    return float(lo[0]), float(hi[0])


def bound_logit(model: NeuralModel, partial: PartialAssignment) -> tuple[float, float]:
    """Interval [lo, hi] guaranteed to contain the logit of every completion.

    Free inputs contribute [0, 1], fixed inputs their value; each linear
    layer maps intervals through the signed weight split, ReLU clamps the
    hidden bounds at 0.
    """
    _check_compatible(model, partial)
    return _bound_on(model, partial.values)


def branch_order(model: NeuralModel, free) -> list[int]:
    """Free features by descending first-layer |weight| mass, ties by index."""
    mass = model.input_weight_mass
    return sorted((int(j) for j in free), key=lambda j: (-mass[j], j))


def _scan_leaves(model, base, rem, d) -> np.ndarray | None:
    """Scan all completions of the remaining free features, lexicographically.

    Returns the first confidently flipping completion, None if every
    completion is confidently d, and raises if the first interesting
    completion is ambiguous.
    """
    k = len(rem)
    rows = 1 << k
    x = np.repeat(base[None, :], rows, axis=0)
    codes = np.arange(rows)
    for pos, j in enumerate(rem):
        x[:, j] = (codes >> (k - 1 - pos)) & 1
    values = batch_logits(model, x)
    if d == POSITIVE:
        interesting = values < _CONFIRM_BAND
    else:
        interesting = values > -_CONFIRM_BAND
    for idx in np.flatnonzero(interesting):
        exact = logit(model, x[idx])
        if abs(exact) < AMBIGUITY_MARGIN:
            raise AmbiguousDecisionError(exact)
        if (exact >= 0) != (d == POSITIVE):
            return x[idx].copy()
        # confidently d after scalar confirmation: keep scanning
    return None


def exists_counterexample(
    model: NeuralModel, partial: PartialAssignment, d: Decision
) -> OracleAnswer:
    """Exact answer to: does any completion of ``partial`` decide != d?

    Complete depth-first branch-and-bound; a subtree is pruned only when its
    interval bound keeps every completion at least the ambiguity margin onto
    d's side of the threshold, so pruning can hide neither a flip nor an
    ambiguous completion.
    """
    _check_compatible(model, partial)
    d = Decision(d)
    free = branch_order(model, partial.free_indices)
    base = np.where(partial.values == FREE, 0, partial.values).astype(np.int8)

    def dfs(rem: list[int]) -> np.ndarray | None:
        node = base.copy()
        node[rem] = FREE
        lo, hi = _bound_on(model, node)
        if d == POSITIVE:
            if lo >= AMBIGUITY_MARGIN:
                return None
        else:
            if hi <= -AMBIGUITY_MARGIN:
                return None
        if len(rem) <= _LEAF_BATCH_CAP:
            return _scan_leaves(model, base, rem, d)
        j, rest = rem[0], rem[1:]
        for v in (0, 1):
            base[j] = v
            found = dfs(rest)
            if found is not None:
                return found
        return None

    witness = dfs(free)
    if witness is None:
        return OracleAnswer(flips=False)
    return OracleAnswer(flips=True, witness=witness)


def exhaustive_oracle(
    model: NeuralModel, partial: PartialAssignment, d: Decision, cap: int = 22
) -> OracleAnswer:
    """Brute-force reference: enumerate every completion of the free set.

    Scans all 2^|free| completions in binary counting order over the free
    features in ascending index order (independent of the search heuristic),
    raising if any completion lands inside the ambiguity margin.
    """
    _check_compatible(model, partial)
    d = Decision(d)
    free = [int(j) for j in partial.free_indices]
    if len(free) > cap:
        raise ValueError(f"{len(free)} free features exceeds enumeration cap {cap}")
    base = np.where(partial.values == FREE, 0, partial.values).astype(np.int8)
    k = len(free)
    total = 1 << k
    chunk = 1 << 16
    witness = None
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total))
        x = np.repeat(base[None, :], codes.shape[0], axis=0)
        for pos, j in enumerate(free):
            x[:, j] = (codes >> (k - 1 - pos)) & 1
        values = batch_logits(model, x)
        for idx in np.flatnonzero(np.abs(values) < _CONFIRM_BAND):
            exact = logit(model, x[idx])
            if abs(exact) < AMBIGUITY_MARGIN:
                raise AmbiguousDecisionError(exact)
        if witness is None:
            flipped = (values >= 0) != (d == POSITIVE)
            hits = np.flatnonzero(flipped)
            if hits.size:
                witness = x[hits[0]].copy()
    return OracleAnswer(flips=witness is not None, witness=witness)


def _smt_num(value: float) -> str:
    """SMT-LIB real literal: plain decimal, negatives via unary minus."""
    if value < 0:
        return f"(- {_smt_num(-value)})"
    text = format(Decimal(repr(float(value))), "f")
    if "." not in text:
        text += ".0"
    return text


def _smt_linear(weights, names, bias: float) -> str:
    terms = [f"(* {_smt_num(w)} {name})" for w, name in zip(weights, names)]
    terms.append(_smt_num(bias))
    return "(+ " + " ".join(terms) + ")"


def export_smtlib(
    model: NeuralModel, partial: PartialAssignment, d: Decision
) -> str:
    """SMT-LIB2 script satisfiable iff exists_counterexample flips.

    Linear real arithmetic over 0/1-constrained Real input variables; one
    term per neuron, ReLU encoded as an ite on the sign of the linear form,
    fixed literals asserted, and the negated decision asserted on ``out``.
    Variable naming: x0..x{n-1}, h{layer}_{unit} (1-based layers), out.
    """
    _check_compatible(model, partial)
    d = Decision(d)
    n = model.n_inputs
    lines = ["(set-logic QF_LRA)"]
    for i in range(n):
        lines.append(f"(declare-const x{i} Real)")
    for i in range(n):
        lines.append(f"(assert (or (= x{i} 0.0) (= x{i} 1.0)))")
    vals = partial.values
    for i in range(n):
        if vals[i] != FREE:
            lines.append(f"(assert (= x{i} {_smt_num(float(vals[i]))}))")
    names = [f"x{i}" for i in range(n)]
    last = len(model.layers) - 1
    for li, (w, b) in enumerate(model.layers):
        if li < last:
            next_names = []
            for u in range(w.shape[0]):
                name = f"h{li + 1}_{u}"
                pre = _smt_linear(w[u], names, float(b[u]))
                lines.append(f"(declare-const {name} Real)")
                lines.append(f"(assert (= {name} (ite (>= {pre} 0.0) {pre} 0.0)))")
                next_names.append(name)
            names = next_names
        else:
            pre = _smt_linear(w[0], names, float(b[0]))
            lines.append("(declare-const out Real)")
            lines.append(f"(assert (= out {pre}))")
    if d == POSITIVE:
        lines.append("(assert (< out 0.0))")
    else:
        lines.append("(assert (>= out 0.0))")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
