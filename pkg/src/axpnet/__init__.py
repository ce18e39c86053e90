"""Minimal abductive explanations and fairness audits for ReLU classifiers
over Boolean features.

The package is organized as a small numpy library:

- :mod:`axpnet.model` — the classifier, exact evaluation, portable weights I/O
- :mod:`axpnet.ingest` — survey binarization and dataset files
- :mod:`axpnet.oracle` — the complete flip-query decision procedure + SMT-LIB export
- :mod:`axpnet.explain` — minimal explanations and the per-decision bias test
- :mod:`axpnet.audit` — dataset-level bias/criticality/combination analyses
- :mod:`axpnet.render` / :mod:`axpnet.cli` — reports and the command line
"""

__version__ = "0.1.0"

from .audit import (
    BiasAuditReport,
    CombinationReport,
    FeatureImpactTable,
    audit_bias,
    critical_features,
    feature_impact,
    mine_combinations,
)
from .errors import (
    AmbiguousDecisionError,
    IngestError,
    ModelFormatError,
    SchemaError,
)
from .explain import (
    Explanation,
    compute_explanation,
    compute_explanation_excluding,
    is_biased_decision,
    is_sufficient,
    weight_order,
)
from .ingest import (
    BINARIZATION_RULES,
    BinarizedDataset,
    SURVEY_SCHEMA,
    binarize,
    load_dataset,
    read_binarized,
    write_binarized,
)
from .model import (
    AMBIGUITY_MARGIN,
    Decision,
    FeatureSchema,
    NEGATIVE,
    NeuralModel,
    POSITIVE,
    as_instance,
    batch_logits,
    load_model,
    logit,
    model_from_dict,
    model_to_dict,
    predict,
    save_model,
    single_layer,
)
from .oracle import (
    FREE,
    OracleAnswer,
    PartialAssignment,
    bound_logit,
    branch_order,
    exhaustive_oracle,
    exists_counterexample,
    export_smtlib,
)

__all__ = [
    "AMBIGUITY_MARGIN",
    "AmbiguousDecisionError",
    "BINARIZATION_RULES",
    "BiasAuditReport",
    "BinarizedDataset",
    "CombinationReport",
    "Decision",
    "Explanation",
    "FREE",
    "FeatureImpactTable",
    "FeatureSchema",
    "IngestError",
    "ModelFormatError",
    "NEGATIVE",
    "NeuralModel",
    "OracleAnswer",
    "POSITIVE",
    "PartialAssignment",
    "SURVEY_SCHEMA",
    "SchemaError",
    "as_instance",
    "audit_bias",
    "batch_logits",
    "binarize",
    "bound_logit",
    "branch_order",
    "compute_explanation",
    "compute_explanation_excluding",
    "critical_features",
    "exhaustive_oracle",
    "exists_counterexample",
    "export_smtlib",
    "feature_impact",
    "is_biased_decision",
    "is_sufficient",
    "load_dataset",
    "load_model",
    "logit",
    "mine_combinations",
    "model_from_dict",
    "model_to_dict",
    "predict",
    "read_binarized",
    "save_model",
    "single_layer",
    "weight_order",
    "write_binarized",
]
