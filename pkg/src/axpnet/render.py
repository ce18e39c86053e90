"""Human-readable and machine-readable renderings of explanations and reports."""

from __future__ import annotations

from .audit import BiasAuditReport, CombinationReport, FeatureImpactTable
from .explain import Explanation
from .model import Decision, FeatureSchema, POSITIVE

# Statement forms for the survey schema, keyed by feature name:
# (rendered when the literal is 1, rendered when it is 0).
SURVEY_STATEMENTS = {
    "age_over_31": ("is older than 31", "is 31 or younger"),
    "male": ("is male", "is not male"),
    "self_employed": ("is self-employed", "is not self-employed"),
    "family_history": (
        "has a family history of mental health issues",
        "has no family history of mental health issues",
    ),
    "small_company": (
        "works with a small number of people",
        "works with a large number of people",
    ),
    "remote_work": ("works remotely", "does not work remotely"),
    "tech_company": ("works in a tech company", "does not work in a tech company"),
    "knows_benefits": (
        "knows the benefits provided",
        "does not know the benefits provided",
    ),
    "knows_care_options": (
        "knows about the care options",
        "does not know about the care options",
    ),
    "knows_wellness_program": (
        "knows about the wellness program",
        "does not know about the wellness program",
    ),
    "knows_seek_help": (
        "knows how to seek help at the workplace",
        "does not know how to seek help at the workplace",
    ),
    "anonymity_protected": (
        "believes anonymity is protected when using mental health resources",
        "does not believe anonymity is protected when using mental health resources",
    ),
    "easy_leave": (
        "finds it easy to take leave for mental health conditions",
        "it is not easy to take leave for mental health conditions",
    ),
    "mh_talk_consequence": (
        "believes discussing mental health with the employer has negative consequences",
        "does not believe discussing mental health with the employer has negative consequences",
    ),
    "ph_talk_consequence": (
        "believes discussing physical health with the employer has negative consequences",
        "does not believe discussing physical health with the employer has negative consequences",
    ),
    "coworkers_open": (
        "could discuss mental health with some coworkers",
        "could not discuss mental health with coworkers",
    ),
    "supervisor_open": (
        "could discuss mental health with a supervisor",
        "could not discuss mental health with a supervisor",
    ),
    "mh_as_serious_as_ph": (
        "believes the employer treats mental health as seriously as physical health",
        "does not believe the employer treats mental health as seriously as physical health",
    ),
    "observed_consequences": (
        "has observed negative consequences for coworkers with mental health conditions",
        "has not observed negative consequences for coworkers with mental health conditions",
    ),
}

OUTCOME_WORD = {POSITIVE: "positive", Decision.NEGATIVE: "negative"}


def literal_statement(schema: FeatureSchema, feature: int, value: int) -> str:
    """Statement for one literal, with polarity applied."""
    name = schema.names[feature]
    if name in SURVEY_STATEMENTS:
        pos, neg = SURVEY_STATEMENTS[name]
        return pos if value else neg
    question = schema.questions[feature]
    return f"{question} {'yes' if value else 'no'}"


def render_explanation(explanation: Explanation, schema: FeatureSchema) -> str:
    """Decision line, literal conjunction, and one bullet per literal."""
    lines = [
        f"decision: {OUTCOME_WORD[explanation.decision]}",
        f"explanation: {explanation.conjunction()}",
    ]
    for i, v in explanation.literals:
        lines.append(f"  - x{i} = {v}: {literal_statement(schema, i, v)}")
    return "\n".join(lines)


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for c, cell in enumerate(row):
            widths[c] = max(widths[c], len(cell))
    def fmt(cells):
        return "  ".join(cell.ljust(widths[c]) for c, cell in enumerate(cells)).rstrip()
    sep = "-" * len(fmt(headers))
    return "\n".join([fmt(headers), sep] + [fmt(r) for r in rows])


def render_bias_report(report: BiasAuditReport, schema: FeatureSchema) -> str:
    name = schema.names[report.protected]
    rows = [[
        str(report.unbiased),
        str(report.biased_negative),
        str(report.biased_positive),
    ]]
    table = _table(["Unbiased", "Negative", "Positive"], rows)
    tail = (
        f"protected feature: x{report.protected} ({name})\n"
        f"unbiased ratio: {report.unbiased_ratio:.2%} of {report.total} instances"
    )
    if report.ambiguous:
        tail += f"\nambiguous (excluded): {report.ambiguous}"
    return f"{table}\n{tail}"


def bias_report_to_dict(report: BiasAuditReport, schema: FeatureSchema) -> dict:
    return {
        "protected": report.protected,
        "protected_name": schema.names[report.protected],
        "unbiased": report.unbiased,
        "biased_negative": report.biased_negative,
        "biased_positive": report.biased_positive,
        "ambiguous": report.ambiguous,
        "total": report.total,
        "unbiased_ratio": report.unbiased_ratio,
    }


def render_impact_table(impact: FeatureImpactTable, schema: FeatureSchema) -> str:
    rows = [
        [
            f"x{v}",
            schema.names[v],
            str(int(impact.non_influenced[v])),
            str(int(impact.critical_negative[v])),
            str(int(impact.critical_positive[v])),
        ]
        for v in range(impact.n)
    ]
    table = _table(["Feature", "Name", "Non influenced", "Negative", "Positive"], rows)
    tail = f"audited: {impact.audited} of {impact.total} instances"
    if impact.ambiguous_indices:
        tail += f" ({len(impact.ambiguous_indices)} ambiguous excluded)"
    return f"{table}\n{tail}"


def impact_table_to_dict(impact: FeatureImpactTable, schema: FeatureSchema) -> dict:
    return {
        "total": impact.total,
        "audited": impact.audited,
        "ambiguous": len(impact.ambiguous_indices),
        "features": [
            {
                "feature": v,
                "name": schema.names[v],
                "non_influenced": int(impact.non_influenced[v]),
                "critical_negative": int(impact.critical_negative[v]),
                "critical_positive": int(impact.critical_positive[v]),
            }
            for v in range(impact.n)
        ],
    }


def _combo_str(features: tuple[int, ...]) -> str:
    return " ∧ ".join(f"x{v}" for v in features)


def render_combination_reports(reports: list[CombinationReport]) -> str:
    rows = []
    for report in reports:
        for row in report.rows:
            rows.append(
                [
                    OUTCOME_WORD[row.outcome].capitalize(),
                    _combo_str(row.features),
                    str(row.count),
                    f"{row.whole_ratio:.1%}",
                    f"{row.outcome_ratio:.1%}",
                ]
            )
    table = _table(["Outcome", "Combination", "Count", "Whole", "Specific"], rows)
    meta = "; ".join(
        f"{OUTCOME_WORD[r.outcome]}: {r.outcome_total} instances, min count {r.min_count}"
        for r in reports
    )
    return f"{table}\n{meta}"


def combination_reports_to_dict(reports: list[CombinationReport]) -> dict:
    return {
        "reports": [
            {
                "outcome": int(r.outcome),
                "outcome_total": r.outcome_total,
                "dataset_total": r.dataset_total,
                "max_size": r.max_size,
                "min_count": r.min_count,
                "combinations": [
                    {
                        "features": list(row.features),
                        "combination": _combo_str(row.features),
                        "count": row.count,
                        "whole_ratio": row.whole_ratio,
                        "outcome_ratio": row.outcome_ratio,
                    }
                    for row in r.rows
                ],
            }
            for r in reports
        ]
    }
