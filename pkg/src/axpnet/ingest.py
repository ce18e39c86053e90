"""Binarization of the tech-workplace mental health survey.

Raw survey rows are turned into 19 Boolean features plus the self-reported
treatment label.  Every mapping is total: unknown, neutral, or missing
answers ("Don't know", "Not sure", "Maybe", empty) count as 0, i.e. not
affirmed.  All value vocabularies live in one declarative rules table so
they can be revised without touching code.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import IngestError
from .model import FeatureSchema

# Company sizes counted as "works with a small number of people".
SMALL_COMPANY_SIZES = frozenset({"1-5", "6-25", "26-100"})

# Casefolded spellings counted as male; anything containing "trans" is
# non-male regardless of this list.
MALE_TERMS = frozenset(
    {
        "male",
        "m",
        "man",
        "male-ish",
        "maile",
        "mal",
        "male (cis)",
        "make",
        "msle",
        "mail",
        "malr",
        "cis man",
        "cis male",
        "guy",
    }
)

EASY_LEAVE_VALUES = frozenset({"very easy", "somewhat easy"})
OPEN_DISCUSSION_VALUES = frozenset({"yes", "some of them"})
YES = frozenset({"yes"})

TREATMENT_FIELD = "treatment"


@dataclass(frozen=True)
class FeatureRule:
    """One feature of the binarized schema and how to derive it."""

    name: str
    question: str
    source: str
    kind: str = "value"  # "value" | "age" | "gender"
    affirmative: frozenset[str] = YES
    threshold: int = 0


BINARIZATION_RULES = (
    FeatureRule(
        "age_over_31", "Is the applicant older than 31?", "age",
        kind="age", threshold=31,
    ),
    FeatureRule("male", "Is the applicant male?", "gender", kind="gender"),
    FeatureRule("self_employed", "Is the applicant self-employed?", "self_employed"),
    FeatureRule(
        "family_history", "Family history of mental health issues?", "family_history",
    ),
    FeatureRule(
        "small_company", "Works with a small number of people?", "no_employees",
        affirmative=SMALL_COMPANY_SIZES,
    ),
    FeatureRule("remote_work", "Works remotely?", "remote_work"),
    FeatureRule("tech_company", "Works in a tech company?", "tech_company"),
    FeatureRule("knows_benefits", "Aware of provided benefits?", "benefits"),
    FeatureRule("knows_care_options", "Aware of care options?", "care_options"),
    FeatureRule(
        "knows_wellness_program", "Aware of employee wellness programs?",
        "wellness_program",
    ),
    FeatureRule("knows_seek_help", "Knows how to seek help?", "seek_help"),
    FeatureRule(
        "anonymity_protected",
        "Is anonymity protected if using mental health resources?", "anonymity",
    ),
    FeatureRule(
        "easy_leave", "Is it easy to take medical leave for mental health?", "leave",
        affirmative=EASY_LEAVE_VALUES,
    ),
    FeatureRule(
        "mh_talk_consequence",
        "Believes discussing mental health with employer has negative consequences?",
        "mental_health_consequence",
    ),
    FeatureRule(
        "ph_talk_consequence",
        "Believes discussing physical health with employer has negative consequences?",
        "phys_health_consequence",
    ),
    FeatureRule(
        "coworkers_open", "Comfortable discussing mental health with coworkers?",
        "coworkers", affirmative=OPEN_DISCUSSION_VALUES,
    ),
    FeatureRule(
        "supervisor_open", "Comfortable discussing mental health with supervisors?",
        "supervisor", affirmative=OPEN_DISCUSSION_VALUES,
    ),
    FeatureRule(
        "mh_as_serious_as_ph",
        "Believes employer treats mental health as seriously as physical health?",
        "mental_vs_physical",
    ),
    FeatureRule(
        "observed_consequences",
        "Has observed negative consequences for coworkers with mental health conditions?",
        "obs_consequence",
    ),
)

REQUIRED_FIELDS = tuple(r.source for r in BINARIZATION_RULES) + (TREATMENT_FIELD,)

# Gender is the protected attribute in the survey schema.
SURVEY_SCHEMA = FeatureSchema(
    names=tuple(r.name for r in BINARIZATION_RULES),
    questions=tuple(r.question for r in BINARIZATION_RULES),
    protected=1,
)

LABEL_COLUMN = "label"


def _clean(value) -> str:
    return str(value).strip().casefold() if value is not None else ""


def _apply_rule(rule: FeatureRule, record, index: int | None) -> int:
    raw = _clean(record.get(rule.source))
    if rule.kind == "age":
        try:
            age = int(float(raw))
        except ValueError:
            where = f" at row {index}" if index is not None else ""
            raise IngestError(f"unparseable age {raw!r}{where}") from None
        return 1 if age > rule.threshold else 0
    if rule.kind == "gender":
        if "trans" in raw:
            return 0
        return 1 if raw in MALE_TERMS else 0
    return 1 if raw in rule.affirmative else 0


def binarize(record, index: int | None = None) -> tuple[np.ndarray, int]:
    """Map one raw survey record to (19-feature vector, treatment label).

    ``record`` is a field-name -> value mapping holding every source field;
    any value is accepted, and everything not recognized as affirmative
    maps to 0.  Only an unparseable age raises.
    """
    missing = [f for f in REQUIRED_FIELDS if f not in record]
    if missing:
        raise IngestError(f"record is missing source fields {missing}")
    features = np.array(
        [_apply_rule(rule, record, index) for rule in BINARIZATION_RULES],
        dtype=np.int8,
    )
    label = 1 if _clean(record.get(TREATMENT_FIELD)) in YES else 0
    return features, label


@dataclass(frozen=True)
class DatasetStats:
    rows: int
    positives: int
    negatives: int
    male_fraction: float
    skipped: tuple[int, ...] = ()

    def summary(self) -> str:
        text = (
            f"{self.rows} rows, {self.positives} positive, "
            f"{self.negatives} negative, male fraction {self.male_fraction:.2%}"
        )
        if self.skipped:
            text += f" ({len(self.skipped)} rows skipped)"
        return text


@dataclass(frozen=True)
class BinarizedDataset:
    """Row-aligned feature matrix, labels, and summary statistics."""

    features: np.ndarray  # (rows, 19) int8
    labels: np.ndarray  # (rows,) int8
    stats: DatasetStats

    def __len__(self) -> int:
        return self.features.shape[0]


def _make_stats(
    features: np.ndarray, labels: np.ndarray, skipped=(), schema=None
) -> DatasetStats:
    schema = schema or SURVEY_SCHEMA
    rows = features.shape[0]
    positives = int(labels.sum())
    male_col = None
    if "male" in schema.names:
        male_col = schema.feature_index("male")
    elif schema.protected is not None:
        male_col = schema.protected
    male = float(features[:, male_col].mean()) if rows and male_col is not None else 0.0
    return DatasetStats(
        rows=rows,
        positives=positives,
        negatives=rows - positives,
        male_fraction=male,
        skipped=tuple(skipped),
    )


def load_dataset(path) -> BinarizedDataset:
    """Binarize a raw survey CSV (header row required).

    Rows whose age does not parse are skipped and recorded in the stats;
    a missing header field or an empty file raises.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise IngestError(f"{path}: empty file, expected a header row")
        missing = [f for f in REQUIRED_FIELDS if f not in reader.fieldnames]
        if missing:
            raise IngestError(f"{path}: header is missing columns {missing}")
        vectors, labels, skipped = [], [], []
        for index, record in enumerate(reader):
            try:
                features, label = binarize(record, index=index)
            except IngestError:
                skipped.append(index)
                continue
            vectors.append(features)
            labels.append(label)
    if not vectors:
        raise IngestError(f"{path}: no usable data rows")
    features = np.vstack(vectors)
    labels_arr = np.array(labels, dtype=np.int8)
    return BinarizedDataset(features, labels_arr, _make_stats(features, labels_arr, skipped))


def write_binarized(path, features: np.ndarray, labels: np.ndarray, schema=None) -> None:
    """Write a binarized dataset file: one row per instance, features + label."""
    schema = schema or SURVEY_SCHEMA
    features = np.asarray(features, dtype=np.int8)
    labels = np.asarray(labels, dtype=np.int8)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(schema.names) + [LABEL_COLUMN])
        for row, label in zip(features, labels):
            writer.writerow([int(v) for v in row] + [int(label)])


def read_binarized(path, schema=None) -> BinarizedDataset:
    """Read a binarized dataset file, asserting the schema's column order."""
    schema = schema or SURVEY_SCHEMA
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestError(f"{path}: empty file, expected a header row") from None
        expected = list(schema.names) + [LABEL_COLUMN]
        if header != expected:
            raise IngestError(
                f"{path}: header does not match the binarized schema; "
                f"expected {expected}, got {header}"
            )
        rows = []
        for lineno, row in enumerate(reader):
            if len(row) != len(expected):
                raise IngestError(f"{path}: row {lineno} has {len(row)} columns")
            try:
                rows.append([int(v) for v in row])
            except ValueError:
                raise IngestError(f"{path}: row {lineno} has non-integer values") from None
    if not rows:
        raise IngestError(f"{path}: no data rows")
    data = np.array(rows, dtype=np.int8)
    if not np.all((data == 0) | (data == 1)):
        raise IngestError(f"{path}: values must all be 0 or 1")
    features, labels = data[:, :-1], data[:, -1]
    return BinarizedDataset(features, labels, _make_stats(features, labels, schema=schema))
