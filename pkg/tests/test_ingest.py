import csv

import numpy as np
import pytest

from axpnet import (
    BINARIZATION_RULES,
    IngestError,
    SURVEY_SCHEMA,
    binarize,
    load_dataset,
    read_binarized,
    write_binarized,
)
from axpnet.ingest import REQUIRED_FIELDS, TREATMENT_FIELD

CANONICAL_NAMES = (
    "age_over_31", "male", "self_employed", "family_history", "small_company",
    "remote_work", "tech_company", "knows_benefits", "knows_care_options",
    "knows_wellness_program", "knows_seek_help", "anonymity_protected",
    "easy_leave", "mh_talk_consequence", "ph_talk_consequence",
    "coworkers_open", "supervisor_open", "mh_as_serious_as_ph",
    "observed_consequences",
)


def make_record(**overrides):
    record = {
        "age": "30",
        "gender": "Female",
        "self_employed": "No",
        "family_history": "No",
        "no_employees": "100-500",
        "remote_work": "No",
        "tech_company": "Yes",
        "benefits": "No",
        "care_options": "No",
        "wellness_program": "No",
        "seek_help": "No",
        "anonymity": "No",
        "leave": "Somewhat difficult",
        "mental_health_consequence": "No",
        "phys_health_consequence": "No",
        "coworkers": "No",
        "supervisor": "No",
        "mental_vs_physical": "No",
        "obs_consequence": "No",
        "treatment": "No",
    }
    record.update(overrides)
    return record


def write_survey_csv(path, records):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(REQUIRED_FIELDS))
        writer.writeheader()
        writer.writerows(records)


class TestBinarize:
    def test_age_threshold(self):
        x, _ = binarize(make_record(age="45"))
        assert x[0] == 1
        x, _ = binarize(make_record(age="25"))
        assert x[0] == 0
        x, _ = binarize(make_record(age="31"))
        assert x[0] == 0  # strictly greater than 31
        x, _ = binarize(make_record(age="32"))
        assert x[0] == 1

    def test_gender_normalization(self):
        assert binarize(make_record(gender="Male"))[0][1] == 1
        assert binarize(make_record(gender="female"))[0][1] == 0
        assert binarize(make_record(gender="M"))[0][1] == 1
        assert binarize(make_record(gender="maile"))[0][1] == 1
        assert binarize(make_record(gender="Cis Male"))[0][1] == 1
        assert binarize(make_record(gender="Trans male"))[0][1] == 0
        assert binarize(make_record(gender="Trans-female"))[0][1] == 0
        assert binarize(make_record(gender="queer"))[0][1] == 0

    def test_unknown_maps_to_zero(self):
        assert binarize(make_record(benefits="Don't know"))[0][7] == 0
        assert binarize(make_record(care_options="Not sure"))[0][8] == 0
        assert binarize(make_record(mental_health_consequence="Maybe"))[0][13] == 0
        assert binarize(make_record(anonymity=""))[0][11] == 0

    def test_affirmative_yes_features(self):
        x, _ = binarize(make_record(family_history="Yes", wellness_program="Yes"))
        assert x[3] == 1 and x[9] == 1

    def test_company_size_cut(self):
        assert binarize(make_record(no_employees="1-5"))[0][4] == 1
        assert binarize(make_record(no_employees="6-25"))[0][4] == 1
        assert binarize(make_record(no_employees="26-100"))[0][4] == 1
        assert binarize(make_record(no_employees="100-500"))[0][4] == 0
        assert binarize(make_record(no_employees="More than 1000"))[0][4] == 0

    def test_leave_difficulty(self):
        assert binarize(make_record(leave="Very easy"))[0][12] == 1
        assert binarize(make_record(leave="Somewhat easy"))[0][12] == 1
        assert binarize(make_record(leave="Don't know"))[0][12] == 0
        assert binarize(make_record(leave="Very difficult"))[0][12] == 0

    def test_partial_willingness_counts_as_open(self):
        assert binarize(make_record(coworkers="Some of them"))[0][15] == 1
        assert binarize(make_record(supervisor="Some of them"))[0][16] == 1
        assert binarize(make_record(coworkers="No"))[0][15] == 0

    def test_label(self):
        assert binarize(make_record(treatment="Yes"))[1] == 1
        assert binarize(make_record(treatment="No"))[1] == 0

    def test_totality(self):
        junk = make_record(
            gender="xyzzy", benefits="whatever", leave="?", no_employees="lots",
            coworkers="-", mental_vs_physical="object Object",
        )
        x, label = binarize(junk)
        assert x.shape == (19,)
        assert set(np.unique(x)) <= {0, 1}
        assert label in (0, 1)

    def test_unparseable_age_raises_with_index(self):
        with pytest.raises(IngestError, match="row 17"):
            binarize(make_record(age="unknown"), index=17)

    def test_missing_field_raises(self):
        record = make_record()
        del record["benefits"]
        with pytest.raises(IngestError, match="benefits"):
            binarize(record)


class TestSchemaOrder:
    def test_feature_order_is_canonical(self):
        assert SURVEY_SCHEMA.names == CANONICAL_NAMES
        assert tuple(r.name for r in BINARIZATION_RULES) == CANONICAL_NAMES
        assert SURVEY_SCHEMA.n == 19
        assert SURVEY_SCHEMA.protected == 1  # gender

    def test_source_fields(self):
        assert len(REQUIRED_FIELDS) == 20
        assert TREATMENT_FIELD in REQUIRED_FIELDS


class TestLoadDataset:
    def test_counts_and_stats(self, tmp_path):
        records = [
            make_record(age="40", gender="Male", treatment="Yes"),
            make_record(age="22", gender="Male", treatment="No"),
            make_record(age="35", gender="Female", treatment="Yes"),
            make_record(age="29", gender="M", treatment="No"),
        ]
        path = tmp_path / "survey.csv"
        write_survey_csv(path, records)
        ds = load_dataset(path)
        assert len(ds) == 4
        assert ds.stats.rows == 4
        assert ds.stats.positives == 2
        assert ds.stats.negatives == 2
        assert ds.stats.male_fraction == pytest.approx(0.75)
        assert ds.stats.positives + ds.stats.negatives == ds.stats.rows

    def test_bad_age_rows_skipped_and_counted(self, tmp_path):
        records = [make_record(), make_record(age="n/a"), make_record(age="50")]
        path = tmp_path / "survey.csv"
        write_survey_csv(path, records)
        ds = load_dataset(path)
        assert len(ds) == 2
        assert ds.stats.skipped == (1,)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(IngestError):
            load_dataset(path)

    def test_missing_header_columns_rejected(self, tmp_path):
        path = tmp_path / "short.csv"
        path.write_text("age,gender\n40,Male\n")
        with pytest.raises(IngestError, match="missing columns"):
            load_dataset(path)

    def test_header_only_rejected(self, tmp_path):
        path = tmp_path / "headeronly.csv"
        write_survey_csv(path, [])
        with pytest.raises(IngestError, match="no usable data rows"):
            load_dataset(path)


class TestBinarizedFile:
    def test_round_trip(self, tmp_path, rng):
        features = rng.integers(0, 2, size=(12, 19)).astype(np.int8)
        labels = rng.integers(0, 2, size=12).astype(np.int8)
        path = tmp_path / "bin.csv"
        write_binarized(path, features, labels)
        ds = read_binarized(path)
        assert np.array_equal(ds.features, features)
        assert np.array_equal(ds.labels, labels)

    def test_header_order_asserted(self, tmp_path):
        path = tmp_path / "bad.csv"
        names = list(CANONICAL_NAMES)
        names[0], names[1] = names[1], names[0]
        path.write_text(",".join(names + ["label"]) + "\n" + ",".join(["0"] * 20) + "\n")
        with pytest.raises(IngestError, match="column order|header"):
            read_binarized(path)

    def test_non_binary_values_rejected(self, tmp_path):
        path = tmp_path / "bad2.csv"
        path.write_text(
            ",".join(list(CANONICAL_NAMES) + ["label"]) + "\n" + ",".join(["2"] * 20) + "\n"
        )
        with pytest.raises(IngestError):
            read_binarized(path)

    def test_ingest_to_binarized_pipeline(self, tmp_path):
        records = [make_record(age=str(20 + i), treatment="Yes" if i % 2 else "No") for i in range(8)]
        raw = tmp_path / "survey.csv"
        write_survey_csv(raw, records)
        ds = load_dataset(raw)
        out = tmp_path / "bin.csv"
        write_binarized(out, ds.features, ds.labels)
        back = read_binarized(out)
        assert np.array_equal(back.features, ds.features)
        assert np.array_equal(back.labels, ds.labels)
