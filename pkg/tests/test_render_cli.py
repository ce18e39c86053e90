import json

import numpy as np
import pytest

from axpnet import (
    NEGATIVE,
    POSITIVE,
    SURVEY_SCHEMA,
    Explanation,
    FeatureSchema,
    NeuralModel,
    audit_bias,
    feature_impact,
    mine_combinations,
    save_model,
    single_layer,
    write_binarized,
)
from axpnet.cli import main
from axpnet.render import (
    literal_statement,
    render_bias_report,
    render_combination_reports,
    render_explanation,
    render_impact_table,
)
from smt_eval import Script
from test_ingest import make_record, write_survey_csv


def survey_model(seed=11):
    rng = np.random.default_rng(seed)
    return NeuralModel(
        SURVEY_SCHEMA,
        layers=(
            (rng.uniform(-1.5, 1.5, size=(16, 19)), rng.uniform(-1, 1, size=16)),
            (rng.uniform(-1.5, 1.5, size=(1, 16)), rng.uniform(-1, 1, size=1)),
        ),
    )


@pytest.fixture
def model_path(tmp_path):
    path = tmp_path / "model.json"
    save_model(survey_model(), path)
    return str(path)


@pytest.fixture
def data_path(tmp_path, rng):
    features = rng.integers(0, 2, size=(30, 19)).astype(np.int8)
    labels = rng.integers(0, 2, size=30).astype(np.int8)
    path = tmp_path / "data.csv"
    write_binarized(path, features, labels)
    return str(path)


class TestRendering:
    def test_literal_statement_polarity(self):
        i = SURVEY_SCHEMA.feature_index("knows_wellness_program")
        assert literal_statement(SURVEY_SCHEMA, i, 0) == (
            "does not know about the wellness program"
        )
        assert literal_statement(SURVEY_SCHEMA, i, 1) == (
            "knows about the wellness program"
        )

    def test_generic_schema_falls_back_to_question(self):
        schema = FeatureSchema.generic(3)
        assert literal_statement(schema, 1, 1) == "Is feature 1 set? yes"
        assert literal_statement(schema, 1, 0) == "Is feature 1 set? no"

    def test_explanation_rendering(self):
        inst = np.zeros(19, dtype=np.int8)
        inst[3] = 1
        xp = Explanation(literals=((3, 1), (9, 0)), decision=POSITIVE, instance=inst)
        text = render_explanation(xp, SURVEY_SCHEMA)
        assert "decision: positive" in text
        assert "x3 ∧ ¬x9" in text
        assert "x3 = 1: has a family history of mental health issues" in text
        assert "x9 = 0: does not know about the wellness program" in text

    def test_bias_report_has_three_count_columns(self, rng):
        m = survey_model()
        data = rng.integers(0, 2, size=(25, 19))
        report = audit_bias(m, data, 1)
        text = render_bias_report(report, SURVEY_SCHEMA)
        header = text.splitlines()[0].split()
        assert header == ["Unbiased", "Negative", "Positive"]
        row = text.splitlines()[2].split()
        assert [int(v) for v in row] == [
            report.unbiased, report.biased_negative, report.biased_positive,
        ]

    def test_impact_table_one_row_per_feature(self, rng):
        m = survey_model()
        data = rng.integers(0, 2, size=(20, 19))
        impact = feature_impact(m, data)
        text = render_impact_table(impact, SURVEY_SCHEMA)
        feature_rows = [l for l in text.splitlines() if l.startswith("x")]
        assert len(feature_rows) == 19

    def test_combo_report_carries_both_ratios(self, rng):
        m = survey_model()
        data = rng.integers(0, 2, size=(25, 19))
        impact = feature_impact(m, data)
        reports = [
            mine_combinations(impact, outcome, max_size=2, min_count=1)
            for outcome in (NEGATIVE, POSITIVE)
        ]
        text = render_combination_reports(reports)
        header = text.splitlines()[0].split()
        assert "Whole" in header and "Specific" in header


class TestCliIngest:
    def test_ingest_summary_and_idempotence(self, tmp_path, capsys):
        raw = tmp_path / "survey.csv"
        write_survey_csv(
            raw,
            [
                make_record(age="40", treatment="Yes"),
                make_record(age="20", treatment="No"),
                make_record(age="50", gender="Male", treatment="Yes"),
            ],
        )
        out = tmp_path / "bin.csv"
        assert main(["ingest", "--data", str(raw), "--out", str(out)]) == 0
        printed = capsys.readouterr().out
        assert "3 rows, 2 positive" in printed
        first = out.read_bytes()
        assert main(["ingest", "--data", str(raw), "--out", str(out)]) == 0
        assert out.read_bytes() == first

    def test_malformed_file_exit_code(self, tmp_path, capsys):
        raw = tmp_path / "bad.csv"
        raw.write_text("age,gender\n40,Male\n")
        out = tmp_path / "bin.csv"
        assert main(["ingest", "--data", str(raw), "--out", str(out)]) == 3


class TestCliPredictExplain:
    def test_predict_inline(self, model_path, capsys):
        bits = "1" * 19
        assert main(["predict", "--model", model_path, "--instance", bits]) == 0
        out = capsys.readouterr().out
        assert "positive" in out or "negative" in out

    def test_predict_whole_dataset_json(self, model_path, data_path, capsys):
        assert main([
            "predict", "--model", model_path, "--data", data_path, "--format", "json",
        ]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["predictions"]) == 30
        assert all(r["decision"] in (0, 1, None) for r in doc["predictions"])

    def test_explain_text_and_json_agree(self, model_path, data_path, capsys):
        assert main([
            "explain", "--model", model_path, "--data", data_path, "--instance", "4",
        ]) == 0
        text = capsys.readouterr().out
        assert main([
            "explain", "--model", model_path, "--data", data_path,
            "--instance", "4", "--format", "json",
        ]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["conjunction"] in text
        for lit in doc["literals"]:
            assert f"x{lit['feature']} = {lit['value']}" in text

    def test_explain_respects_env_default_model(self, model_path, data_path, capsys, monkeypatch):
        monkeypatch.setenv("AXPNET_MODEL", model_path)
        assert main(["explain", "--data", data_path, "--instance", "0"]) == 0
        assert "explanation:" in capsys.readouterr().out

    def test_bad_index_exit_code(self, model_path, data_path, capsys):
        assert main([
            "explain", "--model", model_path, "--data", data_path, "--instance", "99",
        ]) == 2

    def test_ambiguous_instance_exit_code(self, tmp_path, capsys):
        path = tmp_path / "zero.json"
        save_model(single_layer([0.0, 0.0], [0.0]), path)
        assert main(["predict", "--model", str(path), "--instance", "11"]) == 4

    def test_custom_order_flag(self, model_path, data_path, capsys):
        assert main([
            "explain", "--model", model_path, "--data", data_path,
            "--instance", "2", "--order", "weight",
        ]) == 0
        assert main([
            "explain", "--model", model_path, "--data", data_path,
            "--instance", "2", "--order", ",".join(str(v) for v in reversed(range(19))),
        ]) == 0


class TestCliAudits:
    def test_bias_audit_json_and_text_same_numbers(self, model_path, data_path, capsys, tmp_path):
        assert main([
            "bias-audit", "--model", model_path, "--data", data_path,
            "--format", "json",
        ]) == 0
        doc = json.loads(capsys.readouterr().out)
        out = tmp_path / "report.txt"
        assert main([
            "bias-audit", "--model", model_path, "--data", data_path,
            "--out", str(out),
        ]) == 0
        text = out.read_text()
        row = text.splitlines()[2].split()
        assert [int(v) for v in row] == [
            doc["unbiased"], doc["biased_negative"], doc["biased_positive"],
        ]
        assert doc["unbiased"] + doc["biased_negative"] + doc["biased_positive"] + doc["ambiguous"] == 30

    def test_protected_by_name(self, model_path, data_path, capsys):
        assert main([
            "bias-audit", "--model", model_path, "--data", data_path,
            "--protected", "male", "--format", "json",
        ]) == 0
        assert json.loads(capsys.readouterr().out)["protected"] == 1

    def test_unknown_protected_is_usage_error(self, model_path, data_path, capsys):
        assert main([
            "bias-audit", "--model", model_path, "--data", data_path,
            "--protected", "nonexistent",
        ]) == 2

    def test_feature_impact_rows(self, model_path, data_path, capsys):
        assert main([
            "feature-impact", "--model", model_path, "--data", data_path,
            "--format", "json",
        ]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["features"]) == 19
        for row in doc["features"]:
            assert (
                row["non_influenced"] + row["critical_negative"] + row["critical_positive"]
                == doc["audited"]
            )

    def test_mine_combos_ratios(self, model_path, data_path, capsys):
        assert main([
            "mine-combos", "--model", model_path, "--data", data_path,
            "--max-size", "2", "--min-count", "1", "--format", "json",
        ]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["reports"]) == 2
        for report in doc["reports"]:
            for combo in report["combinations"]:
                assert 0 < combo["count"] <= report["outcome_total"]
                assert "whole_ratio" in combo and "outcome_ratio" in combo


class TestCliExportSmt:
    def test_export_parses_and_matches(self, model_path, data_path, capsys, tmp_path):
        out = tmp_path / "query.smt2"
        assert main([
            "export-smt", "--model", model_path, "--data", data_path,
            "--instance", "0", "--free", "0,3,5", "--out", str(out),
        ]) == 0
        script = Script(out.read_text())
        assert len(script.inputs) == 19
        # fully fixed instance can never flip its own decision
        assert main([
            "export-smt", "--model", model_path, "--data", data_path,
            "--instance", "0", "--out", str(out),
        ]) == 0
        assert not Script(out.read_text()).satisfiable()

    def test_missing_model_is_usage_error(self, data_path, capsys, monkeypatch):
        monkeypatch.delenv("AXPNET_MODEL", raising=False)
        assert main(["predict", "--data", data_path, "--instance", "0"]) == 2
