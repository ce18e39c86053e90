#!/usr/bin/env python3
"""End-to-end walkthrough on a synthetic survey file, driven through the CLI.

The real tech-workplace survey is not redistributed here, so this demo
fabricates raw records in the same vocabulary (messy gender spellings,
"Don't know" answers, company-size buckets), ingests them, and runs every
CLI command against a seeded classifier.

Run: python3 demos/05_survey_pipeline.py
"""

import csv
import tempfile
from pathlib import Path

import numpy as np

from axpnet import SURVEY_SCHEMA, NeuralModel, save_model
from axpnet.cli import main as axpnet_main

GENDERS = ["Male", "male", "M", "Female", "female", "F", "Woman",
           "Cis Male", "maile", "Trans woman", "queer", "Make"]
SIZES = ["1-5", "6-25", "26-100", "100-500", "500-1000", "More than 1000"]
YES_NO = ["Yes", "No"]
YES_NO_DK = ["Yes", "No", "Don't know"]
YES_NO_NS = ["Yes", "No", "Not sure"]
YES_NO_MAYBE = ["Yes", "No", "Maybe"]
LEAVE = ["Very easy", "Somewhat easy", "Don't know", "Somewhat difficult", "Very difficult"]
SOME = ["Yes", "No", "Some of them"]


def synthetic_survey(path, rows=300, seed=20140827):
    """Raw survey rows with a planted signal: family history, knowing the
    benefits, and openness with coworkers all push toward seeking treatment."""
    rng = np.random.default_rng(seed)
    fields = ["age", "gender", "self_employed", "family_history", "no_employees",
              "remote_work", "tech_company", "benefits", "care_options",
              "wellness_program", "seek_help", "anonymity", "leave",
              "mental_health_consequence", "phys_health_consequence",
              "coworkers", "supervisor", "mental_vs_physical",
              "obs_consequence", "treatment"]
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for _ in range(rows):
            r = {
                "age": str(int(rng.integers(19, 61))),
                "gender": str(rng.choice(GENDERS, p=[.38, .18, .1, .08, .06, .04,
                                                     .03, .05, .02, .02, .02, .02])),
                "self_employed": str(rng.choice(YES_NO, p=[.12, .88])),
                "family_history": str(rng.choice(YES_NO, p=[.4, .6])),
                "no_employees": str(rng.choice(SIZES)),
                "remote_work": str(rng.choice(YES_NO, p=[.3, .7])),
                "tech_company": str(rng.choice(YES_NO, p=[.82, .18])),
                "benefits": str(rng.choice(YES_NO_DK, p=[.38, .28, .34])),
                "care_options": str(rng.choice(YES_NO_NS, p=[.35, .4, .25])),
                "wellness_program": str(rng.choice(YES_NO_DK, p=[.27, .55, .18])),
                "seek_help": str(rng.choice(YES_NO_DK, p=[.26, .5, .24])),
                "anonymity": str(rng.choice(YES_NO_DK, p=[.3, .1, .6])),
                "leave": str(rng.choice(LEAVE)),
                "mental_health_consequence": str(rng.choice(YES_NO_MAYBE, p=[.23, .39, .38])),
                "phys_health_consequence": str(rng.choice(YES_NO_MAYBE, p=[.06, .74, .2])),
                "coworkers": str(rng.choice(SOME, p=[.22, .26, .52])),
                "supervisor": str(rng.choice(SOME, p=[.32, .38, .3])),
                "mental_vs_physical": str(rng.choice(YES_NO_DK, p=[.28, .27, .45])),
                "obs_consequence": str(rng.choice(YES_NO, p=[.15, .85])),
            }
            score = (
                1.6 * (r["family_history"] == "Yes")
                + 0.9 * (r["benefits"] == "Yes")
                + 0.8 * (r["coworkers"] in ("Yes", "Some of them"))
                + 0.5 * (int(r["age"]) > 31)
                - 0.6 * (r["leave"] in ("Very easy", "Somewhat easy"))
                - 1.4
                + rng.normal(0, 0.8)
            )
            r["treatment"] = "Yes" if score > 0 else "No"
            writer.writerow(r)


def seeded_model():
    rng = np.random.default_rng(42)
    return NeuralModel(
        SURVEY_SCHEMA,
        layers=(
            (rng.uniform(-1.2, 1.2, size=(16, 19)), rng.uniform(-0.5, 0.5, size=16)),
            (rng.uniform(-1.2, 1.2, size=(1, 16)), rng.uniform(-0.5, 0.5, size=1)),
        ),
    )


def run(args):
    print(f"\n$ axpnet {' '.join(args)}")
    code = axpnet_main(args)
    if code != 0:
        raise SystemExit(f"command failed with exit code {code}")


if __name__ == "__main__":
    workdir = Path(tempfile.mkdtemp(prefix="axpnet-demo-"))
    raw = workdir / "survey.csv"
    binarized = workdir / "binarized.csv"
    model_path = workdir / "model.json"

    synthetic_survey(raw)
    save_model(seeded_model(), model_path)
    print(f"working directory: {workdir}")

    run(["ingest", "--data", str(raw), "--out", str(binarized)])
    run(["predict", "--model", str(model_path), "--data", str(binarized), "--instance", "0"])
    run(["explain", "--model", str(model_path), "--data", str(binarized), "--instance", "0"])
    run(["bias-audit", "--model", str(model_path), "--data", str(binarized)])
    run(["feature-impact", "--model", str(model_path), "--data", str(binarized)])
    run(["mine-combos", "--model", str(model_path), "--data", str(binarized), "--max-size", "2"])
    run(["export-smt", "--model", str(model_path), "--data", str(binarized),
         "--instance", "0", "--free", "male,family_history",
         "--out", str(workdir / "query.smt2")])
    print(f"\nSMT query written to {workdir / 'query.smt2'}")
