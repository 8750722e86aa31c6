"""Canonical serialization and verdict re-derivation."""

import json

import pytest

from bitension.errors import StructuralError
from bitension.reports import (
    build_report,
    canonical_json,
    check_report,
    derive_verdict,
    fmt_float,
    labeled,
    lambda_verdict,
)


def test_fmt_float_17_digits_and_negative_zero():
    assert fmt_float(0.5) == "0.5"
    assert fmt_float(-0.0) == "0"
    assert fmt_float(1.0 / 3.0) == "0.33333333333333331"
    with pytest.raises(StructuralError):
        fmt_float(float("nan"))


def test_canonical_json_round_trip_and_order():
    doc = {"b": 1, "a": [1.5, True, None, "x"]}
    text = canonical_json(doc)
    assert text == '{"b":1,"a":[1.5,true,null,"x"]}'
    assert json.loads(text) == doc


def test_lambda_verdict_format():
    assert lambda_verdict(-4.0) == "lambda-biharmonic(-4)"


def make_curve_report(tension, bitension, lam4):
    residuals = {
        "tension_max": tension,
        "bitension_max": bitension,
        "lambda_minus4_max": lam4,
        "quartic_ode_max": 0.0,
        "horizontality_max": 0.0,
        "hopf_relation_max": 0.0,
    }
    tolerances = {"residual": 1e-9, "classification": 1e-6}
    verdict = derive_verdict("verify curve", residuals, {}, tolerances, [])
    return build_report("verify curve", {}, residuals, [], verdict, tolerances, [])


def test_verdict_ladder():
    assert make_curve_report(0.0, 0.0, 0.0)["verdict"] == "harmonic"
    assert make_curve_report(1.0, 0.0, 4.0)["verdict"] == "proper-biharmonic"
    assert make_curve_report(2.0, 8.0, 0.0)["verdict"] == "lambda-biharmonic(-4)"
    assert make_curve_report(2.0, 8.0, 5.0)["verdict"] == "not-biharmonic"


def test_check_report_accepts_consistent_documents():
    check_report(make_curve_report(2.0, 8.0, 0.0))


def test_check_report_rejects_tampered_verdict():
    report = make_curve_report(2.0, 8.0, 0.0)
    report["verdict"] = "harmonic"
    with pytest.raises(StructuralError):
        check_report(report)


def test_check_report_rejects_negative_residual():
    report = make_curve_report(2.0, 8.0, 0.0)
    report["residuals"]["tension_max"] = -1.0
    with pytest.raises(StructuralError):
        check_report(report)


def test_check_report_rejects_missing_keys():
    report = make_curve_report(0.0, 0.0, 0.0)
    del report["tolerances"]
    with pytest.raises(StructuralError):
        check_report(report)


def test_classification_consistency_rule():
    residuals = {"distance_I1": 0.5, "distance_I3": 1e-9}
    tolerances = {"residual": 1e-9, "classification": 1e-6}
    report = build_report("classify helix", {}, residuals, [], "I3",
                          tolerances, [], class_label="I3")
    check_report(report)
    report["verdict"] = "I1"
    with pytest.raises(StructuralError):
        check_report(report)


def test_labeled_shape():
    assert labeled("k1", 2) == {"label": "k1", "value": 2.0}
