"""Orchestration-level behavior: precision retry and crude-path routing."""
import json
import os

from selmer2 import certificate as cert_mod
from selmer2 import curve_model as cm
from selmer2 import pipeline

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "data", "fixtures")


def _load(label):
    curve = cm.curve_from_json(
        json.load(open(os.path.join(FIXTURES, f"{label}.curve.json"))))
    cert = cert_mod.parse_certificate(
        json.load(open(os.path.join(FIXTURES, f"{label}.cert.json"))), curve)
    return curve, cert


def test_low_starting_precision_retries_upward():
    curve, cert = _load("216663.a.216663.1")
    res = pipeline.analyze(curve, cert, precision=64)
    assert res.report.ker_theta == 5
    assert res.precision_used >= 64


def test_crude_only_for_non_ordinary_curve():
    curve, cert = _load("g3-crude-odd")
    res = pipeline.analyze(curve, cert)
    assert not res.ordinary
    assert res.report.ker_theta is None
    assert res.report.verdict == res.report.verdict_crude == "FINITE"
