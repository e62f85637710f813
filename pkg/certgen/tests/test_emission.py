"""Emission round-trips through the primary's external surfaces."""
import json
import os
import subprocess
import sys

import pytest

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "..", "data", "fixtures")


def test_schema_round_trip_primary_cli(tmp_path):
    """Shipped fixture files load through `selmer2 validate` (exit 0)."""
    label = "216663.a.216663.1"
    r = subprocess.run(
        [sys.executable, "-m", "selmer2.cli", "validate",
         os.path.join(FIXTURES, f"{label}.curve.json"),
         os.path.join(FIXTURES, f"{label}.cert.json")],
        capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["result"] == "pass"


def test_fixture_files_schema_fields():
    for name in sorted(os.listdir(FIXTURES)):
        if not name.endswith(".cert.json"):
            continue
        doc = json.load(open(os.path.join(FIXTURES, name)))
        assert doc["version"] == 1
        assert 2 in doc["S"]
        assert doc["resolvent"]["lambda"] == 0
        assert len(doc["basis"]) == len(doc["basis"])
        for elt in doc["basis"]:
            for poly, exp in elt:
                assert isinstance(exp, int)
                assert len(poly) < len(doc["resolvent"]["F"])
