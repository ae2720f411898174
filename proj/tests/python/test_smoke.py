import json
from pathlib import Path

import pytest

import chevkit

SCHEMA = Path(__file__).resolve().parents[2] / "data" / "schema" / "pipeline_report.schema.json"


def test_ring_info():
    assert chevkit.ring_info("Z/4") == {"spec": "Z/4", "local": True, "field": False, "residue_order": 2}
    assert chevkit.ring_info("Z/6")["local"] is False
    with pytest.raises(chevkit.SpecError):
        chevkit.ring_info("Z/")


def test_roots():
    a3 = chevkit.roots("A3")
    assert len(a3["roots"]) == 12
    assert a3["roots"][:2] == ["e1-e2", "-e1+e2"]
    assert len(a3["basis_order"]) == 15
    with pytest.raises(chevkit.UnsupportedSystem):
        chevkit.roots("G2")


def test_generator_q_has_order_three():
    m = chevkit.generator("Z/4", "A3", "q", root="e1-e2")
    assert m["n"] == 15
    # Q^3 = 1, so Q is never the identity but its split is balanced
    split = chevkit.split3(m)
    assert split["rank0"] + split["rank1"] == 15
    assert split["rank1"] % 2 == 0


def test_verify():
    for res in chevkit.verify("A3", "Z/4", "steinberg", seed=7, samples=50):
        assert res["failed"] == 0
    with pytest.raises(chevkit.NotLocal):
        chevkit.verify("A3", "Z/6")


def test_diagonalize():
    d = chevkit.diagonalize("omega(Z/4)", "A3", "e1-e2")
    assert d["xi"] == d["xi2"]
    assert d["one"] + d["xi"] + d["xi2"] == 15


def test_rigidity_fourth():
    rep = chevkit.rigidity("fourth", "F2")
    assert rep["solution_dim"] == 0
    assert rep["contained"] is True


def test_fixture():
    assert chevkit.fixture("second16-q1")["pass"] is True
    with pytest.raises(chevkit.UnknownFixture):
        chevkit.fixture("nope")


def test_witness_roundtrip():
    a = {"ring": "Z/4", "n": 2, "entries": [[0, 3], [1, 3]]}
    t = chevkit.conjugacy_witness(a, a)
    assert t["n"] == 2


def test_pipeline_report_schema():
    jsonschema = pytest.importorskip("jsonschema")
    rep = chevkit.pipeline(only=["roots", "matrix_unit"])
    jsonschema.validate(rep, json.loads(SCHEMA.read_text()))
    assert [s["name"] for s in rep["stages"]] == ["roots", "matrix_unit"]
    assert rep["ok"] is True
