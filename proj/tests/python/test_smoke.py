"""End-to-end checks of the Python bindings against pinned exact values."""

import json

import pytest

import fillinglab as fl


def test_exact_constants():
    assert fl.lambda_plus(2, 4) == "3/1+1/2*sqrt(32)"
    assert fl.r_constant(2, 4) == "7/2+5/8*sqrt(32)"
    assert fl.contraction_exponent(2, 4, "1/10") == 3
    assert fl.contraction_exponent(3, 4, "1/100") == 4


def test_assign_region():
    assert fl.assign_region(2, 4, ["1", "0"]) == 1
    assert fl.assign_region(2, 4, ["0", "1"]) == 2
    assert fl.assign_region(3, 4, ["1", "1", "1"]) == 1


def test_projective_scenario_roundtrip():
    report = fl.run_scenario({"arena": "projective", "obstruction_entries": 5})
    assert report["level"] == "CERTIFIED"
    assert report["witnesses"][0]["translates"][0]["word"] == "g1^-3"
    assert fl.exit_code(report) == 0

    res = fl.recheck(report)
    assert res["ok"] is True
    assert res["failures"] == []

    report["witnesses"][0]["translates"][0]["word"] = "g1^-2"
    res = fl.recheck(report)
    assert res["ok"] is False
    assert res["failures"]


def test_tree_operations():
    assert fl.act_on_cylinders(2, "x", ["X"]) == ["X", "y", "Y"]
    cover = fl.cover_check(2, [["x", "X"], ["y", "Y"]])
    assert cover["covered"] is True
    miss = fl.cover_check(2, [["x"]])
    assert miss["covered"] is False
    assert miss["missed"] == "X"

    witness = fl.two_filling(2, ["x"], ["y"])
    assert witness["found"] is True
    assert witness["certified"] is True


def test_plane_summary():
    summary = fl.plane_summary(2)
    assert summary == {
        "q": 2,
        "points": 7,
        "lines": 7,
        "flags": 21,
        "apartments": 28,
    }
    assert fl.opposite(2, "(1:0:0)[0:0:1]", "(0:0:1)[1:0:0]") is True
    cover = fl.min_opposition_cover(2)
    assert cover["m"] == 4
    assert cover["lower_bound"] == 3
    assert len(cover["chambers"]) == 4


def test_constants_audit():
    audit = fl.verify_constants(2, "1/20")
    assert audit["in_range"] is True
    assert audit["all_hold"] is True
    assert len(audit["checks"]) == 6

    boundary = fl.verify_constants(3, "1/14")
    assert boundary["in_range"] is False


def test_config_errors():
    with pytest.raises(fl.ConfigError):
        fl.run_scenario({"arena": "nowhere"})
    with pytest.raises(fl.ReportParseError):
        fl.recheck_json("not json")


def test_json_text_boundary():
    text = fl.run_scenario_json(json.dumps({"arena": "constants", "n": 2}))
    report = json.loads(text)
    assert report["level"] == "CERTIFIED"
    assert len(report["certificates"]) == 100
