import json
from pathlib import Path

import pytest

from specialsets.cli import run_captured

GOLDEN = Path(__file__).parent / "golden"


def test_construct_veronesean_golden():
    code, out = run_captured(["construct", "--family", "veronesean", "--q", "3"])
    assert code == 0
    assert out == (GOLDEN / "construct_veronesean_q3.json").read_text()
    assert len(json.loads(out)) == 10


def test_verify_degplane_golden():
    code, out = run_captured(["verify", "--statement", "lemma:degplane", "--q", "3"])
    assert code == 0
    assert out == (GOLDEN / "verify_degplane_q3.json").read_text()


def test_check_nonclassical_exit_1_golden():
    code, out = run_captured(["check", "--family", "nonclassical", "--q", "3"])
    assert code == 1
    assert out == (GOLDEN / "check_nonclassical_q3.json").read_text()


@pytest.mark.parametrize("q", ["4", "12", "2048", "abc"])
def test_bad_q_exit_2(q, capsys):
    assert run_captured(["verify", "--q", q])[0] == 2


def test_unknown_subcommand_and_statement():
    assert run_captured(["frobnicate", "--q", "3"])[0] == 2
    assert run_captured(["verify", "--q", "3", "--statement", "nope"])[0] == 2
    assert run_captured(["construct", "--q", "3", "--family", "standard_form"])[0] == 2


def test_check_points_file(tmp_path):
    code, out = run_captured(["construct", "--family", "elliptic+P", "--q", "3"])
    f = tmp_path / "pts.json"
    f.write_text(out)
    code, out = run_captured(["check", "--points", str(f), "--q", "3"])
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_formats():
    code, out = run_captured(["counts", "--q", "3"])
    assert code == 0 and "counts,3,exhaustive_perspective,544320" in out
    code, out = run_captured(["construct", "--family", "standard_form", "--x", "2,1", "--q", "3", "--format", "text"])
    assert code == 0 and len(out.splitlines()) == 10
    code, out = run_captured(["verify", "--statement", "x_solutions", "--q", "9", "--format", "text"])
    assert code == 0 and "pass" in out


def test_search_cli_json_lines():
    code, out = run_captured(["search", "--q", "3"])
    lines = [json.loads(l) for l in out.splitlines()]
    assert code == 0
    assert lines[-1]["statement_id"] == "search:special_set"
    assert sum(1 for l in lines if l.get("event") == "solution") == lines[-1]["counts"]["solutions"]
    code, out = run_captured(["search", "--q", "5", "--mode", "main1_constrained"])
    assert code == 0 and json.loads(out)["verdict"] == "pass"
