"""Command-line interface: exit codes, determinism, JSON interchange."""

import io
import json

import pytest

from aybe.bundles import matrix_from_sequence, tau_free_matrix
from aybe.cli import main
from aybe.structures import enumerate_structures, structure_to_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_enumerate_matches_library(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3")
    assert code == 0
    docs = json.loads(out)
    assert len(docs) == len(enumerate_structures(3))


def test_enumerate_is_byte_identical(capsys):
    _, out1, _ = run(capsys, "enumerate", "--n", "4")
    _, out2, _ = run(capsys, "enumerate", "--n", "4")
    assert out1 == out2


def test_verify_single_suite_on_structure(tmp_path, capsys):
    bd = enumerate_structures(3)[3]
    path = tmp_path / "bd.json"
    path.write_text(structure_to_json(bd))
    code, out, _ = run(
        capsys, "verify", "--suite", "aybe", "--structure", str(path),
        "--samples", "8", "--tol", "1e-8",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    assert doc["reports"][0]["suite"] == "aybe"
    assert doc["reports"][0]["samples"] == 8


def test_verify_is_deterministic(tmp_path, capsys):
    bd = enumerate_structures(3)[2]
    path = tmp_path / "bd.json"
    path.write_text(structure_to_json(bd))
    args = ("verify", "--suite", "qybe", "--structure", str(path), "--samples", "6")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_verify_tight_tolerance_fails(tmp_path, capsys):
    bd = enumerate_structures(2)[1]
    path = tmp_path / "bd.json"
    path.write_text(structure_to_json(bd))
    code, out, _ = run(
        capsys, "verify", "--suite", "laurent-identity", "--structure", str(path),
        "--samples", "6", "--tol", "1e-300",
    )
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_verify_reads_stdin(capsys, monkeypatch):
    bd = enumerate_structures(2)[0]
    monkeypatch.setattr("sys.stdin", io.StringIO(structure_to_json(bd)))
    code, out, _ = run(capsys, "verify", "--suite", "unitarity", "--stdin", "--samples", "6")
    assert code == 0 and json.loads(out)["pass"] is True


def test_malformed_json_is_usage_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "verify", "--suite", "aybe", "--structure", str(path))
    assert code == 2
    assert "error" in json.loads(err)


def test_unknown_flag_is_usage_error(capsys):
    assert run(capsys, "enumerate", "--n", "2", "--bogus")[0] == 2


def test_unknown_suite_is_usage_error(tmp_path, capsys):
    bd = enumerate_structures(2)[0]
    path = tmp_path / "bd.json"
    path.write_text(structure_to_json(bd))
    code, _, err = run(capsys, "verify", "--suite", "nope", "--structure", str(path))
    assert code == 2 and "unknown suite" in json.loads(err)["error"]


def test_eval_trig(tmp_path, capsys):
    bd = enumerate_structures(2)[1]
    path = tmp_path / "bd.json"
    path.write_text(structure_to_json(bd))
    code, out, _ = run(
        capsys, "eval", "--kind", "trig", "--structure", str(path),
        "--u", "0.9,0.3", "--v=-0.7,0.4",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 2
    # innermost entries are [re, im] pairs
    assert len(doc["coeffs"][0][0][0][0]) == 2


def test_eval_rational(capsys):
    code, out, _ = run(capsys, "eval", "--kind", "rational", "--n", "3", "--u", "0.5", "--v", "1.5")
    assert code == 0 and json.loads(out)["n"] == 3


def test_eval_at_pole_is_error(tmp_path, capsys):
    bd = enumerate_structures(2)[0]
    path = tmp_path / "bd.json"
    path.write_text(structure_to_json(bd))
    code, _, err = run(
        capsys, "eval", "--kind", "trig", "--structure", str(path), "--u", "0", "--v", "1",
    )
    assert code == 2 and "error" in json.loads(err)


def test_bundle_check(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(tau_free_matrix(2, 3).to_json())
    code, out, _ = run(capsys, "bundle-check", "--matrix", str(good))
    assert code == 0
    doc = json.loads(out)
    assert doc["simple"] is True and doc["order"] == [2, 1] and doc["row_sum_rule"] is True

    bad = tmp_path / "bad.json"
    bad.write_text('{"N": 2, "n": 2, "k": 1, "m": [[0, 0], [0, 0]]}')
    code, out, _ = run(capsys, "bundle-check", "--matrix", str(bad))
    assert code == 1 and json.loads(out)["simple"] is False


def test_bundle_bd(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(matrix_from_sequence(3, 2, (1, 1, 2)).to_json())
    code, out, _ = run(capsys, "bundle-bd", "--matrix", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["realizable"] is True and doc["n"] == 3 and "alpha0" in doc


def test_oracle_compare(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(matrix_from_sequence(3, 2, (1, 2, 2)).to_json())
    code, out, _ = run(
        capsys, "oracle-compare", "--matrix", str(path), "--trials", "8", "--seed", "1",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True and doc["max_deviation"] <= 1e-9 and doc["trials"] == 8


def test_report_round_trip(tmp_path, capsys):
    bd = enumerate_structures(2)[0]
    spath = tmp_path / "bd.json"
    spath.write_text(structure_to_json(bd))
    rpath = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "verify", "--suite", "s-identity", "--structure", str(spath),
        "--samples", "6", "--out", str(rpath),
    )
    assert code == 0
    stored = json.loads(rpath.read_text())
    single = tmp_path / "single.json"
    single.write_text(json.dumps(stored["reports"][0]))
    code, out, _ = run(capsys, "report", "--in", str(single), "--format", "text")
    assert code == 0 and "pass" in out


def test_output_file_and_text_format(tmp_path, capsys):
    out_path = tmp_path / "out.json"
    code, _, _ = run(capsys, "enumerate", "--n", "2", "--out", str(out_path))
    assert code == 0
    assert len(json.loads(out_path.read_text())) == 3
    code, out, _ = run(capsys, "enumerate", "--n", "2", "--format", "text")
    assert code == 0 and out.startswith("3 structures")
