import csv
import io
import json
from pathlib import Path

import pytest

from ttstar.cli import default_tables_dir, main

TABLES = default_tables_dir()


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_convert_from_asymptotic(capsys):
    code, out, _ = run(capsys, "convert", "4a", "--from", "asymptotic", "3", "1")
    assert code == 0
    assert "k         0 -1 -1 -1" in out
    assert "stokes    (±4, -6)  [integral]" in out


def test_convert_from_k(capsys):
    code, out, _ = run(capsys, "convert", "5a", "--from", "k",
                       "-2/3", "-5/6", "-5/6", "-5/6", "-5/6")
    assert code == 0
    assert "gamma     2/3" in out and "delta     1/3" in out
    assert "stokes    (1, -1)  [integral]" in out


def test_convert_irrational_marker(capsys):
    code, out, _ = run(capsys, "convert", "4a", "--from", "asymptotic",
                       "1/2", "0")
    assert code == 0 and "[irrational]" in out


def test_convert_parse_error(capsys):
    code, _, err = run(capsys, "convert", "4a", "--from", "asymptotic", "x", "0")
    assert code == 2 and "not an exact rational" in err


def test_convert_region_violation(capsys):
    code, _, err = run(capsys, "convert", "4a", "--from", "asymptotic", "5", "0")
    assert code == 3 and "outside the region" in err


def test_convert_symmetry_violation(capsys):
    code, _, err = run(capsys, "convert", "4a", "--from", "k",
                       "0", "0", "0", "1")
    assert code == 3 and "requires k_1 = k_3" in err


def test_enumerate_default_and_full(capsys):
    code, out, _ = run(capsys, "enumerate", "4a", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 13  # header + 12
    code, out, _ = run(capsys, "enumerate", "4a", "--format", "csv", "--full")
    assert len(out.splitlines()) == 20
    code, out, _ = run(capsys, "enumerate", "5a", "--format", "csv")
    assert len(out.splitlines()) == 20  # five-element cases list all 19


def test_enumerate_raw(capsys):
    code, out, _ = run(capsys, "enumerate", "--raw", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 34


def test_enumerate_all_deterministic(capsys, monkeypatch):
    monkeypatch.setenv("TTSTAR_THREADS", "3")
    code, out1, _ = run(capsys, "enumerate", "--all", "--format", "csv")
    code2, out2, _ = run(capsys, "enumerate", "--all", "--format", "csv")
    assert code == code2 == 0 and out1 == out2
    assert len(out1.splitlines()) == 1 + 12 * 5 + 19 * 5


def test_enumerate_matches_golden_csv(capsys):
    _, out, _ = run(capsys, "enumerate", "4a", "--format", "csv")
    golden = (TABLES / "table5.csv").read_text(encoding="utf-8")
    assert out == golden
    _, out, _ = run(capsys, "enumerate", "5a", "--format", "csv")
    assert out == (TABLES / "table6.csv").read_text(encoding="utf-8")


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "enumerate", "6a", "--format", "json")
    rows = json.loads(out)
    assert len(rows) == 12
    assert json.dumps(rows, indent=2, ensure_ascii=False) + "\n" == out


def test_latex_layout(capsys):
    _, out, _ = run(capsys, "enumerate", "4a", "--format", "latex")
    assert out.startswith("\\begin{tabular}")
    assert "\\theta ^4" in out and "\\pm 4" in out


def test_qdo_match(capsys):
    code, out, _ = run(capsys, "qdo", "--weights", "1,2,3", "--degrees", "2",
                       "--match")
    assert code == 0
    assert "λ^4 θ^2(θ-1/3)(θ-2/3) - z" in out
    assert "match: group 4 top-edge (a,b)=(1/3,0)" in out


def test_qdo_not_reducible(capsys):
    code, _, err = run(capsys, "qdo", "--weights", "1,1", "--degrees", "3")
    assert code == 4
    code, _, err = run(capsys, "qdo", "--weights", "1,1,1", "--degrees", "2")
    assert code == 4


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--case", "4a", "--bound", "6")
    assert code == 0 and "PASS" in out


def test_verify_self_test(capsys):
    code, _, err = run(capsys, "verify", "--case", "4a", "--bound", "6",
                       "--self-test")
    assert code == 5 and "FAIL" in err


def test_verify_detects_corrupted_golden(capsys, tmp_path):
    src = (TABLES / "table5.csv").read_text(encoding="utf-8")
    bad = src.replace("±4,-6", "±4,-7", 1)
    (tmp_path / "table5.csv").write_text(bad, encoding="utf-8")
    (tmp_path / "table3.csv").write_text(
        (TABLES / "table3.csv").read_text(encoding="utf-8"), encoding="utf-8")
    code, _, err = run(capsys, "verify", "--case", "4a", "--bound", "6",
                       "--tables", str(tmp_path))
    assert code == 5 and "field s2" in err


def test_solve_trivial(capsys, tmp_path):
    out_file = tmp_path / "p.csv"
    code, out, _ = run(capsys, "solve", "4a", "0", "0", "--points", "512",
                       "--output", str(out_file))
    assert code == 0 and "verified" in out
    rows = list(csv.reader(io.StringIO(out_file.read_text())))
    assert rows[0] == ["t", "u", "v"] and len(rows) == 513


def test_solve_region_violation(capsys):
    code, _, err = run(capsys, "solve", "4a", "5", "0")
    assert code == 3 and "outside the region" in err


def test_solve_non_convergence(capsys):
    code, _, err = run(capsys, "solve", "4a", "3", "1", "--points", "512",
                       "--max-iterations", "2")
    assert code == 6


def test_bad_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("TTSTAR_THREADS", "many")
    code, _, err = run(capsys, "enumerate", "--all", "--format", "csv")
    assert code == 2 and "TTSTAR_THREADS" in err
