from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from relcomplex.cli import EXIT_INTERVAL, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main, parse_range


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_compute_examples():
    code, text = run("compute", "--group", "PGL", "--n", "2", "--q", "3", "--m", "1")
    assert code == EXIT_OK and json.loads(text)["rc"] == 2
    code, text = run("compute", "--group", "PSigmaL", "--n", "2", "--q", "9")
    assert code == EXIT_OK and json.loads(text)["rc"] == 3
    code, text = run("compute", "--group", "PSL", "--n", "4", "--q", "2", "--m", "2")
    assert code == EXIT_OK and json.loads(text)["rc"] == 5


def test_compute_field_by_p_f_and_formats():
    code, text = run("compute", "--group", "param:2,2", "--n", "2", "--p", "3", "--f", "2", "--format", "csv")
    assert code == EXIT_OK
    header, row = text.strip().splitlines()
    assert "rc" in header.split(",")
    code, text = run("compute", "--n", "2", "--q", "5", "--format", "text")
    assert code == EXIT_OK and "rc=4" in text


def test_compute_interval_exit():
    code, text = run("compute", "--n", "2", "--q", "5", "--k-max", "3")
    assert code == EXIT_INTERVAL
    body = json.loads(text)
    lo, hi = body["interval"]
    assert lo <= 4 <= hi


def test_compute_resource_ceiling():
    code, _ = run("compute", "--n", "4", "--q", "9", "--max-omega", "50")
    assert code == EXIT_INTERVAL


def test_generator_file(tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("# diag(w, 1) then Frobenius\n4 0 0 1 ; 1\n")
    code, text = run("compute", "--group", f"file:{path}", "--n", "2", "--q", "9")
    assert code == EXIT_OK and json.loads(text)["rc"] >= 2


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "--bogus"],
        ["compute", "--n", "2", "--q", "6"],
        ["compute", "--n", "2"],
        ["compute", "--n", "2", "--q", "4", "--p", "2"],
        ["compute", "--group", "PXL", "--n", "2", "--q", "4"],
        ["compute", "--group", "param:3,1", "--n", "2", "--q", "9"],
        ["compute", "--group", "file:/nonexistent", "--n", "2", "--q", "9"],
        ["compute", "--n", "2", "--q", "4", "--m", "0"],
        ["compute", "--n", "2", "--q", "4", "--threads", "0"],
        ["compute", "--n", "2", "--q", "4", "--format", "xml"],
        ["bounds", "--n", "5..3", "--q", "4"],
        ["witness", "--tag", "nope", "--q", "7"],
        ["witness", "--tag", "gl-lower", "--n", "3", "--q", "3"],
        ["table", "--suite", "other"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    code, out = run(*argv)
    assert code == EXIT_USAGE
    assert out == ""


def test_hypothesis_message(capsys):
    code, _ = run("witness", "--tag", "gl-lower", "--n", "3", "--q", "3")
    assert code == EXIT_USAGE
    assert "|F| >= 4 required" in capsys.readouterr().err


def test_bounds():
    code, text = run("bounds", "--group", "PGL", "--n", "3..5", "--q", "4")
    assert code == EXIT_OK
    rows = json.loads(text)
    assert [(r["lower"], r["upper"]) for r in rows] == [(n + 2, n + 2) for n in (3, 4, 5)]
    code, text = run("bounds", "--group", "PGammaL", "--n", "2", "--q", "243")
    (row,) = json.loads(text)
    assert (row["lower"], row["upper"]) == (4, 5)
    code, text = run("bounds", "--group", "PSL", "--n", "4", "--q", "3", "--m", "2", "--format", "csv")
    assert code == EXIT_OK and text.splitlines()[1].split(",")[4:6] == ["5", "10"]


def test_parse_range():
    assert parse_range("3..5") == [3, 4, 5]
    assert parse_range("2,3,7") == [2, 3, 7]
    assert parse_range("4") == [4]


def test_witness_commands():
    code, text = run("witness", "--tag", "mspaces", "--n", "4", "--m", "2", "--q", "2")
    body = json.loads(text)
    assert code == EXIT_OK and body["report"]["passed"] and body["package"]["claim_k"] == 5
    code, text = run("witness", "--tag", "psl3", "--q", "7")
    assert code == EXIT_OK and json.loads(text)["report"]["statement"] == "RC >= 5"
    code, text = run("witness", "--tag", "gammal", "--n", "3", "--q", "9", "--psi", "1")
    assert code == EXIT_OK and json.loads(text)["package"]["claim_k"] == 6


def test_table_small_rows():
    code, text = run("table", "--cases", "PGL_2(3)/Omega_1", "PSL_4(2)/Omega_2", "--format", "json")
    rows = json.loads(text)
    assert code == EXIT_OK
    assert [(r["expected"], r["computed"], r["status"]) for r in rows] == [(2, 2, "match"), (5, 5, "match")]


def test_table_degrades_to_interval():
    code, text = run("table", "--cases", "PGammaL_4(9)/Omega_1", "--max-omega", "100")
    (row,) = json.loads(text)
    assert row["status"] == "skipped(budget)"
    lo, hi = row["interval"]
    assert lo <= 8 <= hi
    assert code == EXIT_INTERVAL
    code, text = run("table", "--cases", "PGammaL_4(9)/Omega_1", "--budget-secs", "0.5")
    (row,) = json.loads(text)
    assert row["status"] in ("interval-consistent", "match")
    assert code in (EXIT_OK, EXIT_INTERVAL)


def test_mismatch_exit(monkeypatch):
    import relcomplex.cli as cli

    monkeypatch.setattr(cli, "REFERENCE_TABLE", [("fake", "PGL", 2, 3, 1, 3)])
    code, text = run("table")
    assert code == EXIT_MISMATCH and json.loads(text)[0]["status"] == "MISMATCH"


def test_console_script_and_module():
    res = subprocess.run(
        [sys.executable, "-m", "relcomplex", "compute", "--n", "2", "--q", "3", "--no-timing"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0 and json.loads(res.stdout)["rc"] == 2
    res = subprocess.run([sys.executable, "-m", "relcomplex", "compute", "--nope"], capture_output=True, text=True)
    assert res.returncode == 1
