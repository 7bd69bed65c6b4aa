"""CLI behavior: schemas, exit codes, and byte-for-byte determinism."""

import csv
import io
import json

import pytest

from statconc.cli import EXIT_IO, EXIT_OK, EXIT_SELF_CHECK, EXIT_USAGE, SWEEP_COLUMNS, main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_run_text_report(capsys):
    code, out, err = run_cli(capsys, ["run", "--alpha2", "0.5", "--n", "4"])
    assert code == EXIT_OK
    assert err == ""
    assert "cumulative_probability  0.53125" in out
    assert "closed_form_cumulative  0.53125" in out
    assert out.count("\n") >= 10  # header + 4 rounds + summary block


def test_run_json_document(capsys):
    code, out, _ = run_cli(
        capsys, ["run", "--alpha2", "0.36", "--n", "3", "--statistics", "boson", "--json"]
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["statistics"] == "boson"
    assert len(doc["rounds"]) == 3
    expected = (0.36**2 + 0.64**2) / 8.0 + 2.0 * 0.36 * 0.64
    assert doc["cumulative_probability"] == pytest.approx(expected, abs=1e-12)
    assert doc["closed_form_cumulative"] == pytest.approx(expected, abs=1e-12)
    assert doc["closed_form_efficiency"] == pytest.approx(0.2304, abs=1e-12)


def test_run_is_byte_deterministic(capsys):
    argv = ["run", "--alpha2", "0.3", "--n", "3", "--json"]
    _, first, _ = run_cli(capsys, argv)
    _, second, _ = run_cli(capsys, argv)
    assert first == second


def test_sweep_schema_and_order(capsys):
    argv = [
        "sweep",
        "--alpha2-min", "0.2",
        "--alpha2-max", "0.4",
        "--alpha2-step", "0.1",
        "--n", "2",
        "--statistics", "both",
    ]
    code, out, _ = run_cli(capsys, argv)
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == SWEEP_COLUMNS
    assert len(rows) == 1 + 3 * 2
    assert [r[0] for r in rows[1:]] == ["0.2", "0.2", "0.3", "0.3", "0.4", "0.4"]
    assert [r[3] for r in rows[1:]] == ["fermion", "boson"] * 3
    for row in rows[1:]:
        assert float(row[6]) == pytest.approx(float(row[7]), abs=1e-12)
    _, again, _ = run_cli(capsys, argv)
    assert out == again


def test_sweep_empty_grid_is_header_only(capsys):
    code, out, _ = run_cli(
        capsys,
        ["sweep", "--alpha2-min", "0.9", "--alpha2-max", "0.1", "--alpha2-step", "0.1", "--n", "1"],
    )
    assert code == EXIT_OK
    assert out.strip() == ",".join(SWEEP_COLUMNS)


def test_sweep_writes_file(tmp_path, capsys):
    target = tmp_path / "sweep.csv"
    code, _, _ = run_cli(
        capsys,
        ["sweep", "--alpha2-min", "0.5", "--alpha2-max", "0.5", "--alpha2-step", "0.1",
         "--n", "2", "--out", str(target)],
    )
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(target.read_text())))
    assert rows[0] == SWEEP_COLUMNS
    assert rows[1][6] == "0.625"


def test_unwritable_output_path(capsys):
    code, _, err = run_cli(
        capsys,
        ["sweep", "--n", "1", "--out", "/nonexistent-dir/x.csv"],
    )
    assert code == EXIT_IO
    assert "cannot open output" in err


def test_compare_schema(capsys):
    code, out, _ = run_cli(
        capsys,
        ["compare", "--alpha2-min", "0.5", "--alpha2-max", "0.5", "--alpha2-step", "0.01"],
    )
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["alpha2", "protocol", "procrustean", "asymptotic"]
    assert rows[1] == ["0.5", "0.25", "1", "1"]


def test_sample_deterministic_and_checked(capsys):
    argv = ["sample", "--alpha2", "0.5", "--n", "1", "--trials", "20000", "--seed", "5", "--check"]
    code, out, _ = run_cli(capsys, argv)
    assert code == EXIT_OK
    assert "closed_form  0.75" in out
    _, again, _ = run_cli(capsys, argv)
    assert out == again


def test_sample_self_check_failure(capsys):
    # One trial gives estimate 0 or 1 with std_error 0, which can never sit
    # within five standard errors of 0.75.
    code, _, err = run_cli(
        capsys,
        ["sample", "--alpha2", "0.5", "--n", "1", "--trials", "1", "--seed", "0", "--check"],
    )
    assert code == EXIT_SELF_CHECK
    assert "self-check failed" in err


def test_hom_output(capsys):
    code, out, _ = run_cli(capsys, ["hom", "--statistics", "boson"])
    assert code == EXIT_OK
    lines = dict(line.split(None, 1) for line in out.strip().splitlines())
    assert lines["antibunch"].strip() == "0"
    assert float(lines["bunch-left"]) + float(lines["bunch-right"]) == pytest.approx(1.0)
    code, out, _ = run_cli(
        capsys, ["hom", "--statistics", "fermion", "--spin-left", "up", "--spin-right", "down"]
    )
    lines = dict(line.split(None, 1) for line in out.strip().splitlines())
    assert lines["antibunch"].strip() == "0.5"


def test_usage_errors(capsys):
    code, _, err = run_cli(capsys, ["run", "--alpha2", "1.5", "--n", "2"])
    assert code == EXIT_USAGE
    assert "error:" in err
    code, _, err = run_cli(capsys, ["run", "--alpha2", "0.5", "--n", "11"])
    assert code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["run", "--statistics", "anyon"])
    assert exc.value.code == 2
