import csv
import io
import subprocess
import sys

import pytest

from nogolab import cli


def run_cli(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr().out
    return code, list(csv.DictReader(io.StringIO(out))), out


def test_delete_gap(capsys):
    code, rows, _ = run_cli(["delete-gap"], capsys)
    assert code == 0
    assert len(rows) == 1
    row = rows[0]
    assert row["experiment"] == "delete-gap"
    assert (row["name_1"], row["value_1"]) == ("S_in", "1.5849625")
    assert (row["name_2"], row["value_2"]) == ("S_out", "1")
    assert row["verdict"] == "VIOLATES"


def test_delete_sweep_three_steps(capsys):
    code, rows, _ = run_cli(["delete-sweep", "--overlap-steps", "3"], capsys)
    assert code == 0
    assert [r["s"] for r in rows] == ["0", "0.5", "1"]
    mid = rows[1]
    assert abs(float(mid["value_1"]) - 0.954434) < 1e-6
    assert abs(float(mid["value_2"]) - 0.811278) < 1e-6
    assert [r["verdict"] for r in rows] == ["CONSISTENT", "VIOLATES", "CONSISTENT"]


def test_ancilla_overlap_flag(capsys):
    code, rows, _ = run_cli(["delete-sweep", "--overlap-steps", "5", "--ancilla-overlap", "0.8"], capsys)
    assert code == 0
    params = [float(r["param"]) for r in rows]
    assert params == [0.8, 0.8, 0.8, 0.8, 1.0]


def test_clone_sweep_has_weak_rows(capsys):
    code, rows, _ = run_cli(["clone-sweep", "--overlap-steps", "3", "--env-overlap", "0.5"], capsys)
    assert code == 0
    assert {r["experiment"] for r in rows} == {"clone-sweep", "clone-weak"}
    weak_mid = [r for r in rows if r["experiment"] == "clone-weak" and r["index"] == "1"][0]
    assert weak_mid["verdict"] == "VIOLATES"


@pytest.mark.parametrize("command", ["entangle-delete", "entangle-clone", "fit", "demon"])
def test_commands_pass(command, capsys):
    code, rows, _ = run_cli([command, "--overlap-steps", "5", "--trials", "20"], capsys)
    assert code == 0
    assert rows and all(r["verdict"] == r["expected"] for r in rows)


def test_conserve_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(["conserve", "--trials", "100", "--seed", "7", "--out", str(a)]) == 0
    assert cli.main(["conserve", "--trials", "100", "--seed", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_seed_changes_output(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    cli.main(["conserve", "--trials", "10", "--seed", "1", "--out", str(a)])
    cli.main(["conserve", "--trials", "10", "--seed", "2", "--out", str(b)])
    assert a.read_bytes() != b.read_bytes()


def test_csv_format(capsys):
    _, _, out = run_cli(["delete-gap"], capsys)
    lines = out.split("\r\n")
    assert lines[0] == ",".join(cli.COLUMNS)
    assert lines[-1] == ""


def test_mismatch_exit_code(monkeypatch, capsys):
    monkeypatch.setitem(cli.RUNNERS, "delete-gap",
                        lambda cfg: iter([cli.Row(cli.ex.deleting_entropy_gap(), 0, "CONSISTENT")]))
    assert cli.main(["delete-gap"]) == 1
    assert "mismatch" in capsys.readouterr().err


@pytest.mark.parametrize("args,flag", [
    (["delete-sweep", "--overlap-steps", "1"], "--overlap-steps"),
    (["clone-sweep", "--env-overlap", "1.5"], "--env-overlap"),
    (["delete-sweep", "--ancilla-overlap", "-0.1"], "--ancilla-overlap"),
    (["conserve", "--trials", "0"], "--trials"),
    (["conserve", "--tolerance", "-1"], "--tolerance"),
    (["conserve", "--seed", str(2**64)], "--seed"),
    (["bogus"], "command"),
])
def test_usage_errors(args, flag, capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(args)
    assert info.value.code == 2
    assert flag in capsys.readouterr().err


def test_help_documents_columns(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--help"])
    out = capsys.readouterr().out
    for col in ("name_k,value_k", "verdict", "expected"):
        assert col in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nogolab", "delete-gap"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "delete-gap" in proc.stdout
