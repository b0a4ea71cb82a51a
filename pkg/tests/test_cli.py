import pathlib

import pytest

from sglab import cli

EXPERIMENTS = pathlib.Path(__file__).resolve().parent.parent / "experiments"


def run_cli(capsys, *argv):
    status = cli.main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out.splitlines(), captured.err


def test_run_experiment_one(capsys):
    status, out, err = run_cli(capsys, "run", str(EXPERIMENTS / "exp1.sgx"))
    assert status == 0
    assert err == ""
    assert out == [
        "> beam random",
        "Beam of intensity 1.0",
        "> split z",
        "Beam of intensity 0.5",
        "Beam of intensity 0.5",
        "> drop",
        "Beam of intensity 0.5",
        "> split z",
        "Beam of intensity 0.5",
        "Beam of intensity 0.0",
    ]


def test_run_rounds_on_request(capsys):
    status, out, _ = run_cli(capsys, "run", str(EXPERIMENTS / "exp3.sgx"), "--round", "3")
    assert status == 0
    assert out[-2:] == ["Beam of intensity 0.125", "Beam of intensity 0.125"]
    # without rounding the raw float shows its last digit
    status, out, _ = run_cli(capsys, "run", str(EXPERIMENTS / "exp3.sgx"))
    assert out[-2] == "Beam of intensity 0.12500000000000006"


def test_run_reports_parse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.sgx"
    bad.write_text("beam random\nsplit q\n")
    status, out, err = run_cli(capsys, "run", str(bad))
    assert status == 1
    assert out == []
    assert "line 2, column 7" in err


def test_run_reports_runtime_errors(tmp_path, capsys):
    bad = tmp_path / "drops.sgx"
    bad.write_text("beam random\ndrop\ndrop\n")
    status, out, err = run_cli(capsys, "run", str(bad))
    assert status == 2
    assert "line 3" in err


def test_run_missing_file(capsys):
    status, _, err = run_cli(capsys, "run", "/no/such/file.sgx")
    assert status == 2
    assert "error" in err


def test_drained_stack_prints_no_beams(tmp_path, capsys):
    script = tmp_path / "drain.sgx"
    script.write_text("beam random\ndrop\n")
    status, out, _ = run_cli(capsys, "run", str(script))
    assert status == 0
    assert out == ["> beam random", "Beam of intensity 1.0", "> drop", "(no beams)"]


def test_unknown_subcommand_exits_nonzero(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["frobnicate"])
    assert err.value.code == 2
