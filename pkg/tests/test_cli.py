import json
import os
import subprocess
import sys

import pytest

from gwa.cli import (
    EXIT_DISAGREEMENT,
    EXIT_HYPOTHESIS,
    EXIT_INVALID_INPUT,
    EXIT_OK,
    RunReport,
    main,
    run_job,
)

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run_main(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_hh_weyl(capsys):
    code, out, _ = run_main(capsys, ["hh", "--a", "h", "--h0", "1"])
    assert code == EXIT_OK
    assert "n=1 d=0" in out
    assert "[0 0 1 0 0 0]" in out
    assert "agreement: True" in out


def test_verify_cubic_cohomology(capsys):
    code, out, _ = run_main(capsys, ["verify", "--a", "h^3", "--h0", "1",
                                     "--kind", "cohomology"])
    assert code == EXIT_OK
    assert "[1 0 2 2 2 2]" in out
    assert "agreement: True" in out


def test_invariants_weyl(capsys):
    code, out, _ = run_main(capsys, ["invariants", "--a", "h", "--h0", "1", "--r", "2"])
    assert code == EXIT_OK
    assert "4*H^2 + 2*H" in out
    assert "identity_check: True" in out
    assert "hh0_invariant: 1" in out


def test_twisted_command(capsys):
    code, out, _ = run_main(capsys, ["twisted", "--a", "h^2-1", "--h0", "1",
                                     "--twist-order", "2", "--p-max", "3"])
    assert code == EXIT_OK
    assert "twisted-homology" in out and "twisted-cohomology" in out
    assert "agreement: True" in out


def test_group_command(capsys):
    code, out, _ = run_main(capsys, ["group", "--a", "h^2-2", "--h0", "1",
                                     "--classes", "order=2 omega=no"])
    assert code == EXIT_OK
    assert "group-cohomology" in out


def test_exit_codes(capsys):
    code, _, err = run_main(capsys, ["hh", "--a", "oops!!", "--h0", "1"])
    assert code == EXIT_INVALID_INPUT and "error" in err
    code, _, err = run_main(capsys, ["hh", "--a", "5", "--h0", "1"])
    assert code == EXIT_HYPOTHESIS
    code, _, err = run_main(capsys, ["hh", "--a", "h", "--h0", "0"])
    assert code == EXIT_HYPOTHESIS
    code, _, err = run_main(capsys, ["group", "--a", "h^2", "--h0", "1",
                                     "--classes", "order=2 omega=no"])
    assert code == EXIT_HYPOTHESIS


def test_disagreement_exit_code(capsys, monkeypatch):
    import gwa.cli as cli
    from gwa.linalg import StabilizedDim

    def bogus_oracle(spec, kind, p_max, schedule=None):
        return [StabilizedDim(7, 12, ((12, 7),)) for _ in range(p_max + 1)]

    monkeypatch.setattr(cli, "oracle_dims", bogus_oracle)
    code, out, err = run_main(capsys, ["verify", "--a", "h", "--h0", "1",
                                       "--kind", "homology"])
    assert code == EXIT_DISAGREEMENT
    assert "agreement: False" in out
    assert "disagreement" in err


def test_json_roundtrip(capsys):
    code, out, _ = run_main(capsys, ["hh", "--a", "h^2-1", "--h0", "1", "--json"])
    assert code == EXIT_OK
    report = RunReport.from_json(out)
    assert RunReport.from_json(report.to_json()).__dict__ == report.__dict__
    assert report.schema_version == 1
    assert report.agreement is True


def test_csv_output(capsys):
    code, out, _ = run_main(capsys, ["coh", "--a", "h^2", "--h0", "1",
                                     "--csv", "--formula-only"])
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "command,kind,source,degree,dim"
    assert "coh,cohomology,formula,0,1" in lines
    assert "coh,cohomology,formula,2,1" in lines


def test_reports_deterministic(capsys):
    argv = ["hh", "--a", "h^2-1", "--h0", "1", "--json"]
    _, first, _ = run_main(capsys, argv)
    _, second, _ = run_main(capsys, argv)
    a, b = json.loads(first), json.loads(second)
    a.pop("elapsed_seconds"), b.pop("elapsed_seconds")
    assert a == b


def test_run_job_helper():
    payload = run_job(["hh", "--a", "h", "--h0", "1", "--formula-only"])
    assert payload["results"][0]["dims"] == [0, 0, 1, 0, 0, 0]


def test_dmax_env_override(capsys, monkeypatch):
    monkeypatch.setenv("GWA_DMAX", "13")
    code, _, err = run_main(capsys, ["hh", "--a", "h", "--h0", "1"])
    assert code == 4  # start is 12, cap 13: cannot see two agreeing values
    assert "stabilization" in err


def test_sweep(tmp_path, capsys):
    sweep = tmp_path / "jobs.txt"
    sweep.write_text(
        'hh --a h --h0 1 --formula-only\n'
        'coh --a "h^2" --h0 1 --formula-only\n'
    )
    code, out, _ = run_main(capsys, ["--sweep", str(sweep)])
    assert code == EXIT_OK
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) == 2
    assert all("report" in entry for entry in lines)


def test_console_entry_point_runs():
    env = dict(os.environ)
    env["PYTHONPATH"] = os.path.join(ROOT, "src")
    proc = subprocess.run(
        [sys.executable, "-m", "gwa.cli", "hh", "--a", "h", "--h0", "1",
         "--formula-only"],
        capture_output=True, text=True, env=env, cwd=ROOT,
    )
    assert proc.returncode == 0
    assert "[0 0 1 0 0 0]" in proc.stdout


def test_pure_python_fallback_selected_by_env():
    env = dict(os.environ)
    env["PYTHONPATH"] = os.path.join(ROOT, "src")
    env["GWA_PURE_LINALG"] = "1"
    proc = subprocess.run(
        [sys.executable, "-c",
         "from gwa.linalg import KERNEL_IMPLEMENTATION; print(KERNEL_IMPLEMENTATION)"],
        capture_output=True, text=True, env=env, cwd=ROOT,
    )
    assert proc.stdout.strip() == "python"
