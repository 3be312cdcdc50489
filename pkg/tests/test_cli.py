import json
import subprocess
import sys

import pytest

from rtp.cli import EXIT_DOMAIN, EXIT_FAIL, EXIT_PARSE, EXIT_PASS, main, normalize_job, run_job


def write_job(tmp_path, obj, name="job.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eulerian_tp_job(tmp_path, capsys):
    job = write_job(tmp_path, {"family": "eulerian", "N": 7, "checks": [{"kind": "tp", "r": 3}]})
    code, out, _ = run_cli(["verify", job], capsys)
    rep = json.loads(out)
    assert code == EXIT_PASS
    assert rep["schema"] == "rtp-report/1"
    assert rep["tasks"][0]["checks"][0]["verdict"] == "pass"


def test_sequence_sm_job_fails_with_witness(tmp_path, capsys):
    job = write_job(tmp_path, {"sequence": [1, 2, 3], "checks": [{"kind": "sm", "r": 2}]})
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(["verify", job, "--revalidate", "--out", str(out_path)], capsys)
    assert code == EXIT_FAIL
    check = json.loads(out_path.read_text())["tasks"][0]["checks"][0]
    assert check["verdict"] == "fail"
    assert check["witness"] == {"rows": [0, 1], "cols": [0, 1], "value": "-1/1"}
    assert check["revalidated"] is True


def test_rook_job(tmp_path, capsys):
    job = write_job(tmp_path, {"family": "rook", "N": 8, "checks": [
        {"kind": "coeffwise-hankel", "r": 2}, {"kind": "klogconvex", "k": 3}]})
    code, out, _ = run_cli(["verify", job], capsys)
    assert code == EXIT_PASS
    assert [c["verdict"] for c in json.loads(out)["tasks"][0]["checks"]] == ["pass", "pass"]


def test_report_is_byte_identical(tmp_path, capsys):
    job = write_job(tmp_path, {"tasks": [
        {"era": {"g": "exp(lambda*t)", "f": "t/(1-t)"}, "N": 6,
         "checks": [{"kind": "production"}, {"kind": "tp", "r": 2}]},
        {"family": "gen_lah", "lambda": "sym", "N": 5, "checks": [{"kind": "cross"}]},
        {"schedule": {"name": "lah", "q": "sym"}, "checks": [{"kind": "cf-equivalence"}]},
    ]})
    _, a, _ = run_cli(["verify", job], capsys)
    _, b, _ = run_cli(["verify", job], capsys)
    assert a == b
    rep = json.loads(a)
    assert [t["index"] for t in rep["tasks"]] == [0, 1, 2]
    assert rep["summary"]["failed"] == 0


def test_sweep_expands(tmp_path):
    tasks = normalize_job({"family": "gen_bessel2", "sweep": {"b": "grid"}, "N": 4,
                           "checks": [{"kind": "tp", "r": 2}]})
    assert len(tasks) == 4
    rep, code = run_job(tasks)
    assert code == EXIT_PASS
    assert rep["tasks"][0]["sweep"] == {"b": "1/2"}


def test_check_bindings_substitute(tmp_path):
    rep, code = run_job(normalize_job({
        "family": "gen_lah", "lambda": "sym", "N": 6,
        "checks": [{"kind": "realroots", "bindings": {"lambda": "1"}},
                   {"kind": "tp", "r": 3, "bindings": {"lambda": "1/2"}}]}))
    assert code == EXIT_PASS
    assert rep["tasks"][0]["checks"][1]["property"] == "TP_r"


@pytest.mark.parametrize("job,code", [
    ({"checks": []}, EXIT_PARSE),
    ({"sequence": [1, 2], "checks": [{"kind": "bogus", "r": 1}]}, EXIT_PARSE),
    ({"series": "t^t", "checks": []}, EXIT_PARSE),
    ({"series": "exp(1+t)", "checks": []}, EXIT_DOMAIN),
    ({"family": "gen_bessel2", "a": -1, "checks": []}, EXIT_DOMAIN),
    ({"sequence": [1.5], "checks": []}, EXIT_PARSE),
])
def test_error_exit_codes(tmp_path, capsys, job, code):
    path = write_job(tmp_path, job)
    got, out, _ = run_cli(["verify", path], capsys)
    assert got == code
    assert json.loads(out)["tasks"][0]["status"] == "error"


def test_invalid_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    code, _, err = run_cli(["verify", str(p)], capsys)
    assert code == EXIT_PARSE and "invalid JSON" in err


def test_subcommands(capsys):
    code, out, _ = run_cli(["triangle", "lah", "-N", "3", "--rows"], capsys)
    assert code == 0 and "3: q^3 + 6*q^2 + 6*q" in out
    code, out, _ = run_cli(["triangle", "eulerian", "-N", "4", "--json"], capsys)
    assert json.loads(out)["entries"][4][2] == "11/1"
    code, out, _ = run_cli(["tpcheck", "--family", "pascal", "-N", "7", "-r", "4"], capsys)
    assert code == 0 and "PASS" in out
    code, out, _ = run_cli(["hankel", "--seq", "1,2,3", "-r", "2", "--revalidate"], capsys)
    assert code == EXIT_FAIL and "revalidated: True" in out
    code, out, _ = run_cli(["toeplitz", "--series", "exp(t)", "--egf", "-N", "6", "-r", "3"],
                           capsys)
    assert code == 0
    code, out, _ = run_cli(["prodmat", "1/(1-t)", "t/(1-t)", "-N", "3", "--verify"], capsys)
    assert code == 0 and "PASS" in out
    code, out, _ = run_cli(["cf", "lah", "--bind", "q=sym", "-N", "3"], capsys)
    assert code == 0 and "t^3: q^3 + 6*q^2 + 6*q" in out
    code, out, _ = run_cli(["cf", "1,1,1,1,1,1", "-N", "5", "--json"], capsys)
    assert json.loads(out)["series"]["recursive"][5] == "42/1"
    code, out, _ = run_cli(["conv", "--family", "pascal", "-N", "3", "-r", "2",
                            "--library", "catalan"], capsys)
    assert code == 0 and "5/5 checks passed" in out
    code, _, err = run_cli(["triangle", "nope"], capsys)
    assert code == EXIT_DOMAIN
    code, _, _ = run_cli(["tpcheck", "--family", "lah", "--bind", "oops"], capsys)
    assert code == EXIT_PARSE


def test_console_script_runs(tmp_path):
    job = write_job(tmp_path, {"family": "pascal", "N": 7, "checks": [{"kind": "tp", "r": 4}]})
    proc = subprocess.run([sys.executable, "-m", "rtp.cli", "verify", job],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summary"]["status"] == "pass"
