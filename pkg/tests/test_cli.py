import io
import json
import subprocess
import sys

import pytest

from partial_macdonald import checks, cli
from partial_macdonald.checks import Check


def run(*args):
    buf = io.StringIO()
    cfg = cli.config_from_args(list(args))
    code = cli.run(cfg, buf)
    return code, buf.getvalue()


def test_compute_P_text():
    assert run("compute", "P", "--n", "2", "--k", "1", "--lambda", "0", "--gamma", "0") == (0, "1\n")


def test_compute_json_and_latex():
    code, text = run("compute", "E", "--lambda", "0,1", "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert data["object"] == "E" and len(data["terms"]) == 2
    code, text = run("compute", "Estar", "--lambda", "1,0", "--format", "latex")
    assert code == 0 and text.startswith("x_{1}")


def test_pieri_e1_golden_row():
    code, text = run("pieri", "e1", "--n", "6", "--k", "3", "--lambda", "3,1,1", "--gamma", "1,0,1",
                     "--format", "json", "--oracle", "off")
    assert code == 0
    rows = json.loads(text)
    row = [r for r in rows if r["target"] == {"mu": [3, 2, 1], "eta": [1, 0, 1]}][0]
    assert row["I1"] == [1, 3]
    assert row["A"] == str(checks.parse_qt(checks.GOLDEN["A"]))
    assert row["Jcoeff"] == row["A"]


def test_pieri_rows_agree_with_oracle():
    code, text = run("pieri", "e1", "--lambda", "1,0", "--gamma", "0", "--format", "json")
    assert code == 0
    assert all(r["agree"] for r in json.loads(text))
    code, text = run("pieri", "xj", "--lambda", "0", "--gamma", "0", "--format", "json")
    assert code == 0
    rows = json.loads(text)
    assert {(tuple(r["target"]["mu"]), tuple(r["target"]["eta"])) for r in rows} == {((0,), (1,)), ((1,), (0,))}
    assert all(r["agree"] for r in rows)


def test_pieri_text_and_latex_render():
    for fmt in ("text", "latex"):
        code, text = run("pieri", "xj", "--lambda", "1,0", "--gamma", "0", "--format", fmt)
        assert code == 0 and text.strip()


@pytest.mark.parametrize("args", [
    ["pieri", "e1", "--lambda", "0,1", "--gamma", "0"],
    ["pieri", "e1", "--lambda", "1,0", "--gamma", ""],
    ["pieri", "e1", "--n", "5", "--lambda", "1,0", "--gamma", "0"],
    ["pieri", "xj", "--lambda", "1,0", "--gamma", "0", "--j", "1"],
    ["compute", "P", "--lambda", "a", "--gamma", "0"],
    ["compute", "P", "--lambda", "-1", "--gamma", "0"],
])
def test_usage_errors(args):
    assert cli.main(args) == 2


def test_parser_errors_exit_two():
    assert cli.main(["verify", "nope"]) == 2
    assert cli.main(["frobnicate"]) == 2
    assert cli.main(["verify"]) == 2
    assert cli.main(["verify", "golden", "--suite", "hecke"]) == 2


def test_verify_golden_json_schema(tmp_path):
    report = tmp_path / "r.json"
    code, text = run("verify", "golden", "--format", "json", "--report", str(report))
    assert code == 0
    data = json.loads(text)
    assert json.loads(report.read_text()) == data
    assert set(data) == {"suites", "config", "checks", "passed", "failed"}
    assert data["failed"] == 0 and data["passed"] == len(data["checks"])
    for c in data["checks"]:
        assert {"identity", "anchor", "instance", "elapsed", "pass", "suite"} <= set(c)
        assert "§" not in c["anchor"]


def test_verify_is_deterministic_without_timing(monkeypatch):
    outs = []
    for threads in ("1", "4"):
        monkeypatch.setenv(checks.THREADS_ENV, threads)
        code, text = run("verify", "hecke", "--format", "json", "--no-timing", "--seed", "3")
        assert code == 0
        outs.append(text)
    assert outs[0] == outs[1]


def test_failed_check_exits_one(monkeypatch):
    monkeypatch.setitem(checks.SUITES, "golden", lambda a: [Check("broken", "always false", "x", lambda: False)])
    code, text = run("verify", "golden")
    assert code == 1
    assert "FAIL  broken" in text


def test_internal_error_exits_three(monkeypatch):
    def boom(*a, **k):
        raise ZeroDivisionError("singular")
    monkeypatch.setattr(cli, "P", boom)
    assert run("compute", "P", "--lambda", "0", "--gamma", "0")[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "partial_macdonald", "compute", "E", "--lambda", "1,0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "x1"
