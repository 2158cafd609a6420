import io
import json
import subprocess
import sys

import pytest

from onecopy.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_map_f_example():
    code, out, _ = call("map", "--which", "f", "--perm", "2 5 1 4 7 3 8 6")
    assert code == 0 and out == "4 2 1 3 10 9 6 5 8 7\n"


def test_map_fk_reproduces_worked_example():
    code, out, _ = call("map", "--which", "Fk", "--k", "4", "--perm", "4 8 1 5 9 3 2 7 6",
                        "--trace")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "5 4 1 3 11 10 9 6 2 8 7"
    assert "intermediate: 4 5 1 3 11 9 10 6 2 8 7" in lines
    assert "red: 1 2 6" in lines


def test_map_general_and_inverse_round_trip():
    _, img, _ = call("map", "--which", "general", "--rho", "1", "--perm", "4 8 1 5 9 3 2 7 6")
    code, back, _ = call("map", "--which", "general-inverse", "--rho", "1", "--perm",
                         img.strip())
    assert code == 0 and back == "4 8 1 5 9 3 2 7 6\n"


def test_map_g_json():
    code, out, _ = call("map", "--which", "g", "--perm", "3 1 4 6 2 7 5", "--format", "json")
    assert code == 0 and json.loads(out)["image"] == "7 1 4 3 2 6 5"


def test_count_example():
    assert call("count", "--pattern", "3 2 1", "--copies", "one", "--n", "4") == (0, "6\n", "")


def test_count_dp_route():
    code, out, _ = call("count", "--pattern", "4 3 2 1", "--n", "10", "--method", "dp")
    _, slow, _ = call("count", "--pattern", "4 3 2 1", "--n", "8")
    _, slow_dp, _ = call("count", "--pattern", "4 3 2 1", "--n", "8", "--method", "dp")
    assert code == 0 and int(out) > 0 and slow == slow_dp


def test_enumerate_and_occurrences_and_corank():
    _, out, _ = call("enumerate", "--pattern", "3 2 1", "--n", "3")
    assert out.split("\n")[0] == "1 2 3" and len(out.splitlines()) == 5
    _, out, _ = call("occurrences", "--perm", "2 5 1 4 7 3 8 6", "--pattern", "3 2 1")
    assert out == "2 4 6\n"
    _, out, _ = call("corank", "--perm", "3 6 1 2 5 4")
    assert out == "2 3 1 1 2 1\n"


@pytest.mark.parametrize("argv", [
    ("map", "--which", "f", "--perm", "1 2 3"),
    ("map", "--which", "Fk", "--k", "2", "--perm", "3 2 1"),
    ("count", "--pattern", "1 1", "--n", "3"),
    ("count", "--pattern", "1 3 2", "--n", "3", "--method", "dp"),
    ("count", "--pattern", "3 2 1", "--n", "3", "--threads", "0"),
    ("frobnicate",),
])
def test_usage_and_domain_errors_exit_two(argv):
    code, _, err = call(*argv)
    assert code == 2 and err


def test_verify_passes_and_emits_json(tmp_path):
    report = tmp_path / "report.jsonl"
    code, out, _ = call("verify", "--suite", "noonan", "--max-n", "6", "--report", str(report))
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert records and all(r["status"] == "pass" for r in records)
    assert set(records[0]) == {"check", "params", "status", "witness"}
    assert report.read_text() == out


def test_verify_plain_has_no_colour_off_tty():
    code, out, _ = call("verify", "--suite", "rilmin", "--max-n", "6", "--format", "plain")
    assert code == 0 and "\033[" not in out and out.endswith("0 failed\n")


def test_verify_reports_failure_with_exit_one(monkeypatch):
    from onecopy import verify
    from onecopy.analysis import CheckResult

    def broken(max_n, workers=1):
        yield CheckResult("noonan", {"n": 1}, "fail", "forced")

    monkeypatch.setitem(verify.SUITES, "noonan", broken)
    code, out, _ = call("verify", "--suite", "noonan")
    assert code == 1 and json.loads(out)["status"] == "fail"


TABLE = ("table", "--pattern", "4 3 2 1", "--pattern", "3 4 2 1", "--copies", "avoid",
         "--copies", "one", "--n-max", "8", "--format", "csv")


def test_table_is_identical_across_worker_counts():
    outputs = {call(*TABLE, "--threads", str(t))[1] for t in (1, 2, 8)}
    assert len(outputs) == 1
    text = outputs.pop()
    assert text.startswith("n,pattern,constraint,count\n")
    assert "5,4.3.2.1,avoid,103\n" in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "onecopy", "count", "--pattern", "2 1",
                           "--n", "5"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "1\n"
