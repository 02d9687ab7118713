import json
import subprocess
import sys

import pytest

from flasque.cli import main
from flasque.fileformat import dumps, klein_preset_dict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("lattice, sub, degree, expect", [
    ("IG", "G", "1", "Z/4"),
    ("ZG", "G", "1", "0"),
    ("Z", "G", "0", "Z/4"),
    ("IG", "G", "-1", "Z/2 + Z/2"),
    ("Z", "σ", "0", "Z/2"),
    ("Tstar", "1", "1", "0"),
])
def test_cohom(capsys, lattice, sub, degree, expect):
    code, out, _ = run(capsys, "cohom", "--preset", "klein", lattice, sub, degree)
    assert code == 0 and out.strip() == expect


def test_cohom_from_file(capsys, tmp_path):
    path = tmp_path / "k.json"
    path.write_text(dumps(klein_preset_dict()), encoding="utf-8")
    code, out, _ = run(capsys, "cohom", "--file", str(path), "IG", "G", "1")
    assert code == 0 and out.strip() == "Z/4"


@pytest.mark.parametrize("argv", [
    ["cohom", "nope", "G", "1"],
    ["cohom", "IG", "ρ", "1"],
    ["cohom", "IG", "G", "2"],
    ["cohom", "--file", "/nonexistent.json", "IG", "G", "1"],
    ["resolve", "nope"],
    ["resolve", "Z", "--method", "explicit"],
    ["verify", "bogus"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_resolve_tstar(capsys):
    code, out, _ = run(capsys, "resolve", "Tstar", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert (data["method"], data["P_rank"], data["F_rank"], data["coflasque"]) == ("explicit", 9, 5, True)


def test_resolve_generic_text(capsys):
    code, out, _ = run(capsys, "resolve", "Z", "--method", "generic")
    assert code == 0
    assert "coflasque: true" in out and "rank 11" in out


@pytest.mark.parametrize("target", ["local", "global"])
def test_verify_passing_suites(capsys, target):
    code, out, _ = run(capsys, "verify", target)
    assert code == 0 and out.strip().endswith(")") and "overall: pass" in out


def test_verify_klein_json(capsys):
    code, out, _ = run(capsys, "verify", "klein", "--format", "json")
    data = json.loads(out)
    status = {c["id"]: c["status"] for c in data["checks"]}
    assert status["lemma_4_1_ii"] == "pass"
    assert [k for k, v in status.items() if v == "fail"] == ["lemma_4_1_i"]
    assert code == 1


def test_verify_all_is_deterministic(capsys):
    first = run(capsys, "verify", "all", "--format", "json")
    second = run(capsys, "verify", "all", "--format", "json")
    assert first == second
    assert first[0] == 1


def test_export(capsys):
    code, out, _ = run(capsys, "export", "klein")
    assert code == 0 and out == dumps(klein_preset_dict())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "flasque", "cohom", "IG", "G", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "Z/4"
    proc = subprocess.run([sys.executable, "-m", "flasque", "verify", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 2
