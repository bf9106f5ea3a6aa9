from __future__ import annotations

import json
import subprocess
import sys

import pytest

from burnside_tori import subgroups as sg
from burnside_tori.cli import CliConfig, UsageError, main
from burnside_tori.powerseries import LPolynomial
from burnside_tori.subgroups import symmetric_table
from burnside_tori.toruslab import torus_class_binomial


@pytest.fixture(autouse=True)
def reset_cache_dir():
    yield
    sg.set_cache_dir(None)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_torus_n1(capsys):
    code, out, _ = run(capsys, "torus", "--n", "1")
    assert code == 0
    assert out.splitlines()[0] == "L - 1"


def test_torus_json_round_trip(capsys):
    code, out, _ = run(capsys, "torus", "--n", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["equal"] is True
    x = LPolynomial.from_json(symmetric_table(2), payload["class_binomial"])
    assert x == torus_class_binomial(2)
    assert payload["class_binomial"]["L_coeffs"][1] == [{"class_label": "o1_c0", "coeff": -1}]
    assert payload["class_binomial"]["L_coeffs"][2] == [{"class_label": "o2_c1", "coeff": 1}]


def test_torus_cap(capsys):
    code, _, err = run(capsys, "torus", "--n", "9")
    assert code == 2
    assert "outside the supported range" in err


def test_torus_with_action_file(capsys, tmp_path):
    action = tmp_path / "gamma.json"
    action.write_text(json.dumps({"generators": [[1, 2, 0]]}))
    code, out, _ = run(capsys, "torus", "--n", "3", "--action", str(action), "--format", "json")
    assert code == 0
    assert json.loads(out)["restricted"]["group_order"] == 3


def test_torus_bad_action_file(capsys, tmp_path):
    action = tmp_path / "gamma.json"
    action.write_text(json.dumps({"generators": [[1, 0]]}))
    assert run(capsys, "torus", "--n", "3", "--action", str(action))[0] == 2
    assert run(capsys, "torus", "--n", "3", "--action", str(tmp_path / "missing.json"))[0] == 2


@pytest.mark.parametrize("argv,formula", [
    (("--n", "3", "--cycle-type", "3", "--q", "7"), 342),
    (("--n", "3", "--cycle-type", "2,1", "--q", "3"), 16),
    (("--n", "2", "--cycle-type", "1,1", "--q", "2"), 1),
])
def test_count(capsys, argv, formula):
    code, out, _ = run(capsys, "count", *argv)
    assert code == 0
    assert out.startswith(f"{formula}, {formula}")


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--n", "4", "--cycle-type", "2,2", "--q", "5", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["formula_value"] == payload["oracle_value"] == 24 * 24


@pytest.mark.parametrize("argv", [
    ("--n", "3", "--cycle-type", "2,2", "--q", "3"),
    ("--n", "3", "--cycle-type", "3,0", "--q", "3"),
    ("--n", "3", "--cycle-type", "x", "--q", "3"),
    ("--n", "3", "--cycle-type", "3", "--q", "1"),
])
def test_count_usage_errors(capsys, argv):
    assert run(capsys, "count", *argv)[0] == 2


def test_marks_n2(capsys):
    code, out, _ = run(capsys, "marks", "--n", "2")
    assert code == 0
    assert json.loads(out.splitlines()[0]) == [[2, 0], [1, 1]]


def test_subgroups_n5(capsys):
    code, out, _ = run(capsys, "subgroups", "--n", "5", "--format", "json")
    assert code == 0 and json.loads(out)["count"] == 19


def test_subgroups_cache_hit(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(sg, "_TABLES", {})
    code, out, _ = run(capsys, "subgroups", "--n", "6", "--cache-dir", str(tmp_path))
    assert code == 0 and "computed" in out.splitlines()[0]
    assert (tmp_path / "sym6_v1.json").exists()
    sg._TABLES.clear()
    code, out, _ = run(capsys, "subgroups", "--n", "6", "--cache-dir", str(tmp_path))
    assert code == 0 and "cache hit" in out.splitlines()[0]
    assert "56 conjugacy classes" in out


def test_cache_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(sg, "_TABLES", {})
    monkeypatch.setenv("BURNSIDE_CACHE_DIR", str(tmp_path))
    assert run(capsys, "marks", "--n", "3")[0] == 0
    assert (tmp_path / "sym3_v1.json").exists()


def test_corrupt_cache_recomputes(capsys, caplog, tmp_path, monkeypatch):
    monkeypatch.setattr(sg, "_TABLES", {})
    (tmp_path / "sym4_v1.json").write_text("[1, 2")
    code, out, _ = run(capsys, "subgroups", "--n", "4", "--cache-dir", str(tmp_path), "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 11 and payload["source"] == "computed"
    assert "corrupt" in caplog.text


def test_verify_torus(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "3", "--suite", "torus", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["passed"]
    assert all(c["pass"] for c in payload["checks"])


def test_verify_lemmas_deterministic(capsys):
    _, first, _ = run(capsys, "verify", "--max-n", "4", "--suite", "lemmas", "--format", "json")
    _, second, _ = run(capsys, "verify", "--max-n", "4", "--suite", "lemmas", "--format", "json")
    a, b = json.loads(first), json.loads(second)
    assert any("induction commutes" in c["name"] for c in a["checks"])
    strip = lambda p: [(c["name"], c["pass"], c["detail"]) for c in p["checks"]]  # noqa: E731
    assert strip(a) == strip(b)


def test_verify_n6_is_opt_in(capsys, monkeypatch):
    monkeypatch.delenv("BURNSIDE_FULL", raising=False)
    assert run(capsys, "verify", "--max-n", "6")[0] == 2


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["torus"])
    assert exc.value.code == 2


def test_config_validation():
    with pytest.raises(UsageError):
        CliConfig(truncation=8)
    with pytest.raises(UsageError):
        CliConfig(max_n=8)
    with pytest.raises(UsageError):
        CliConfig(output_format="xml")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "burnside_tori", "torus", "--n", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("L - 1")
