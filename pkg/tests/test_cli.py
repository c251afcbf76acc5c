import csv
import io
import json
import subprocess
import sys

import pytest

from hurwitz_lab.cli import main
from hurwitz_lab.exact_ring import get_max_terms


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json")
    return code, json.loads(text)


@pytest.mark.parametrize("profiles, value", [
    (["[3]", "[3]"], "1/3"),
    (["[2,1]", "[2,1]", "[3]"], "1"),
    (["[2]", "[1,1]"], "0"),
])
def test_hurwitz_examples(profiles, value):
    assert run("hurwitz", *profiles) == (0, value + "\n")


def test_hurwitz_oracle_column():
    code, rec = run_json("hurwitz", "[2,1]", "[2,1]", "[3]", "--oracle")
    assert code == 0 and rec["value"] == rec["bruteforce"] == "1" and rec["agree"] is True


@pytest.mark.parametrize("argv", [
    ["hurwitz", "[2"],
    ["hurwitz", "[1,2]"],
    ["hurwitz", "[2]", "[3]"],
    ["whurwitz", "--n", "2", "--d", "3", "--D", "1"],
    ["whurwitz", "--n", "2", "--c", "1/0"],
    ["verify", "nope"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv, out=io.StringIO()) == 2


def test_whurwitz_n2_formal_table():
    code, recs = run_json("whurwitz", "--n", "2", "--d", "3")
    assert code == 0
    values = {(r["mu"], r["nu"]): r["value"] for r in recs}
    assert values == {("[2]", "[2]"): "0", ("[1,1]", "[1,1]"): "0",
                      ("[2]", "[1,1]"): "1/2*G3", ("[1,1]", "[2]"): "1/2*G3"}


def test_whurwitz_numeric_example():
    code, recs = run_json("whurwitz", "--n", "2", "--c", "1/2", "--d", "1", "--mu", "[2]", "--nu", "[1,1]")
    assert code == 0
    rec = recs[0] if isinstance(recs, list) else recs
    assert rec["value"] == "1/4" and rec["agree"] is True


def test_whurwitz_all_routes_agree():
    code, recs = run_json("whurwitz", "--n", "3", "--c", "1/2,1/3,2/7", "--route", "all")
    assert code == 0
    assert all(set(r["routes"]) >= {"character", "definition", "determinant", "cayley"} for r in recs)
    assert all(r["agree"] and len(set(r["routes"].values())) == 1 for r in recs)


def test_whurwitz_n3_formal_example():
    code, recs = run_json("whurwitz", "--n", "3", "--d", "2", "--mu", "[1,1,1]", "--nu", "[3]")
    rec = recs[0] if isinstance(recs, list) else recs
    assert code == 0 and rec["value"] == "1/3*G1^2 + 1/3*G2"


def test_csv_output_round_trips():
    code, text = run("whurwitz", "--n", "2", "--d", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 4
    assert {r["value"] for r in rows} == {"0", "1/2*G2"}


@pytest.mark.parametrize("argv", [
    ["verify", "tep5", "--n", "2", "--D", "2"],
    ["verify", "cayley", "--n", "3", "--d", "2"],
    ["verify", "recursion", "--k", "2", "--seed", "7"],
    ["verify", "lemma-np", "--N", "2", "--P", "2"],
    ["verify", "d0-matrix", "--n", "2"],
    ["verify", "sums", "--n", "3", "--d", "2"],
])
def test_verify_suites_pass(argv):
    code, recs = run_json(*argv)
    recs = recs if isinstance(recs, list) else [recs]
    assert code == 0 and recs and all(r["pass"] for r in recs)


def test_verify_is_deterministic_given_seed():
    assert run("verify", "recursion", "--k", "1", "--seed", "3") == \
        run("verify", "recursion", "--k", "1", "--seed", "3")


def test_config_file_merged_under_flags(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"n": 2, "d": 1, "c": ["1/2"], "mu": "[2]", "nu": "[2]"}))
    code, rec = run_json("whurwitz", "--config", str(cfg), "--nu", "[1,1]")
    rec = rec[0] if isinstance(rec, list) else rec
    assert code == 0 and rec["nu"] == "[1,1]" and rec["value"] == "1/4"


def test_max_terms_guard_exits_cleanly_and_is_scoped(capsys):
    before = get_max_terms()
    # formal-G content products are rebuilt per weight object, so this is never served from a cache
    code = main(["whurwitz", "--n", "3", "--d", "2", "--max-terms", "1"], out=io.StringIO())
    assert code == 2 and "terms" in capsys.readouterr().err
    assert get_max_terms() == before


def test_tau_command():
    code, rec = run_json("tau", "--n-max", "2", "--D", "1")
    assert code == 0 and rec["agree_with_schur"] is True
    assert {"omega": "[1]", "sigma": "[1]", "d": 0, "value": "1"} in rec["coefficients"]


def test_paths_command():
    code, recs = run_json("paths", "--n", "2", "--d", "1", "--mu", "[1,1]", "--nu", "[2]")
    recs = recs if isinstance(recs, list) else [recs]
    assert code == 0 and any(r["count"] == 1 for r in recs)


def test_threads_env_fallback(monkeypatch):
    monkeypatch.setenv("HURWITZ_LAB_THREADS", "2")
    code, recs = run_json("verify", "all")
    assert code == 0 and all(r["pass"] for r in recs)
    monkeypatch.setenv("HURWITZ_LAB_THREADS", "many")
    assert main(["verify", "all"], out=io.StringIO()) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hurwitz_lab", "hurwitz", "[3]", "[3]"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "1/3"
