import io
import json
import os
from contextlib import redirect_stderr, redirect_stdout

import pytest

from cl2tower.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_NOT_222, EXIT_OK, SCHEMA_VERSION, main

TOWER_KEYS = {
    "d",
    "hall_senior",
    "case_letter",
    "rank_cl2_k1",
    "cl2_k1",
    "cl2_k1_order",
    "tower_length",
    "infinite",
    "table1_row",
    "parameters",
    "parameter_defs",
    "group",
}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "argv,code",
    [
        (["classify", "-d", "-660"], EXIT_OK),
        (["classify", "-d", "-15"], EXIT_NOT_222),
        (["classify", "-d", "-10"], EXIT_INPUT),
        (["classify", "-d", "5"], EXIT_INPUT),
        (["tower", "-d", "-84"], EXIT_NOT_222),
        (["survey", "--min", "-10", "--max", "-20"], EXIT_INPUT),
        (["group", "--label", "99.999"], EXIT_INPUT),
        (["group"], EXIT_INPUT),
        (["nonsense"], EXIT_INPUT),
    ],
)
def test_exit_codes(argv, code):
    assert run(argv)[0] == code


def test_tower_json():
    code, out, _ = run(["tower", "-d", "-660", "--json"])
    assert code == EXIT_OK
    obj = json.loads(out)
    assert set(obj) == TOWER_KEYS
    assert obj["hall_senior"] == "32.038" and obj["cl2_k1"] == [2, 4] and obj["parameters"] == {"n": 2}


def test_tower_out_of_scope_is_not_an_error():
    code, out, _ = run(["tower", "-d", "-3315", "--json"])
    obj = json.loads(out)
    assert code == EXIT_OK and obj["hall_senior"].startswith("64.") and obj["out_of_scope"]


def test_plain_output_is_key_value():
    code, out, _ = run(["classify", "-d", "-660"])
    assert code == EXIT_OK
    assert "hall_senior: \"32.038\"" in out.splitlines()


@pytest.mark.parametrize("d", [-420, -840, -660, -1155, -1380, -1320, -3135])
def test_schema_keys_per_label(d):
    code, out, _ = run(["tower", "-d", str(d), "--json"])
    assert code == EXIT_OK and set(json.loads(out)) == TOWER_KEYS


def test_survey_deterministic_with_cache(tmp_path):
    cache = tmp_path / "survey.jsonl"
    argv = ["survey", "--min", "-3000", "--max", "-1", "--cache", str(cache), "--jobs", "1"]
    code1, out1, _ = run(argv)
    assert code1 == EXIT_OK and cache.exists()
    code2, out2, _ = run(argv)  # warm cache
    assert code2 == EXIT_OK and out1 == out2
    lines = [json.loads(s) for s in out1.splitlines()]
    ds = [r["classification"]["d"] for r in lines]
    assert ds == sorted(ds, reverse=True) and -660 in ds and -420 in ds
    assert all(r["schema"] == SCHEMA_VERSION for r in lines)
    entries = [json.loads(s) for s in cache.read_text().splitlines()]
    assert len(entries) == 3000 and {e["schema"] for e in entries} == {SCHEMA_VERSION}


def test_survey_cache_ignores_other_schema(tmp_path):
    cache = tmp_path / "survey.jsonl"
    cache.write_text(json.dumps({"schema": SCHEMA_VERSION + 1, "d": -660, "record": None}) + "\n")
    code, out, _ = run(["survey", "--min", "-700", "--max", "-600", "--cache", str(cache), "--jobs", "1"])
    assert code == EXIT_OK
    assert any(json.loads(s)["classification"]["d"] == -660 for s in out.splitlines())


@pytest.mark.skipif(hasattr(os, "geteuid") and os.geteuid() == 0, reason="root can write anywhere")
def test_survey_unwritable_cache_warns(tmp_path):
    ro = tmp_path / "ro"
    ro.mkdir()
    ro.chmod(0o500)
    code, out, err = run(["survey", "--min", "-700", "--max", "-600", "--cache", str(ro / "c.jsonl"), "--jobs", "1"])
    assert code == EXIT_OK and "warning" in err and out


def test_survey_cache_in_missing_directory_warns(tmp_path):
    path = tmp_path / "missing" / "c.jsonl"
    code, out, err = run(["survey", "--min", "-700", "--max", "-600", "--cache", str(path), "--jobs", "1"])
    assert code == EXIT_OK and "warning" in err and out


def test_group_commands():
    code, out, _ = run(["group", "--gamma", "37", "-n", "2", "--eps", "1", "--json"])
    obj = json.loads(out)
    assert code == EXIT_OK and obj["order"] == 64 and obj["quotient_by_G3"] == "32.037"
    code, out, _ = run(["group", "-d", "-660", "--json"])
    assert code == EXIT_OK and json.loads(out)["derived_subgroup"] == [2, 4]
    code, out, _ = run(["group", "--counterexample", "alternative", "--json"])
    assert code == EXIT_OK and json.loads(out)["order"] == 512


def test_mu_example_cli():
    code, out, _ = run(["mu-example", "--json"])
    obj = json.loads(out)
    assert code == EXIT_OK
    assert obj["parts"] == [-7, -3, -23, 5]
    assert obj["octic_same_field"] is True


def test_verify_tables_reports_mismatches():
    code, out, _ = run(["verify-tables", "--json"])
    assert code == EXIT_MISMATCH
    assert "MISMATCH" in out or "false" in out


GOLDEN = sorted((os.path.dirname(__file__) + "/golden/" + f) for f in os.listdir(os.path.join(os.path.dirname(__file__), "golden")))


@pytest.mark.parametrize("path", GOLDEN, ids=[os.path.basename(p) for p in GOLDEN])
def test_golden_record_per_label(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    golden = json.loads(text)
    d = golden["classification"]["d"]
    code, out, _ = run(["survey", "--min", str(d), "--max", str(d + 1), "--jobs", "1"])
    assert code == EXIT_OK
    assert out == text  # byte-identical serialization
    assert json.loads(out) == golden  # and lossless round trip
    assert golden["classification"]["hall_senior"] == os.path.basename(path)[:-5]
