import io
import json
import random
import subprocess
import sys

import pytest

from almostint.cli import check_verdict, run
from almostint.constructions import b_plus
from almostint.family import dumps, family_from_json, is_almost_intersecting, is_intersecting
from almostint.fuzz import random_almost_intersecting, random_family


def call(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_star(capsys, monkeypatch):
    code, out, _ = call(capsys, monkeypatch, ["construct", "--family", "star", "--n", "5", "--k", "2", "--x", "1"])
    assert code == 0
    assert json.loads(out) == {"n": 5, "k": 2, "sets": [[1, 2], [1, 3], [1, 4], [1, 5]]}


@pytest.mark.parametrize("argv", [
    ["--family", "star", "--n", "7", "--k", "3", "--x", "4"],
    ["--family", "br", "--n", "9", "--k", "4", "--r", "3"],
    ["--family", "hm", "--n", "9", "--k", "4"],
    ["--family", "bplus", "--n", "13", "--k", "3", "--extra", "1,5,6"],
    ["--family", "lex", "--n", "10", "--k", "3", "--m", "20", "--interval", "2,10"],
])
def test_construct_round_trips(capsys, monkeypatch, argv):
    code, out, _ = call(capsys, monkeypatch, ["construct", *argv])
    assert code == 0
    f = family_from_json(json.loads(out))
    assert json.loads(dumps(f)) == json.loads(out)


def test_check_b_plus(capsys, monkeypatch):
    code, out, _ = call(capsys, monkeypatch, ["check"], dumps(b_plus(13, 3)))
    assert code == 0
    v = json.loads(out)
    assert {k: v[k] for k in ("almost_intersecting", "size", "bound", "within_bound")} == {
        "almost_intersecting": True, "size": 32, "bound": 32, "within_bound": True}


def test_check_agrees_with_library_on_fuzz():
    rng = random.Random(2024)
    for i in range(500):
        n, k = rng.choice([(6, 2), (7, 3), (9, 3), (10, 4), (13, 3)])
        if i % 2:
            f = random_almost_intersecting(rng, n, k)
        else:
            f = random_family(rng, n, k, rng.randint(0, 12))
        v = check_verdict(f)
        assert v["almost_intersecting"] == is_almost_intersecting(f)
        assert v["intersecting"] == is_intersecting(f)
        assert v["size"] == len(f)


def test_check_cli_fuzz_sample(capsys, monkeypatch):
    rng = random.Random(9)
    for _ in range(40):
        f = random_almost_intersecting(rng, 9, 3)
        code, out, _ = call(capsys, monkeypatch, ["check"], dumps(f))
        assert code == 0 and json.loads(out) == check_verdict(f)


def test_partition_and_diagnose(capsys, monkeypatch):
    code, out, _ = call(capsys, monkeypatch, ["partition"], dumps(b_plus(13, 3, [1, 5, 6])))
    assert code == 0
    assert sorted(map(sorted, json.loads(out)["pairs"][0])) == [[1, 5, 6], [2, 3, 4]]
    assert json.loads(out)["ell"] == 1
    code, out, _ = call(capsys, monkeypatch, ["diagnose"], dumps(b_plus(13, 3)))
    assert code == 0 and json.loads(out)["bound_value"] == 32


def test_partition_rejects_non_almost_intersecting(capsys, monkeypatch):
    bad = '{"n": 6, "k": 2, "sets": [[1,2],[3,4],[5,6]]}'
    code, _, err = call(capsys, monkeypatch, ["partition"], bad)
    assert code == 2 and "disjoint" in err


def test_bad_json_is_usage_error(capsys, monkeypatch):
    code, _, _ = call(capsys, monkeypatch, ["check"], '{"n": 5, "k": 2, "sets": [[1, 9]]}')
    assert code == 2


def test_unknown_flag(capsys, monkeypatch):
    code, _, err = call(capsys, monkeypatch, ["construct", "--bogus"])
    assert code == 2 and "usage" in err


def test_search_and_witness_file(capsys, monkeypatch, tmp_path):
    path = tmp_path / "w.json"
    code, out, _ = call(capsys, monkeypatch, ["search", "--n", "13", "--k", "3", "--witnesses", str(path)])
    assert code == 0
    res = json.loads(out)
    assert res["optimum"] == 32 and res["exhausted"] and res["witness_classes"] == 1
    assert "pair_meeting" in res["stats"]["prunes"]
    saved = json.loads(path.read_text())
    fams = [family_from_json(w) for w in saved["witnesses"]]
    assert [json.loads(dumps(f)) for f in fams] == saved["witnesses"]
    assert all(len(f) == 32 for f in fams)


def test_search_budget_exit_code(capsys, monkeypatch):
    code, out, _ = call(capsys, monkeypatch, ["search", "--n", "13", "--k", "3", "--budget-nodes", "20"])
    assert code == 3 and json.loads(out)["exhausted"] is False


def test_search_jobs_flag_either_side(capsys, monkeypatch):
    a = call(capsys, monkeypatch, ["--jobs", "2", "search", "--n", "9", "--k", "3"])
    b = call(capsys, monkeypatch, ["search", "--n", "9", "--k", "3", "--jobs", "2"])
    assert a[0] == b[0] == 0
    assert json.loads(a[1])["optimum"] == json.loads(b[1])["optimum"] == 20


def test_verify_bounds(capsys, monkeypatch):
    code, out, _ = call(capsys, monkeypatch, ["verify-bounds", "--lemma", "3.5", "--kmax", "20"])
    assert code == 0 and json.loads(out)["3.5"]["fail"] == 0
    code, out, _ = call(capsys, monkeypatch, ["verify-bounds", "--formulas", "--nmax", "12"])
    assert code == 0 and json.loads(out)["mismatches"] == []
    code, out, _ = call(capsys, monkeypatch, ["verify-bounds", "--compression", "--trials", "20"])
    assert code == 0 and all(v["preserved"] == 20 for v in json.loads(out).values())


def test_shadow_and_cross(capsys, monkeypatch, tmp_path):
    code, out, _ = call(capsys, monkeypatch, ["shadow", "--b", "1"],
                        '{"n": 4, "k": 2, "sets": [[1,2],[3,4]]}')
    assert code == 0 and json.loads(out)["sets"] == [[1], [2], [3], [4]]
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text('{"n": 6, "k": 2, "sets": [[2,3]]}')
    b.write_text('{"n": 6, "k": 3, "sets": [[3,4,5]]}')
    code, out, _ = call(capsys, monkeypatch, ["cross", str(a), str(b), "--interval", "2,6"])
    assert code == 0
    # 3-sets of [2,6] meeting {2,3}: C(5,3) - 1
    assert json.loads(out) == {"cross_intersecting": True, "max_partner_size": 9}


def test_report(capsys, monkeypatch):
    code, out, err = call(capsys, monkeypatch, ["report", "--grid", "k=3..6"])
    assert code == 0
    rep = json.loads(out)
    assert set(rep) == {"command", "params", "result", "wall_time", "version"}
    rows = {(r["n"], r["k"]): r for r in rep["result"]}
    assert rows[(13, 3)]["b_plus"] == 32 and rows[(13, 3)]["case"] == "i"
    assert rows[(15, 4)]["case"] == "ii"
    assert rows[(12, 3)]["case"] == "outside"
    assert all(r["enumerated"] is True for r in rep["result"] if r["n"] <= 14)
    assert "b_plus" in err


def test_report_oversized_grid(capsys, monkeypatch):
    code, _, _ = call(capsys, monkeypatch, ["report", "--grid", "k=3..4,n=7..99"])
    assert code == 2


def test_json_only_silences_notes(capsys, monkeypatch):
    _, _, err = call(capsys, monkeypatch, ["--json-only", "construct", "--family", "hm", "--n", "8", "--k", "3"])
    assert err == ""


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "almostint.cli", "construct", "--family", "star",
                          "--n", "5", "--k", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["n"] == 5
