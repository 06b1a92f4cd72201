from __future__ import annotations

import csv
import io
import json

import pytest

from reinhardt.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def cache(tmp_path):
    return ["--cache-dir", str(tmp_path)]


def test_count_json(cache):
    code, out, _ = call("count", "21", "--format", "json", *cache)
    assert code == 0
    assert json.loads(out) == {"n": 21, "E": 10, "E0": 10, "E1": 0, "E0_formula": 10}
    assert out.startswith('{"n":21,"E":10,"E0":10,"E1":0')


def test_count_uses_env_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("REINHARDT_CACHE_DIR", str(tmp_path / "c"))
    assert call("count", "15")[0] == 0
    assert (tmp_path / "c" / "reinhardt-15.v1.jsonl").exists()


def test_enumerate_formats(cache):
    code, out, _ = call("enumerate", "30", "--format", "json", *cache)
    rec = json.loads(out)
    assert code == 0 and (rec["E"], rec["E0"], rec["E1"]) == (41, 38, 3)
    assert sum(p["kind"] == "sporadic" for p in rec["polygons"]) == 3
    code, out, _ = call("enumerate", "21", "--format", "csv", *cache)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 10 and set(rows[0]) == {"parts", "kind", "periods"}
    code, out, _ = call("enumerate", "21", *cache)
    assert "E=10" in out and "[7,7,7]" in out


def test_classify():
    code, out, _ = call("classify", "[7,6,1,1,1,1,2,1,1,1,1,1,4,1,1]", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["reinhardt"] and rec["kind"] == "sporadic" and rec["periods"] == []
    code, out, _ = call("classify", "[4,4,1]", "--format", "json")
    assert code == 0 and json.loads(out)["reinhardt"] is False
    code, out, _ = call("classify", "[(7)^3]")
    assert "periodic" in out


def test_expand():
    assert call("expand", "[(7)^3]") == (0, "[7,7,7]\n", "")
    assert call("expand", "[(3,1,1)^3]")[1] == "[3,1,1,3,1,1,3,1,1]\n"


def test_construct():
    code, out, _ = call("construct", "30", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["C"] == 3 and len(rec["grids"]) == 2
    code, out, _ = call("construct", "30", "--p", "3", "--q", "5", "--r", "2", "--require-zero-in-s", "--format", "json")
    rec = json.loads(out)
    assert rec["s_policy"] == "must-contain-zero" and len(rec["grids"]) == 1
    assert call("construct", "30", "--p", "3")[0] == 2


def test_decompose():
    code, out, _ = call("decompose", "[(3,1,1)^3]", "--p", "3", "--q", "5", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["f1"] == [1, 0, 0, -1, 1] and rec["f2"] == [0, 0, 0]
    assert rec["p_side"] and rec["trivial"]


def test_render(tmp_path):
    target = tmp_path / "fig.svg"
    code, out, _ = call("render", "[7,6,1,1,1,1,2,1,1,1,1,1,4,1,1]", "-o", str(target), "--layers", "polygon,chords")
    assert code == 0 and target.read_text().count("<line") == 15
    assert call("render", "[7,7,7]", "-o", str(target), "--layers", "nope")[0] == 2


def test_tables_respects_budget():
    code, out, _ = call("tables", "--table", "1", "--budget", "250", "--format", "json")
    rec = json.loads(out)
    assert code == 0
    rows = {row["n"]: row for row in rec["rows"]}
    assert rows[30]["C"] == 3 and rows[30]["match"]
    assert rows[45]["status"].startswith("skipped")
    assert rows[286]["status"].startswith("skipped") and rows[286]["C"] is None


@pytest.mark.parametrize(
    "argv,code",
    [
        (["count", "16", "--no-cache"], 2),
        (["classify", "[1,2]"], 2),
        (["classify", "7,7,7"], 2),
        (["expand", "[(7)^]"], 2),
        (["bogus"], 2),
        (["count", "21", "--unknown-flag"], 2),
        (["enumerate", "200", "--no-cache"], 1),
        (["construct", "15"], 2),
        (["decompose", "[4,4,1]", "--p", "3", "--q", "3"], 2),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert call(*argv)[0] == code


def test_budget_message():
    code, _, err = call("construct", "45", "--budget", "10")
    assert code == 1 and "budget exhausted" in err


def test_corrupt_cache_exit_code(tmp_path):
    assert call("count", "15", "--cache-dir", str(tmp_path))[0] == 0
    path = tmp_path / "reinhardt-15.v1.jsonl"
    path.write_text(path.read_text()[:-5])
    code, _, err = call("count", "15", "--cache-dir", str(tmp_path))
    assert code == 1 and "cache" in err
