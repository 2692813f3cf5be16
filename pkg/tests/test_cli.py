import csv
import io
import itertools
import json
import subprocess
import sys

import pytest

from mustafin import cli
from mustafin.apartment import LatticeSet, std_chain
from mustafin.dimension import ClassRecord, ConjectureReport
from mustafin.pluecker import KSubset, image_index, lattice_for_index, wedge_chain


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def no_cache(monkeypatch):
    monkeypatch.delenv("MUSTAFIN_CACHE_DIR", raising=False)


def test_chain(capsys):
    code, out, _ = run(capsys, "chain", "--n", "4", "--k", "2")
    data = json.loads(out)
    assert code == 0 and len(data["classes"]) == 4
    assert all(len(r) == 6 for r in data["classes"]) and data["classes"][0] == [0] * 6

    _, out, _ = run(capsys, "chain", "--n", "5", "--k", "1")
    assert LatticeSet.from_json(json.loads(out)) == std_chain(5)

    _, out, _ = run(capsys, "chain", "--n", "5", "--k", "2")
    rows = json.loads(out)["classes"]
    # the wedge of L_1 has exponent 1 - #(I & {0}) at I
    want = [1 - (0 in I) for I in itertools.combinations(range(5), 2)]
    assert want in rows


def test_closure(capsys, tmp_path):
    src = tmp_path / "chain.json"
    src.write_text(json.dumps(wedge_chain(5, 2).to_json()))
    code, out, err = run(capsys, "closure", "--input", str(src))
    assert code == 0 and len(json.loads(out)["classes"]) == 10
    assert "input: 5  closure: 10" in err and "convex: false" in err

    src.write_text(json.dumps(wedge_chain(6, 3).to_json()))
    _, out, _ = run(capsys, "closure", "--input", str(src))
    assert len(json.loads(out)["classes"]) == 20

    src.write_text(out)
    code, again, err = run(capsys, "closure", "--input", str(src), "--out", str(tmp_path / "c.json"))
    assert code == 0 and again == ""
    assert (tmp_path / "c.json").read_text() == out
    assert "convex: true" in err


def test_closure_rejects_bad_input(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"labels": [0, 1], "classes": [[1, 2]]}))
    code, _, err = run(capsys, "closure", "--input", str(bad))
    assert code == 2 and "not normalized" in err
    bad.write_text("{not json")
    assert run(capsys, "closure", "--input", str(bad))[0] == 2
    assert run(capsys, "closure", "--input", str(tmp_path / "missing.json"))[0] == 2


@pytest.mark.parametrize("n,k", [(5, 2), (7, 2), (7, 3)])
def test_verify_passes(capsys, tmp_path, n, k):
    stem = tmp_path / "reports" / f"{n}_{k}"
    code, _, err = run(capsys, "verify", "--n", str(n), "--k", str(k), "--out", str(stem))
    assert code == 0 and "verified" in err
    report = json.loads(stem.with_suffix(".json").read_text())
    rows = list(csv.DictReader(io.StringIO(stem.with_suffix(".csv").read_text())))
    assert report["verdict"] and len(rows) == report["classes"]


def test_verify_modes_agree(capsys):
    _, full, _ = run(capsys, "verify", "--n", "6", "--k", "3", "--mode", "full")
    _, red, _ = run(capsys, "verify", "--n", "6", "--k", "3", "--mode", "reduced", "--jobs", "2")
    key = [(r["exponents"], r["pass"]) for r in json.loads(full)["records"]]
    assert key == [(r["exponents"], r["pass"]) for r in json.loads(red)["records"]]


def test_verify_csv_to_stdout(capsys):
    code, out, _ = run(capsys, "verify", "--n", "4", "--k", "2", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("class_id,exponents")


def test_verify_failure_exit_code(capsys, monkeypatch):
    bad = ClassRecord(0, (0, 1), (1,), False, (0,), 0, 1)
    monkeypatch.setattr(cli, "verify_conjecture",
                        lambda n, k, mode, jobs: ConjectureReport(n, k, mode, (bad,)))
    code, out, err = run(capsys, "verify", "--n", "4", "--k", "2")
    assert code == 1 and "FAILED" in err
    assert json.loads(out)["verdict"] is False


def test_schedule(capsys):
    _, out, _ = run(capsys, "schedule", "--n", "5", "--k", "2")
    assert len(json.loads(out)["stages"]) == 5
    _, out, _ = run(capsys, "schedule", "--n", "5", "--k", "2", "--target", "mustafin")
    assert len(json.loads(out)["stages"]) == 9
    _, out, _ = run(capsys, "schedule", "--n", "2", "--k", "1")
    assert json.loads(out) == {"stages": []}
    code, out, _ = run(capsys, "schedule", "--n", "4", "--k", "2", "--format", "dot")
    assert code == 0 and out.startswith("digraph genestier")


def test_correspondence(capsys):
    _, out, _ = run(capsys, "correspondence", "--n", "5", "--k", "2")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 10
    top = [r for r in rows if r["subset"] == "3 4"][0]
    assert set(top["exponent_vector"].split()) == {"0"}

    _, out, _ = run(capsys, "correspondence", "--n", "6", "--k", "3", "--format", "json")
    table = {tuple(r["subset"]): tuple(r["exponent_vector"]) for r in json.loads(out)}
    assert table[(0, 2, 3)] == lattice_for_index(KSubset((0, 2, 3), 6))
    for subset, vec in table.items():
        assert image_index(vec, 6, 3).elems == subset


def test_graph(capsys):
    code, out, _ = run(capsys, "graph", "--n", "4", "--k", "2")
    assert code == 0 and out.startswith("graph components_4_2")
    code, out, _ = run(capsys, "graph", "--n", "4", "--k", "2", "--poset")
    assert code == 0 and out.startswith("digraph subsets_4_2") and "->" in out


@pytest.mark.parametrize("argv", [
    ["chain", "--n", "4"],
    ["chain", "--n", "3", "--k", "3"],
    ["verify", "--n", "4", "--k", "2", "--jobs", "0"],
    ["correspondence", "--n", "4", "--k", "0"],
])
def test_bad_parameters(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("mustafin: error")


def test_outputs_are_deterministic(capsys):
    for argv in (["schedule", "--n", "5", "--k", "3", "--target", "mustafin"],
                 ["correspondence", "--n", "6", "--k", "2"],
                 ["verify", "--n", "6", "--k", "2", "--jobs", "3"]):
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_cache_hits_and_recovers(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("MUSTAFIN_CACHE_DIR", str(tmp_path))
    argv = ["correspondence", "--n", "5", "--k", "2"]
    first = run(capsys, *argv)[1]
    [entry] = list(tmp_path.glob("*.json"))
    assert run(capsys, *argv)[1] == first

    # a warm cache is actually used
    stored = json.loads(entry.read_text())
    calls = []
    monkeypatch.setattr(cli, "run_correspondence", lambda args: calls.append(1))
    assert run(capsys, *argv)[1] == first and not calls
    monkeypatch.undo()
    monkeypatch.setenv("MUSTAFIN_CACHE_DIR", str(tmp_path))

    # tampered payload: checksum no longer matches, so it is recomputed
    stored["payload"]["text"] = "garbage\n"
    entry.write_text(json.dumps(stored))
    assert run(capsys, *argv)[1] == first
    entry.write_text("{truncated")
    assert run(capsys, *argv)[1] == first
    assert json.loads(entry.read_text())["payload"]["text"] == first

    # different parameters get a different key
    run(capsys, "correspondence", "--n", "5", "--k", "2", "--format", "json")
    assert len(list(tmp_path.glob("*.json"))) == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mustafin.cli", "chain", "--n", "3", "--k", "1"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["classes"] == [[0, 0, 0], [0, 0, 1], [0, 1, 1]]
