import json
import subprocess
import sys

import pytest

from arrangements.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main

SMOKE_ARGS = [
    "search", "--q", "7", "--order", "3", "--seed-size", "3", "--min-quad", "2",
    "--mode", "generated-pairs", "--limit-seeds", "200", "--rng-seed", "1", "--time-budget", "30",
]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_verify_dataset_ok(capsys):
    code, rep = report(capsys, "verify-dataset", "a22_4_pos")
    assert code == EXIT_OK and rep["ok"]


def test_verify_dataset_23(capsys):
    code, rep = report(capsys, "verify-dataset", "a23_4")
    assert code == EXIT_OK
    assert rep["quadruple_points"] == 25 and rep["checks"]["quadruple_points"]


def test_corrupted_export_fails(capsys, tmp_path):
    path = tmp_path / "a22.json"
    assert main(["export-dataset", "a22_4_pos", "-o", str(path)]) == EXIT_OK
    capsys.readouterr()
    obj = json.loads(path.read_text())
    obj["lines"][0]["coords"][2] = ["12345/1", "0/1"]
    path.write_text(json.dumps(obj))
    code, rep = report(capsys, "verify-dataset", str(path))
    assert code == EXIT_FAIL and not rep["ok"]


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "census", str(tmp_path / "missing.json"))[0] == EXIT_USAGE
    assert run(capsys, "find-nk", "a22_4_pos")[0] == EXIT_USAGE  # --k is required
    assert run(capsys, "export-dataset", "nope")[0] == EXIT_USAGE
    assert run(capsys, "no-such-command")[0] == EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "census", str(bad))[0] == EXIT_USAGE


def test_census_profile_find_nk(capsys):
    code, rep = report(capsys, "census", "a22_4_pos")
    assert code == EXIT_OK and rep["multiplicities"] == {"4": 22, "2": 99}
    code, rep = report(capsys, "profile", "a22_4_pos")
    assert rep["profiles"] == {"4x4,2x9": 22}
    code, rep = report(capsys, "find-nk", "a26_4", "--k", "4")
    assert code == EXIT_OK and rep["count"] == 1 and rep["configurations"][0]["n"] == 26


def test_dual_profiles(capsys):
    code, rep = report(capsys, "dual", "a22_4_pos")
    assert code == EXIT_OK
    assert rep["profiles"] == {"4x4,3x1,2x7": 12, "4x4,2x9": 10}


def test_matroid_commands(capsys):
    code, rep = report(capsys, "isomorphic", "a22_4_pos", "a22_4_neg")
    assert code == EXIT_OK and rep["isomorphic"]
    code, rep = report(capsys, "isomorphic", "a22_4_pos", "a26_4")
    assert code == EXIT_FAIL and not rep["isomorphic"]
    code, rep = report(capsys, "automorphisms", "a22_4_pos")
    assert rep["order"] == 4 and rep["element_orders"] == {"1": 1, "2": 3}
    code, rep = report(capsys, "matroid", "a22_4_pos")
    assert rep["n"] == 22 and len(rep["canonical_key"]) > 0


def test_search_jsonl(capsys, tmp_path):
    code, out, err = run(capsys, *SMOKE_ARGS)
    assert code == EXIT_OK
    rows = [json.loads(l) for l in out.splitlines()]
    assert rows and all("key" in r for r in rows)
    assert "stats" in json.loads(err)
    path = tmp_path / "hits.jsonl"
    code, rep = report(capsys, *SMOKE_ARGS, "-o", str(path))
    assert code == EXIT_OK
    assert [json.loads(l) for l in path.read_text().splitlines()] == rows
    # the found matroids feed back into the matroid commands
    one = tmp_path / "one.json"
    one.write_text(json.dumps(rows[0]))
    assert run(capsys, "automorphisms", str(one))[0] == EXIT_OK


def test_search_infeasible_seed_is_usage_error(capsys):
    args = ["search", "--q", "19", "--order", "4", "--seed-size", "5", "--forced-quads", "2"]
    assert run(capsys, *args)[0] == EXIT_USAGE


def test_realize_and_verify(capsys, tmp_path):
    out = tmp_path / "real.json"
    code, rep = report(capsys, "realize", "a22_4_pos", "-o", str(out))
    assert code == EXIT_OK and rep["status"] == "realized"
    assert rep["discriminant_squarefree_part"] == 17
    code, rep = report(capsys, "verify", "--matroid", "a22_4_pos", "--coords", str(out))
    assert code == EXIT_OK and rep["realizes"]
    code, rep = report(capsys, "verify", "--matroid", "a26_4", "--coords", str(out))
    assert code == EXIT_FAIL and not rep["realizes"]
    # a realization report is itself an arrangement
    code, rep = report(capsys, "isomorphic", str(out), "a22_4_neg")
    assert code == EXIT_OK and rep["isomorphic"]
    code, rep = report(capsys, "render", str(out), "-o", str(tmp_path / "real.svg"))
    assert code == EXIT_OK and rep["circles"] == 22


def test_render(capsys, tmp_path):
    svg = tmp_path / "a.svg"
    code, rep = report(capsys, "render", "a22_4_pos", "-o", str(svg))
    assert code == EXIT_OK and rep["segments"] == 22 and rep["circles"] == 22
    assert svg.read_text().lstrip().startswith("<?xml")
    code, rep = report(capsys, "render", "a23_4", "-o", str(tmp_path / "b.svg"))
    assert code == EXIT_FAIL and "complex" in rep["error"]


def test_human_output(capsys):
    code, out, _ = run(capsys, "automorphisms", "a22_4_pos", "--human")
    assert code == EXIT_OK and "order" in out and not out.lstrip().startswith("{")


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "arrangements.cli", "verify-dataset", "a26_4"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"]
