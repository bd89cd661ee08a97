import json
import subprocess
import sys

import pytest

from selfapproach.cli import main
from selfapproach.gadgets import CnfFormula

GREEDY_PATH = {"dim": 2, "vertices": [[0, 0], [0.65, 1.125], [2, 0]]}


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_check_path_greedy_path(tmp_path, capsys):
    f = write(tmp_path, "greedy.json", GREEDY_PATH)
    code, out = run(capsys, "check-path", "--input", f, "--mode", "sa", "--algo", "linear")
    assert code == 1
    assert json.loads(out)["witness"] == [2, 3]
    code, out = run(capsys, "check-path", "--input", f, "--mode", "ic", "--exact")
    assert code == 1 and json.loads(out)["witness"] == [2, 3]
    code, _ = run(capsys, "check-path", "--input", f, "--cross-check")
    assert code == 1


def test_check_path_accepts_and_checks_dim(tmp_path, capsys):
    f = write(tmp_path, "ok.json", {"vertices": [[0, 0], [1, 0.5], [2, 2]]})
    code, out = run(capsys, "check-path", "--input", f, "--mode", "ic", "--algo", "brute")
    assert code == 0 and json.loads(out)["ok"] is True
    code, _ = run(capsys, "check-path", "--input", f, "--dim", "3")
    assert code == 2


def test_input_errors_exit_2(tmp_path, capsys):
    assert main(["check-path", "--input", str(tmp_path / "missing.json")]) == 2
    bad = write(tmp_path, "bad.json", "{not json")
    assert main(["check-path", "--input", bad]) == 2
    zero = write(tmp_path, "zero.json", {"vertices": [[0, 0], [0, 0]]})
    assert main(["check-path", "--input", zero]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["check-path"])
    assert exc.value.code == 2


def test_tree_subcommands(tmp_path, capsys):
    k14 = write(tmp_path, "k14.json", {"n": 5, "edges": [[0, 1], [0, 2], [0, 3], [0, 4]]})
    code, out = run(capsys, "tree", "--input", k14, "--op", "drawable")
    assert code == 0 and json.loads(out) == {"class": "K14_SUBDIVISION"}
    k15 = write(tmp_path, "k15.json", {"n": 6, "edges": [[0, k] for k in range(1, 6)]})
    code, out = run(capsys, "tree", "--input", k15, "--op", "drawable")
    assert code == 1 and json.loads(out)["reason"] == "DEGREE_GE_5"
    drawn = str(tmp_path / "drawn.json")
    code, _ = run(capsys, "tree", "--input", k14, "--op", "draw", "--out", drawn)
    assert code == 0
    code, out = run(capsys, "tree", "--input", drawn, "--op", "verify")
    assert code == 0 and json.loads(out)["ok"] is True
    bent = write(tmp_path, "bent.json", {"vertices": GREEDY_PATH["vertices"], "edges": [[0, 1], [1, 2]]})
    code, out = run(capsys, "tree", "--input", bent, "--op", "verify")
    assert code == 1


def test_steiner_build_and_route(tmp_path, capsys):
    pts = write(tmp_path, "pts.json", {"points": [[0, 0], [10, 10], [3, 7], [8, 1]]})
    net = str(tmp_path / "net.json")
    code, _ = run(capsys, "steiner", "build", "--points", pts, "--eps", "0.1", "--out", net)
    assert code == 0
    code, out = run(capsys, "steiner", "route", "--net", net, "--from", "0", "--to", "1")
    res = json.loads(out)
    assert code == 0 and res["frame"] in ("axis", "rotated")
    assert res["path"][0] == [0.0, 0.0] and res["path"][-1] == [10.0, 10.0]
    assert main(["steiner", "route", "--net", net, "--from", "0"]) == 2
    assert main(["steiner", "build", "--points", pts, "--eps", "0.3"]) == 2


def test_find_path_and_budget(tmp_path, capsys):
    out_path = str(tmp_path / "sat.json")
    cnf = write(tmp_path, "f.cnf", CnfFormula(2, ((1, 2, -1), (-2, -2, 1))).to_dimacs())
    assert main(["gen", "sat", "--cnf", cnf, "--out", out_path]) == 0
    capsys.readouterr()
    d = json.load(open(out_path))
    code, out = run(capsys, "find-path", "--input", out_path, "--from", str(d["s"]),
                    "--to", str(d["t"]))
    assert code == 0 and json.loads(out)["status"] == "found"
    code, out = run(capsys, "find-path", "--input", out_path, "--from", str(d["s"]),
                    "--to", str(d["t"]), "--budget", "1")
    assert code == 3 and json.loads(out)["status"] == "budget"
    unsat = write(tmp_path, "u.cnf", CnfFormula(1, ((1, 1, 1), (-1, -1, -1))).to_dimacs())
    assert main(["gen", "sat", "--cnf", unsat, "--out", out_path]) == 0
    d = json.load(open(out_path))
    code, out = run(capsys, "find-path", "--input", out_path, "--from", str(d["s"]),
                    "--to", str(d["t"]))
    assert code == 1 and json.loads(out)["status"] == "absent"


def test_check_drawing_on_fixture(tmp_path, capsys):
    g = str(tmp_path / "cex.json")
    assert main(["gen", "delaunay-cex", "--fixture", "--out", g]) == 0
    code, out = run(capsys, "check-drawing", "--input", g)
    d = json.loads(out)
    assert code == 1 and d["holds"] is False
    # a proven failure outranks pairs left unknown by the budget
    code, out = run(capsys, "check-drawing", "--input", g, "--budget", "1")
    assert code == 1


def test_check_drawing_budget_exhausted(tmp_path, capsys):
    spider = write(tmp_path, "t.json", {"n": 7, "edges": [[0, 1], [1, 2], [0, 3], [3, 4],
                                                           [0, 5], [5, 6]]})
    drawn = str(tmp_path / "drawn.json")
    assert main(["tree", "--input", spider, "--op", "draw", "--out", drawn]) == 0
    code, out = run(capsys, "check-drawing", "--input", drawn, "--mode", "ic")
    assert code == 0 and json.loads(out)["holds"] is True
    code, out = run(capsys, "check-drawing", "--input", drawn, "--mode", "ic", "--budget", "1")
    assert code == 3 and json.loads(out)["holds"] is None


def test_gen_set_intersection(tmp_path, capsys):
    p = str(tmp_path / "si.json")
    assert main(["gen", "set-intersection", "--A", "1,4", "--B", "2", "--out", p]) == 0
    code, _ = run(capsys, "check-path", "--input", p)
    assert code == 0
    assert main(["gen", "set-intersection", "--A", "1,4", "--B", "4", "--out", p]) == 0
    code, _ = run(capsys, "check-path", "--input", p, "--dim", "3")
    assert code == 1


def test_export_svg(tmp_path, capsys):
    f = write(tmp_path, "greedy.json", GREEDY_PATH)
    code, out = run(capsys, "export-svg", "--input", f, "--show-slabs", "--edge", "0,1")
    assert code == 0 and out.startswith("<svg") and "stroke-dasharray" in out


def test_stdout_is_deterministic(tmp_path):
    argv = [sys.executable, "-m", "selfapproach.cli", "gen", "sat", "--seed", "11"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
    argv = [sys.executable, "-m", "selfapproach.cli", "gen", "set-intersection", "--seed", "4"]
    assert subprocess.run(argv, capture_output=True).stdout == \
        subprocess.run(argv, capture_output=True).stdout
