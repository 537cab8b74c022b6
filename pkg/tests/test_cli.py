import json
import subprocess
import sys

import pytest

import maxatom.cli as cli
from maxatom.cli import main
from maxatom.instances import parse_instance, parse_solution
from maxatom.model import verify
from maxatom.solver import SolveOutcome, StepCounters

SAT = "maxatom 1\nvars 3\natom 1 2 3 -2\n"
TRIVIAL = "maxatom 1\nvars 2\natom 1 1 2 -1\natom 2 2 1 -1\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def test_solve_sat(write, capsys):
    assert main(["solve", write("a.txt", SAT)]) == 0
    status, values = parse_solution(capsys.readouterr().out)
    assert status == "sat"
    assert verify(parse_instance(SAT), values).satisfied


def test_solve_trivial(write, capsys):
    assert main(["solve", write("a.txt", TRIVIAL)]) == 1
    assert capsys.readouterr().out == "status trivial\n"


def test_solve_counters(write, capsys):
    main(["solve", "--counters", write("a.txt", SAT)])
    counters = json.loads(capsys.readouterr().err)
    assert {"loop1", "loop2", "loop3", "loop4", "phi_steps", "max_atoms"} <= set(counters)


def test_solve_bound_writes_counterexample(write, monkeypatch, tmp_path, capsys):
    monkeypatch.setattr(cli, "algorithm_a",
                        lambda s: (SolveOutcome("bound", None, {"reason": "loop1 over n"}), StepCounters(loop1=9)))
    path = write("a.txt", SAT)
    assert main(["solve", path]) == 3
    dump = json.loads((tmp_path / "a.txt.counterexample.json").read_text())
    assert dump["instance"] == SAT and dump["counters"]["loop1"] == 9
    assert "loop1 over n" in capsys.readouterr().err


@pytest.mark.parametrize("text", [
    "maxatom 1\nvars 3\natom 1 2 9 0\n",
    "nonsense\n",
    "maxatom 1\nvars 2\natom 1 2 1 x\n",
])
def test_parse_errors_exit_2(write, capsys, text):
    assert main(["solve", write("bad.txt", text)]) == 2
    assert "line" in capsys.readouterr().err


def test_missing_file_exit_2(tmp_path):
    assert main(["solve", str(tmp_path / "nope.txt")]) == 2


def test_unknown_flag_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["solve", "--frobnicate", "x"])
    assert info.value.code == 2


def test_oracle(write, capsys):
    path = write("a.txt", "maxatom 1\nvars 2\natom 1 2 2 -1\n")
    assert main(["oracle", path]) == 0
    assert capsys.readouterr().out == "status sat\nx1 0\nx2 -1\n"
    assert main(["oracle", "--exhaustive", path]) == 0
    assert capsys.readouterr().out == "status sat\nx1 0\nx2 -1\n"
    assert main(["oracle", write("t.txt", TRIVIAL)]) == 1


def test_oracle_exhaustive_depth_too_small(write):
    assert main(["oracle", "--exhaustive", "--threshold", "0", write("a.txt", SAT)]) == 2


def test_verify(write, capsys):
    inst = write("a.txt", SAT)
    assert main(["verify", inst, write("ok.txt", "status sat\nx1 0\nx2 0\nx3 -2\n")]) == 0
    assert capsys.readouterr().out.strip() == "ok"
    assert main(["verify", inst, write("bad.txt", "status sat\nx1 0\nx2 0\nx3 0\n")]) == 1
    assert "violated: max(x1,x2) - 2 >= x3" in capsys.readouterr().out


def test_verify_wrong_arity(write):
    assert main(["verify", write("a.txt", SAT), write("s.txt", "status sat\nx1 0\n")]) == 2


def test_gen_round_trips(capsys):
    assert main(["gen", "--vars", "4", "--atoms", "6", "--range", "3", "--seed", "5", "--mode", "planted"]) == 0
    out = capsys.readouterr().out
    assert parse_instance(out).nvars == 4
    main(["gen", "--vars", "4", "--atoms", "6", "--range", "3", "--seed", "5", "--mode", "planted"])
    assert capsys.readouterr().out == out


def test_fuzz_appends_report(tmp_path, capsys):
    report = tmp_path / "r.jsonl"
    code = main(["fuzz", "--trials", "40", "--seed", "2", "--report", str(report)])
    assert code in (0, 1)
    summary = json.loads(report.read_text().splitlines()[-1])
    assert summary["type"] == "summary" and summary["trials"] == 40
    assert code == (1 if summary["disagreements"] else 0)
    main(["fuzz", "--trials", "5", "--seed", "2", "--report", str(report)])
    assert sum('"summary"' in line for line in report.read_text().splitlines()) == 2


def test_bench(capsys):
    assert main(["bench", "--sizes", "5x8,6x10"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3 and lines[1].split()[:2] == ["5", "8"]


def test_module_entry_point(write):
    proc = subprocess.run([sys.executable, "-m", "maxatom", "solve", write("a.txt", TRIVIAL)],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and proc.stdout == "status trivial\n"
