import io
import json

import pytest

from ehl import cli
from ehl.graph import Graph
from ehl.harness.report import VerificationReport
from ehl.results import failed

C5 = "Dhc\n"
# H(T) for the double-star tree with cross-edge 7-8, encoded with networkx.to_graph6_bytes.
DOUBLE_STAR_HT = "H{c_OhB\n"
# Three length-3 paths from apex 0 to the triangle 3, 6, 9 plus a tenth vertex.
ALPHA_PYRAMID = "Jh_Gk?@Cnq?\n"


@pytest.fixture
def graph_file(tmp_path):
    def write(text, name="g.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_detect_on_c5_reports_certified_absence(capsys, graph_file):
    code, out, _ = run(capsys, "detect", "even-hole", graph_file(C5))
    assert code == cli.EXIT_OK and out.strip() == "absent:certified"
    code, out, _ = run(capsys, "detect", "even-hole", "--require", graph_file(C5))
    assert code == cli.EXIT_ABSENT


def test_detect_emits_certificate_json(capsys, graph_file):
    code, out, _ = run(capsys, "detect", "even-hole", graph_file("EhEG\n"))
    doc = json.loads(out)
    assert code == 0 and doc["kind"] == "hole" and sorted(doc["vertices"]) == list(range(6))


def test_detect_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("4 4\n0 1\n1 2\n2 3\n3 0\n"))
    code, out, _ = run(capsys, "detect", "even-hole", "-")
    assert code == 0 and json.loads(out)["vertices"] == [0, 1, 2, 3]


def test_detect_option_checks(capsys, graph_file):
    path = graph_file(C5)
    assert run(capsys, "detect", "theta", "--apex", "0", path)[0] == cli.EXIT_INPUT
    assert run(capsys, "detect", "pyramid", "--apex", "9", path)[0] == cli.EXIT_INPUT
    assert run(capsys, "detect", "pyramid", "--apex", "0", path)[0] == cli.EXIT_OK
    assert run(capsys, "detect", "extended-near-prism", "--cross-edge", "0,1,2", path)[0] == cli.EXIT_INPUT


def test_bisimplicial_commands(capsys, graph_file):
    code, out, _ = run(capsys, "bisimplicial", "--clique", "0,1", graph_file(C5))
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "holds" and doc["witness"] == 3
    code, out, _ = run(capsys, "bisimplicial", graph_file(C5))
    assert json.loads(out)["bisimplicial"] == [0, 1, 2, 3, 4]


def test_splendid_command(capsys, graph_file):
    code, out, _ = run(capsys, "splendid", "0", graph_file(C5))
    assert code == 0 and json.loads(out)["ok"] is True


def test_decompose_tree_strip(capsys, graph_file):
    path = graph_file(DOUBLE_STAR_HT)
    code, out, _ = run(capsys, "decompose", "tree-strip", "--edge", "7,8", path)
    doc = json.loads(out)
    assert code == 0 and doc["maximality"] == "optimal" and len(doc["system"]["system"]["J"]) == 5
    assert run(capsys, "decompose", "tree-strip", "--edge", "0,1", graph_file(C5))[0] == cli.EXIT_ABSENT
    assert run(capsys, "decompose", "tree-strip", "--edge", "0,2", graph_file(C5))[0] == cli.EXIT_INPUT
    assert run(capsys, "decompose", "tree-strip", path)[0] == cli.EXIT_INPUT


def test_decompose_pyramid_strip(capsys, graph_file):
    code, out, _ = run(capsys, "decompose", "pyramid-strip", "--apex", "0", graph_file(ALPHA_PYRAMID))
    doc = json.loads(out)
    assert code == 0 and len(doc["system"]["strips"]) == 3
    code, out, _ = run(capsys, "decompose", "pyramid-strip", "--apex", "0", graph_file(C5))
    assert code == cli.EXIT_ABSENT and json.loads(out)["reason"] == "no pyramid has apex a"


def test_budget_exit_status(capsys, graph_file, monkeypatch):
    path = graph_file(DOUBLE_STAR_HT)
    code, out, _ = run(capsys, "decompose", "tree-strip", "--edge", "7,8", "--budget", "3", path)
    assert code == cli.EXIT_BUDGET and json.loads(out)["report"]["budget"] == "exhausted"
    monkeypatch.setenv("EHL_BUDGET", "2")
    code, _, err = run(capsys, "detect", "even-hole", path)
    assert code == cli.EXIT_BUDGET and "budget" in err
    monkeypatch.setenv("EHL_BUDGET", "lots")
    assert run(capsys, "detect", "even-hole", path)[0] == cli.EXIT_INPUT


@pytest.mark.parametrize("argv", [
    ["detect", "even-hole", "/nonexistent/graph"],
    ["detect", "hexagon", "-"],
    ["splendid", "x"],
    ["verify", "SUBGRAPHS"],
    ["verify", "SUBGRAPHS", "--n", "12", "--mode", "all-labeled"],
    ["detect", "theta", "a", "b"],
    [],
])
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == cli.EXIT_INPUT


def test_malformed_graph_is_an_input_error(capsys, graph_file):
    code, _, err = run(capsys, "detect", "theta", "--format", "edgelist", graph_file("2 1\n0 0\n"))
    assert code == cli.EXIT_INPUT and "self-loop" in err


def test_verify_subgraphs_six(capsys):
    code, out, _ = run(capsys, "verify", "SUBGRAPHS", "--n", "6", "--no-timing")
    doc = json.loads(out)
    assert code == 0 and doc["instances_tested"] == 156 and doc["alarms"] == 0
    assert "wall_time" not in doc
    code, out, _ = run(capsys, "verify", "SUBGRAPHS", "--n", "4", "--pretty")
    assert code == 0 and "SUBGRAPHS" in out


def test_verify_budget_and_alarm_statuses(capsys, monkeypatch):
    code, _, _ = run(capsys, "verify", "MAIN", "--n", "5", "--budget", "5", "--no-timing")
    assert code == cli.EXIT_BUDGET

    def alarming(suite, spec, jobs=1, budget=None):
        rep = VerificationReport(suite)
        rep.record(Graph.from_edges(2, []), failed(detail="planted"))
        return rep
    monkeypatch.setattr(cli, "run_suite", alarming)
    code, out, _ = run(capsys, "verify", "MAIN", "--n", "3", "--no-timing")
    assert code == cli.EXIT_ALARM and json.loads(out)["alarms"] == 1


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == cli.EXIT_OK
