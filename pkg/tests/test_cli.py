"""Command-line behavior: verdicts, exit codes, JSON reports, DOT output."""

import json

import pytest

from arboreal import cli

from conftest import BRANCH, CARRY, ODOMETER, TWISTED, ZOO


@pytest.fixture
def fr(tmp_path):
    def write(text, name="m.fr"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code = cli.main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_parse_round_trips(fr, capsys):
    path = fr(CARRY)
    code, out = run(capsys, "parse", path)
    assert code == 0
    path2 = fr(out, "again.fr")
    code2, out2 = run(capsys, "parse", path2)
    assert code2 == 0 and out2 == out


def test_equal_verdicts(fr, capsys):
    path = fr(ODOMETER)
    assert run(capsys, "equal", path, "a*a^-1", "e")[0] == 0
    code, out = run(capsys, "equal", path, "a", "a^-1")
    assert code == 1 and out.startswith("different")


def test_equal_budget_exhaustion(fr, capsys):
    path = fr(BRANCH + "A = (e, A) [1 0]\nB = (A, C) [1 0]\nC = (A, B)\n")
    code, out = run(capsys, "equal", path, "b*b*b*b", "B*B*B*B", "--budget", "4")
    assert code == 2 and out.startswith("unknown")


def test_act_moves_a_vertex(fr, capsys):
    path = fr(ODOMETER)
    code, out = run(capsys, "act", path, "a", "111")
    assert code == 0
    assert "000" in out


def test_order_verdicts_and_exit_codes(fr, capsys):
    path = fr(CARRY)
    code, out = run(capsys, "order", path, "q")
    assert code == 0 and out.splitlines()[0] == "2"
    odo = fr(ODOMETER, "odo.fr")
    code, out = run(capsys, "order", odo, "a")
    assert code == 0 and out.splitlines()[0] == "infinite"
    assert run(capsys, "order", odo, "a", "--assert-finite")[0] == 1
    assert run(capsys, "order", path, "q", "--assert-finite")[0] == 0


def test_order_unknown_under_a_tiny_cap(fr, capsys):
    path = fr(BRANCH)
    code, out = run(capsys, "order", path, "b", "--cap", "40")
    assert code == 2 and out.startswith("unknown")


def test_classify_names_the_class(fr, capsys):
    path = fr(ZOO)
    for word, label in (("s", "Finitary(1)"), ("a", "Polynomial(0)"),
                        ("m", "Polynomial(1)"), ("l", "Exponential")):
        code, out = run(capsys, "classify", path, word)
        assert code == 0 and out.splitlines()[0] == label


def test_os_lists_the_closure(fr, capsys):
    path = fr(ZOO)
    code, report = run_json(capsys, "os", path, "a")
    assert code == 0
    assert report["verdict"] == "complete"
    assert report["witness"]["elements"] == ["a"]


def test_os_cap_exceeded_is_exit_two(fr, capsys):
    path = fr(BRANCH)
    code, _ = run(capsys, "os", path, "b", "--cap", "100")
    assert code == 2


def test_nucleus_of_the_odometer(fr, capsys):
    path = fr(ODOMETER)
    code, report = run_json(capsys, "nucleus", path, "a")
    assert code == 0
    assert len(report["witness"]["nucleus"]) == 3


def test_graph_order_dot_golden(fr, capsys):
    path = fr(CARRY)
    code, out = run(capsys, "graph", "order", path, "q", "--dot", "-")
    assert code == 0
    body = out[out.index("digraph"):]
    node_lines = [l for l in body.splitlines() if "label=" in l and "->" not in l]
    edge_lines = [l for l in body.splitlines() if "->" in l]
    assert len(node_lines) == 3  # q, its swap, and the identity
    assert len(edge_lines) == 4  # five orbit edges, one pair coalesced


def test_graph_conj_dot_golden(fr, capsys):
    path = fr("alphabet 2\nr = (r, r) [1 0]\n")
    code, out = run(capsys, "graph", "conj", path, "e", "e", "--dot", "-")
    assert code == 0
    body = out[out.index("digraph"):]
    assert body.count("peripheries=2") == 2
    node_lines = [l for l in body.splitlines() if "label=" in l and "->" not in l]
    assert len(node_lines) == 2
    assert "n2" not in body


def test_graph_dot_writes_files(fr, capsys, tmp_path):
    path = fr(CARRY)
    target = tmp_path / "out.dot"
    code, _ = run(capsys, "graph", "order", path, "p", "--dot", str(target))
    assert code == 0
    assert target.read_text().startswith("digraph")


def test_conjugate_groups_and_exit_codes(fr, capsys):
    path = fr(ODOMETER)
    assert run(capsys, "conjugate", path, "a", "a^-1")[0] == 0
    assert run(capsys, "conjugate", path, "a", "a^-1", "--group", "fsg")[0] == 0
    assert run(capsys, "conjugate", path, "a", "a^-1", "--group", "pol0")[0] == 1
    assert run(capsys, "conjugate", path, "a", "a*a")[0] == 1


def test_conjugate_emits_a_loadable_witness(fr, capsys, tmp_path):
    path = fr(CARRY)
    code, out = run(capsys, "conjugate", path, "p", "q", "--group", "pol0",
                    "--emit-conjugator")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "conjugate"
    assert lines[1].startswith("conjugator = ")


def test_conjugate_json_report_shape(fr, capsys):
    path = fr(ODOMETER)
    code, report = run_json(capsys, "conjugate", path, "a", "a^-1")
    assert code == 0
    assert set(report) == {"command", "inputs", "verdict", "witness", "caps",
                           "version", "timings"}
    assert report["command"] == "conjugate"
    assert report["verdict"] == "conjugate"
    assert report["inputs"]["words"] == ["a", "a^-1"]
    assert len(report["inputs"]["sha256"]) == 64
    assert report["witness"]["verified_depth"] == 10
    assert report["timings"]["seconds"] >= 0


def test_conjugate_simultaneous_tuples(fr, capsys):
    path = fr(ODOMETER)
    code, _ = run(capsys, "conjugate", path, "a,a", "a^-1,a", "--simultaneous")
    assert code == 1
    code, _ = run(capsys, "conjugate", path, "a,a", "a,a", "--simultaneous")
    assert code == 0


def test_simultaneous_requires_the_full_group(fr, capsys):
    path = fr(ODOMETER)
    code, _ = run(capsys, "conjugate", path, "a,a", "a,a",
                  "--simultaneous", "--group", "pol0")
    assert code == 3


def test_fsg_gate_delegates_for_bounded_inputs(fr, capsys):
    path = fr(CARRY)
    code, report = run_json(capsys, "conjugate", path, "p", "q", "--group", "fsg")
    assert code == 0 and report["verdict"] == "conjugate"


def test_fsg_gate_gives_up_without_contraction(fr, capsys):
    path = fr(ZOO)
    code, _ = run(capsys, "conjugate", path, "m", "m", "--group", "fsg")
    assert code == 2
    # an involution generates a finite, hence contracting, group
    assert run(capsys, "conjugate", path, "l", "l", "--group", "fsg")[0] == 0


def test_representative_is_stable_across_the_class(fr, capsys):
    path = fr(TWISTED)
    _, rep_a = run(capsys, "representative", path, "a", "--depth", "5")
    _, rep_b = run(capsys, "representative", path, "b", "--depth", "5")
    assert rep_a == rep_b
    _, rep_sq = run(capsys, "representative", path, "a*a", "--depth", "5")
    assert rep_a != rep_sq


def test_oracle_subcommands(fr, capsys):
    path = fr(CARRY)
    assert run(capsys, "oracle", "trunc-order", path, "q")[0] == 0
    assert run(capsys, "oracle", "orbit-tree", path, "p")[0] == 0
    code, _ = run(capsys, "oracle", "verify", path, "e", "p", "q", "--depth", "6")
    assert code == 1


def test_usage_errors_exit_three(fr, capsys):
    path = fr(ODOMETER)
    assert cli.main(["equal", path, "nosuch", "e"]) == 3
    assert cli.main(["parse", str(path) + ".missing"]) == 3
    assert cli.main(["act", path, "a", "012"]) == 3
    assert cli.main(["conjugate", path, "a", "a", "--group", "pol0", "--cap", "-1"]) in (2, 3)
    capsys.readouterr()


def test_unbounded_restricted_input_exits_three(fr, capsys):
    path = fr(ZOO)
    assert cli.main(["conjugate", path, "l", "l", "--group", "pol0"]) == 3
    capsys.readouterr()


def test_depth_cap_exits_two(fr, capsys):
    path = fr(ODOMETER)
    assert cli.main(["oracle", "trunc-order", path, "a", "--depth", "30"]) == 2
    capsys.readouterr()
