import json

import pytest

from msorder.cli import EXIT_BUDGET, EXIT_FALSE, EXIT_INPUT, EXIT_OK, main
from msorder.graphio import loads
from msorder.generators import complete_bipartite


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def k23(tmp_path, capsys):
    path = tmp_path / "k23.txt"
    assert main(["gen", "complete_bipartite", "2", "3", "-o", str(path)]) == EXIT_OK
    capsys.readouterr()
    return path


def test_gen_round_trip(capsys, k23):
    code, out, _ = _run(capsys, "gen", "complete_bipartite", "2", "3")
    assert code == EXIT_OK
    assert loads(out) == complete_bipartite(2, 3)
    assert k23.read_text() == out


def test_measure_sep(capsys, k23):
    assert _run(capsys, "measure", "sep", str(k23), "--k", "2") == (EXIT_OK, "3\n", "")
    code, out, _ = _run(capsys, "measure", "sep", str(k23), "--k", "2", "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["value"] == 3


def test_boolean_measure_exit_codes(capsys, tmp_path):
    c4 = tmp_path / "c4.txt"
    main(["gen", "cycle", "4", "-o", str(c4)])
    assert _run(capsys, "measure", "chordal", str(c4))[:2] == (EXIT_FALSE, "false\n")


def test_order_then_verify(capsys, tmp_path):
    graph, cert = tmp_path / "g.txt", tmp_path / "c.json"
    main(["gen", "split_join", "2", "2", "-o", str(graph)])
    assert main(["order", "split", str(graph), "--s", "1", "-o", str(cert)]) == EXIT_OK
    capsys.readouterr()
    assert _run(capsys, "verify", str(graph), str(cert))[:2] == (EXIT_OK, "true\n")
    data = json.loads(cert.read_text())
    data["order"][0], data["order"][1] = data["order"][1], data["order"][0]
    cert.write_text(json.dumps(data))
    assert _run(capsys, "verify", str(graph), str(cert))[0] == EXIT_FALSE


def test_eval_reads_a_formula_file(capsys, k23, tmp_path):
    phi = tmp_path / "phi.txt"
    phi.write_text("(edg x y)\n")
    assert _run(capsys, "eval", str(k23), str(phi), "--assign", "x=0", "--assign", "y=2")[:2] == (EXIT_OK, "true\n")
    assert _run(capsys, "eval", str(k23), str(phi), "--assign", "x=0", "--assign", "y=1")[0] == EXIT_FALSE
    phi.write_text("(edg x")
    assert _run(capsys, "eval", str(k23), str(phi), "--assign", "x=0")[0] == EXIT_INPUT


def test_reduce_reports_failing_verdict(capsys, tmp_path):
    k2 = tmp_path / "k2.txt"
    main(["gen", "clique", "2", "-o", str(k2)])
    code, out, _ = _run(capsys, "reduce", "Inc", str(k2), "--k", "1")
    assert code == EXIT_FALSE and "FAIL sep_upper_k1" in out


def test_precondition_error_as_json(capsys, tmp_path):
    c4 = tmp_path / "c4.txt"
    main(["gen", "cycle", "4", "-o", str(c4)])
    code, out, err = _run(capsys, "--json", "order", "chordal", str(c4), "--s", "1")
    assert code == EXIT_INPUT and out == ""
    assert json.loads(err) == {"error": "precondition", "exit_code": 2, "message": "graph is not chordal"}


def test_input_and_budget_errors(capsys, tmp_path, k23):
    assert _run(capsys, "measure", "sep", str(tmp_path / "missing.txt"), "--k", "1")[0] == EXIT_INPUT
    bad = tmp_path / "bad.txt"
    bad.write_text("graph 2\nedge 0 5\n")
    assert _run(capsys, "measure", "sep", str(bad), "--k", "1")[0] == EXIT_INPUT
    assert _run(capsys, "measure", "sep", str(k23), "--k", "1", "--budget-n", "3")[0] == EXIT_BUDGET
    code, _, err = _run(capsys, "measure", "cut", str(k23), "--k", "9", "--json")
    assert code == EXIT_BUDGET and json.loads(err)["exit_code"] == EXIT_BUDGET


def test_output_is_byte_stable(capsys, tmp_path):
    graph = tmp_path / "g.txt"
    main(["gen", "complete_bipartite", "2", "3", "-o", str(graph)])
    capsys.readouterr()
    first = _run(capsys, "order", "cograph", str(graph), "--d", "3")
    second = _run(capsys, "order", "cograph", str(graph), "--d", "3")
    assert first == second and first[0] == EXIT_OK


def test_suite_on_default_and_directory_corpus(capsys, tmp_path):
    code, out, _ = _run(capsys, "suite")
    assert code == EXIT_OK and out.startswith("corpus: seeded corpus (seed 0), 30 graphs")
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for i, n in enumerate([3, 4]):
        main(["gen", "path", str(n), "-o", str(corpus / f"g{i}.txt")])
    capsys.readouterr()
    code, out, _ = _run(capsys, "suite", str(corpus), "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["graphs"] == 2
    assert all(p["failed"] == 0 for p in data["properties"])
    assert _run(capsys, "suite", str(tmp_path / "nope"))[0] == EXIT_INPUT
