import json
import subprocess
import sys

import pytest

from relnet.cli import main
from relnet.io import outcome_to_record, parse_network

from conftest import three_coin_stream


@pytest.fixture
def stream_file(tmp_path):
    p = tmp_path / "coins.ndjson"
    p.write_text("\n".join(json.dumps(outcome_to_record(o)) for o in three_coin_stream()) + "\n")
    return p


@pytest.fixture
def learned(tmp_path, stream_file):
    out = tmp_path / "net.json"
    assert main(["learn", "--stream", str(stream_file), "--out", str(out)]) == 0
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_count(capsys):
    assert run(capsys, "count", "--variables", "2", "--values", "3", "--relations", "2") == (0, "12\n", "")


def test_count_extras(capsys):
    code, out, _ = run(capsys, "count", "--variables", "2", "--values", "3", "--relations", "2",
                       "--sample-space", "--oracle")
    assert code == 0
    assert out.splitlines() == ["12", "sample-space 733", "oracle 12"]


def test_learn_and_marginal(capsys, learned):
    code, out, _ = run(capsys, "marginal", "--net", str(learned), "--var", "V1", "--exact")
    assert code == 0
    assert out == "V1: h1=3/10 t1=1/10 u=3/5\n"
    code, out, _ = run(capsys, "marginal", "--net", str(learned), "--var", "V1", "--normalized", "--exact")
    assert out == "V1: h1=3/4 t1=1/4\n"


def test_condition(capsys, tmp_path, learned):
    ev = tmp_path / "ev.json"
    ev.write_text(json.dumps({"nodes": [{"var": "V1", "val": "h1"}, {"var": "V2", "val": "h2"}],
                              "edges": [{"a": 0, "b": 1, "rel": "r1"}]}))
    out = tmp_path / "cond.json"
    assert main(["condition", "--net", str(learned), "--evidence", str(ev), "--out", str(out)]) == 0
    assert len(parse_network(out.read_text())) == 2


@pytest.fixture
def one_variable(tmp_path):
    p = tmp_path / "one.json"
    p.write_text(json.dumps({"variables": {"V1": {"values": ["h1", "t1"]}}, "relations": [],
                             "outcomes": [{"nodes": [{"var": "V1", "val": "h1"}], "weight": "2"}]}))
    return p


def test_condition_warns_when_empty(capsys, tmp_path, one_variable):
    out = tmp_path / "cond.json"
    code, _, err = run(capsys, "condition", "--net", str(one_variable), "--assign", "V1=t1",
                       "--out", str(out))
    assert code == 0 and "warning" in err
    assert parse_network(out.read_text()).is_empty


def test_join(capsys, tmp_path, learned):
    out = tmp_path / "joint.json"
    assert main(["join", "--net", str(learned), "--order", "V3,V1,V2", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["constructed"] is True
    assert sorted(o["weight"] for o in doc["outcomes"]) == ["1", "6"]


def test_infer_students(capsys):
    code, out, _ = run(capsys, "infer", "--net", "@students", "--assign", "I=I(0)", "--query", "L")
    assert code == 0
    assert out.startswith("L: L(0)=0.6114 ")


def test_infer_contradiction(capsys, one_variable):
    code, _, err = run(capsys, "infer", "--net", str(one_variable), "--assign", "V1=t1")
    assert code == 3
    assert err.startswith("error: ")


def test_import_markov_and_indep(capsys, tmp_path):
    model = tmp_path / "chain.json"
    model.write_text(json.dumps({"relation": "r", "factors": [
        {"scope": [["A", 2], ["Z", 2]], "values": [1, 2, 3, 4]},
        {"scope": [["Z", 2], ["B", 2]], "values": [0.5, 1.5, 2, 1]}]}))
    net = tmp_path / "chain_net.json"
    assert main(["import", "--format", "markov", "--model", str(model), "--out", str(net)]) == 0
    assert run(capsys, "indep", "--net", str(net), "--a", "A", "--b", "B", "--given", "Z")[1] == "independent\n"
    assert run(capsys, "indep", "--net", str(net), "--a", "A", "--b", "B")[1] == "dependent\n"


def test_import_bayes(capsys, tmp_path):
    model = tmp_path / "bn.json"
    model.write_text(json.dumps({"eta": 10, "cpts": [
        {"child": "A", "card": 2, "values": [[0.25], [0.75]]},
        {"child": "B", "card": 2, "parents": [["A", 2]], "values": [[0.5, 0.1], [0.5, 0.9]]}]}))
    net = tmp_path / "bn_net.json"
    assert main(["import", "--format", "bayes", "--model", str(model), "--out", str(net)]) == 0
    code, out, _ = run(capsys, "infer", "--net", str(net), "--query", "B", "--exact")
    assert out == "B: B(0)=1/5 B(1)=4/5 u=0\n"


def test_import_bad_column(capsys, tmp_path):
    model = tmp_path / "bad.json"
    model.write_text(json.dumps({"cpts": [{"child": "A", "card": 2, "values": [[0.3], [0.3]]}]}))
    code, _, err = run(capsys, "import", "--format", "bayes", "--model", str(model))
    assert code == 2
    assert "column" in err


def test_export_dot(capsys, learned):
    code, out, _ = run(capsys, "export-dot", "--net", str(learned), "--mode", "folded")
    assert code == 0 and out.startswith("digraph folded {")


def test_usage_errors(capsys):
    assert run(capsys, "count")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "infer", "--net", "@friends", "--assign", "A")[0] == 1


def test_parse_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.ndjson"
    bad.write_text("{}\nnope\n")
    code, _, err = run(capsys, "learn", "--stream", str(bad))
    assert code == 2
    assert "line 2" in err


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "marginal", "--net", str(tmp_path / "none.json"))[0] == 2


def test_stdin_and_module_entry(tmp_path, stream_file):
    proc = subprocess.run([sys.executable, "-m", "relnet", "learn", "--stream", "-"],
                          input=stream_file.read_text(), capture_output=True, text=True, check=True)
    assert len(parse_network(proc.stdout)) == 7
