import io
import json

import pytest

from flownet.cli import build_config, main
from flownet.netcore import parse_network

MINIMAL = "p flownet 2 1\ns 1\nt 2\na 1 2 5\n"
CYCLIC = "p flownet 3 3\ns 1\nt 3\na 1 2 1\na 2 1 1\na 2 3 1\n"
THREE_PATHS = "p flownet 5 6\ns 1\nt 5\na 1 2 1\na 2 5 1\na 1 3 1\na 3 5 1\na 1 4 1\na 4 5 1\n"


@pytest.fixture
def network_file(tmp_path):
    def write(text: str, name: str = "net.txt") -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if code == 0 else None


class TestCommands:
    def test_maxflow(self, capsys, network_file):
        code, result = run_json(capsys, ["maxflow", network_file(MINIMAL)])
        assert code == 0
        assert result == {"value": 5, "flow": [{"arc": 0, "x": 5}]}

    def test_text_output(self, capsys, network_file):
        assert main(["lambda", network_file(MINIMAL), "--format", "text"]) == 0
        assert capsys.readouterr().out == "lambda: 1\n"

    def test_reads_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(MINIMAL))
        code, result = run_json(capsys, ["mincut"])
        assert code == 0
        assert result["capacity"] == 5
        assert result["mincut_arcs"] == [0]

    def test_degflow_modes(self, capsys, network_file):
        path = network_file(THREE_PATHS)
        _, result = run_json(capsys, ["degflow", path, "--k", "2"])
        assert result == {"k": 2, "exists": False}
        _, result = run_json(capsys, ["degflow", path, "--k", "2", "--mode", "unit"])
        assert result["value"] == 2

    def test_psplit_reports_guarantee(self, capsys, network_file):
        _, result = run_json(capsys, ["psplit", network_file(THREE_PATHS), "--p", "2"])
        assert result["value"] == 2
        assert result["guarantee"] == "2/3"

    def test_persist_eval_with_flow_file(self, capsys, network_file, tmp_path):
        net = network_file("p flownet 3 3\ns 1\nt 3\na 1 2 2\na 2 3 1\na 2 3 5\n")
        flow = tmp_path / "flow.json"
        flow.write_text(json.dumps({"flow": [{"arc": 0, "x": 2}, {"arc": 1, "x": 1}, {"arc": 2, "x": 1}]}))
        _, result = run_json(capsys, ["persist", "eval", net, "--k", "1", "--flow", str(flow)])
        assert result["residual_value"] == 1
        assert result["worst_set"] == [2]

    def test_dot_output(self, capsys, network_file, tmp_path):
        dot = tmp_path / "flow.dot"
        assert main(["maxflow", network_file(MINIMAL), "--dot", str(dot)]) == 0
        assert dot.read_text().startswith("digraph")

    def test_gadget_pipes_into_strong2(self, capsys, monkeypatch, tmp_path):
        labels = tmp_path / "labels.json"
        assert main(["gadget", "lambda", "--lambda", "3", "--labels", str(labels)]) == 0
        text = capsys.readouterr().out
        assert parse_network(text).vertex_count == 6
        assert json.loads(labels.read_text())["s"] == 1
        monkeypatch.setattr("sys.stdin", io.StringIO(text))
        code, result = run_json(capsys, ["strong2"])
        assert code == 0
        assert result["value"] == 4
        assert result["support_lambda"] == 2

    def test_persist_best_reads_file_after_action(self, capsys, network_file):
        net = network_file("p flownet 3 3\ns 1\nt 3\na 1 2 2\na 2 3 1\na 2 3 5\n")
        code, result = run_json(capsys, ["persist", "best", net, "--k", "1"])
        assert code == 0
        assert result["residual_value"] == 1

    def test_oracle_enumerates_gadget_file(self, capsys, tmp_path):
        assert main(["gadget", "lambda", "--lambda", "4"]) == 0
        path = tmp_path / "lambda4.txt"
        path.write_text(capsys.readouterr().out)
        code, result = run_json(capsys, ["oracle", "enumerate-max-flows", str(path), "--preset", "gadget"])
        assert code == 0
        assert result["value"] == 6
        assert result["count"] >= 1
        assert {f["support_lambda"] for f in result["flows"]} == {2}

    def test_report(self, capsys, tmp_path):
        out = tmp_path / "decomp.csv"
        code, result = run_json(capsys, ["report", "--suite", "decomp", "--count", "3", "--seed", "5", "--out", str(out)])
        assert code == 0
        assert result["rows"] == 3
        assert result["failures"] == 0
        assert out.exists()


class TestExitCodes:
    def test_precondition(self, capsys, network_file):
        assert main(["tricot", network_file(CYCLIC), "--p", "2"]) == 4
        assert "flownet tricot:" in capsys.readouterr().err

    def test_budget(self, capsys, network_file):
        assert main(["oracle", "degflow", network_file(THREE_PATHS), "--k", "2", "--budget", "1"]) == 3

    def test_tricot_budget_flag(self, capsys, network_file):
        path = network_file(THREE_PATHS)
        assert main(["tricot", path, "--p", "2", "--budget", "1"]) == 3
        assert "tricot dynamic program" in capsys.readouterr().err
        code, result = run_json(capsys, ["tricot", path, "--p", "2"])
        assert code == 0
        assert result["value"] == 2

    def test_oracle_size_limit(self, capsys, network_file):
        path = network_file("p flownet 2 1\ns 1\nt 2\na 1 2 9\n")
        assert main(["oracle", "enumerate-max-flows", path]) == 3
        capsys.readouterr()
        code, result = run_json(capsys, ["oracle", "enumerate-max-flows", path, "--preset", "gadget"])
        assert code == 0
        assert result["count"] == 1

    def test_missing_file(self, capsys, tmp_path):
        assert main(["maxflow", str(tmp_path / "absent.txt")]) == 2
        assert "cannot read" in capsys.readouterr().err

    def test_malformed_network(self, capsys, network_file):
        assert main(["maxflow", network_file("p flownet 2 1\ns 1\nt 2\na 1 2 0\n")]) == 2

    def test_gadget_needs_cnf(self, capsys):
        assert main(["gadget", "sat-deg"]) == 2

    def test_unknown_flag(self):
        with pytest.raises(SystemExit) as info:
            build_config(["maxflow", "--no-such-flag"])
        assert info.value.code == 2
