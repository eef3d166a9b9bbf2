import json

import pytest

from leavitt.cli import main


@pytest.fixture
def graph_file(tmp_path):
    def write(graph):
        path = tmp_path / "g.json"
        path.write_text(json.dumps(graph.to_json_dict()))
        return str(path)

    return write


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_ok(self, a2, graph_file, capsys):
        code, out, _ = run(capsys, ["validate", graph_file(a2)])
        assert code == 0
        assert "ok" in out and "sinks:   v" in out

    def test_malformed(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"vertices": ["u"], "edges": [{"name": "f", "src": "u", "rng": "v"}]}))
        code, out, _ = run(capsys, ["validate", str(path)])
        assert code == 2
        assert "dangling endpoint" in out

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, ["validate", "nope.json"])
        assert code == 2 and "no such file" in err


class TestClassify:
    def test_a2_graded_table(self, a2, graph_file, capsys):
        code, out, _ = run(capsys, ["classify", "--graded", "--cycles-up-to", "4", graph_file(a2)])
        assert code == 0
        assert "sink" in out and "2" in out
        assert "complete: True" in out

    def test_toeplitz_simple_json(self, toeplitz, graph_file, capsys):
        code, out, _ = run(
            capsys,
            ["classify", "--simple", "--field", "F2", "--poly-deg", "3", "--json", graph_file(toeplitz)],
        )
        assert code == 0
        data = json.loads(out)
        dims = sorted(f["dimension"] for f in data["families"] if f["kind"] == "cycle-simple")
        assert dims == [1, 2, 3, 3]
        assert any(f["family"] == "sink" for f in data["flagged"])


class TestAct:
    def test_prefix_rule(self, a2, graph_file, capsys):
        code, out, _ = run(
            capsys,
            ["act", "--module", "chen:v", "--elt", "f^*", "--vec", "f", graph_file(a2)],
        )
        assert code == 0
        assert out.strip() == "v"

    def test_twisted(self, r1, graph_file, capsys):
        code, out, _ = run(
            capsys,
            [
                "act", "--module", "chen:(e)^inf", "--twist", "e=3",
                "--elt", "e", "--vec", "(e)^inf", graph_file(r1),
            ],
        )
        assert code == 0
        assert out.strip() == "3 (e)^inf"

    def test_induced_laurent(self, r1, graph_file, capsys):
        code, out, _ = run(
            capsys,
            ["act", "--module", "ind:(e)^inf:laurent(0)", "--elt", "e", "--vec", "(e)^inf@0", graph_file(r1)],
        )
        assert code == 0
        assert out.strip() == "(e)^inf@1"

    def test_unknown_edge_is_input_error(self, a2, graph_file, capsys):
        code, _, err = run(
            capsys, ["act", "--module", "chen:v", "--elt", "zz", "--vec", "f", graph_file(a2)]
        )
        assert code == 2 and "error:" in err


class TestVerify:
    def test_relations(self, rose2, graph_file, capsys):
        code, out, _ = run(capsys, ["verify", "relations", "--field", "F2", graph_file(rose2)])
        assert code == 0
        assert "PASS" in out

    def test_pi_consistency(self, r1, graph_file, capsys):
        code, out, _ = run(capsys, ["verify", "pi-consistency", "--window", "3", graph_file(r1)])
        assert code == 0

    def test_triv_iso_pass(self, a2, graph_file, capsys):
        code, out, _ = run(
            capsys,
            ["verify", "triv-iso", "--at", "v", "--twist", "f=3", graph_file(a2)],
        )
        assert code == 0
        assert "PASS" in out and "[pass] equivariance" in out

    def test_twist_iso(self, toeplitz, graph_file, capsys):
        code, out, _ = run(
            capsys,
            ["verify", "twist-iso", "--cycle", "e", "--modulus", "t^2+t+1", "--field", "F2", graph_file(toeplitz)],
        )
        assert code == 0

    def test_nvc_iso(self, r1, graph_file, capsys):
        code, out, _ = run(capsys, ["verify", "nvc-iso", "--cycle", "e", graph_file(r1)])
        assert code == 0

    def test_res_ind(self, toeplitz, graph_file, capsys):
        code, out, _ = run(
            capsys,
            ["verify", "res-ind", "--at", "(e)^inf", "--coeff", "quot(t^2+t+1)", "--field", "F2", graph_file(toeplitz)],
        )
        assert code == 0

    def test_failing_suite_exits_1(self, rose2, graph_file, capsys):
        # nvc-iso on a cycle with exits is an input error (precondition)
        code, _, err = run(capsys, ["verify", "nvc-iso", "--cycle", "e", graph_file(rose2)])
        assert code == 2 and "exit" in err

    def test_missing_flag(self, a2, graph_file, capsys):
        code, _, err = run(capsys, ["verify", "triv-iso", graph_file(a2)])
        assert code == 2 and "--at" in err


class TestDims:
    def test_toeplitz(self, toeplitz, graph_file, capsys):
        code, out, _ = run(
            capsys, ["dims", "--field", "F2", "--poly-deg", "2", graph_file(toeplitz)]
        )
        assert code == 0
        assert "all dimensions cross-checked: True" in out


class TestDeterminism:
    def test_same_seed_same_bytes(self, rose2, graph_file, capsys):
        path = graph_file(rose2)
        argv = ["verify", "relations", "--seed", "7", "--json", path]
        _, out1, _ = run(capsys, argv)
        _, out2, _ = run(capsys, argv)
        assert out1 == out2

    def test_classify_json_deterministic(self, toeplitz, graph_file, capsys):
        path = graph_file(toeplitz)
        argv = ["classify", "--simple", "--field", "F2", "--json", path]
        _, out1, _ = run(capsys, argv)
        _, out2, _ = run(capsys, argv)
        assert out1 == out2
