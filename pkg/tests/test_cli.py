"""Command-line surface: exit codes, JSON output, and determinism."""

import json
from fractions import Fraction

import pytest

from tropcone.cli import main
from tropcone.fixtures import TWO_PI, example_graph
from tropcone.graph import Edge, GameGraph
from tropcone.pencil import synthesize_cone
from tropcone.scalars import rational_to_str
from tropcone.transforms import pipeline

F = Fraction


@pytest.fixture
def graph_file(tmp_path):
    path = tmp_path / "example.json"
    path.write_text(json.dumps(example_graph().to_json()))
    return str(path)


@pytest.fixture
def bad_graph_file(tmp_path):
    g = GameGraph(
        (1, 2), (3,), (),
        (
            Edge(1, 1, 2, payoff=F(0)),
            Edge(2, 2, 3, payoff=F(0)),
            Edge(3, 3, 1, payoff=F(0)),
        ),
    )
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(g.to_json()))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestExitCodes:
    def test_validate_ok(self, capsys, graph_file):
        code, out = run(capsys, "validate", graph_file)
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_validate_failure_exits_one(self, capsys, bad_graph_file):
        code, out = run(capsys, "validate", bad_graph_file)
        assert code == 1
        report = json.loads(out)
        assert report["ok"] is False
        assert report["failures"]

    def test_missing_file_exits_two(self, capsys, tmp_path):
        code, _ = run(capsys, "validate", str(tmp_path / "nope.json"))
        assert code == 2

    def test_malformed_json_exits_two(self, capsys, tmp_path):
        path = tmp_path / "garbage.json"
        path.write_text("{not json")
        code, _ = run(capsys, "validate", str(path))
        assert code == 2

    def test_bad_point_exits_two(self, capsys, graph_file):
        code, _ = run(capsys, "eval", graph_file, "--point", "1,zebra,3")
        assert code == 2

    def test_t2_requires_edge(self, capsys, graph_file):
        code, _ = run(capsys, "transform", "t2", graph_file)
        assert code == 2

    def test_domain_error_exits_one(self, capsys, graph_file):
        # Edge 1 is not a Random-to-Random edge.
        code, _ = run(capsys, "transform", "t2", graph_file, "--edge", "1")
        assert code == 1


class TestCommands:
    def test_eval_at_origin(self, capsys, graph_file):
        code, out = run(capsys, "eval", graph_file, "--point", "0,0,0")
        assert code == 0
        assert json.loads(out) == [
            rational_to_str(F(4, 3)),
            rational_to_str(TWO_PI),
            rational_to_str(F(0)),
        ]

    def test_subfixed(self, capsys, graph_file):
        assert json.loads(run(capsys, "subfixed", graph_file, "--point", "0,0,0")[1]) == {
            "subfixed": True
        }
        assert json.loads(run(capsys, "subfixed", graph_file, "--point", "2,0,0")[1]) == {
            "subfixed": False
        }

    def test_transform_pipeline(self, capsys, graph_file):
        code, out = run(capsys, "transform", "pipeline", graph_file)
        assert code == 0
        obj = json.loads(out)
        assert obj["witness"]["kind"] == "pipeline"
        assert set(obj["graph"]) == {"min", "max", "random", "edges"}

    def test_synthesize(self, capsys, graph_file):
        code, out = run(capsys, "synthesize", graph_file)
        assert code == 0
        obj = json.loads(out)
        assert obj["visible"] == 3
        expected = synthesize_cone(pipeline(example_graph())[0])
        assert obj["m"] == expected.m
        assert obj["n"] == expected.n
        assert obj["matrices"] == expected.to_json()["matrices"]

    def test_member(self, capsys, tmp_path):
        pencil = synthesize_cone(pipeline(example_graph())[0])
        path = tmp_path / "pencil.json"
        path.write_text(json.dumps(pencil.to_json()))
        lifted = pipeline(example_graph())[1].lift((F(0), F(0), F(0)))
        point = ",".join(rational_to_str(v) for v in lifted)
        code, out = run(capsys, "member", str(path), "--point", point)
        assert code == 0
        assert json.loads(out) == {"member": True}
        inf_point = ",".join(["-inf"] * pencil.n)
        assert json.loads(run(capsys, "member", str(path), "--point=" + inf_point)[1]) == {
            "member": True
        }

    def test_lift(self, capsys, graph_file):
        code, out = run(capsys, "lift", graph_file, "--point", "1,0,-2")
        assert code == 0
        lifted = json.loads(out)
        assert lifted[:3] == ["1/1", "0/1", "-2/1"]
        assert len(lifted) == pipeline(example_graph())[1].target_dim

    def test_out_flag_writes_file(self, capsys, graph_file, tmp_path):
        target = tmp_path / "report.json"
        code, out = run(capsys, "validate", graph_file, "--out", str(target))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["ok"] is True


class TestVerifyCommand:
    def test_full_agreement(self, capsys, graph_file):
        code, out = run(capsys, "verify", graph_file, "--samples", "50", "--seed", "3")
        assert code == 0
        report = json.loads(out)
        assert report["ok"] is True
        assert report["counterexample"] is None
        assert report["forward_agreements"] == report["subfixed"]
        assert report["backward_agreements"] == report["complement"]
        assert report["subfixed"] + report["complement"] == 50

    def test_zero_samples_vacuous(self, capsys, graph_file):
        code, out = run(capsys, "verify", graph_file, "--samples", "0")
        assert code == 0
        report = json.loads(out)
        assert report["ok"] is True
        assert report["subfixed"] == 0
        assert report["complement"] == 0

    def test_byte_determinism(self, capsys, graph_file):
        _, first = run(capsys, "verify", graph_file, "--samples", "40", "--seed", "11")
        _, second = run(capsys, "verify", graph_file, "--samples", "40", "--seed", "11")
        assert first == second


class TestSectionCommand:
    def test_known_cells(self, capsys, graph_file):
        code, out = run(
            capsys, "section", graph_file,
            "--fix", "3=0", "--lo", "-3", "--hi", "2", "--step", "1",
        )
        assert code == 0
        rows = [line.split(",") for line in out.strip().split("\n")]
        assert len(rows) == 6 and len(rows[0]) == 6
        # Columns sweep x1 from -3 to 2; rows sweep x2 from 2 down to -3.
        assert rows[2][3] == "1"  # (0, 0)
        assert rows[2][0] == "1"  # (-3, 0)
        assert rows[2][5] == "0"  # (2, 0)

    def test_byte_stable(self, capsys, graph_file):
        args = ("section", graph_file, "--fix", "3=0", "--lo=-9/2", "--hi", "5/2", "--step", "1/4")
        _, first = run(capsys, *args)
        _, second = run(capsys, *args)
        assert first == second

    def test_all_fixed_single_cell(self, capsys, graph_file):
        _, out = run(
            capsys, "section", graph_file,
            "--fix", "1=0", "--fix", "2=0", "--fix", "3=0",
            "--lo", "0", "--hi", "0", "--step", "1",
        )
        assert out.strip() == "1"

    def test_step_larger_than_range(self, capsys, graph_file):
        _, out = run(
            capsys, "section", graph_file,
            "--fix", "3=0", "--lo", "0", "--hi", "2", "--step", "5",
        )
        rows = [line.split(",") for line in out.strip().split("\n")]
        assert len(rows) == 1 and len(rows[0]) == 1

    def test_bad_fix_exits_two(self, capsys, graph_file):
        code, _ = run(
            capsys, "section", graph_file,
            "--fix", "zebra", "--lo", "0", "--hi", "1", "--step", "1",
        )
        assert code == 2

    def test_too_many_free_coordinates(self, capsys, graph_file):
        code, _ = run(capsys, "section", graph_file, "--lo", "0", "--hi", "1", "--step", "1")
        assert code == 2
