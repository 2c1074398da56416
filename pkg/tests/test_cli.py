import json
import subprocess
import sys

import pytest

import ndsupport.classify
from ndsupport.cli import main
from ndsupport.instances import parse_instance

COUNTEREXAMPLE_JSON = '{"objectives": 3, "points": [[2,9,1],[3,6,1],[8,3,1],[6,5,1]]}\n'
FIG2D_JSON = '{"objectives": 2, "points": [[2,9],[3,6],[8,3],[6,5],[3,9],[7,7]]}\n'


@pytest.fixture
def counterexample_file(tmp_path):
    path = tmp_path / "counterexample.json"
    path.write_text(COUNTEREXAMPLE_JSON)
    return str(path)


@pytest.fixture
def fig2d_file(tmp_path):
    path = tmp_path / "fig2d.json"
    path.write_text(FIG2D_JSON)
    return str(path)


class TestClassify:
    def test_table_output(self, counterexample_file, capsys):
        assert main(["classify", counterexample_file]) == 0
        out = capsys.readouterr().out
        assert "extreme-supported=3" in out
        assert "weakly-supported-only=1" in out
        assert "all equivalences hold" in out
        for pid in ("y1", "y2", "y3", "y4"):
            assert pid in out

    def test_json_output(self, counterexample_file, capsys):
        assert main(["classify", counterexample_file, "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["digest"]["counts"]["extreme-supported"] == 3
        assert doc["digest"]["counts"]["weakly-supported-only"] == 1
        labels = {row["id"]: row["label"] for row in doc["points"]}
        assert labels["y4"] == "weakly-supported-only"
        assert doc["cross_check"]["all_ok"] is True
        y4 = next(r for r in doc["points"] if r["id"] == "y4")
        assert y4["boundary"] is True and y4["frontier"] is False

    def test_digest_counts_equal_row_tallies(self, fig2d_file, capsys):
        assert main(["classify", fig2d_file, "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        tally = {}
        for row in doc["points"]:
            tally[row["label"]] = tally.get(row["label"], 0) + 1
        counts = {k: v for k, v in doc["digest"]["counts"].items() if v}
        assert counts == tally

    def test_missing_file(self, capsys):
        assert main(["classify", "/nonexistent/file.json"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_malformed_instance(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"points": [[1,2],[3]]}')
        assert main(["classify", str(bad)]) == 2
        assert "dimension mismatch" in capsys.readouterr().err

    def test_knapsack_spec_classifies(self, tmp_path, capsys):
        spec = tmp_path / "ks.json"
        spec.write_text(
            '{"knapsack": {"capacity": 1, "items": '
            '[{"weight": 1, "costs": [1, 4]}, {"weight": 1, "costs": [4, 1]}]}}'
        )
        assert main(["classify", str(spec), "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["digest"]["points"] == 3
        labels = {row["id"]: row["label"] for row in doc["points"]}
        # (0,0) dominates both single-item selections.
        assert sorted(labels.values()) == ["dominated", "dominated", "extreme-supported"]

    def test_objective_space_svg(self, fig2d_file, tmp_path, capsys):
        svg = tmp_path / "fig.svg"
        assert main(["classify", fig2d_file, "--svg", str(svg)]) == 0
        body = svg.read_text()
        assert body.startswith("<svg") and "</svg>" in body
        # One marker shape per class: circles for the three extremes, a
        # cross for the unsupported point, diamonds for the dominated two.
        assert body.count('r="5" fill="#1f5fa8"') == 3
        assert body.count("<path d=\"M") >= 3  # 1 cross + 2 diamonds
        assert "polyline" in body  # frontier staircase
        again = tmp_path / "fig2.svg"
        assert main(["classify", fig2d_file, "--svg", str(again)]) == 0
        assert again.read_text() == body  # deterministic bytes

    def test_svg_refused_for_three_objectives(self, counterexample_file, tmp_path, capsys):
        svg = tmp_path / "nope.svg"
        assert main(["classify", counterexample_file, "--svg", str(svg)]) == 0
        assert not svg.exists()
        assert "no SVG written" in capsys.readouterr().err


class TestCheck:
    def test_paper_instance_passes(self, counterexample_file, capsys):
        assert main(["check", counterexample_file]) == 0
        assert "verdict: PASS" in capsys.readouterr().out

    def test_json_format(self, counterexample_file, capsys):
        assert main(["check", counterexample_file, "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["all_ok"] is True
        y4 = next(c for c in doc["points"] if c["id"] == "y4")
        assert y4["supported"] is False and y4["on_frontier"] is False

    def test_forced_violation_exits_3(self, counterexample_file, capsys, monkeypatch):
        # Sabotage one side of an equivalence to prove code 3 is wired up.
        monkeypatch.setattr(
            ndsupport.classify, "is_on_frontier", lambda y, yn: True
        )
        assert main(["check", counterexample_file]) == 3
        assert "FAIL" in capsys.readouterr().out


class TestWsd:
    def test_document_and_figure(self, counterexample_file, tmp_path, capsys):
        doc_path = tmp_path / "wsd.json"
        svg_path = tmp_path / "wsd.svg"
        assert main(
            ["wsd", counterexample_file, "--out", str(doc_path), "--svg", str(svg_path)]
        ) == 0
        doc = json.loads(doc_path.read_text())
        cells = {c["id"]: c for c in doc["cells"]}
        assert set(cells) == {"y1", "y2", "y3", "y4"}
        assert cells["y1"]["projected_vertices"] == [[0, 0], [1, 0], ["3/4", "1/4"]]
        assert cells["y4"]["projected_vertices"] == [[0, 0]]
        assert cells["y4"]["full_dimensional"] is False
        svg = svg_path.read_text()
        assert svg.startswith("<svg")

    def test_every_emitted_vertex_revalidates(self, tmp_path, capsys):
        from conftest import random_rows
        import random as pyrandom

        rng = pyrandom.Random(5)
        path = tmp_path / "inst.json"
        rows = random_rows(rng, 8, 3, 0, 20)
        path.write_text(json.dumps({"objectives": 3, "points": rows}))
        assert main(["wsd", str(path)]) == 0
        doc = json.loads(capsys.readouterr().out)
        from fractions import Fraction as F

        def parse_fr(v):
            return F(v) if isinstance(v, int) else F(*map(int, v.split("/")))

        for cell in doc["cells"]:
            for vertex in cell["projected_vertices"]:
                l1, l2 = (parse_fr(v) for v in vertex)
                lam = (l1, l2, 1 - l1 - l2)
                for con in cell["hrep"]:
                    coeffs = [parse_fr(c) for c in con["coeffs"]]
                    rhs = parse_fr(con["rhs"])
                    lhs = sum(c * v for c, v in zip(coeffs, lam))
                    assert lhs == rhs if con["relation"] == "=" else lhs >= rhs

    def test_interval_bar_svg_for_two_objectives(self, fig2d_file, tmp_path):
        svg_path = tmp_path / "bar.svg"
        assert main(["wsd", fig2d_file, "--svg", str(svg_path)]) == 0
        assert svg_path.read_text().startswith("<svg")

    def test_svg_refusal_for_p4_still_emits_document(self, tmp_path, capsys):
        path = tmp_path / "p4.json"
        path.write_text('{"objectives": 4, "points": [[1,2,3,4],[4,3,2,1]]}')
        svg_path = tmp_path / "p4.svg"
        assert main(["wsd", str(path), "--svg", str(svg_path)]) == 0
        captured = capsys.readouterr()
        assert "no SVG written" in captured.err
        assert json.loads(captured.out)["objectives"] == 4
        assert not svg_path.exists()


class TestLiftGenDichotomic:
    def test_lift_appends_zero(self, fig2d_file, capsys):
        assert main(["lift", fig2d_file]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["objectives"] == 3
        assert doc["points"][0] == [2, 9, 0]

    def test_gen_is_deterministic(self, capsys):
        assert main(["gen", "knapsack", "10", "2", "--seed", "7"]) == 0
        first = capsys.readouterr().out
        assert main(["gen", "knapsack", "10", "2", "--seed", "7"]) == 0
        assert capsys.readouterr().out == first
        spec = parse_instance(first)
        assert len(spec.items) == 10 and spec.p == 2

    def test_gen_classify_pipeline_deterministic(self, tmp_path, capsys):
        path = tmp_path / "gen.json"
        outputs = []
        for _ in range(2):
            assert main(["gen", "knapsack", "10", "2", "--seed", "7", "--out", str(path)]) == 0
            assert main(["classify", str(path), "--format", "json"]) == 0
            doc = json.loads(capsys.readouterr().out)
            doc.pop("elapsed_seconds")
            outputs.append(doc)
        assert outputs[0] == outputs[1]

    def test_dichotomic_table(self, fig2d_file, capsys):
        assert main(["dichotomic", fig2d_file]) == 0
        out = capsys.readouterr().out
        assert "extremes: 3" in out

    def test_dichotomic_json(self, fig2d_file, capsys):
        assert main(["dichotomic", fig2d_file, "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert [e["coords"] for e in doc["extremes"]] == [[2, 9], [3, 6], [8, 3]]

    def test_dichotomic_refuses_three_objectives(self, counterexample_file, capsys):
        assert main(["dichotomic", counterexample_file]) == 2
        assert "two objectives" in capsys.readouterr().err


def test_module_invocation_smoke(tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(COUNTEREXAMPLE_JSON)
    proc = subprocess.run(
        [sys.executable, "-m", "ndsupport", "classify", str(path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "extreme-supported" in proc.stdout
