"""CLI contract: exit codes, JSON schema, determinism, and the DOT exporter."""

import json
from fractions import Fraction

import pytest

from eqcurv.cli import main, run_corpus


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCompute:
    def test_cycle6_reports_exact_k(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--family", "cycle:6")
        assert code == 0
        report = json.loads(out)
        assert report["schema_version"] == "1"
        assert report["curvature"]["k"]["exact"] == "2/3"
        assert report["curvature"]["k"]["pseudo"] is False
        assert report["curvature"]["status"] == "exact_canonical"
        assert report["graph"]["n"] == 6

    def test_knight_7_7_is_inconsistent_exit_2(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--family", "knight:7,7")
        assert code == 2
        report = json.loads(out)
        assert report["curvature"]["status"] == "inconsistent"
        assert report["curvature"]["k"]["pseudo"] is True
        lo = report["curvature"]["residual_range"][0]["float"]
        hi = report["curvature"]["residual_range"][1]["float"]
        assert 46.42 - 0.01 <= lo and hi <= 52.22 + 0.01

    def test_edge_list_path3(self, capsys, tmp_path):
        path = tmp_path / "p3.txt"
        path.write_text("0 1\n1 2\n")
        code, out, _ = run_cli(capsys, "compute", "--edge-list", str(path))
        assert code == 0
        report = json.loads(out)
        assert [x["exact"] for x in report["curvature"]["w"]] == ["3/2", "0", "3/2"]

    def test_missing_file_exit_1(self, capsys):
        code, _, err = run_cli(capsys, "compute", "--edge-list", "/nonexistent/file.txt")
        assert code == 1
        assert "error:" in err

    def test_disconnected_edge_list_exit_1(self, capsys, tmp_path):
        path = tmp_path / "two.txt"
        path.write_text("0 1\n2 3\n")
        code, _, err = run_cli(capsys, "compute", "--edge-list", str(path))
        assert code == 1
        assert "disconnected" in err

    def test_unknown_family_exit_1_lists_catalog(self, capsys):
        code, _, err = run_cli(capsys, "compute", "--family", "tesseract:4")
        assert code == 1
        assert "cycle" in err and "johnson" in err

    def test_json_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--family", "johnson:4,2")
        report = json.loads(out)
        assert json.loads(json.dumps(report)) == report
        # exact strings reparse to the floats alongside them
        k = report["curvature"]["k"]
        assert float(Fraction(k["exact"])) == k["float"]
        avg = report["graph"]["average_distance"]
        assert float(Fraction(avg["exact"])) == avg["float"]


class TestVerify:
    def test_hypercube4_all_pass_with_sharpness_note(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--family", "hypercube:4", "--theorems", "all")
        assert code == 0
        report = json.loads(out)
        names = [t["theorem"] for t in report["theorems"]]
        assert "bonnet_myers" in names and "minimax" in names
        bm = next(t for t in report["theorems"] if t["theorem"] == "bonnet_myers")
        assert bm["passed"] and any("diam * K == 2" in n for n in bm["notes"])

    def test_complete5_reverse_bm_equality(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--family", "complete:5", "--theorems", "reverse_bm"
        )
        assert code == 0
        report = json.loads(out)
        (entry,) = report["theorems"]
        assert entry["theorem"] == "reverse_bonnet_myers"
        assert any("complete" in n for n in entry["notes"])

    def test_path4_lichnerowicz_hypothesis_unmet(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--family", "path:4", "--theorems", "lichnerowicz"
        )
        assert code == 0
        report = json.loads(out)
        (entry,) = report["theorems"]
        assert entry["hypothesis_satisfied"] is False
        assert entry["passed"] is True

    def test_unknown_theorem_exit_1(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--family", "cycle:5", "--theorems", "fermat")
        assert code == 1
        assert "unknown theorem" in err

    def test_theorem5_runs_both_weightings_when_positive(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--family", "cycle:6", "--theorems", "theorem5")
        assert code == 0
        report = json.loads(out)
        notes = [n for t in report["theorems"] for n in t["notes"]]
        assert "weights: all-ones" in notes
        assert "weights: curvature solution" in notes

    def test_theorem5_uses_positive_pseudo_solution(self, capsys):
        # the pseudo vector of this exceptional graph is entrywise positive,
        # so the generalized bounds apply to it; the knight graph's is not
        code, out, _ = run_cli(
            capsys, "verify", "--family", "complete_multipartite:1,1,1,4",
            "--theorems", "theorem5",
        )
        assert code == 0
        notes = [n for t in json.loads(out)["theorems"] for n in t["notes"]]
        assert "weights: pseudo solution" in notes
        _, out, _ = run_cli(capsys, "verify", "--family", "knight:7,7", "--theorems", "theorem5")
        notes = [n for t in json.loads(out)["theorems"] for n in t["notes"]]
        assert "weights: pseudo solution" not in notes

    def test_exceptional_graph_exit_0_when_nothing_fails(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--family", "complete_multipartite:1,1,1,4", "--theorems", "all"
        )
        report = json.loads(out)
        failed = [t for t in report["theorems"] if t["hypothesis_satisfied"] and not t["passed"]]
        assert code == 0 and not failed


class TestCorpus:
    def test_small_corpus_no_failures(self, capsys):
        code, out, _ = run_cli(
            capsys, "corpus", "--count", "5", "--n-range", "5..12", "--seed", "7"
        )
        assert code == 0
        summary = json.loads(out)
        assert summary["count"] == 5
        assert summary["verifier_failures"] == 0
        assert sum(summary["statuses"].values()) == 5

    def test_p_one_forces_complete_graph(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "corpus", "--count", "1", "--n-range", "5..5", "--p", "1.0",
            "--seed", "3", "--json-lines",
        )
        assert code == 0
        lines = out.strip().splitlines()
        record = json.loads(lines[0])
        assert record["n"] == 5 and record["edge_count"] == 10
        assert record["status"] == "exact_unique"
        assert record["k_exact"] == "5/4"

    def test_same_seed_byte_identical(self, capsys):
        args = ("corpus", "--count", "4", "--n-range", "5..10", "--seed", "99", "--json-lines")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_different_seed_differs(self, capsys):
        _, out1, _ = run_cli(capsys, "corpus", "--count", "3", "--n-range", "5..10", "--seed", "1")
        _, out2, _ = run_cli(capsys, "corpus", "--count", "3", "--n-range", "5..10", "--seed", "2")
        assert out1 != out2

    def test_bad_range_exit_1(self, capsys):
        code, _, err = run_cli(capsys, "corpus", "--count", "2", "--n-range", "10")
        assert code == 1
        assert "a..b" in err

    def test_run_corpus_validates_parameters(self):
        with pytest.raises(ValueError):
            run_corpus(0, 5, 10)
        with pytest.raises(ValueError):
            run_corpus(3, 8, 5)


class TestExportDot:
    def test_path5_endpoint_colors(self, capsys, tmp_path):
        out_path = tmp_path / "p5.dot"
        code, _, _ = run_cli(capsys, "export-dot", "--family", "path:5", "--out", str(out_path))
        assert code == 0
        text = out_path.read_text()
        assert text.startswith("graph curvature {")
        # endpoints carry curvature 5/4 -> saturated red; interior is exactly 0 -> white
        assert text.count('fillcolor="#ff0000"') == 2
        assert text.count('fillcolor="#ffffff"') == 3
        assert 'label="0\\n5/4"' in text
        assert text.count(" -- ") == 4

    def test_cycle8_uniform_red(self, capsys, tmp_path):
        out_path = tmp_path / "c8.dot"
        run_cli(capsys, "export-dot", "--family", "cycle:8", "--out", str(out_path))
        text = out_path.read_text()
        assert text.count('fillcolor="#ff0000"') == 8

    def test_negative_entries_get_blue(self, capsys, tmp_path):
        out_path = tmp_path / "knight.dot"
        code, _, _ = run_cli(
            capsys, "export-dot", "--family", "knight:7,7", "--out", str(out_path)
        )
        assert code == 0
        blues = [
            line for line in out_path.read_text().splitlines()
            if 'fillcolor="#' in line and line.split('fillcolor="')[1][5:7] == "ff"
            and not line.split('fillcolor="')[1][1:3] == "ff"
        ]
        assert blues  # at least one vertex rendered on the blue side

    def test_deterministic_output(self, capsys, tmp_path):
        a, b = tmp_path / "a.dot", tmp_path / "b.dot"
        run_cli(capsys, "export-dot", "--family", "johnson:5,2", "--out", str(a))
        run_cli(capsys, "export-dot", "--family", "johnson:5,2", "--out", str(b))
        assert a.read_text() == b.read_text()
