"""Command line: JSON outputs, exit codes, eval harness."""

import json

import pytest
from click.testing import CliRunner

from kgreason.cli import main
from kgreason.mining import load_model

from conftest import random_labeled_triples


@pytest.fixture
def runner():
    return CliRunner()


def write_graph(tmp_path, rows):
    path = tmp_path / "graph.tsv"
    path.write_text("\n".join("\t".join(r) for r in rows) + "\n", encoding="utf-8")
    return str(path)


class TestMine:
    def test_mine_writes_versioned_model(self, runner, tmp_path, rng):
        graph = write_graph(tmp_path, random_labeled_triples(rng, 60, 15, 5))
        out = str(tmp_path / "model.json")
        result = runner.invoke(main, ["mine", "--graph", graph, "--out", out])
        assert result.exit_code == 0, result.output
        model = load_model(out)
        assert len(model.labels) == 5

    def test_missing_graph_is_usage_error(self, runner):
        result = runner.invoke(main, ["mine", "--out", "/tmp/x.json"])
        assert result.exit_code == 1

    def test_unreadable_graph_is_data_error(self, runner, tmp_path):
        result = runner.invoke(main, ["mine", "--graph", "/nope.tsv",
                                      "--out", str(tmp_path / "m.json")])
        assert result.exit_code == 2


class TestKs:
    def test_node_segment_json(self, runner):
        result = runner.invoke(main, ["ks", "node", "--demo", "--seed", "Barack Obama"])
        assert result.exit_code == 0, result.output
        doc = json.loads(result.stdout)
        assert {n["label"] for n in doc["segment"]["nodes"]} >= {"Barack Obama", "Michelle Obama"}

    def test_edge_segment_costs_sorted(self, runner):
        result = runner.invoke(main, [
            "ks", "edge", "--demo", "--bidirectional", "-k", "4",
            "--subject", "White House", "--predicate", "participatedIn",
            "--object", "Operation Mountain Thrust"])
        assert result.exit_code == 0, result.output
        costs = [p["cost"] for p in json.loads(result.stdout)["segment"]["paths"]]
        assert costs == sorted(costs)

    def test_unknown_entity_exit_code(self, runner):
        result = runner.invoke(main, ["ks", "node", "--demo", "--seed", "nobody"])
        assert result.exit_code == 2

    def test_subgraph(self, runner):
        query = json.dumps([["Barack Obama", "wasBornIn", "Honolulu"],
                            ["Barack Obama", "wasBornIn", "Hawaii"]])
        result = runner.invoke(main, ["ks", "subgraph", "--demo", "--bidirectional",
                                      "--query", query])
        assert result.exit_code == 0, result.output
        doc = json.loads(result.stdout)
        assert set(doc["segments"]) == {"0", "1"}


class TestReason:
    def test_pair_verdict(self, runner):
        result = runner.invoke(main, [
            "reason", "pair", "--demo", "--bidirectional", "-k", "4",
            "--t1", json.dumps(["White House", "participatedIn", "Operation Mountain Thrust"]),
            "--t2", json.dumps(["White House", "punish", "Iraqi Army"])])
        assert result.exit_code == 0, result.output
        verdict = json.loads(result.stdout)["verdict"]
        assert verdict["case"] == "C3"
        assert verdict["consistent"] is False

    def test_bad_clue_usage_error(self, runner):
        result = runner.invoke(main, ["reason", "pair", "--demo",
                                      "--t1", "not json", "--t2", "[]"])
        assert result.exit_code == 1

    def test_collective_too_small_usage_error(self, runner):
        result = runner.invoke(main, [
            "reason", "collective", "--demo",
            "--query", json.dumps([["Barack Obama", "wasBornIn", "Honolulu"]])])
        assert result.exit_code == 1


class TestEval:
    def test_accuracy_per_category(self, runner, tmp_path):
        lines = [
            {"queries": [["White House", "participatedIn", "Operation Mountain Thrust"],
                         ["White House", "punish", "Iraqi Army"]],
             "label": "inconsistent", "category": "military"},
            {"queries": [["Barack Obama", "wasBornIn", "Honolulu"],
                         ["Barack Obama", "wasBornIn", "Hawaii"]],
             "label": "consistent", "category": "birthplace"},
            {"queries": [["Barack Obama", "wasBornIn", "Honolulu"],
                         ["Barack Obama", "wasBornIn", "Hawaii"]],
             "label": "inconsistent", "category": "birthplace"},
        ]
        path = tmp_path / "queries.jsonl"
        path.write_text("\n".join(json.dumps(l) for l in lines), encoding="utf-8")
        # note: the demo model resolves the military pair; the birthplace rows
        # use predicates the pairwise demo model cannot route, so give the
        # obama rows their own run below
        result = runner.invoke(main, ["eval", "--demo", "--bidirectional", "-k", "4",
                                      "--queries", str(path)])
        assert result.exit_code == 0, result.output
        doc = json.loads(result.stdout)
        assert doc["perCategory"]["military"]["accuracy"] == 1.0
        # one of the two birthplace labels must be wrong by construction
        assert doc["perCategory"]["birthplace"]["correct"] == 1
        assert doc["overall"]["total"] == 3

    def test_output_parsable_by_harness(self, runner, tmp_path):
        lines = [{"queries": [["Barack Obama", "wasBornIn", "Honolulu"],
                              ["Michelle Obama", "livesIn", "Honolulu"]],
                  "label": "consistent", "category": "c5"}]
        path = tmp_path / "queries.jsonl"
        path.write_text("\n".join(json.dumps(l) for l in lines), encoding="utf-8")
        out = tmp_path / "report.json"
        result = runner.invoke(main, ["eval", "--demo", "--queries", str(path),
                                      "--out", str(out)])
        assert result.exit_code == 0, result.output
        doc = json.loads(out.read_text())
        assert doc["rows"][0]["category"] == "c5"


class TestServe:
    def test_export_openapi(self, runner, tmp_path):
        out = tmp_path / "openapi.json"
        result = runner.invoke(main, ["serve", "--demo", "--export-openapi", str(out)])
        assert result.exit_code == 0, result.output
        doc = json.loads(out.read_text())
        assert "/reason/collective" in doc["paths"]
