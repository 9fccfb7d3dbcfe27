import itertools
import logging

import numpy as np
import pytest

from holisum.errors import InputError
from holisum.importance import (
    ImportanceModel,
    load_external_importance,
    sentence_importance,
    subset_importance,
)

from helpers import graph_from_edges, make_cluster, random_graph, write_jsonl


def three_node_graph():
    edges = np.zeros((3, 3))
    edges[0, 1] = edges[1, 0] = 0.2
    edges[0, 2] = edges[2, 0] = 0.4
    return graph_from_edges(edges)


class TestSentenceImportance:
    def test_degree_centrality(self):
        model = ImportanceModel.from_graph(three_node_graph())
        assert sentence_importance(model, 0) == pytest.approx(0.6)
        assert sentence_importance(model, 1) == pytest.approx(0.2)
        assert sentence_importance(model, 2) == pytest.approx(0.4)

    def test_isolated_node_zero(self):
        model = ImportanceModel.from_graph(graph_from_edges(np.zeros((3, 3))))
        assert sentence_importance(model, 1) == 0.0

    def test_external_lookup(self):
        model = ImportanceModel.from_scores("t", [0.1, 0.7, 0.2])
        assert sentence_importance(model, 1) == pytest.approx(0.7)

    def test_out_of_range(self):
        model = ImportanceModel.from_scores("t", [0.1, 0.7])
        with pytest.raises(IndexError):
            sentence_importance(model, 2)
        with pytest.raises(IndexError):
            sentence_importance(model, -1)


class TestSubsetImportance:
    def test_singleton_cut(self):
        model = ImportanceModel.from_graph(three_node_graph())
        assert subset_importance(model, {0}) == pytest.approx(0.2)

    def test_pair_cut(self):
        # Cross edges of {0,1} are e02=0.4 and e12=0; divided by |S|=3.
        model = ImportanceModel.from_graph(three_node_graph())
        assert subset_importance(model, {0, 1}) == pytest.approx(0.4 / 3)

    def test_full_set_zero(self):
        model = ImportanceModel.from_graph(three_node_graph())
        assert subset_importance(model, {0, 1, 2}) == 0.0

    def test_empty_zero(self):
        model = ImportanceModel.from_graph(three_node_graph())
        assert subset_importance(model, set()) == 0.0

    def test_enumeration_order_invariant(self):
        model = ImportanceModel.from_graph(three_node_graph())
        assert subset_importance(model, [2, 0]) == subset_importance(model, [0, 2])
        assert subset_importance(model, [0, 2, 2]) == subset_importance(model, (2, 0))

    def test_external_additive_over_disjoint_sets(self):
        rng = np.random.default_rng(3)
        model = ImportanceModel.from_scores("t", rng.random(8).tolist())
        a, b = [0, 3, 5], [1, 6]
        total = subset_importance(model, a + b)
        assert total == pytest.approx(subset_importance(model, a) + subset_importance(model, b))

    def test_handshake_identity(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            graph = random_graph(rng, int(rng.integers(2, 12)))
            model = ImportanceModel.from_graph(graph)
            degrees = sum(sentence_importance(model, i) for i in range(graph.n))
            upper = sum(graph.edges[i, j] for i, j in
                        itertools.combinations(range(graph.n), 2))
            assert degrees == pytest.approx(2 * upper, abs=1e-9)

    def test_degree_cut_identity(self):
        # sum of member degrees = |S| * cut importance + twice the internal mass
        rng = np.random.default_rng(6)
        for _ in range(25):
            graph = random_graph(rng, int(rng.integers(3, 12)))
            model = ImportanceModel.from_graph(graph)
            size = int(rng.integers(1, graph.n))
            subset = sorted(rng.choice(graph.n, size=size, replace=False).tolist())
            member_degrees = sum(sentence_importance(model, i) for i in subset)
            internal = sum(graph.edges[i, j] for i, j in itertools.combinations(subset, 2))
            expected = graph.n * subset_importance(model, subset) + 2 * internal
            assert member_degrees == pytest.approx(expected, abs=1e-9)


class TestExternalLoading:
    def test_identity(self, tmp_path):
        cluster = make_cluster([["A.", "B.", "C."]], cluster_id="c1")
        path = tmp_path / "imp.jsonl"
        write_jsonl(path, [{"cluster_id": "c1", "scores": [0.5, 0.3, 0.2]}])
        model = load_external_importance(path, cluster)
        assert model.kind == "external"
        assert model.sentence_scores.tolist() == [0.5, 0.3, 0.2]

    def test_count_mismatch(self, tmp_path):
        cluster = make_cluster([["A.", "B.", "C."]], cluster_id="c1")
        path = tmp_path / "imp.jsonl"
        write_jsonl(path, [{"cluster_id": "c1", "scores": [0.5, 0.3]}])
        with pytest.raises(InputError, match="scores 2 != sentences 3"):
            load_external_importance(path, cluster)

    def test_non_finite_rejected(self, tmp_path):
        cluster = make_cluster([["A.", "B."]], cluster_id="c1")
        path = tmp_path / "imp.jsonl"
        path.write_text('{"cluster_id": "c1", "scores": [0.5, NaN]}\n')
        with pytest.raises(InputError, match="non-finite"):
            load_external_importance(path, cluster)

    def test_missing_cluster(self, tmp_path):
        cluster = make_cluster([["A."]], cluster_id="c9")
        path = tmp_path / "imp.jsonl"
        write_jsonl(path, [{"cluster_id": "c1", "scores": [0.5]}])
        with pytest.raises(InputError, match="not present"):
            load_external_importance(path, cluster)

    def test_negative_scores_logged(self, caplog):
        with caplog.at_level(logging.WARNING):
            ImportanceModel.from_scores("c1", [0.5, -0.1])
        assert any("negative" in r.message for r in caplog.records)
