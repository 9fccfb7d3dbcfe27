"""Ingestion of the embedding exporter's committed output for the synthetic corpus.

The exporter (embedder/, a separate package) produced
``tests/data/synthetic_embeddings.jsonl`` from ``synthetic_clusters.jsonl``
with its deterministic offline encoder; this suite checks the round trip from
the consuming side: alignment, unit norms, finiteness.
"""
import json
from pathlib import Path

import numpy as np
import pytest

from holisum.corpus import load_clusters
from holisum.similarity import load_embeddings

from helpers import synthetic_corpus

DATA = Path(__file__).parent / "data"
CLUSTERS = DATA / "synthetic_clusters.jsonl"
EMBEDDINGS = DATA / "synthetic_embeddings.jsonl"


def test_committed_corpus_matches_generator():
    generated = synthetic_corpus(n_clusters=20, seed=7)
    committed = [json.loads(line) for line in CLUSTERS.read_text().splitlines()]
    assert committed == generated


def test_exported_embeddings_ingest_without_errors():
    clusters = load_clusters(CLUSTERS)
    for cluster in clusters:
        matrix = load_embeddings(EMBEDDINGS, cluster)
        assert matrix.vectors.shape == (len(cluster.sentences), matrix.dim)
        assert np.isfinite(matrix.vectors).all()


def test_raw_rows_are_unit_norm_to_1e6():
    rows_checked = 0
    for line in EMBEDDINGS.read_text().splitlines():
        obj = json.loads(line)
        mat = np.asarray(obj["vectors"], dtype=np.float64)
        norms = np.linalg.norm(mat, axis=1)
        assert np.abs(norms - 1.0).max() <= 1e-6
        rows_checked += len(norms)
    assert rows_checked > 0


def test_embeddings_usable_end_to_end():
    clusters = load_clusters(CLUSTERS)
    from holisum.importance import ImportanceModel
    from holisum.inference import BudgetSpec, holistic_beam
    from holisum.similarity import build_graph, build_tfidf
    from holisum.sri import SriConfig

    cluster = clusters[0]
    matrix = load_embeddings(EMBEDDINGS, cluster)
    graph = build_graph(cluster, build_tfidf(cluster), matrix, alpha=0.9, theta=0.1)
    model = ImportanceModel.from_graph(graph)
    out = holistic_beam(model, graph, SriConfig(0.25), BudgetSpec.sentence_count(3), 4,
                        cluster=cluster)
    assert len(out.selected) == 3
