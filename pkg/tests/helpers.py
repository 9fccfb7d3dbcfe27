"""Shared test fixtures: direct graph construction, random instances, and the
synthetic paraphrase-group corpus used for diversity and end-to-end checks."""
from __future__ import annotations

import json

import numpy as np

from holisum.corpus import DocumentCluster, SentenceRecord, tokenize
from holisum.importance import ImportanceModel
from holisum.inference import BudgetSpec
from holisum.similarity import SimilarityGraph, threshold_edges
from holisum.sri import SriConfig


def graph_from_edges(edges, cluster_id: str = "t") -> SimilarityGraph:
    """Wrap an already-thresholded symmetric edge matrix as a graph."""
    edges = np.asarray(edges, dtype=np.float64)
    return SimilarityGraph(
        cluster_id=cluster_id,
        n=edges.shape[0],
        raw=edges.copy(),
        edges=edges,
        theta=0.0,
        alpha=1.0,
        threshold_value=0.0,
    )


def random_graph(rng: np.random.Generator, n: int, theta: float | None = None) -> SimilarityGraph:
    raw = rng.random((n, n))
    raw = (raw + raw.T) / 2
    np.fill_diagonal(raw, 0.0)
    if theta is None:
        theta = float(rng.choice([0.0, 0.1, 0.3]))
    edges, thr = threshold_edges(raw, theta)
    return SimilarityGraph("t", n, raw, edges, theta, 1.0, thr)


def random_instance(rng: np.random.Generator):
    """Random (model, graph, config, target) with graph or external importance."""
    n = int(rng.integers(4, 13))
    graph = random_graph(rng, n)
    if rng.random() < 0.5:
        model = ImportanceModel.from_graph(graph)
    else:
        model = ImportanceModel.from_scores("t", rng.random(n).tolist())
    lam = float(rng.choice([0.0, 2.0 ** -7, 0.0625, 0.125, 0.5]))
    target = int(rng.integers(1, min(4, n - 1) + 1))
    return model, graph, SriConfig(lambda_=lam), target


def make_cluster(docs: list[list[str]], cluster_id: str = "t",
                 references: tuple[str, ...] = ()) -> DocumentCluster:
    """Build a cluster directly from per-document sentence lists."""
    sentences = []
    global_id = 0
    for doc_index, doc in enumerate(docs):
        for sent_index, text in enumerate(doc):
            sentences.append(SentenceRecord(
                cluster_id=cluster_id,
                doc_index=doc_index,
                sent_index=sent_index,
                global_id=global_id,
                text=text,
                tokens=tuple(tokenize(text)),
                word_count=len(text.split()),
            ))
            global_id += 1
    return DocumentCluster(
        cluster_id=cluster_id,
        sentences=tuple(sentences),
        references=tuple(references),
        n_documents=len(docs),
    )


def words_sentence(prefix: str, count: int) -> str:
    """A sentence of exactly `count` distinct words."""
    return " ".join(f"{prefix}{i}" for i in range(count))


def cluster_with_word_counts(counts: list[int], cluster_id: str = "t") -> DocumentCluster:
    return make_cluster([[words_sentence(f"s{i}w", c) for i, c in enumerate(counts)]],
                        cluster_id=cluster_id)


def synthetic_corpus(n_clusters: int = 20, seed: int = 7) -> list[dict]:
    """Clusters of three near-duplicate paraphrase groups, JSONL-ready.

    Within a group, sentences share most of their vocabulary (near-duplicates);
    across groups vocabularies are disjoint. Importance-only selection tends to
    pick several members of the densest group, while redundancy-aware selection
    spreads across groups.
    """
    rng = np.random.default_rng(seed)
    clusters = []
    for ci in range(n_clusters):
        group_sents: list[list[str]] = []
        for g in range(3):
            base = [f"c{ci}g{g}w{k}" for k in range(8)]
            n_paraphrases = 4 if g == 0 else 3
            sents = []
            for p in range(n_paraphrases):
                words = list(base)
                # Swap two positions for paraphrase-specific variants.
                for slot in rng.choice(8, size=2, replace=False):
                    words[slot] = f"c{ci}g{g}v{p}x{slot}"
                sents.append(" ".join(words) + ".")
            group_sents.append(sents)
        # Deal sentences into three documents round-robin, document-major order.
        flat = [s for group in group_sents for s in group]
        docs: list[list[str]] = [[], [], []]
        for i, s in enumerate(flat):
            docs[i % 3].append(s)
        references = [" ".join(group[0] for group in group_sents)]
        clusters.append({"id": f"syn{ci}", "documents": docs, "references": references})
    return clusters


def write_jsonl(path, objects) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for obj in objects:
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")


def sentence_budget(n: int) -> BudgetSpec:
    return BudgetSpec.sentence_count(n)
