"""Sentence similarity: TF-IDF vectors, ingested embeddings, and the edge graph.

Raw pairwise similarity blends a TF-IDF cosine with an embedding cosine
(weight ``alpha`` on the TF-IDF side). The graph then subtracts a threshold
``min + theta * (max - min)`` computed over off-diagonal raw similarities and
clamps at zero, so weak connections drop out entirely.
"""
from __future__ import annotations

import json
import logging
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import DocumentCluster
from .errors import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TfidfVector:
    """Sparse term->weight map; L2-normalized unless the sentence is tokenless."""

    weights: dict[str, float]
    norm: float

    def dot(self, other: "TfidfVector") -> float:
        a, b = self.weights, other.weights
        if len(b) < len(a):
            a, b = b, a
        return sum(w * b[t] for t, w in a.items() if t in b)


@dataclass(frozen=True)
class EmbeddingMatrix:
    """Unit-norm sentence embeddings aligned to a cluster's global_id order."""

    cluster_id: str
    dim: int
    vectors: np.ndarray


@dataclass(frozen=True)
class SimilarityGraph:
    """Symmetric thresholded similarity matrix over one cluster's sentences."""

    cluster_id: str
    n: int
    raw: np.ndarray
    edges: np.ndarray
    theta: float
    alpha: float
    threshold_value: float


def build_tfidf(cluster: DocumentCluster) -> list[TfidfVector]:
    """TF-IDF vectors treating the cluster as the corpus and sentences as documents.

    tf is the raw in-sentence term count, idf = ln((1+N)/(1+df)) + 1, and each
    vector is L2-normalized. Tokenless sentences get an all-zero vector.
    """
    n = len(cluster.sentences)
    df: Counter[str] = Counter()
    for sent in cluster.sentences:
        df.update(set(sent.tokens))
    idf = {term: math.log((1 + n) / (1 + count)) + 1.0 for term, count in df.items()}
    vectors = []
    for sent in cluster.sentences:
        tf = Counter(sent.tokens)
        weights = {term: count * idf[term] for term, count in tf.items()}
        norm = math.sqrt(sum(w * w for w in weights.values()))
        if norm > 0:
            weights = {term: w / norm for term, w in weights.items()}
            vectors.append(TfidfVector(weights=weights, norm=1.0))
        else:
            vectors.append(TfidfVector(weights={}, norm=0.0))
    return vectors


def _read_embedding_objects(path: str | Path) -> dict[str, dict]:
    path = Path(path)
    if not path.is_file():
        raise InputError(f"embedding file not found: {path}")
    objects: dict[str, dict] = {}
    with path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}: line {line_no}: malformed JSON: {exc.msg}") from exc
            cid = obj.get("cluster_id")
            if not isinstance(cid, str):
                raise InputError(f"{path}: line {line_no}: missing 'cluster_id'")
            objects[cid] = obj
    return objects


def _matrix_from_object(obj: dict, cluster: DocumentCluster) -> EmbeddingMatrix:
    rows = obj.get("vectors")
    if not isinstance(rows, list):
        raise InputError(f"cluster {cluster.cluster_id}: embedding object has no 'vectors'")
    n = len(cluster.sentences)
    if len(rows) != n:
        raise InputError(f"cluster {cluster.cluster_id}: embedding rows {len(rows)} != sentences {n}")
    try:
        mat = np.asarray(rows, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InputError(
            f"cluster {cluster.cluster_id}: embedding rows have inconsistent dims"
        ) from exc
    if mat.ndim != 2:
        raise InputError(f"cluster {cluster.cluster_id}: embedding rows have inconsistent dims")
    dim = int(obj.get("dim", mat.shape[1]))
    if mat.shape[1] != dim:
        raise InputError(
            f"cluster {cluster.cluster_id}: embedding dim {mat.shape[1]} != declared {dim}"
        )
    if not np.isfinite(mat).all():
        raise InputError(f"cluster {cluster.cluster_id}: embedding contains non-finite values")
    norms = np.linalg.norm(mat, axis=1)
    if (norms == 0).any():
        bad = int(np.nonzero(norms == 0)[0][0])
        raise InputError(f"cluster {cluster.cluster_id}: embedding row {bad} has zero norm")
    mat = mat / norms[:, None]
    return EmbeddingMatrix(cluster_id=cluster.cluster_id, dim=dim, vectors=mat)


def load_embeddings(path: str | Path, cluster: DocumentCluster) -> EmbeddingMatrix:
    """Load and validate this cluster's embedding rows from an embedding JSONL file.

    Rows are re-normalized to unit L2 norm; row count must match the cluster's
    sentence count and all values must be finite.
    """
    objects = _read_embedding_objects(path)
    if cluster.cluster_id not in objects:
        raise InputError(f"cluster {cluster.cluster_id}: not present in embedding file {path}")
    return _matrix_from_object(objects[cluster.cluster_id], cluster)


class EmbeddingIndex:
    """All embedding objects of a JSONL file, validated lazily per cluster."""

    def __init__(self, path: str | Path):
        self.path = str(path)
        self._objects = _read_embedding_objects(path)

    def get(self, cluster: DocumentCluster) -> EmbeddingMatrix | None:
        obj = self._objects.get(cluster.cluster_id)
        if obj is None:
            logger.warning(
                "cluster %s: no embeddings in %s; falling back to TF-IDF only (alpha=1)",
                cluster.cluster_id,
                self.path,
            )
            return None
        return _matrix_from_object(obj, cluster)


def combined_similarity(
    c_i: TfidfVector,
    c_j: TfidfVector,
    r_i: np.ndarray | None = None,
    r_j: np.ndarray | None = None,
    alpha: float = 1.0,
) -> float:
    """Blend of TF-IDF and embedding cosines: alpha*c_i.c_j + (1-alpha)*r_i.r_j.

    Without embeddings the TF-IDF cosine is used alone (alpha treated as 1).
    """
    tfidf_sim = c_i.dot(c_j)
    if r_i is None or r_j is None:
        return tfidf_sim
    return alpha * tfidf_sim + (1.0 - alpha) * float(np.dot(r_i, r_j))


def threshold_edges(raw: np.ndarray, theta: float) -> tuple[np.ndarray, float]:
    """Subtract the theta-interpolated off-diagonal min/max threshold, clamp at 0."""
    n = raw.shape[0]
    if n < 2:
        return np.zeros_like(raw), 0.0
    off = raw[~np.eye(n, dtype=bool)]
    lo, hi = float(off.min()), float(off.max())
    threshold = lo + theta * (hi - lo)
    edges = np.maximum(raw - threshold, 0.0)
    np.fill_diagonal(edges, 0.0)
    return edges, threshold


def _tfidf_matrix(tfidf: list[TfidfVector]) -> np.ndarray:
    vocab: dict[str, int] = {}
    for vec in tfidf:
        for term in vec.weights:
            if term not in vocab:
                vocab[term] = len(vocab)
    mat = np.zeros((len(tfidf), max(len(vocab), 1)))
    for i, vec in enumerate(tfidf):
        for term, w in vec.weights.items():
            mat[i, vocab[term]] = w
    return mat


def build_graph(
    cluster: DocumentCluster,
    tfidf: list[TfidfVector],
    embeddings: EmbeddingMatrix | None = None,
    alpha: float = 1.0,
    theta: float = 0.0,
) -> SimilarityGraph:
    """Build the thresholded similarity graph for one cluster.

    A single-sentence cluster yields a valid degenerate graph with no edges.
    """
    n = len(cluster.sentences)
    if len(tfidf) != n:
        raise InputError(f"cluster {cluster.cluster_id}: tfidf vectors {len(tfidf)} != sentences {n}")
    if not 0.0 <= alpha <= 1.0:
        raise InputError(f"alpha must be in [0, 1], got {alpha}")
    if not 0.0 <= theta <= 1.0:
        raise InputError(f"theta must be in [0, 1], got {theta}")
    effective_alpha = alpha
    if embeddings is None:
        if alpha < 1.0:
            logger.warning(
                "cluster %s: no embeddings available, using TF-IDF similarity only",
                cluster.cluster_id,
            )
        effective_alpha = 1.0
    elif embeddings.vectors.shape[0] != n:
        raise InputError(
            f"cluster {cluster.cluster_id}: embedding rows {embeddings.vectors.shape[0]} != sentences {n}"
        )

    tmat = _tfidf_matrix(tfidf)
    raw = effective_alpha * (tmat @ tmat.T)
    if embeddings is not None and effective_alpha < 1.0:
        raw = raw + (1.0 - effective_alpha) * (embeddings.vectors @ embeddings.vectors.T)
    raw = (raw + raw.T) / 2.0  # force exact symmetry against matmul rounding
    np.fill_diagonal(raw, 0.0)
    edges, threshold = threshold_edges(raw, theta)
    return SimilarityGraph(
        cluster_id=cluster.cluster_id,
        n=n,
        raw=raw,
        edges=edges,
        theta=theta,
        alpha=effective_alpha,
        threshold_value=threshold,
    )
