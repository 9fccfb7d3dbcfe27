"""Sentence and subset importance: graph degree centrality or external scores.

Graph importance is a sentence's total edge weight; subset importance is the
edge mass crossing from the subset to the rest of the cluster, normalized by
the cluster size. Externally produced scores (e.g. from a trained scorer) are
used as-is, with subset importance the plain sum.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .corpus import DocumentCluster
from .errors import InputError
from .similarity import SimilarityGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ImportanceModel:
    """Per-sentence importance, either graph-derived or externally ingested."""

    kind: str  # "graph" | "external"
    cluster_id: str
    sentence_scores: np.ndarray
    graph: SimilarityGraph | None = None

    @classmethod
    def from_graph(cls, graph: SimilarityGraph) -> "ImportanceModel":
        scores = graph.edges.sum(axis=1)
        return cls(kind="graph", cluster_id=graph.cluster_id, sentence_scores=scores, graph=graph)

    @classmethod
    def from_scores(cls, cluster_id: str, scores: Iterable[float]) -> "ImportanceModel":
        arr = np.asarray(list(scores), dtype=np.float64)
        if not np.isfinite(arr).all():
            raise InputError(f"cluster {cluster_id}: importance scores contain non-finite values")
        if (arr < 0).any():
            logger.warning("cluster %s: external importance contains negative scores", cluster_id)
        return cls(kind="external", cluster_id=cluster_id, sentence_scores=arr)

    @property
    def n(self) -> int:
        return len(self.sentence_scores)


def sentence_importance(model: ImportanceModel, i: int) -> float:
    """Importance of one sentence: degree centrality or the stored external score."""
    if not 0 <= i < model.n:
        raise IndexError(f"sentence id {i} out of range for cluster of {model.n}")
    return float(model.sentence_scores[i])


def subset_importance(model: ImportanceModel, subset: Iterable[int]) -> float:
    """Importance of a subset of sentences.

    Graph kind: edge mass from the subset to the remaining sentences, divided
    by the cluster size. External kind: sum of the member scores.
    """
    ids = sorted(set(subset))
    if not ids:
        return 0.0
    if ids[0] < 0 or ids[-1] >= model.n:
        raise IndexError(f"subset ids out of range for cluster of {model.n}")
    if model.kind == "external":
        return float(model.sentence_scores[ids].sum())
    edges = model.graph.edges
    rest = np.ones(model.n, dtype=bool)
    rest[ids] = False
    if not rest.any():
        return 0.0
    return float(edges[np.ix_(ids, np.nonzero(rest)[0])].sum()) / model.n


def load_external_importance(path: str | Path, cluster: DocumentCluster) -> ImportanceModel:
    """Load externally produced per-sentence scores for one cluster.

    The JSONL file holds ``{"cluster_id": ..., "scores": [...]}`` per line,
    scores in global_id order.
    """
    path = Path(path)
    if not path.is_file():
        raise InputError(f"importance file not found: {path}")
    with path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}: line {line_no}: malformed JSON: {exc.msg}") from exc
            if obj.get("cluster_id") != cluster.cluster_id:
                continue
            scores = obj.get("scores")
            if not isinstance(scores, list):
                raise InputError(f"cluster {cluster.cluster_id}: importance object has no 'scores'")
            if len(scores) != len(cluster.sentences):
                raise InputError(
                    f"cluster {cluster.cluster_id}: importance scores {len(scores)} != "
                    f"sentences {len(cluster.sentences)}"
                )
            return ImportanceModel.from_scores(cluster.cluster_id, scores)
    raise InputError(f"cluster {cluster.cluster_id}: not present in importance file {path}")


class ImportanceIndex:
    """All importance objects of a JSONL score file, validated per cluster."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        if not self.path.is_file():
            raise InputError(f"importance file not found: {self.path}")
        self._objects: dict[str, list] = {}
        with self.path.open(encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise InputError(f"{self.path}: line {line_no}: malformed JSON: {exc.msg}") from exc
                cid = obj.get("cluster_id")
                if not isinstance(cid, str):
                    raise InputError(f"{self.path}: line {line_no}: missing 'cluster_id'")
                self._objects[cid] = obj.get("scores")

    def get(self, cluster: DocumentCluster) -> ImportanceModel:
        scores = self._objects.get(cluster.cluster_id)
        if scores is None:
            raise InputError(f"cluster {cluster.cluster_id}: not present in importance file {self.path}")
        if not isinstance(scores, list):
            raise InputError(f"cluster {cluster.cluster_id}: importance object has no 'scores'")
        if len(scores) != len(cluster.sentences):
            raise InputError(
                f"cluster {cluster.cluster_id}: importance scores {len(scores)} != "
                f"sentences {len(cluster.sentences)}"
            )
        return ImportanceModel.from_scores(cluster.cluster_id, scores)
