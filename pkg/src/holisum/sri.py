"""Subset scoring: redundancy and the importance/redundancy balance (SRI).

The subset representative index of a sentence set is its importance minus a
weighted redundancy, where redundancy sums each member's similarity to its
most similar fellow member.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isfinite
from typing import Iterable

import numpy as np

from .errors import ConfigError
from .importance import ImportanceModel, subset_importance
from .similarity import SimilarityGraph


@dataclass(frozen=True)
class SriConfig:
    """Weight of the redundancy term in the subset score."""

    lambda_: float = 0.0

    def __post_init__(self):
        if not isfinite(self.lambda_) or self.lambda_ < 0:
            raise ConfigError(f"lambda must be finite and >= 0, got {self.lambda_}")


def redundancy(graph: SimilarityGraph, subset: Iterable[int]) -> float:
    """Sum over subset members of each member's strongest edge to another member.

    Subsets of size 0 or 1 have no counterparts and score 0.
    """
    ids = sorted(set(subset))
    if len(ids) < 2:
        return 0.0
    sub = graph.edges[np.ix_(ids, ids)]
    # Edges are nonnegative and the diagonal is 0, so the row max over the
    # submatrix equals the max over the other members.
    return float(sub.max(axis=1).sum())


def sri_score(
    importance: ImportanceModel,
    graph: SimilarityGraph,
    subset: Iterable[int],
    config: SriConfig,
) -> float:
    """Subset importance minus lambda-weighted redundancy; empty subset scores 0."""
    ids = sorted(set(subset))
    if not ids:
        return 0.0
    return subset_importance(importance, ids) - config.lambda_ * redundancy(graph, ids)
