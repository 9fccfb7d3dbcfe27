"""Summary subset selection: greedy, beam, exhaustive, and an exact oracle.

All methods are deterministic. Ties are broken by the lexicographic order of
the sorted id list (for a single-sentence extension this reduces to picking
the lower global_id). The beam keeps candidate subsets canonicalized as
sorted id-sets and deduplicated, and fills its slots incrementally so that a
beam of size k+1 always explores a superset of the size-k beam; consequently
the final best score is non-decreasing in the beam size and never falls below
the greedy score.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .corpus import DocumentCluster
from .errors import ConfigError
from .importance import ImportanceModel, subset_importance
from .similarity import SimilarityGraph
from .sri import SriConfig, redundancy, sri_score

DEFAULT_PREFILTER_SIZE = 15
DEFAULT_CANDIDATE_CAP = 10_000_000


@dataclass(frozen=True)
class BudgetSpec:
    """Summary length budget: a fixed sentence count or a word limit."""

    mode: str
    n_sentences: int | None = None
    max_words: int | None = None

    def __post_init__(self):
        if self.mode == "sentence_count":
            if not isinstance(self.n_sentences, int) or self.n_sentences < 1 or self.max_words is not None:
                raise ConfigError("sentence_count budget needs a positive n_sentences and no max_words")
        elif self.mode == "word_limit":
            if not isinstance(self.max_words, int) or self.max_words < 1 or self.n_sentences is not None:
                raise ConfigError("word_limit budget needs a positive max_words and no n_sentences")
        else:
            raise ConfigError(f"unknown budget mode: {self.mode!r}")

    @classmethod
    def sentence_count(cls, n: int) -> "BudgetSpec":
        return cls(mode="sentence_count", n_sentences=n)

    @classmethod
    def word_limit(cls, w: int) -> "BudgetSpec":
        return cls(mode="word_limit", max_words=w)


@dataclass(frozen=True)
class SummarySelection:
    """Selected sentence ids (in selection order) with the subset score achieved."""

    cluster_id: str
    selected: tuple[int, ...]
    score: float
    method: str
    trace: tuple[dict, ...] | None = None


class _Candidate:
    """Partial selection with cached quantities for incremental subset scoring."""

    __slots__ = ("ids", "key", "mass", "maxcpt", "words", "score")

    def __init__(self, ids, key, mass, maxcpt, words, score):
        self.ids = ids          # insertion order
        self.key = key          # sorted, the canonical identity
        self.mass = mass        # graph kind: cut to the rest; external kind: score sum
        self.maxcpt = maxcpt    # per-member max edge to another member
        self.words = words
        self.score = score


class _SubsetScorer:
    """Vectorized incremental scoring of all one-sentence extensions of a candidate."""

    def __init__(self, model: ImportanceModel, graph: SimilarityGraph, lambda_: float,
                 word_counts: list[int] | None):
        self.model = model
        self.edges = graph.edges
        self.n = graph.n
        self.lambda_ = lambda_
        self.degrees = graph.edges.sum(axis=1)
        self.word_counts = word_counts

    def empty(self) -> _Candidate:
        return _Candidate((), (), 0.0, np.zeros(0), 0, 0.0)

    def extension_scores(self, cand: _Candidate) -> np.ndarray:
        """Score of cand's set extended by each sentence; members masked to -inf."""
        if not cand.ids:
            if self.model.kind == "external":
                return self.model.sentence_scores.astype(np.float64, copy=True)
            return self.degrees / self.n
        ids = list(cand.ids)
        sub = self.edges[ids]  # members x all sentences
        if self.model.kind == "external":
            imp = cand.mass + self.model.sentence_scores
        else:
            # Moving s inside removes its edges to the set from the cut and
            # adds its remaining degree: cut' = cut + deg(s) - 2*connect(s).
            imp = (cand.mass + self.degrees - 2.0 * sub.sum(axis=0)) / self.n
        red = np.maximum(cand.maxcpt[:, None], sub).sum(axis=0) + sub.max(axis=0)
        scores = imp - self.lambda_ * red
        scores[ids] = -np.inf
        return scores

    def child(self, cand: _Candidate, s: int, score: float) -> _Candidate:
        ids = list(cand.ids)
        col = self.edges[ids, s] if ids else np.zeros(0)
        maxcpt = np.concatenate([np.maximum(cand.maxcpt, col), [col.max() if col.size else 0.0]])
        if self.model.kind == "external":
            mass = cand.mass + float(self.model.sentence_scores[s])
        else:
            mass = cand.mass + float(self.degrees[s]) - 2.0 * float(col.sum())
        words = cand.words + (self.word_counts[s] if self.word_counts is not None else 0)
        return _Candidate(cand.ids + (s,), tuple(sorted(cand.ids + (s,))), mass, maxcpt, words, score)


def _target_count(budget: BudgetSpec, n: int) -> int | None:
    if budget.mode == "sentence_count":
        return min(budget.n_sentences, n)
    return None


def _word_counts_for(budget: BudgetSpec, cluster: DocumentCluster | None) -> list[int] | None:
    if budget.mode != "word_limit":
        return None
    if cluster is None:
        raise ConfigError("word_limit budgets require the cluster (for word counts)")
    return cluster.word_counts()


def _is_complete(size: int, words: int, budget: BudgetSpec, n: int) -> bool:
    if budget.mode == "sentence_count":
        return size >= min(budget.n_sentences, n)
    return words >= budget.max_words or size >= n


def _cluster_id_of(cluster, graph=None, model=None) -> str:
    if cluster is not None:
        return cluster.cluster_id
    if graph is not None:
        return graph.cluster_id
    if model is not None:
        return model.cluster_id
    return ""


def individual_greedy(
    model: ImportanceModel,
    budget: BudgetSpec,
    *,
    cluster: DocumentCluster | None = None,
    graph: SimilarityGraph | None = None,
    sri_config: SriConfig | None = None,
) -> SummarySelection:
    """Rank sentences by importance alone and take the top of the ranking.

    The final score is the subset score of the picked set when a graph and
    config are supplied, else the plain subset importance.
    """
    n = model.n
    order = np.argsort(-model.sentence_scores, kind="stable")  # ties -> lower id
    word_counts = _word_counts_for(budget, cluster)
    selected: list[int] = []
    words = 0
    for i in order:
        if _is_complete(len(selected), words, budget, n):
            break
        selected.append(int(i))
        if word_counts is not None:
            words += word_counts[i]
    if graph is not None and sri_config is not None:
        score = sri_score(model, graph, selected, sri_config)
    else:
        score = subset_importance(model, selected)
    return SummarySelection(
        cluster_id=_cluster_id_of(cluster, graph, model),
        selected=tuple(selected),
        score=score,
        method="individual_greedy",
    )


def holistic_greedy(
    model: ImportanceModel,
    graph: SimilarityGraph,
    sri_config: SriConfig,
    budget: BudgetSpec,
    *,
    cluster: DocumentCluster | None = None,
    trace: bool = False,
) -> SummarySelection:
    """Grow the selection one sentence at a time, maximizing the subset score."""
    word_counts = _word_counts_for(budget, cluster)
    scorer = _SubsetScorer(model, graph, sri_config.lambda_, word_counts)
    state = scorer.empty()
    steps: list[dict] = []
    while not _is_complete(len(state.ids), state.words, budget, graph.n):
        scores = scorer.extension_scores(state)
        s = int(np.argmax(scores))  # first max -> lowest id on ties
        state = scorer.child(state, s, float(scores[s]))
        if trace:
            steps.append({"step": len(state.ids), "candidates": int(np.isfinite(scores).sum()),
                          "best_score": state.score})
    return SummarySelection(
        cluster_id=_cluster_id_of(cluster, graph, model),
        selected=state.ids,
        score=state.score,
        method="holistic_greedy",
        trace=tuple(steps) if trace else None,
    )


def holistic_beam(
    model: ImportanceModel,
    graph: SimilarityGraph,
    sri_config: SriConfig,
    budget: BudgetSpec,
    beam_size: int,
    *,
    cluster: DocumentCluster | None = None,
    trace: bool = False,
) -> SummarySelection:
    """Beam search over sentence subsets with nested slot filling.

    Candidates are canonical id-sets (deduplicated within each step). Beam
    slots are filled in order, slot j choosing the best candidate among the
    expansions of the first j previous slots; the remaining slots are topped
    up from the full pool. This makes the slot sequence independent of the
    beam size, so larger beams strictly extend smaller ones.
    """
    if beam_size < 1:
        raise ConfigError(f"beam size must be >= 1, got {beam_size}")
    word_counts = _word_counts_for(budget, cluster)
    scorer = _SubsetScorer(model, graph, sri_config.lambda_, word_counts)
    beam = [scorer.empty()]
    steps: list[dict] = []
    step_no = 0
    while any(not _is_complete(len(c.ids), c.words, budget, graph.n) for c in beam):
        step_no += 1
        heap: list[tuple] = []  # (-score, key, parent index, extension or None)
        seen: set[tuple] = set()
        new_beam: list[_Candidate] = []

        def _select():
            while heap:
                neg, key, j, s = heapq.heappop(heap)
                parent = beam[j]
                if s is None:
                    new_beam.append(parent)
                else:
                    new_beam.append(scorer.child(parent, s, -neg))
                return True
            return False

        for j, parent in enumerate(beam):
            if _is_complete(len(parent.ids), parent.words, budget, graph.n):
                if parent.key not in seen:
                    seen.add(parent.key)
                    heapq.heappush(heap, (-parent.score, parent.key, j, None))
            else:
                scores = scorer.extension_scores(parent)
                for s in np.nonzero(np.isfinite(scores))[0]:
                    key = tuple(sorted(parent.ids + (int(s),)))
                    if key not in seen:
                        seen.add(key)
                        heapq.heappush(heap, (-float(scores[s]), key, j, int(s)))
            _select()
        while len(new_beam) < beam_size and _select():
            pass
        beam = new_beam
        if trace:
            steps.append({"step": step_no, "pool_size": len(seen), "beam_size": len(beam),
                          "best_score": beam[0].score})
    best = min(beam, key=lambda c: (-c.score, c.key))
    return SummarySelection(
        cluster_id=_cluster_id_of(cluster, graph, model),
        selected=best.ids,
        score=best.score,
        method="beam",
        trace=tuple(steps) if trace else None,
    )


def _word_budget_subsets(pool: list[int], word_counts: list[int], max_words: int, cap: int):
    """All subsets of pool that some add-until-complete order can produce.

    A subset qualifies when its word total reaches max_words and removing its
    longest member drops back under the limit (so every member but the last in
    some ordering fits below the budget). Yields sorted id tuples; enumeration
    work is counted against cap.
    """
    visited = 0
    total_pool = sum(word_counts[i] for i in pool)
    if total_pool < max_words:
        # The whole pool cannot reach the limit; the full pool is the only candidate.
        yield tuple(pool)
        return
    # Longest remaining word count from each position onward, for pruning.
    suffix_max = [0] * (len(pool) + 1)
    for idx in range(len(pool) - 1, -1, -1):
        suffix_max[idx] = max(suffix_max[idx + 1], word_counts[pool[idx]])

    def rec(start: int, current: list[int], words: int, longest: int):
        nonlocal visited
        for idx in range(start, len(pool)):
            s = pool[idx]
            visited += 1
            if visited > cap:
                raise ConfigError(
                    f"word-limit enumeration exceeds the safety cap of {cap} subsets; "
                    "use a smaller prefilter size"
                )
            new_words = words + word_counts[s]
            new_longest = max(longest, word_counts[s])
            current.append(s)
            if new_words >= max_words and new_words - new_longest < max_words:
                yield tuple(current)
            # Descendants can still qualify while the total stays within one
            # longest-member length of the limit.
            if new_words < max_words + max(new_longest, suffix_max[idx + 1]):
                yield from rec(idx + 1, current, new_words, new_longest)
            current.pop()

    yield from rec(0, [], 0, 0)


def holistic_exhaustive(
    model: ImportanceModel,
    graph: SimilarityGraph,
    sri_config: SriConfig,
    budget: BudgetSpec,
    prefilter_size: int = DEFAULT_PREFILTER_SIZE,
    *,
    cluster: DocumentCluster | None = None,
    max_candidates: int = DEFAULT_CANDIDATE_CAP,
    trace: bool = False,
) -> SummarySelection:
    """Enumerate every budget-conforming subset of the top sentences by importance.

    Only the prefilter_size most important sentences are considered; the
    enumeration is refused if it would exceed max_candidates subsets.
    """
    n = model.n
    if prefilter_size < 1:
        raise ConfigError(f"prefilter size must be >= 1, got {prefilter_size}")
    p = min(prefilter_size, n)
    order = np.argsort(-model.sentence_scores, kind="stable")
    pool = sorted(int(i) for i in order[:p])

    best_ids: tuple[int, ...] | None = None
    best_score = -math.inf
    count = 0
    if budget.mode == "sentence_count":
        target = min(budget.n_sentences, n)
        if p < target:
            raise ConfigError(f"prefilter size {p} is smaller than the sentence budget {target}")
        n_subsets = math.comb(p, target)
        if n_subsets > max_candidates:
            raise ConfigError(
                f"exhaustive search over C({p},{target})={n_subsets} subsets exceeds the "
                f"safety cap of {max_candidates}; use a smaller prefilter size"
            )
        candidates = itertools.combinations(pool, target)
    else:
        word_counts = _word_counts_for(budget, cluster)
        candidates = _word_budget_subsets(pool, word_counts, budget.max_words, max_candidates)
    for ids in candidates:
        count += 1
        score = sri_score(model, graph, ids, sri_config)
        if score > best_score:  # ties keep the lexicographically first
            best_score = score
            best_ids = ids
    return SummarySelection(
        cluster_id=_cluster_id_of(cluster, graph, model),
        selected=best_ids or (),
        score=best_score if best_ids else 0.0,
        method="exhaustive",
        trace=({"candidates_evaluated": count},) if trace else None,
    )


def oracle_exact(
    model: ImportanceModel,
    graph: SimilarityGraph,
    sri_config: SriConfig,
    budget: BudgetSpec,
    *,
    cluster: DocumentCluster | None = None,
    max_candidates: int = DEFAULT_CANDIDATE_CAP,
) -> SummarySelection:
    """Exact argmax over all budget-conforming subsets, for testing.

    Deliberately straightforward: definitional scoring of each enumerated
    subset, no prefilter, no incremental caching.
    """
    n = model.n
    best_ids: tuple[int, ...] | None = None
    best_score = -math.inf
    if budget.mode == "sentence_count":
        target = min(budget.n_sentences, n)
        n_subsets = math.comb(n, target)
        if n_subsets > max_candidates:
            raise ConfigError(
                f"oracle enumeration of C({n},{target})={n_subsets} subsets exceeds the "
                f"safety cap of {max_candidates}"
            )
        for ids in itertools.combinations(range(n), target):
            imp = subset_importance(model, ids)
            red = redundancy(graph, ids)
            score = imp - sri_config.lambda_ * red
            if score > best_score:
                best_score = score
                best_ids = ids
    else:
        word_counts = _word_counts_for(budget, cluster)
        for ids in _word_budget_subsets(list(range(n)), word_counts, budget.max_words,
                                             max_candidates):
            imp = subset_importance(model, ids)
            red = redundancy(graph, ids)
            score = imp - sri_config.lambda_ * red
            if score > best_score:
                best_score = score
                best_ids = ids
    return SummarySelection(
        cluster_id=_cluster_id_of(cluster, graph, model),
        selected=best_ids or (),
        score=best_score if best_ids else 0.0,
        method="oracle",
    )


def apply_word_limit(selection: SummarySelection, cluster: DocumentCluster, max_words: int) -> str:
    """Concatenate the selected sentences and hard-truncate to max_words words."""
    joined = " ".join(cluster.sentences[i].text for i in selection.selected)
    words = joined.split()
    return " ".join(words[:max_words])


def summary_text(selection: SummarySelection, cluster: DocumentCluster, budget: BudgetSpec) -> str:
    """Final summary text for a selection; truncation applies only to word budgets."""
    if budget.mode == "word_limit":
        return apply_word_limit(selection, cluster, budget.max_words)
    return " ".join(cluster.sentences[i].text for i in selection.selected)
