"""Overlap metrics between candidate and reference summaries.

Covers n-gram overlap (R-1/R-2), longest-common-subsequence variants (R-L and
the summary-level R-Lsum with union-LCS), skip-bigram-plus-unigram overlap
(R-SU4), and the unique n-gram diversity ratio. All functions work on token
lists; preprocessing (lowercasing, optional Porter stemming, word limits)
happens in :func:`prepare_text`.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import porter
from .corpus import split_sentences, tokenize
from .errors import ConfigError

VARIANTS = ("r1", "r2", "rl", "rlsum", "rsu4")
SKIP_DISTANCE = 4


@dataclass(frozen=True)
class Score:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class RougeConfig:
    """Which variants to compute and how candidate/reference text is prepared."""

    variants: tuple[str, ...] = VARIANTS
    stemming: bool = True
    word_limit: int | None = None
    multi_ref: str = "max"

    def __post_init__(self):
        if not self.variants:
            raise ConfigError("at least one rouge variant is required")
        unknown = [v for v in self.variants if v not in VARIANTS]
        if unknown:
            raise ConfigError(f"unknown rouge variants: {unknown}")
        if self.multi_ref not in ("max", "average"):
            raise ConfigError(f"multi_ref must be 'max' or 'average', got {self.multi_ref!r}")
        if self.word_limit is not None and self.word_limit < 1:
            raise ConfigError("word_limit must be positive")


def prepare_text(text: str, config: RougeConfig) -> list[list[str]]:
    """Tokenize a summary into per-sentence token lists per the config.

    The word limit truncates the raw text before sentence splitting, matching
    summary-length conventions; stemming applies per token.
    """
    if config.word_limit is not None:
        text = " ".join(text.split()[: config.word_limit])
    result = []
    for sentence in split_sentences(text):
        tokens = tokenize(sentence)
        if config.stemming:
            tokens = porter.stem_tokens(tokens)
        if tokens:
            result.append(tokens)
    return result


def _prf(overlap: float, cand_total: float, ref_total: float) -> Score:
    precision = overlap / cand_total if cand_total > 0 else 0.0
    recall = overlap / ref_total if ref_total > 0 else 0.0
    if precision == 0.0 or recall == 0.0:
        return Score(precision, recall, 0.0)
    # P and R share the overlap numerator, so the harmonic mean reduces to a
    # single exact division: 2pr/(p+r) = 2*overlap/(cand_total+ref_total).
    return Score(precision, recall, 2 * overlap / (cand_total + ref_total))


def _combine(per_ref: list[Score], multi_ref: str) -> Score:
    if not per_ref:
        return Score(0.0, 0.0, 0.0)
    if multi_ref == "max":
        return max(per_ref, key=lambda s: s.f1)  # ties keep the first reference
    k = len(per_ref)
    return Score(
        sum(s.precision for s in per_ref) / k,
        sum(s.recall for s in per_ref) / k,
        sum(s.f1 for s in per_ref) / k,
    )


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _clipped_overlap(a: Counter, b: Counter) -> int:
    return sum(min(count, b[g]) for g, count in a.items() if g in b)


def rouge_n(candidate: Sequence[str], references: Iterable[Sequence[str]], n: int,
            multi_ref: str = "max") -> Score:
    """Clipped n-gram overlap between a candidate and one or more references."""
    cand = _ngrams(candidate, n)
    cand_total = sum(cand.values())
    scores = []
    for ref in references:
        ref_counts = _ngrams(ref, n)
        overlap = _clipped_overlap(cand, ref_counts)
        scores.append(_prf(overlap, cand_total, sum(ref_counts.values())))
    return _combine(scores, multi_ref)


def _lcs_table(a: Sequence[str], b: Sequence[str]) -> list[list[int]]:
    table = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(1, len(a) + 1):
        row, prev = table[i], table[i - 1]
        ai = a[i - 1]
        for j in range(1, len(b) + 1):
            if ai == b[j - 1]:
                row[j] = prev[j - 1] + 1
            else:
                row[j] = prev[j] if prev[j] >= row[j - 1] else row[j - 1]
    return table


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if not a or not b:
        return 0
    return _lcs_table(a, b)[len(a)][len(b)]


def _lcs_hit_positions(ref: Sequence[str], cand: Sequence[str]) -> set[int]:
    """Positions of ref tokens used by one longest common subsequence with cand."""
    if not ref or not cand:
        return set()
    table = _lcs_table(ref, cand)
    hits = set()
    i, j = len(ref), len(cand)
    while i > 0 and j > 0:
        if ref[i - 1] == cand[j - 1]:
            hits.add(i - 1)
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    return hits


def rouge_l(candidate, references, mode: str = "sentence", multi_ref: str = "max") -> Score:
    """LCS-based overlap.

    ``sentence`` mode treats each text as one token sequence. ``summary_level``
    mode expects per-sentence token lists and scores each reference sentence by
    the union of its LCS hits against all candidate sentences.
    """
    if mode == "sentence":
        cand_tokens: Sequence[str] = candidate
        scores = []
        for ref in references:
            lcs = lcs_length(cand_tokens, ref)
            scores.append(_prf(lcs, len(cand_tokens), len(ref)))
        return _combine(scores, multi_ref)
    if mode != "summary_level":
        raise ConfigError(f"unknown rouge_l mode: {mode!r}")
    cand_sents: list[Sequence[str]] = list(candidate)
    cand_total = sum(len(s) for s in cand_sents)
    scores = []
    for ref_sents in references:
        ref_total = sum(len(s) for s in ref_sents)
        union_hits = 0
        for ref_sent in ref_sents:
            hits: set[int] = set()
            for cand_sent in cand_sents:
                hits |= _lcs_hit_positions(ref_sent, cand_sent)
            union_hits += len(hits)
        scores.append(_prf(union_hits, cand_total, ref_total))
    return _combine(scores, multi_ref)


def _skip_bigrams(tokens: Sequence[str], max_distance: int = SKIP_DISTANCE) -> Counter:
    counts: Counter = Counter()
    for i in range(len(tokens)):
        for j in range(i + 1, min(i + max_distance + 1, len(tokens))):
            counts[(tokens[i], tokens[j])] += 1
    return counts


def rouge_su4(candidate: Sequence[str], references: Iterable[Sequence[str]],
              multi_ref: str = "max") -> Score:
    """Skip-bigrams (within distance 4) plus unigrams, with clipped counting."""
    cand_skip = _skip_bigrams(candidate)
    cand_uni = Counter(candidate)
    cand_total = sum(cand_skip.values()) + sum(cand_uni.values())
    scores = []
    for ref in references:
        ref_skip = _skip_bigrams(ref)
        ref_uni = Counter(ref)
        overlap = _clipped_overlap(cand_skip, ref_skip) + _clipped_overlap(cand_uni, ref_uni)
        ref_total = sum(ref_skip.values()) + sum(ref_uni.values())
        scores.append(_prf(overlap, cand_total, ref_total))
    return _combine(scores, multi_ref)


def uniq_ngram_ratio(tokens: Sequence[str], n: int) -> float:
    """Distinct n-grams over total n-grams; defined as 1.0 for short token lists."""
    total = len(tokens) - n + 1
    if total < 1:
        return 1.0
    grams = _ngrams(tokens, n)
    return len(grams) / total
