"""Holistic multi-document extractive summarization.

Summaries are selected as whole sentence subsets: a subset scores its
importance (graph centrality mass or external scores) minus a weighted
redundancy, and greedy/beam/exhaustive strategies search the subset space.
Includes the evaluation stack (ROUGE variants, unique n-gram ratios).
"""

from .corpus import DocumentCluster, SentenceRecord, load_clusters, split_sentences, tokenize
from .errors import ConfigError, HolisumError, InputError
from .importance import (
    ImportanceModel,
    load_external_importance,
    sentence_importance,
    subset_importance,
)
from .inference import (
    BudgetSpec,
    SummarySelection,
    apply_word_limit,
    holistic_beam,
    holistic_exhaustive,
    holistic_greedy,
    individual_greedy,
    oracle_exact,
    summary_text,
)
from .report import EvalReport, build_report, evaluate_summary
from .rouge import RougeConfig, Score, rouge_l, rouge_n, rouge_su4, uniq_ngram_ratio
from .similarity import (
    EmbeddingMatrix,
    SimilarityGraph,
    TfidfVector,
    build_graph,
    build_tfidf,
    combined_similarity,
    load_embeddings,
    threshold_edges,
)
from .sri import SriConfig, redundancy, sri_score

__version__ = "0.1.0"

__all__ = [
    "BudgetSpec",
    "ConfigError",
    "DocumentCluster",
    "EmbeddingMatrix",
    "EvalReport",
    "HolisumError",
    "ImportanceModel",
    "InputError",
    "RougeConfig",
    "Score",
    "SentenceRecord",
    "SimilarityGraph",
    "SriConfig",
    "SummarySelection",
    "TfidfVector",
    "apply_word_limit",
    "build_graph",
    "build_report",
    "build_tfidf",
    "combined_similarity",
    "evaluate_summary",
    "holistic_beam",
    "holistic_exhaustive",
    "holistic_greedy",
    "individual_greedy",
    "load_clusters",
    "load_embeddings",
    "load_external_importance",
    "oracle_exact",
    "redundancy",
    "rouge_l",
    "rouge_n",
    "rouge_su4",
    "sentence_importance",
    "split_sentences",
    "sri_score",
    "subset_importance",
    "summary_text",
    "threshold_edges",
    "tokenize",
    "uniq_ngram_ratio",
]
