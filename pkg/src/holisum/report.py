"""Evaluation reports: per-cluster and corpus-mean ROUGE plus diversity ratios.

Reports serialize to JSON, an aligned plain-text table, and a CSV of the
unique n-gram ratios for plotting.
"""
from __future__ import annotations

import io
import logging
from dataclasses import dataclass

from .corpus import DocumentCluster, tokenize
from .rouge import RougeConfig, Score, prepare_text, rouge_l, rouge_n, rouge_su4, uniq_ngram_ratio

logger = logging.getLogger(__name__)

DIVERSITY_ORDERS = (1, 2, 3, 4)


@dataclass(frozen=True)
class ClusterEval:
    cluster_id: str
    rouge: dict[str, Score] | None  # None when the cluster has no references
    diversity: dict[int, float]


@dataclass(frozen=True)
class EvalReport:
    clusters: list[ClusterEval]
    mean_rouge: dict[str, Score] | None
    mean_diversity: dict[int, float]
    config: RougeConfig


def evaluate_summary(summary: str, references: tuple[str, ...],
                     config: RougeConfig) -> tuple[dict[str, Score] | None, dict[int, float]]:
    """Score one summary against its references; diversity is always computed.

    Diversity ratios use the plain summary tokens (no stemming); a configured
    word limit applies to them just as it does to the overlap metrics.
    """
    limited = summary
    if config.word_limit is not None:
        limited = " ".join(summary.split()[: config.word_limit])
    plain_tokens = tokenize(limited)
    diversity = {n: uniq_ngram_ratio(plain_tokens, n) for n in DIVERSITY_ORDERS}
    if not references:
        return None, diversity

    cand_sents = prepare_text(summary, config)
    cand_flat = [t for sent in cand_sents for t in sent]
    ref_sents = [prepare_text(r, config) for r in references]
    ref_flats = [[t for sent in sents for t in sent] for sents in ref_sents]

    scores: dict[str, Score] = {}
    for variant in config.variants:
        if variant == "r1":
            scores[variant] = rouge_n(cand_flat, ref_flats, 1, config.multi_ref)
        elif variant == "r2":
            scores[variant] = rouge_n(cand_flat, ref_flats, 2, config.multi_ref)
        elif variant == "rl":
            scores[variant] = rouge_l(cand_flat, ref_flats, "sentence", config.multi_ref)
        elif variant == "rlsum":
            scores[variant] = rouge_l(cand_sents, ref_sents, "summary_level", config.multi_ref)
        elif variant == "rsu4":
            scores[variant] = rouge_su4(cand_flat, ref_flats, config.multi_ref)
    return scores, diversity


def build_report(items: list[tuple[DocumentCluster, str]], config: RougeConfig) -> EvalReport:
    """Evaluate (cluster, summary text) pairs and aggregate corpus means."""
    clusters = []
    for cluster, summary in items:
        if not cluster.references:
            logger.warning("cluster %s has no references; reporting diversity only",
                           cluster.cluster_id)
        scores, diversity = evaluate_summary(summary, cluster.references, config)
        clusters.append(ClusterEval(cluster.cluster_id, scores, diversity))

    scored = [c for c in clusters if c.rouge is not None]
    mean_rouge = None
    if scored:
        mean_rouge = {}
        for variant in config.variants:
            per = [c.rouge[variant] for c in scored]
            k = len(per)
            mean_rouge[variant] = Score(
                sum(s.precision for s in per) / k,
                sum(s.recall for s in per) / k,
                sum(s.f1 for s in per) / k,
            )
    mean_diversity = {
        n: sum(c.diversity[n] for c in clusters) / len(clusters) for n in DIVERSITY_ORDERS
    } if clusters else {}
    return EvalReport(clusters, mean_rouge, mean_diversity, config)


def _score_dict(score: Score) -> dict:
    return {"precision": score.precision, "recall": score.recall, "f1": score.f1}


def report_to_dict(report: EvalReport) -> dict:
    return {
        "config": {
            "variants": list(report.config.variants),
            "stemming": report.config.stemming,
            "word_limit": report.config.word_limit,
            "multi_ref": report.config.multi_ref,
        },
        "clusters": [
            {
                "id": c.cluster_id,
                "rouge": {v: _score_dict(s) for v, s in c.rouge.items()} if c.rouge else None,
                "uniq_ngram_ratio": {str(n): c.diversity[n] for n in DIVERSITY_ORDERS},
            }
            for c in report.clusters
        ],
        "mean": {
            "rouge": {v: _score_dict(s) for v, s in report.mean_rouge.items()}
            if report.mean_rouge else None,
            "uniq_ngram_ratio": {str(n): report.mean_diversity.get(n) for n in DIVERSITY_ORDERS},
        },
    }


def format_table(report: EvalReport) -> str:
    """Corpus means as an aligned plain-text table."""
    out = io.StringIO()
    if report.mean_rouge:
        out.write(f"{'variant':<8}{'precision':>12}{'recall':>12}{'f1':>12}\n")
        for variant in report.config.variants:
            s = report.mean_rouge[variant]
            out.write(f"{variant:<8}{s.precision:>12.4f}{s.recall:>12.4f}{s.f1:>12.4f}\n")
    else:
        out.write("no references: rouge not computed\n")
    out.write(f"\n{'uniq n-gram':<12}{'ratio':>8}\n")
    for n in DIVERSITY_ORDERS:
        out.write(f"{n:<12}{report.mean_diversity.get(n, float('nan')):>8.4f}\n")
    out.write(f"\nclusters evaluated: {len(report.clusters)}\n")
    return out.getvalue()


def diversity_csv(report: EvalReport) -> str:
    """Per-cluster and mean unique n-gram ratios as CSV."""
    lines = ["cluster_id,n,ratio"]
    for c in report.clusters:
        for n in DIVERSITY_ORDERS:
            lines.append(f"{c.cluster_id},{n},{c.diversity[n]:.6f}")
    for n in DIVERSITY_ORDERS:
        lines.append(f"MEAN,{n},{report.mean_diversity.get(n, float('nan')):.6f}")
    return "\n".join(lines) + "\n"
