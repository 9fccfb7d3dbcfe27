"""Command-line driver: summarize, evaluate, and sweep pipelines.

Configuration precedence is CLI flags > config file > dataset preset >
built-in defaults. Exit codes: 0 success, 1 input/data error, 2 configuration
error.
"""
from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .corpus import DocumentCluster, load_clusters
from .errors import ConfigError, InputError
from .importance import ImportanceIndex, ImportanceModel
from .inference import (
    DEFAULT_PREFILTER_SIZE,
    BudgetSpec,
    SummarySelection,
    holistic_beam,
    holistic_exhaustive,
    holistic_greedy,
    individual_greedy,
    summary_text,
)
from .report import build_report, diversity_csv, format_table, report_to_dict
from .rouge import VARIANTS, RougeConfig
from .similarity import EmbeddingIndex, EmbeddingMatrix, build_graph, build_tfidf
from .sri import SriConfig

logger = logging.getLogger(__name__)

METHODS = ("individual_greedy", "holistic_greedy", "beam", "exhaustive")

DEFAULTS = {
    "method": "beam",
    "alpha": 1.0,  # pure TF-IDF unless embeddings are configured (presets override)
    "theta": 0.0,
    "lambda_": 2.0 ** -4,
    "beam_size": 4,
    "prefilter_size": DEFAULT_PREFILTER_SIZE,
    "jobs": 1,
}

# Tuned per-dataset parameter sets.
PRESETS = {
    "duc": {"alpha": 0.9, "theta": 0.0, "lambda_": 2.0 ** -13, "beam_size": 4,
            "word_limit": 100},
    "tac": {"alpha": 0.9, "theta": 0.0, "lambda_": 2.0 ** -7, "beam_size": 4,
            "word_limit": 100},
    "multinews": {"alpha": 0.9, "theta": 0.1, "lambda_": 2.0 ** -4, "beam_size": 4,
                  "sentences": 10},
    "wikisum": {"alpha": 0.8, "theta": 0.1, "lambda_": 2.0 ** -6, "beam_size": 3,
                "sentences": 5},
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved parameters for one summarize run."""

    clusters_path: str
    method: str
    alpha: float
    theta: float
    lambda_: float
    beam_size: int
    prefilter_size: int
    budget: BudgetSpec
    embeddings_path: str | None = None
    importance_path: str | None = None
    output_path: str | None = None
    jobs: int = 1
    skip_errors: bool = False
    timings: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must be in [0, 1], got {self.alpha}")
        if not 0.0 <= self.theta <= 1.0:
            raise ConfigError(f"theta must be in [0, 1], got {self.theta}")
        if self.lambda_ < 0:
            raise ConfigError(f"lambda must be >= 0, got {self.lambda_}")
        if self.beam_size < 1:
            raise ConfigError(f"beam size must be >= 1, got {self.beam_size}")
        if self.prefilter_size < 1:
            raise ConfigError(f"prefilter size must be >= 1, got {self.prefilter_size}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")


def _merge_settings(args: argparse.Namespace) -> dict:
    """Apply the precedence chain: defaults < preset < config file < CLI flags."""
    settings = dict(DEFAULTS)
    if args.preset:
        settings.update(PRESETS[args.preset])
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_settings = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(file_settings, dict):
            raise ConfigError("config file must hold a JSON object")
        known = {"method", "alpha", "theta", "lambda", "beam_size", "prefilter",
                 "sentences", "word_limit", "clusters", "embeddings", "importance",
                 "output", "jobs"}
        unknown = set(file_settings) - known
        if unknown:
            raise ConfigError(f"unknown config file keys: {sorted(unknown)}")
        renames = {"lambda": "lambda_", "prefilter": "prefilter_size",
                   "clusters": "clusters_path", "embeddings": "embeddings_path",
                   "importance": "importance_path", "output": "output_path"}
        settings.update({renames.get(k, k): v for k, v in file_settings.items()})
    overrides = {
        "method": args.method.replace("-", "_") if args.method else None,
        "alpha": args.alpha,
        "theta": args.theta,
        "lambda_": getattr(args, "lambda_", None),
        "beam_size": args.beam_size,
        "prefilter_size": args.prefilter,
        "sentences": args.sentences,
        "word_limit": args.word_limit,
        "clusters_path": args.clusters,
        "embeddings_path": args.embeddings,
        "importance_path": args.importance,
        "output_path": args.output,
        "jobs": args.jobs,
    }
    settings.update({k: v for k, v in overrides.items() if v is not None})
    # A sentence budget given later in the chain displaces a preset word limit
    # and vice versa.
    if args.sentences is not None:
        settings.pop("word_limit", None)
    if args.word_limit is not None:
        settings.pop("sentences", None)
    return settings


def _build_run_config(args: argparse.Namespace) -> RunConfig:
    settings = _merge_settings(args)
    if not settings.get("clusters_path"):
        raise ConfigError("--clusters is required")
    sentences = settings.pop("sentences", None)
    word_limit = settings.pop("word_limit", None)
    if (sentences is None) == (word_limit is None):
        raise ConfigError("exactly one of --sentences or --word-limit is required "
                          "(directly or via preset/config file)")
    budget = (BudgetSpec.sentence_count(sentences) if sentences is not None
              else BudgetSpec.word_limit(word_limit))
    return RunConfig(
        clusters_path=settings["clusters_path"],
        method=settings["method"],
        alpha=float(settings["alpha"]),
        theta=float(settings["theta"]),
        lambda_=float(settings["lambda_"]),
        beam_size=int(settings["beam_size"]),
        prefilter_size=int(settings["prefilter_size"]),
        budget=budget,
        embeddings_path=settings.get("embeddings_path"),
        importance_path=settings.get("importance_path"),
        output_path=settings.get("output_path"),
        jobs=int(settings.get("jobs", 1)),
        skip_errors=bool(getattr(args, "skip_errors", False)),
        timings=bool(getattr(args, "timings", False)),
    )


def run_selection(
    cluster: DocumentCluster,
    config: RunConfig,
    embeddings: EmbeddingMatrix | None = None,
    external_scores: list[float] | None = None,
) -> SummarySelection:
    """Full single-cluster pipeline: features, graph, importance, inference."""
    tfidf = build_tfidf(cluster)
    graph = build_graph(cluster, tfidf, embeddings, alpha=config.alpha, theta=config.theta)
    if external_scores is not None:
        model = ImportanceModel.from_scores(cluster.cluster_id, external_scores)
        if model.n != len(cluster.sentences):
            raise InputError(
                f"cluster {cluster.cluster_id}: importance scores {model.n} != "
                f"sentences {len(cluster.sentences)}"
            )
    else:
        model = ImportanceModel.from_graph(graph)
    sri_config = SriConfig(lambda_=config.lambda_)
    if config.method == "individual_greedy":
        return individual_greedy(model, config.budget, cluster=cluster, graph=graph,
                                 sri_config=sri_config)
    if config.method == "holistic_greedy":
        return holistic_greedy(model, graph, sri_config, config.budget, cluster=cluster)
    if config.method == "beam":
        return holistic_beam(model, graph, sri_config, config.budget, config.beam_size,
                             cluster=cluster)
    return holistic_exhaustive(model, graph, sri_config, config.budget,
                               config.prefilter_size, cluster=cluster)


def _summarize_one(payload) -> dict:
    cluster, config, embeddings, scores = payload
    start = time.perf_counter()
    selection = run_selection(cluster, config, embeddings, scores)
    text = summary_text(selection, cluster, config.budget)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    record = {
        "id": cluster.cluster_id,
        "selected_ids": list(selection.selected),
        "summary_text": text,
        "sri_score": selection.score,
        "method": selection.method,
    }
    if config.timings:
        record["elapsed_ms"] = round(elapsed_ms, 3)
    return record


def cmd_summarize(config: RunConfig) -> int:
    clusters = load_clusters(config.clusters_path)
    emb_index = EmbeddingIndex(config.embeddings_path) if config.embeddings_path else None
    imp_index = ImportanceIndex(config.importance_path) if config.importance_path else None

    payloads = []
    for cluster in clusters:
        try:
            embeddings = emb_index.get(cluster) if emb_index else None
            scores = list(imp_index.get(cluster).sentence_scores) if imp_index else None
        except InputError:
            if not config.skip_errors:
                raise
            logger.exception("skipping cluster %s", cluster.cluster_id)
            continue
        payloads.append((cluster, config, embeddings, scores))

    records: list[dict] = []
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            futures = [(payload[0].cluster_id, pool.submit(_summarize_one, payload))
                       for payload in payloads]
            for cluster_id, future in futures:  # input order, not completion order
                try:
                    records.append(future.result())
                except (InputError, ConfigError):
                    if not config.skip_errors:
                        raise
                    logger.exception("skipping cluster %s", cluster_id)
    else:
        for payload in payloads:
            try:
                records.append(_summarize_one(payload))
            except (InputError, ConfigError):
                if not config.skip_errors:
                    raise
                logger.exception("skipping cluster %s", payload[0].cluster_id)

    lines = "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records)
    if config.output_path and config.output_path != "-":
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(lines)
    else:
        sys.stdout.write(lines)
    return 0


def read_selections(path: str) -> list[dict]:
    records = []
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read selections file: {exc}") from exc
    with fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}: line {line_no}: malformed JSON: {exc.msg}") from exc
            if "id" not in obj or "summary_text" not in obj:
                raise InputError(f"{path}: line {line_no}: selection needs 'id' and 'summary_text'")
            records.append(obj)
    ids = [r["id"] for r in records]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise InputError(f"{path}: duplicate selection ids: {dupes}")
    return records


def cmd_evaluate(selections_path: str, clusters_path: str, rouge_config: RougeConfig,
                 output_path: str | None = None, table: bool = False,
                 diversity_csv_path: str | None = None) -> int:
    clusters = {c.cluster_id: c for c in load_clusters(clusters_path)}
    selections = read_selections(selections_path)
    selected_ids = [s["id"] for s in selections]
    orphan_selections = [i for i in selected_ids if i not in clusters]
    orphan_clusters = [i for i in clusters if i not in set(selected_ids)]
    if orphan_selections or orphan_clusters:
        raise InputError(
            "selections and clusters do not align by id; "
            f"selections without clusters: {orphan_selections}, "
            f"clusters without selections: {orphan_clusters}"
        )
    items = [(clusters[s["id"]], s["summary_text"]) for s in selections]
    report = build_report(items, rouge_config)
    payload = json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"
    if output_path and output_path != "-":
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    if table:
        sys.stdout.write(format_table(report))
    if diversity_csv_path:
        with open(diversity_csv_path, "w", encoding="utf-8") as fh:
            fh.write(diversity_csv(report))
    return 0


def _parse_grid(spec: str | None, cast, fallback) -> list:
    if spec is None:
        return [fallback]
    values = [cast(v.strip()) for v in spec.split(",") if v.strip()]
    if not values:
        raise ConfigError(f"empty grid: {spec!r}")
    return values


SWEEP_COLUMNS = ("method", "alpha", "theta", "lambda", "beam_size",
                 "r1_f", "r2_f", "rl_f", "rlsum_f", "rsu4_f",
                 "uniq1", "uniq2", "uniq3", "uniq4", "runtime_ms")


def cmd_sweep(base: RunConfig, method_grid: list[str], alpha_grid: list[float],
              theta_grid: list[float], lambda_grid: list[float], beam_grid: list[int],
              rouge_config: RougeConfig, output_path: str | None = None) -> int:
    clusters = load_clusters(base.clusters_path)
    missing = [c.cluster_id for c in clusters if not c.references]
    if missing:
        raise InputError(f"sweep requires references for every cluster; missing: {missing}")
    emb_index = EmbeddingIndex(base.embeddings_path) if base.embeddings_path else None
    imp_index = ImportanceIndex(base.importance_path) if base.importance_path else None
    embeddings = [emb_index.get(c) if emb_index else None for c in clusters]
    ext_scores = [list(imp_index.get(c).sentence_scores) if imp_index else None for c in clusters]

    rows = [",".join(SWEEP_COLUMNS)]
    for method, alpha, theta, lam, beam in itertools.product(
            method_grid, alpha_grid, theta_grid, lambda_grid, beam_grid):
        config = replace(base, method=method, alpha=alpha, theta=theta, lambda_=lam,
                         beam_size=beam, timings=False)
        items = []
        started = time.perf_counter()
        for cluster, emb, scores in zip(clusters, embeddings, ext_scores):
            selection = run_selection(cluster, config, emb, scores)
            items.append((cluster, summary_text(selection, cluster, config.budget)))
        runtime_ms = (time.perf_counter() - started) * 1000.0
        report = build_report(items, rouge_config)
        mr = report.mean_rouge or {}
        row = [method, f"{alpha:g}", f"{theta:g}", f"{lam:g}", str(beam)]
        for variant in ("r1", "r2", "rl", "rlsum", "rsu4"):
            score = mr.get(variant)
            row.append(f"{score.f1:.6f}" if score else "")
        for n in (1, 2, 3, 4):
            row.append(f"{report.mean_diversity[n]:.6f}")
        row.append(f"{runtime_ms:.3f}")
        rows.append(",".join(row))
    csv_text = "\n".join(rows) + "\n"
    if output_path and output_path != "-":
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    return 0


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--clusters", help="cluster JSONL file")
    parser.add_argument("--embeddings", help="embedding JSONL file (optional)")
    parser.add_argument("--importance", help="external importance JSONL file (optional)")
    parser.add_argument("--method", choices=["individual-greedy", "holistic-greedy",
                                             "beam", "exhaustive"])
    parser.add_argument("--alpha", type=float, help="TF-IDF weight in the similarity blend")
    parser.add_argument("--theta", type=float, help="edge threshold interpolation in [0, 1]")
    parser.add_argument("--lambda", dest="lambda_", type=float,
                        help="redundancy weight in the subset score")
    parser.add_argument("--beam-size", type=int)
    parser.add_argument("--prefilter", type=int, help="exhaustive-search candidate pool size")
    parser.add_argument("--sentences", type=int, help="summary budget in sentences")
    parser.add_argument("--word-limit", type=int, help="summary budget in words")
    parser.add_argument("--preset", choices=sorted(PRESETS))
    parser.add_argument("--config", help="JSON config file (between preset and flags)")
    parser.add_argument("--jobs", type=int, help="clusters processed in parallel")
    parser.add_argument("--output", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="holisum",
                                     description="Holistic multi-document extractive summarization")
    parser.add_argument("--verbose", action="store_true", help="log at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sum = sub.add_parser("summarize", help="select summary sentences per cluster")
    _add_common_flags(p_sum)
    p_sum.add_argument("--skip-errors", action="store_true",
                       help="skip clusters that fail instead of aborting")
    p_sum.add_argument("--timings", action="store_true",
                       help="include per-cluster elapsed_ms in the output "
                            "(off by default to keep runs byte-identical)")

    p_eval = sub.add_parser("evaluate", help="score selections against references")
    p_eval.add_argument("--selections", required=True, help="output of summarize")
    p_eval.add_argument("--clusters", required=True, help="cluster JSONL file")
    p_eval.add_argument("--variants", default=",".join(VARIANTS),
                        help=f"comma-separated subset of {','.join(VARIANTS)}")
    p_eval.add_argument("--no-stemming", action="store_true")
    p_eval.add_argument("--word-limit", type=int, help="evaluate only the first N words")
    p_eval.add_argument("--multi-ref", choices=["max", "average"], default="max")
    p_eval.add_argument("--table", action="store_true", help="also print an aligned table")
    p_eval.add_argument("--diversity-csv", help="write unique n-gram ratios as CSV")
    p_eval.add_argument("--output", help="report JSON path (default stdout)")

    p_sweep = sub.add_parser("sweep", help="grid of configs -> CSV of mean scores")
    _add_common_flags(p_sweep)
    p_sweep.add_argument("--method-grid", help="comma-separated methods")
    p_sweep.add_argument("--alpha-grid", help="comma-separated alpha values")
    p_sweep.add_argument("--theta-grid", help="comma-separated theta values")
    p_sweep.add_argument("--lambda-grid", help="comma-separated lambda values")
    p_sweep.add_argument("--beam-grid", help="comma-separated beam sizes")
    p_sweep.add_argument("--no-stemming", action="store_true")
    p_sweep.add_argument("--multi-ref", choices=["max", "average"], default="max")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "summarize":
            return cmd_summarize(_build_run_config(args))
        if args.command == "evaluate":
            variants = tuple(v.strip() for v in args.variants.split(",") if v.strip())
            rouge_config = RougeConfig(variants=variants, stemming=not args.no_stemming,
                                       word_limit=args.word_limit, multi_ref=args.multi_ref)
            return cmd_evaluate(args.selections, args.clusters, rouge_config,
                                output_path=args.output, table=args.table,
                                diversity_csv_path=args.diversity_csv)
        if args.command == "sweep":
            base = _build_run_config(args)
            rouge_config = RougeConfig(stemming=not args.no_stemming, multi_ref=args.multi_ref)
            return cmd_sweep(
                base,
                method_grid=[m.replace("-", "_") for m in
                             _parse_grid(args.method_grid, str, base.method)],
                alpha_grid=_parse_grid(args.alpha_grid, float, base.alpha),
                theta_grid=_parse_grid(args.theta_grid, float, base.theta),
                lambda_grid=_parse_grid(args.lambda_grid, float, base.lambda_),
                beam_grid=_parse_grid(args.beam_grid, int, base.beam_size),
                rouge_config=rouge_config,
                output_path=args.output,
            )
        raise ConfigError(f"unknown command {args.command!r}")
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
