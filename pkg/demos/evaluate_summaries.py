"""Score summaries against references with the ROUGE family and diversity ratios.

Builds a two-cluster corpus, summarizes it through the CLI entry point, and
prints the evaluation report as a table plus the diversity CSV.

Run: python demos/evaluate_summaries.py
"""
import json
import tempfile
from pathlib import Path

from holisum.cli import main
from holisum.report import build_report, diversity_csv, format_table
from holisum.rouge import RougeConfig
from holisum.corpus import load_clusters

corpus = [
    {"id": "flood", "documents": [
        ["Heavy rain flooded the old town on Friday.",
         "Heavy rain flooded the old town center Friday.",
         "Residents were moved to higher ground overnight.",
         "The river crested two meters above normal."],
        ["City crews pumped water from basements all weekend.",
         "Schools stayed closed through Tuesday."]],
     "references": ["Heavy rain flooded the old town and residents moved to higher "
                    "ground while crews pumped water and schools stayed closed."]},
    {"id": "launch", "documents": [
        ["The probe lifted off at dawn carrying twelve instruments.",
         "Engineers cheered as telemetry confirmed a stable orbit.",
         "The probe lifted off at dawn with a dozen instruments aboard."],
        ["The mission will map the far side for two years."]],
     "references": ["The probe lifted off at dawn, reached a stable orbit, and will "
                    "map the far side for two years."]},
]

with tempfile.TemporaryDirectory() as tmp:
    clusters_path = Path(tmp) / "clusters.jsonl"
    clusters_path.write_text("\n".join(json.dumps(c) for c in corpus) + "\n")
    selections_path = Path(tmp) / "selections.jsonl"

    main(["summarize", "--clusters", str(clusters_path), "--sentences", "3",
          "--lambda", "0.25", "--output", str(selections_path)])

    selections = [json.loads(line) for line in selections_path.read_text().splitlines()]
    for record in selections:
        print(f"[{record['id']}] score={record['sri_score']:.4f}")
        print("   ", record["summary_text"], "\n")

    clusters = {c.cluster_id: c for c in load_clusters(clusters_path)}
    items = [(clusters[r["id"]], r["summary_text"]) for r in selections]
    report = build_report(items, RougeConfig())
    print(format_table(report))
    print(diversity_csv(report))
