"""Walk through the core pipeline on a tiny hand-written cluster.

Three documents cover a storm event. Two sentences are near-duplicates; watch
how importance-only ranking picks both while the subset score steers the beam
toward coverage.

Run: python demos/quickstart.py
"""
import numpy as np

from holisum import (
    BudgetSpec,
    ImportanceModel,
    SriConfig,
    build_graph,
    build_tfidf,
    holistic_beam,
    individual_greedy,
    redundancy,
    sentence_importance,
    sri_score,
    subset_importance,
    summary_text,
)
from holisum.corpus import SentenceRecord, DocumentCluster, tokenize


def cluster_from_docs(docs, cluster_id="demo"):
    sentences, gid = [], 0
    for d, doc in enumerate(docs):
        for s, text in enumerate(doc):
            sentences.append(SentenceRecord(cluster_id, d, s, gid, text,
                                            tuple(tokenize(text)), len(text.split())))
            gid += 1
    return DocumentCluster(cluster_id, tuple(sentences), (), len(docs))


docs = [
    ["A powerful storm hit the coast on Monday night.",
     "Thousands of homes lost electricity across the region."],
    ["A powerful storm struck the coast Monday night.",
     "Emergency crews opened shelters for displaced families."],
    ["Officials estimate repairs will take several weeks.",
     "The storm was the strongest in a decade."],
]

cluster = cluster_from_docs(docs)
print(f"cluster has {len(cluster)} sentences from {cluster.n_documents} documents\n")

# 1. Features and the thresholded similarity graph.
tfidf = build_tfidf(cluster)
graph = build_graph(cluster, tfidf, alpha=1.0, theta=0.1)
print("edge matrix (thresholded similarities):")
print(np.round(graph.edges, 3), "\n")

# 2. Importance = degree centrality; note the near-duplicate pair 0 and 2.
model = ImportanceModel.from_graph(graph)
for i, sent in enumerate(cluster.sentences):
    print(f"  importance[{i}] = {sentence_importance(model, i):.3f}  {sent.text}")
print()

# 3. Subset scoring: importance minus weighted redundancy.
config = SriConfig(lambda_=0.5)
for subset in [(0, 2), (0, 3)]:
    print(f"  subset {subset}: importance={subset_importance(model, subset):.3f} "
          f"redundancy={redundancy(graph, subset):.3f} "
          f"score={sri_score(model, graph, subset, config):.3f}")
print()

# 4. Selection: importance-only ranking vs redundancy-aware beam search.
budget = BudgetSpec.sentence_count(2)
ranked = individual_greedy(model, budget, cluster=cluster, graph=graph, sri_config=config)
beam = holistic_beam(model, graph, config, budget, beam_size=4, cluster=cluster)

print("importance-only pick:", ranked.selected)
print("  ", summary_text(ranked, cluster, budget))
print("beam pick:           ", beam.selected)
print("  ", summary_text(beam, cluster, budget))
