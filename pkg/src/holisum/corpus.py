"""Document clusters: loading, validation, sentence segmentation and tokenization.

A cluster is a set of documents on one topic, flattened into a single
document-major sentence list. Each sentence gets a ``global_id`` giving its
position in that flattened order; every downstream structure (similarity
graphs, importance scores, embedding rows) is aligned to these ids.
"""
from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError

logger = logging.getLogger(__name__)

_TOKEN_SPLIT = re.compile(r"[\W_]+", re.UNICODE)
_TERMINATORS = ".!?"

# Trailing words before a '.' that never end a sentence.
ABBREVIATIONS = ("Mr", "Mrs", "Dr", "U.S", "Inc", "St", "No", "vs")

_TRAILING_WORD = re.compile(r"[A-Za-z][A-Za-z.]*$")
_SPLIT_FOLLOWER = re.compile(r"\s+[A-Z]")


@dataclass(frozen=True)
class SentenceRecord:
    """One sentence of a cluster, with its flattened position and token form."""

    cluster_id: str
    doc_index: int
    sent_index: int
    global_id: int
    text: str
    tokens: tuple[str, ...]
    word_count: int


@dataclass(frozen=True)
class DocumentCluster:
    """All sentences of one document cluster plus its reference summaries."""

    cluster_id: str
    sentences: tuple[SentenceRecord, ...]
    references: tuple[str, ...]
    n_documents: int

    def __len__(self) -> int:
        return len(self.sentences)

    def word_counts(self) -> list[int]:
        return [s.word_count for s in self.sentences]


def tokenize(text: str) -> list[str]:
    """Lowercase and split on runs of non-alphanumeric characters.

    Digits are kept, empty fragments dropped. Deterministic: the same text
    always produces the same token list.
    """
    return [t for t in _TOKEN_SPLIT.split(text.lower()) if t]


def split_sentences(document_text: str) -> list[str]:
    """Rule-based sentence splitter for raw (unsegmented) document strings.

    Splits after '.', '!' or '?' when followed by whitespace and an uppercase
    letter, or at end of text. A '.' directly after a known abbreviation
    (ABBREVIATIONS) never splits.
    """
    text = document_text
    boundaries: list[int] = []
    for i, ch in enumerate(text):
        if ch not in _TERMINATORS:
            continue
        rest = text[i + 1 :]
        at_end = rest.strip() == ""
        if not at_end and not _SPLIT_FOLLOWER.match(rest):
            continue
        if ch == ".":
            word = _TRAILING_WORD.search(text[:i])
            if word and word.group(0) in ABBREVIATIONS:
                continue
        boundaries.append(i + 1)
    sentences = []
    start = 0
    for end in boundaries:
        chunk = text[start:end].strip()
        if chunk:
            sentences.append(chunk)
        start = end
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def _cluster_from_object(obj: dict, line_no: int, path: str) -> DocumentCluster:
    where = f"{path}: line {line_no}"
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected a JSON object, got {type(obj).__name__}")
    cluster_id = obj.get("id")
    if not isinstance(cluster_id, str) or not cluster_id:
        raise InputError(f"{where}: missing or invalid 'id'")
    documents = obj.get("documents")
    if not isinstance(documents, list):
        raise InputError(f"{where}: cluster {cluster_id} has no 'documents' list")
    references = obj.get("references", [])
    if not isinstance(references, list) or any(not isinstance(r, str) for r in references):
        raise InputError(f"{where}: cluster {cluster_id} has invalid 'references'")

    sentences: list[SentenceRecord] = []
    dropped = 0
    global_id = 0
    for doc_index, doc in enumerate(documents):
        if isinstance(doc, str):
            doc_sentences = split_sentences(doc)
        elif isinstance(doc, list) and all(isinstance(s, str) for s in doc):
            doc_sentences = doc
        else:
            raise InputError(
                f"{where}: cluster {cluster_id} document {doc_index} is neither a "
                "string nor a list of sentence strings"
            )
        sent_index = 0
        for raw in doc_sentences:
            text = raw.strip()
            if not text:
                dropped += 1
                continue
            sentences.append(
                SentenceRecord(
                    cluster_id=cluster_id,
                    doc_index=doc_index,
                    sent_index=sent_index,
                    global_id=global_id,
                    text=text,
                    tokens=tuple(tokenize(text)),
                    word_count=len(text.split()),
                )
            )
            sent_index += 1
            global_id += 1
    if dropped:
        logger.warning("cluster %s: dropped %d empty sentence(s)", cluster_id, dropped)
    if not sentences:
        raise InputError(f"cluster {cluster_id} has no sentences")
    n_documents = 1 + max(s.doc_index for s in sentences)
    return DocumentCluster(
        cluster_id=cluster_id,
        sentences=tuple(sentences),
        references=tuple(references),
        n_documents=n_documents,
    )


def load_clusters(path: str | Path, format: str = "jsonl") -> list[DocumentCluster]:
    """Load document clusters from a JSONL file, one cluster object per line.

    Each line holds ``{"id": ..., "documents": [...], "references": [...]}``
    where every document is either a list of sentence strings (preferred) or a
    raw string run through :func:`split_sentences`. Empty sentences are dropped
    with a warning; a cluster left without sentences is an error.
    """
    if format != "jsonl":
        raise InputError(f"unsupported cluster format: {format!r}")
    path = Path(path)
    if not path.is_file():
        raise InputError(f"cluster file not found: {path}")
    clusters: list[DocumentCluster] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}: line {line_no}: malformed JSON: {exc.msg}") from exc
            cluster = _cluster_from_object(obj, line_no, str(path))
            if cluster.cluster_id in seen:
                raise InputError(f"{path}: line {line_no}: duplicate cluster id {cluster.cluster_id!r}")
            seen.add(cluster.cluster_id)
            clusters.append(cluster)
    if not clusters:
        raise InputError(f"{path}: no clusters found")
    return clusters
