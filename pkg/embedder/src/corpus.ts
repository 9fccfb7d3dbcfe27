/**
 * Cluster file parsing for the exporter.
 *
 * Re-implements the summarizer's loading rules so embedding rows line up with
 * its flattened document-major sentence order: documents may be sentence
 * arrays or raw strings (split here), empty sentences are dropped, and a
 * cluster without sentences is an error.
 */
import { readFileSync } from "node:fs";

export class InputError extends Error {}

export interface Sentence {
  docIndex: number;
  sentIndex: number;
  globalId: number;
  text: string;
}

export interface Cluster {
  id: string;
  sentences: Sentence[];
}

const TERMINATORS = new Set([".", "!", "?"]);
const ABBREVIATIONS = new Set(["Mr", "Mrs", "Dr", "U.S", "Inc", "St", "No", "vs"]);
const TRAILING_WORD = /[A-Za-z][A-Za-z.]*$/;
const SPLIT_FOLLOWER = /^\s+[A-Z]/;

/** Rule-based sentence splitter for raw (unsegmented) document strings. */
export function splitSentences(documentText: string): string[] {
  const boundaries: number[] = [];
  for (let i = 0; i < documentText.length; i++) {
    const ch = documentText[i];
    if (!TERMINATORS.has(ch)) continue;
    const rest = documentText.slice(i + 1);
    const atEnd = rest.trim() === "";
    if (!atEnd && !SPLIT_FOLLOWER.test(rest)) continue;
    if (ch === ".") {
      const word = TRAILING_WORD.exec(documentText.slice(0, i));
      if (word && ABBREVIATIONS.has(word[0])) continue;
    }
    boundaries.push(i + 1);
  }
  const sentences: string[] = [];
  let start = 0;
  for (const end of boundaries) {
    const chunk = documentText.slice(start, end).trim();
    if (chunk) sentences.push(chunk);
    start = end;
  }
  const tail = documentText.slice(start).trim();
  if (tail) sentences.push(tail);
  return sentences;
}

function clusterFromObject(obj: unknown, lineNo: number, path: string): Cluster {
  const where = `${path}: line ${lineNo}`;
  if (typeof obj !== "object" || obj === null || Array.isArray(obj)) {
    throw new InputError(`${where}: expected a JSON object`);
  }
  const record = obj as Record<string, unknown>;
  const id = record["id"];
  if (typeof id !== "string" || !id) {
    throw new InputError(`${where}: missing or invalid 'id'`);
  }
  const documents = record["documents"];
  if (!Array.isArray(documents)) {
    throw new InputError(`${where}: cluster ${id} has no 'documents' list`);
  }
  const sentences: Sentence[] = [];
  let globalId = 0;
  documents.forEach((doc, docIndex) => {
    let docSentences: string[];
    if (typeof doc === "string") {
      docSentences = splitSentences(doc);
    } else if (Array.isArray(doc) && doc.every((s) => typeof s === "string")) {
      docSentences = doc as string[];
    } else {
      throw new InputError(
        `${where}: cluster ${id} document ${docIndex} is neither a string nor a list of sentence strings`,
      );
    }
    let sentIndex = 0;
    for (const raw of docSentences) {
      const text = raw.trim();
      if (!text) continue;
      sentences.push({ docIndex, sentIndex, globalId, text });
      sentIndex += 1;
      globalId += 1;
    }
  });
  if (sentences.length === 0) {
    throw new InputError(`cluster ${id} has no sentences`);
  }
  return { id, sentences };
}

/** Load clusters from a JSONL file, one cluster object per line. */
export function loadClusters(path: string): Cluster[] {
  let content: string;
  try {
    content = readFileSync(path, "utf-8");
  } catch {
    throw new InputError(`cluster file not found: ${path}`);
  }
  const clusters: Cluster[] = [];
  const seen = new Set<string>();
  const lines = content.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i];
    if (!line.trim()) continue;
    let obj: unknown;
    try {
      obj = JSON.parse(line);
    } catch (exc) {
      throw new InputError(`${path}: line ${i + 1}: malformed JSON: ${(exc as Error).message}`);
    }
    const cluster = clusterFromObject(obj, i + 1, path);
    if (seen.has(cluster.id)) {
      throw new InputError(`${path}: line ${i + 1}: duplicate cluster id '${cluster.id}'`);
    }
    seen.add(cluster.id);
    clusters.push(cluster);
  }
  if (clusters.length === 0) {
    throw new InputError(`${path}: no clusters found`);
  }
  return clusters;
}
