import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { InputError, loadClusters, splitSentences } from "../src/corpus.js";

const SHARED_FIXTURE = JSON.parse(
  readFileSync(fileURLToPath(new URL("../../tests/data/order_fixture.json", import.meta.url)), "utf-8"),
);

function writeClusters(lines: string[]): string {
  const dir = mkdtempSync(join(tmpdir(), "embedder-"));
  const path = join(dir, "clusters.jsonl");
  writeFileSync(path, lines.join("\n") + "\n");
  return path;
}

describe("shared order fixture", () => {
  for (const testCase of SHARED_FIXTURE.cases) {
    it(`matches the summarizer's flattened order: ${testCase.cluster.id}`, () => {
      const path = writeClusters([JSON.stringify(testCase.cluster)]);
      const cluster = loadClusters(path)[0];
      expect(cluster.sentences.map((s) => s.text)).toEqual(testCase.expected_texts);
      expect(cluster.sentences.map((s) => s.docIndex)).toEqual(testCase.expected_doc_indices);
      expect(cluster.sentences.map((s) => s.globalId)).toEqual(
        testCase.expected_texts.map((_: string, i: number) => i),
      );
    });
  }
});

describe("loadClusters validation", () => {
  it("rejects a cluster without sentences, naming the id", () => {
    const path = writeClusters(['{"id":"c2","documents":[[]]}']);
    expect(() => loadClusters(path)).toThrow(/cluster c2 has no sentences/);
  });

  it("rejects malformed JSON, naming the line", () => {
    const path = writeClusters(['{"id":"c1","documents":[["A."]]}', "{bad json}"]);
    expect(() => loadClusters(path)).toThrow(/line 2/);
  });

  it("rejects duplicate cluster ids", () => {
    const path = writeClusters([
      '{"id":"c1","documents":[["A."]]}',
      '{"id":"c1","documents":[["B."]]}',
    ]);
    expect(() => loadClusters(path)).toThrow(/duplicate cluster id/);
  });

  it("rejects documents of the wrong shape", () => {
    const path = writeClusters(['{"id":"c1","documents":[42]}']);
    expect(() => loadClusters(path)).toThrow(InputError);
  });

  it("rejects a missing file", () => {
    expect(() => loadClusters("/nonexistent/clusters.jsonl")).toThrow(/not found/);
  });
});

describe("splitSentences", () => {
  it("splits on terminator + whitespace + uppercase", () => {
    expect(splitSentences("Hi. Bye.")).toEqual(["Hi.", "Bye."]);
  });

  it("guards abbreviations", () => {
    expect(splitSentences("Dr. Smith left.")).toEqual(["Dr. Smith left."]);
    expect(splitSentences("The U.S. economy grew. It was fast.")).toEqual([
      "The U.S. economy grew.",
      "It was fast.",
    ]);
  });

  it("keeps unterminated text as one sentence", () => {
    expect(splitSentences("One")).toEqual(["One"]);
  });

  it("does not split before lowercase", () => {
    expect(splitSentences("It was v. fast and loose.")).toEqual(["It was v. fast and loose."]);
  });
});
