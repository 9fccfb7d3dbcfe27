export { Cluster, InputError, loadClusters, Sentence, splitSentences } from "./corpus.js";
export { DEFAULT_MODEL, Encoder, HashEncoder, makeEncoder, ModelLoadError, TransformerEncoder } from "./encoder.js";
export { clusterLine, defaultJob, encodeCluster, ExportJob, exportEmbeddings } from "./exporter.js";
