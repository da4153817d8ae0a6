export interface LstmSpec {
  embeddingDim: number;
  lstmLayers: number;
  lstmUnits: number;
  denseUnits: number;
  /** model input length; training contexts are left-padded with the start id */
  contextLength: number;
  learningRate: number;
  momentum: number;
  batchSize: number;
}

export const DEFAULT_SPEC: LstmSpec = {
  embeddingDim: 50,
  lstmLayers: 2,
  lstmUnits: 128,
  denseUnits: 128,
  contextLength: 2,
  learningRate: 0.001,
  momentum: 0.9,
  batchSize: 256,
};

export interface Vocab {
  startToken: string;
  tokens: string[];
  ids: Map<string, number>;
}

export interface SequenceData {
  contexts: number[][];
  targets: number[];
  /** context length found in the file (all records must agree) */
  windowLength: number;
}

export interface TrainReport {
  epochs: number;
  vocabSize: number;
  finalLoss: number;
  losses: number[];
  finalAccuracy: number;
}

export type RhymeIndex = Map<string, Array<[string, string]>>;

export interface SongDoc {
  scheme: string;
  allocation: Record<string, string>;
  paragraphs: string[][][];
}
