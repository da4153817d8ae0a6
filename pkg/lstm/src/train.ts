import * as tf from "@tensorflow/tfjs";

import { loadSequences, loadVocab } from "./data.js";
import { buildModel } from "./model.js";
import { LstmSpec, SequenceData, TrainReport, Vocab } from "./types.js";

/** Left-pad (or left-truncate) a context to the model input length, using
 * the start id as padding: positions before the window are "before the line
 * ended", which is exactly what the start sentinel marks. */
export function fitContext(context: number[], length: number, startId: number): number[] {
  if (context.length === length) {
    return context;
  }
  if (context.length > length) {
    return context.slice(context.length - length);
  }
  return new Array(length - context.length).fill(startId).concat(context);
}

export function toTensors(
  data: SequenceData,
  contextLength: number,
  startId: number,
): { xs: tf.Tensor2D; ys: tf.Tensor1D } {
  const fitted = data.contexts.map((c) => fitContext(c, contextLength, startId));
  const xs = tf.tensor2d(fitted, [fitted.length, contextLength], "int32");
  // the sparse cross-entropy loss floors its targets and requires float32
  const ys = tf.tensor1d(data.targets, "float32");
  return { xs, ys };
}

export interface TrainOptions {
  vocabPath: string;
  sequencesPath: string;
  spec: LstmSpec;
  epochs: number;
  quiet?: boolean;
}

export async function trainLstm(
  opts: TrainOptions,
): Promise<{ model: tf.LayersModel; vocab: Vocab; report: TrainReport; spec: LstmSpec }> {
  if (opts.epochs < 1) {
    throw new Error("epochs must be >= 1");
  }
  const vocab = loadVocab(opts.vocabPath);
  const data = loadSequences(opts.sequencesPath, vocab.tokens.length);
  const spec = { ...opts.spec };
  const startId = vocab.ids.get(vocab.startToken)!;
  const model = buildModel(spec, vocab.tokens.length);
  const { xs, ys } = toTensors(data, spec.contextLength, startId);
  try {
    const history = await model.fit(xs, ys, {
      epochs: opts.epochs,
      batchSize: Math.min(spec.batchSize, data.targets.length),
      shuffle: true,
      verbose: 0,
      callbacks: opts.quiet
        ? []
        : [
            new tf.CustomCallback({
              onEpochEnd: async (epoch, logs) => {
                if ((epoch + 1) % 10 === 0 || epoch === 0) {
                  console.error(
                    `epoch ${epoch + 1}/${opts.epochs} loss=${(logs?.loss as number).toFixed(4)}`,
                  );
                }
              },
            }),
          ],
    });
    const losses = (history.history.loss as number[]).map(Number);
    const accs = (history.history.acc ?? history.history.accuracy ?? []) as number[];
    const report: TrainReport = {
      epochs: opts.epochs,
      vocabSize: vocab.tokens.length,
      finalLoss: losses[losses.length - 1],
      losses,
      finalAccuracy: accs.length ? Number(accs[accs.length - 1]) : NaN,
    };
    return { model, vocab, report, spec };
  } finally {
    xs.dispose();
    ys.dispose();
  }
}
