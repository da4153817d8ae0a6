import * as tf from "@tensorflow/tfjs";

import { LstmSpec } from "./types.js";

/** Stacked-LSTM next-word model over a fixed-length reversed context.
 *
 * embedding -> LSTM x lstmLayers -> dense relu -> softmax over the whole
 * vocabulary.  Kernel and recurrent weights start orthogonal.
 */
export function buildModel(spec: LstmSpec, vocabSize: number): tf.LayersModel {
  const model = tf.sequential();
  model.add(
    tf.layers.embedding({
      inputDim: vocabSize,
      outputDim: spec.embeddingDim,
      inputLength: spec.contextLength,
      // the default +-0.05 uniform starves the recurrent stack at small
      // scale; glorot keeps the input pathway trainable
      embeddingsInitializer: "glorotUniform",
      name: "token_embedding",
    }),
  );
  for (let i = 0; i < spec.lstmLayers; i++) {
    model.add(
      tf.layers.lstm({
        units: spec.lstmUnits,
        returnSequences: i < spec.lstmLayers - 1,
        kernelInitializer: "orthogonal",
        recurrentInitializer: "orthogonal",
        // tfjs defaults to the piecewise-linear hardSigmoid; use the
        // conventional smooth gate activation instead
        recurrentActivation: "sigmoid",
        name: `lstm_${i}`,
      }),
    );
  }
  model.add(tf.layers.dense({ units: spec.denseUnits, activation: "relu", name: "dense" }));
  model.add(tf.layers.dense({ units: vocabSize, activation: "softmax", name: "next_word" }));
  model.compile({
    optimizer: tf.train.momentum(spec.learningRate, spec.momentum),
    loss: "sparseCategoricalCrossentropy",
    metrics: ["accuracy"],
  });
  return model;
}

/** Recurrent kernels of every LSTM layer, in layer order. */
export function recurrentKernels(model: tf.LayersModel): tf.Tensor2D[] {
  const kernels: tf.Tensor2D[] = [];
  for (const layer of model.layers) {
    if (layer.getClassName() === "LSTM") {
      // LSTM weight order: kernel, recurrent kernel, bias
      kernels.push(layer.getWeights()[1] as tf.Tensor2D);
    }
  }
  return kernels;
}

/** Max abs deviation of M Mt (or Mt M for tall matrices) from identity. */
export function orthogonalityError(matrix: tf.Tensor2D): number {
  return tf.tidy(() => {
    const [rows, cols] = matrix.shape;
    const m = rows <= cols ? matrix : (matrix.transpose() as tf.Tensor2D);
    const n = Math.min(rows, cols);
    const gram = tf.matMul(m, m, false, true);
    const deviation = gram.sub(tf.eye(n)).abs().max();
    return deviation.dataSync()[0];
  });
}
