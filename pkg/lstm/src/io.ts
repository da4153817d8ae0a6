/** Disk persistence for trained models.
 *
 * The plain @tensorflow/tfjs build has no file:// IO handler on node, so the
 * topology/weight artifacts are written and read through custom handlers:
 * model.json (topology + weight manifest), weights.bin, and a spec.json
 * sidecar recording the training configuration.
 */

import * as fs from "fs";
import * as path from "path";
import * as tf from "@tensorflow/tfjs";

import { LstmSpec } from "./types.js";

function joinWeightData(data: ArrayBuffer | ArrayBuffer[]): ArrayBuffer {
  if (!Array.isArray(data)) {
    return data;
  }
  const total = data.reduce((n, part) => n + part.byteLength, 0);
  const out = new Uint8Array(total);
  let offset = 0;
  for (const part of data) {
    out.set(new Uint8Array(part), offset);
    offset += part.byteLength;
  }
  return out.buffer;
}

export async function saveModel(
  model: tf.LayersModel,
  dir: string,
  spec: LstmSpec,
): Promise<void> {
  fs.mkdirSync(dir, { recursive: true });
  await model.save(
    tf.io.withSaveHandler(async (artifacts) => {
      const weightData = joinWeightData(artifacts.weightData as ArrayBuffer | ArrayBuffer[]);
      fs.writeFileSync(path.join(dir, "weights.bin"), Buffer.from(weightData));
      fs.writeFileSync(
        path.join(dir, "model.json"),
        JSON.stringify({
          modelTopology: artifacts.modelTopology,
          weightSpecs: artifacts.weightSpecs,
        }),
      );
      return {
        modelArtifactsInfo: {
          dateSaved: new Date(),
          modelTopologyType: "JSON",
        },
      };
    }),
  );
  fs.writeFileSync(path.join(dir, "spec.json"), JSON.stringify(spec, null, 2) + "\n");
}

export async function loadModel(dir: string): Promise<{ model: tf.LayersModel; spec: LstmSpec }> {
  const manifest = JSON.parse(fs.readFileSync(path.join(dir, "model.json"), "utf-8"));
  const weightBuffer = fs.readFileSync(path.join(dir, "weights.bin"));
  const weightData = weightBuffer.buffer.slice(
    weightBuffer.byteOffset,
    weightBuffer.byteOffset + weightBuffer.byteLength,
  );
  const model = await tf.loadLayersModel(
    tf.io.fromMemory({
      modelTopology: manifest.modelTopology,
      weightSpecs: manifest.weightSpecs,
      weightData,
    }),
  );
  const spec = JSON.parse(fs.readFileSync(path.join(dir, "spec.json"), "utf-8")) as LstmSpec;
  return { model, spec };
}
