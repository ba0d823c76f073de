#!/usr/bin/env node
import * as fs from "fs";
import * as path from "path";
import * as tf from "@tensorflow/tfjs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { buildAutoencoder, DEFAULT_INPUT_SIZE } from "./model.js";
import { readPpm, writePpm, RgbImage } from "./ppm.js";
import { centerCrop, downsample, toBatch } from "./preprocess.js";
import { synthDataset } from "./synth.js";
import { trainAutoencoder } from "./train.js";
import { encodeImages, writeFeaturesCsv } from "./features.js";
import { loadModel, saveModel } from "./modelio.js";

function loadImageDir(dir: string, inputSize: number): { ids: string[]; batch: tf.Tensor4D } {
  const files = fs.readdirSync(dir).filter((f) => f.endsWith(".ppm")).sort();
  if (files.length === 0) throw new Error(`no .ppm files in ${dir}`);
  const images: RgbImage[] = [];
  const ids: string[] = [];
  for (const f of files) {
    const img = readPpm(path.join(dir, f));
    images.push(img.width === inputSize ? img : centerCrop(img, inputSize));
    ids.push(f.replace(/\.ppm$/, ""));
  }
  return { ids, batch: toBatch(images) };
}

async function main(): Promise<void> {
  await yargs(hideBin(process.argv))
    .scriptName("galaxy-encoder")
    .command(
      "synth",
      "write seeded synthetic galaxy images as ppm files",
      (y) =>
        y
          .option("n", { type: "number", default: 64, describe: "image count" })
          .option("size", { type: "number", default: 424, describe: "square image size in px" })
          .option("seed", { type: "number", default: 0 })
          .option("out", { type: "string", demandOption: true, describe: "output directory" }),
      (argv) => {
        fs.mkdirSync(argv.out, { recursive: true });
        const specs = synthDataset(argv.n, argv.size, argv.seed);
        const manifest: string[] = [];
        for (const spec of specs) {
          writePpm(path.join(argv.out, `${spec.id}.ppm`), spec.image);
          manifest.push(`${spec.id},${spec.cls}`);
        }
        fs.writeFileSync(path.join(argv.out, "classes.csv"), manifest.join("\n") + "\n");
        console.log(`wrote ${specs.length} images to ${argv.out}`);
      },
    )
    .command(
      "train",
      "train the autoencoder on a directory of ppm images",
      (y) =>
        y
          .option("images", { type: "string", demandOption: true })
          .option("model-out", { type: "string", demandOption: true })
          .option("input-size", { type: "number", default: DEFAULT_INPUT_SIZE })
          .option("train-size", {
            type: "number",
            describe: "downsample images to this size before fitting (default: input-size)",
          })
          .option("epochs", { type: "number", default: 10 })
          .option("batch-size", { type: "number", default: 32 })
          .option("learning-rate", { type: "number", default: 0.5 })
          .option("seed", { type: "number", default: 0 }),
      async (argv) => {
        const { batch } = loadImageDir(argv.images, argv["input-size"]);
        const size = argv["train-size"] ?? argv["input-size"];
        const data = size === argv["input-size"] ? batch : downsample(batch, size);
        const { autoencoder } = buildAutoencoder(size, argv.seed);
        const stats = await trainAutoencoder(autoencoder, data, {
          epochs: argv.epochs,
          batchSize: argv["batch-size"],
          learningRate: argv["learning-rate"],
          verbose: true,
        });
        for (const s of stats) {
          console.log(`epoch ${s.epoch}: loss=${s.loss.toFixed(6)} val_loss=${s.valLoss.toFixed(6)}`);
        }
        await saveModel(autoencoder, argv["model-out"]);
        console.log(`saved model to ${argv["model-out"]}`);
      },
    )
    .command(
      "encode",
      "run images through the encoder and write a feature csv",
      (y) =>
        y
          .option("images", { type: "string", demandOption: true })
          .option("out", { type: "string", demandOption: true, describe: "feature csv path" })
          .option("model", { type: "string", describe: "trained model dir; omit for fresh seeded weights" })
          .option("input-size", { type: "number", default: DEFAULT_INPUT_SIZE })
          .option("seed", { type: "number", default: 0 })
          .option("batch-size", { type: "number", default: 32 }),
      async (argv) => {
        const { ids, batch } = loadImageDir(argv.images, argv["input-size"]);
        let encoder: tf.LayersModel;
        let data = batch;
        if (argv.model) {
          const full = await loadModel(argv.model);
          // encoder half = everything up to the flatten layer
          const flat = full.layers.find((l) => l.getClassName() === "Flatten");
          if (!flat) throw new Error("loaded model has no flatten layer");
          encoder = tf.model({ inputs: full.inputs, outputs: flat.output as tf.SymbolicTensor });
          // a model trained at a downsampled size dictates the final scale
          const modelSize = (full.inputs[0].shape as number[])[1];
          if (modelSize !== argv["input-size"]) {
            console.log(`model expects ${modelSize}px input, downsampling cropped images`);
            data = downsample(batch, modelSize);
            batch.dispose();
          }
        } else {
          encoder = buildAutoencoder(argv["input-size"], argv.seed).encoder;
        }
        const rows = await encodeImages(encoder, data, argv["batch-size"]);
        writeFeaturesCsv(argv.out, ids, rows);
        console.log(`wrote ${rows.length} x ${rows[0].length} features to ${argv.out}`);
      },
    )
    .demandCommand(1)
    .strict()
    .fail((msg, err) => {
      console.error(`error: ${msg ?? err?.message}`);
      process.exit(2);
    })
    .parseAsync();
}

main().catch((err) => {
  console.error(`error: ${err?.message ?? err}`);
  process.exit(2);
});
