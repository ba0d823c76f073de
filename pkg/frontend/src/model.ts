import * as tf from "@tensorflow/tfjs";

/**
 * Convolutional autoencoder for square RGB galaxy images.
 *
 * Encoder: three 3x3 same-padding conv blocks (16, 8, 8 filters), each
 * followed by 2x2 max pooling, then a flatten. At the standard 224 input
 * the flattened encoding has 28 * 28 * 8 = 6272 values.
 *
 * Decoder mirrors it with upsampling and transposed convs (8, 8, 16),
 * closing with a 3-filter sigmoid conv so reconstructions stay in [0, 1].
 */

export const DEFAULT_INPUT_SIZE = 224;
export const LATENT_CHANNELS = 8;

export interface Autoencoder {
  /** full model, image in, reconstruction out */
  autoencoder: tf.LayersModel;
  /** encoder half ending at the flatten layer */
  encoder: tf.LayersModel;
  inputSize: number;
  encodingSize: number;
}

export function encodingSize(inputSize: number): number {
  const side = inputSize / 8;
  return side * side * LATENT_CHANNELS;
}

/** Deterministic weights when a seed is given; tfjs seeds each initializer. */
function conv(filters: number, seed: number | undefined, i: number) {
  return {
    kernelSize: 3,
    filters,
    padding: "same" as const,
    activation: "relu" as const,
    kernelInitializer: tf.initializers.glorotUniform({ seed: seed === undefined ? undefined : seed + i }),
  };
}

export function buildAutoencoder(inputSize: number = DEFAULT_INPUT_SIZE, seed?: number): Autoencoder {
  if (!Number.isInteger(inputSize) || inputSize <= 0 || inputSize % 8 !== 0) {
    throw new Error(`input size must be a positive multiple of 8, got ${inputSize}`);
  }
  const side = inputSize / 8;

  const input = tf.input({ shape: [inputSize, inputSize, 3] });

  let x = tf.layers.conv2d(conv(16, seed, 1)).apply(input) as tf.SymbolicTensor;
  x = tf.layers.maxPooling2d({ poolSize: 2 }).apply(x) as tf.SymbolicTensor;
  x = tf.layers.conv2d(conv(8, seed, 2)).apply(x) as tf.SymbolicTensor;
  x = tf.layers.maxPooling2d({ poolSize: 2 }).apply(x) as tf.SymbolicTensor;
  x = tf.layers.conv2d(conv(8, seed, 3)).apply(x) as tf.SymbolicTensor;
  x = tf.layers.maxPooling2d({ poolSize: 2 }).apply(x) as tf.SymbolicTensor;
  const encoded = tf.layers.flatten().apply(x) as tf.SymbolicTensor;

  let y = tf.layers.reshape({ targetShape: [side, side, LATENT_CHANNELS] }).apply(encoded) as tf.SymbolicTensor;
  y = tf.layers.upSampling2d({ size: [2, 2] }).apply(y) as tf.SymbolicTensor;
  y = tf.layers.conv2dTranspose(conv(8, seed, 4)).apply(y) as tf.SymbolicTensor;
  y = tf.layers.upSampling2d({ size: [2, 2] }).apply(y) as tf.SymbolicTensor;
  y = tf.layers.conv2dTranspose(conv(8, seed, 5)).apply(y) as tf.SymbolicTensor;
  y = tf.layers.upSampling2d({ size: [2, 2] }).apply(y) as tf.SymbolicTensor;
  y = tf.layers.conv2dTranspose(conv(16, seed, 6)).apply(y) as tf.SymbolicTensor;
  const output = tf.layers.conv2d({
    kernelSize: 3,
    filters: 3,
    padding: "same",
    activation: "sigmoid",
    kernelInitializer: tf.initializers.glorotUniform({ seed: seed === undefined ? undefined : seed + 7 }),
  }).apply(y) as tf.SymbolicTensor;

  const autoencoder = tf.model({ inputs: input, outputs: output, name: "galaxy_autoencoder" });
  const encoder = tf.model({ inputs: input, outputs: encoded, name: "galaxy_encoder" });

  return { autoencoder, encoder, inputSize, encodingSize: encodingSize(inputSize) };
}

/** Trainable parameter count of every weighted layer, in model order. */
export function layerParamCounts(model: tf.LayersModel): number[] {
  const counts: number[] = [];
  for (const layer of model.layers) {
    const n = layer.countParams();
    if (n > 0) counts.push(n);
  }
  return counts;
}
