import * as tf from "@tensorflow/tfjs";

export interface TrainOptions {
  epochs: number;
  batchSize: number;
  /** trailing fraction of the batch held out for validation */
  validationFraction: number;
  learningRate: number;
  verbose: boolean;
}

export const DEFAULT_TRAIN: TrainOptions = {
  epochs: 10,
  batchSize: 32,
  validationFraction: 0.2,
  learningRate: 0.5,
  verbose: false,
};

export interface EpochStats {
  epoch: number;
  loss: number;
  valLoss: number;
}

/**
 * Fit the autoencoder on images (targets = inputs) with plain SGD and
 * mean squared error. Row order is preserved and shuffling is disabled,
 * so a seeded model trained on the same tensor gives identical history.
 */
export async function trainAutoencoder(
  model: tf.LayersModel,
  images: tf.Tensor4D,
  opts: Partial<TrainOptions> = {},
): Promise<EpochStats[]> {
  const o = { ...DEFAULT_TRAIN, ...opts };
  const n = images.shape[0];
  const nVal = Math.max(1, Math.round(n * o.validationFraction));
  if (nVal >= n) throw new Error(`validation fraction ${o.validationFraction} leaves no training rows`);
  const nTrain = n - nVal;

  const train = images.slice([0, 0, 0, 0], [nTrain, -1, -1, -1]);
  const val = images.slice([nTrain, 0, 0, 0], [nVal, -1, -1, -1]);
  try {
    model.compile({ optimizer: tf.train.sgd(o.learningRate), loss: "meanSquaredError" });
    const history = await model.fit(train, train, {
      epochs: o.epochs,
      batchSize: o.batchSize,
      shuffle: false,
      validationData: [val, val],
      verbose: o.verbose ? 1 : 0,
    });
    const losses = history.history.loss as number[];
    const valLosses = history.history.val_loss as number[];
    return losses.map((loss, i) => ({ epoch: i + 1, loss, valLoss: valLosses[i] }));
  } finally {
    train.dispose();
    val.dispose();
  }
}
