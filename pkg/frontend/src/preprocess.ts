import * as tf from "@tensorflow/tfjs";
import { RgbImage } from "./ppm.js";

/**
 * Survey cutouts are 424x424; the model takes the central 224x224, which
 * starts at pixel (100, 100). Crop first, then scale bytes to [0, 1].
 */

export function cropOffset(source: number, target: number): number {
  if (target > source) throw new Error(`cannot crop ${source} up to ${target}`);
  return Math.floor((source - target) / 2);
}

export function centerCrop(img: RgbImage, target: number): RgbImage {
  if (img.width !== img.height) {
    throw new Error(`expected a square image, got ${img.width}x${img.height}`);
  }
  if (img.width === target) return img;
  const off = cropOffset(img.width, target);
  const out = new Uint8Array(target * target * 3);
  for (let y = 0; y < target; y++) {
    const srcStart = ((y + off) * img.width + off) * 3;
    out.set(img.pixels.subarray(srcStart, srcStart + target * 3), y * target * 3);
  }
  return { width: target, height: target, pixels: out };
}

/** [n, size, size, 3] float tensor in [0, 1], rows in input order. */
export function toBatch(images: RgbImage[]): tf.Tensor4D {
  if (images.length === 0) throw new Error("no images");
  const size = images[0].width;
  for (const img of images) {
    if (img.width !== size || img.height !== size) {
      throw new Error("all images in a batch must have the same size");
    }
  }
  const data = new Float32Array(images.length * size * size * 3);
  images.forEach((img, i) => {
    const base = i * size * size * 3;
    for (let j = 0; j < img.pixels.length; j++) data[base + j] = img.pixels[j] / 255;
  });
  return tf.tensor4d(data, [images.length, size, size, 3]);
}

/** Bilinear downsample, e.g. to run training sanity checks at small sizes. */
export function downsample(batch: tf.Tensor4D, size: number): tf.Tensor4D {
  return tf.tidy(() => tf.image.resizeBilinear(batch, [size, size]));
}
