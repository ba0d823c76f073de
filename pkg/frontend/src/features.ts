import * as fs from "fs";
import * as tf from "@tensorflow/tfjs";

/** Encodings for a batch of images as one Float32Array row per image. */
export async function encodeImages(
  encoder: tf.LayersModel,
  images: tf.Tensor4D,
  batchSize = 32,
): Promise<Float32Array[]> {
  const rows: Float32Array[] = [];
  const n = images.shape[0];
  for (let start = 0; start < n; start += batchSize) {
    const count = Math.min(batchSize, n - start);
    const out = tf.tidy(() => {
      const slice = images.slice([start, 0, 0, 0], [count, -1, -1, -1]);
      return encoder.predict(slice, { batchSize: count }) as tf.Tensor2D;
    });
    const flat = (await out.data()) as Float32Array;
    out.dispose();
    const width = flat.length / count;
    for (let i = 0; i < count; i++) {
      rows.push(flat.slice(i * width, (i + 1) * width));
    }
  }
  return rows;
}

/**
 * Feature CSV in the clustering pipeline's input format: galaxy id, then
 * the encoding values. No header row; ids must be unique and contain no
 * commas. Numbers use JS shortest round-trip formatting.
 */
export function featuresCsv(ids: string[], rows: Float32Array[]): string {
  if (ids.length !== rows.length) throw new Error("id/row count mismatch");
  if (ids.length === 0) throw new Error("no rows to write");
  const width = rows[0].length;
  const seen = new Set<string>();
  const lines: string[] = [];
  for (let i = 0; i < ids.length; i++) {
    const id = ids[i];
    if (id.includes(",") || id.includes("\n")) throw new Error(`bad galaxy id ${JSON.stringify(id)}`);
    if (seen.has(id)) throw new Error(`duplicate galaxy id ${id}`);
    seen.add(id);
    if (rows[i].length !== width) throw new Error("ragged feature rows");
    lines.push(id + "," + Array.from(rows[i]).join(","));
  }
  return lines.join("\n") + "\n";
}

export function writeFeaturesCsv(path: string, ids: string[], rows: Float32Array[]): void {
  fs.writeFileSync(path, featuresCsv(ids, rows));
}
