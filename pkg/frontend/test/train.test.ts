import { describe, expect, it } from "vitest";
import { buildAutoencoder } from "../src/model.js";
import { downsample, toBatch } from "../src/preprocess.js";
import { synthDataset } from "../src/synth.js";
import { trainAutoencoder } from "../src/train.js";

function verdict(name: string, ok: boolean, detail: string): void {
  console.log(`[ACCEPTANCE] ${name}: ${ok ? "PASS" : "FAIL"} (${detail})`);
}

describe("training", () => {
  it(
    "10 epochs on 500 downsampled images strictly lowers validation mse",
    async () => {
      const start = Date.now();
      const native = toBatch(synthDataset(500, 64, 0).map((s) => s.image));
      const images = downsample(native, 16);
      native.dispose();

      const { autoencoder } = buildAutoencoder(16, 0);
      const stats = await trainAutoencoder(autoencoder, images, {
        epochs: 10,
        batchSize: 32,
      });
      images.dispose();

      const elapsed = (Date.now() - start) / 1000;
      const first = stats[0].valLoss;
      const last = stats[stats.length - 1].valLoss;
      const ok = stats.length === 10 && last < first && elapsed < 900;
      verdict(
        "training sanity",
        ok,
        `val mse ${first.toFixed(6)} -> ${last.toFixed(6)} in ${elapsed.toFixed(1)}s`,
      );
      expect(stats.length).toBe(10);
      expect(last).toBeLessThan(first);
      expect(elapsed).toBeLessThan(900);
    },
    900_000,
  );

  it("loss history is reproducible for a seeded model and fixed data", async () => {
    const batch = toBatch(synthDataset(24, 16, 4).map((s) => s.image));
    const runs: number[][] = [];
    for (let r = 0; r < 2; r++) {
      const { autoencoder } = buildAutoencoder(16, 3);
      const stats = await trainAutoencoder(autoencoder, batch, { epochs: 3, batchSize: 8 });
      runs.push(stats.map((s) => s.valLoss));
    }
    batch.dispose();
    expect(runs[0]).toEqual(runs[1]);
  });

  it("rejects a validation fraction that leaves nothing to train on", async () => {
    const batch = toBatch(synthDataset(4, 16, 5).map((s) => s.image));
    const { autoencoder } = buildAutoencoder(16, 0);
    await expect(
      trainAutoencoder(autoencoder, batch, { validationFraction: 0.99 }),
    ).rejects.toThrow(/validation fraction/);
    batch.dispose();
  });
});
