import { RgbImage } from "./ppm.js";
import { gaussian, mulberry32 } from "./rng.js";

/**
 * Seeded synthetic galaxy images for smoke tests and training sanity
 * checks: an elliptical exponential-profile blob over a noisy sky, with
 * a few field stars. Class 0 is round ("smooth"), class 1 strongly
 * elongated ("edge-on disk"), so encodings carry separable structure.
 */

export type GalaxyClass = 0 | 1;

export function synthGalaxy(size: number, cls: GalaxyClass, seed: number): RgbImage {
  const rand = mulberry32(seed);
  const norm = gaussian(rand);
  const pixels = new Uint8Array(size * size * 3);

  const cx = size / 2 + norm() * size * 0.02;
  const cy = size / 2 + norm() * size * 0.02;
  const angle = rand() * Math.PI;
  const cosA = Math.cos(angle);
  const sinA = Math.sin(angle);
  // scale radius: fraction of the frame; disks are long and thin
  const rMajor = size * (0.10 + rand() * 0.08);
  const axisRatio = cls === 0 ? 0.85 + rand() * 0.15 : 0.18 + rand() * 0.1;
  const rMinor = rMajor * axisRatio;
  const peak = 190 + rand() * 60;
  // slightly different colour balance per class
  const tint: [number, number, number] = cls === 0 ? [1.0, 0.92, 0.78] : [0.85, 0.9, 1.0];

  const stars: Array<[number, number, number]> = [];
  const nStars = 2 + Math.floor(rand() * 4);
  for (let s = 0; s < nStars; s++) {
    stars.push([rand() * size, rand() * size, 120 + rand() * 120]);
  }

  let p = 0;
  for (let y = 0; y < size; y++) {
    for (let x = 0; x < size; x++) {
      const dx = x - cx;
      const dy = y - cy;
      const u = dx * cosA + dy * sinA;
      const v = -dx * sinA + dy * cosA;
      const r = Math.sqrt((u / rMajor) ** 2 + (v / rMinor) ** 2);
      let lum = peak * Math.exp(-1.68 * r);
      for (const [sx, sy, sb] of stars) {
        const d2 = (x - sx) ** 2 + (y - sy) ** 2;
        lum += sb * Math.exp(-d2 / 2.5);
      }
      const sky = 8 + norm() * 3;
      for (let c = 0; c < 3; c++) {
        const value = lum * tint[c] + sky;
        pixels[p++] = value < 0 ? 0 : value > 255 ? 255 : Math.round(value);
      }
    }
  }
  return { width: size, height: size, pixels };
}

export interface SynthSpec {
  id: string;
  cls: GalaxyClass;
  image: RgbImage;
}

/** n images, classes alternating, ids "gal000000"...; fully seed-determined. */
export function synthDataset(n: number, size: number, seed: number): SynthSpec[] {
  const out: SynthSpec[] = [];
  for (let i = 0; i < n; i++) {
    const cls = (i % 2) as GalaxyClass;
    out.push({
      id: `gal${String(i).padStart(6, "0")}`,
      cls,
      image: synthGalaxy(size, cls, seed * 1_000_003 + i),
    });
  }
  return out;
}
