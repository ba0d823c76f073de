import * as fs from "fs";

/** 8-bit RGB image, row-major, 3 bytes per pixel. */
export interface RgbImage {
  width: number;
  height: number;
  pixels: Uint8Array;
}

// Binary PPM (P6) with maxval 255. Header tokens may be separated by any
// whitespace and '#' comments; pixel data starts right after the single
// whitespace byte following the maxval token.
export function decodePpm(buf: Buffer): RgbImage {
  if (buf.length < 2 || buf[0] !== 0x50 || buf[1] !== 0x36) {
    throw new Error("not a P6 ppm file");
  }
  let pos = 2;
  const tokens: number[] = [];
  while (tokens.length < 3) {
    while (pos < buf.length && isSpace(buf[pos])) pos++;
    if (pos < buf.length && buf[pos] === 0x23) {
      while (pos < buf.length && buf[pos] !== 0x0a) pos++;
      continue;
    }
    let start = pos;
    while (pos < buf.length && !isSpace(buf[pos])) pos++;
    if (pos === start) throw new Error("truncated ppm header");
    tokens.push(parseInt(buf.toString("ascii", start, pos), 10));
  }
  pos++; // the single whitespace byte after maxval
  const [width, height, maxval] = tokens;
  if (!(width > 0) || !(height > 0)) throw new Error("bad ppm dimensions");
  if (maxval !== 255) throw new Error(`unsupported ppm maxval ${maxval}`);
  const need = width * height * 3;
  if (buf.length - pos < need) {
    throw new Error(`ppm pixel data truncated: need ${need}, have ${buf.length - pos}`);
  }
  return { width, height, pixels: new Uint8Array(buf.buffer, buf.byteOffset + pos, need) };
}

export function encodePpm(img: RgbImage): Buffer {
  const header = Buffer.from(`P6\n${img.width} ${img.height}\n255\n`, "ascii");
  return Buffer.concat([header, Buffer.from(img.pixels)]);
}

export function readPpm(path: string): RgbImage {
  return decodePpm(fs.readFileSync(path));
}

export function writePpm(path: string, img: RgbImage): void {
  fs.writeFileSync(path, encodePpm(img));
}

function isSpace(b: number): boolean {
  return b === 0x20 || b === 0x09 || b === 0x0a || b === 0x0d || b === 0x0b || b === 0x0c;
}
