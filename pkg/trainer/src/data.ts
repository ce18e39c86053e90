/** Binarized dataset file: CSV header of feature names + "label", 0/1 rows. */

import { readFileSync } from "node:fs";

export interface Dataset {
  featureNames: string[];
  xs: number[][];
  ys: number[];
}

export function parseBinarizedCsv(text: string): Dataset {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) throw new Error("empty dataset file");
  const header = lines[0].split(",");
  if (header[header.length - 1] !== "label") {
    throw new Error(`last column must be "label", got "${header[header.length - 1]}"`);
  }
  const featureNames = header.slice(0, -1);
  if (featureNames.length === 0) throw new Error("no feature columns");
  const xs: number[][] = [];
  const ys: number[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new Error(`row ${i - 1}: expected ${header.length} columns, got ${cells.length}`);
    }
    const values = cells.map((cell) => {
      const v = Number(cell);
      if (v !== 0 && v !== 1) throw new Error(`row ${i - 1}: non-binary value "${cell}"`);
      return v;
    });
    xs.push(values.slice(0, -1));
    ys.push(values[values.length - 1]);
  }
  if (xs.length === 0) throw new Error("dataset file has no data rows");
  return { featureNames, xs, ys };
}

export function loadBinarized(path: string): Dataset {
  return parseBinarizedCsv(readFileSync(path, "utf-8"));
}
