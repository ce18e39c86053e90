/**
 * Single-hidden-layer network with ReLU hidden units and a logistic output,
 * trained full-batch with Adam on binary cross-entropy.  Everything is
 * plain-array double arithmetic in a fixed order, so a fixed seed gives a
 * bit-identical model on every run.
 *
 * The exported decision rule drops the sigmoid: sigmoid(z) >= 0.5 iff the
 * raw logit z >= 0, which is exactly the consumer's threshold.
 */

import { mulberry32, shuffle, uniform } from "./rng.js";

export interface Mlp {
  inputSize: number;
  hiddenSize: number;
  w1: number[][]; // hiddenSize x inputSize
  b1: number[];
  w2: number[][]; // 1 x hiddenSize
  b2: number[];
}

export interface TrainConfig {
  hiddenSize: number;
  seed: number;
  maxIter: number;
  learningRate: number;
  /** stop once the best loss has not improved by this much for `patience` iterations */
  tolerance: number;
  patience: number;
}

export const DEFAULT_CONFIG: TrainConfig = {
  hiddenSize: 16,
  seed: 42,
  maxIter: 500,
  learningRate: 0.05,
  tolerance: 1e-4,
  patience: 10,
};

export interface TrainResult {
  model: Mlp;
  iterations: number;
  finalLoss: number;
  converged: boolean;
}

function zeros(rows: number, cols: number): number[][] {
  return Array.from({ length: rows }, () => new Array<number>(cols).fill(0));
}

export function initMlp(inputSize: number, hiddenSize: number, seed: number): Mlp {
  const rand = mulberry32(seed);
  const limit1 = Math.sqrt(6 / (inputSize + hiddenSize));
  const limit2 = Math.sqrt(6 / (hiddenSize + 1));
  const w1 = Array.from({ length: hiddenSize }, () =>
    Array.from({ length: inputSize }, () => uniform(rand, -limit1, limit1)),
  );
  const w2 = [Array.from({ length: hiddenSize }, () => uniform(rand, -limit2, limit2))];
  return {
    inputSize,
    hiddenSize,
    w1,
    b1: new Array(hiddenSize).fill(0),
    w2,
    b2: [0],
  };
}

/** Raw pre-sigmoid output; >= 0 means the positive class. */
export function logit(model: Mlp, x: ArrayLike<number>): number {
  let out = model.b2[0];
  for (let u = 0; u < model.hiddenSize; u++) {
    let z = model.b1[u];
    const row = model.w1[u];
    for (let j = 0; j < model.inputSize; j++) z += row[j] * x[j];
    if (z > 0) out += model.w2[0][u] * z;
  }
  return out;
}

export function predict(model: Mlp, x: ArrayLike<number>): 0 | 1 {
  return logit(model, x) >= 0 ? 1 : 0;
}

function sigmoid(z: number): number {
  return z >= 0 ? 1 / (1 + Math.exp(-z)) : Math.exp(z) / (1 + Math.exp(z));
}

/** Mean binary cross-entropy over the batch (numerically stabilized). */
export function loss(model: Mlp, xs: number[][], ys: number[]): number {
  let total = 0;
  for (let i = 0; i < xs.length; i++) {
    const z = logit(model, xs[i]);
    // log(1 + e^-|z|) + max(z, 0) - y z  ==  -(y log p + (1-y) log(1-p))
    total += Math.log(1 + Math.exp(-Math.abs(z))) + Math.max(z, 0) - ys[i] * z;
  }
  return total / xs.length;
}

/** Mean gradient of the batch loss, by backpropagation. */
export function gradients(model: Mlp, xs: number[][], ys: number[]) {
  const gw1 = zeros(model.hiddenSize, model.inputSize);
  const gb1 = new Array<number>(model.hiddenSize).fill(0);
  const gw2 = zeros(1, model.hiddenSize);
  let gb2 = 0;
  const scale = 1 / xs.length;
  for (let i = 0; i < xs.length; i++) {
    const x = xs[i];
    const z1 = new Array<number>(model.hiddenSize);
    const a1 = new Array<number>(model.hiddenSize);
    let z2 = model.b2[0];
    for (let u = 0; u < model.hiddenSize; u++) {
      let z = model.b1[u];
      const row = model.w1[u];
      for (let j = 0; j < model.inputSize; j++) z += row[j] * x[j];
      z1[u] = z;
      a1[u] = z > 0 ? z : 0;
      z2 += model.w2[0][u] * a1[u];
    }
    const delta2 = (sigmoid(z2) - ys[i]) * scale;
    gb2 += delta2;
    for (let u = 0; u < model.hiddenSize; u++) {
      gw2[0][u] += delta2 * a1[u];
      if (z1[u] > 0) {
        const delta1 = delta2 * model.w2[0][u];
        gb1[u] += delta1;
        const row = gw1[u];
        for (let j = 0; j < model.inputSize; j++) row[j] += delta1 * x[j];
      }
    }
  }
  return { gw1, gb1, gw2, gb2: [gb2] };
}

interface AdamState {
  m: number[];
  v: number[];
  t: number;
}

function adamStep(
  state: AdamState,
  params: number[],
  grads: number[],
  lr: number,
): void {
  const beta1 = 0.9;
  const beta2 = 0.999;
  const eps = 1e-8;
  const t = state.t;
  for (let i = 0; i < params.length; i++) {
    state.m[i] = beta1 * state.m[i] + (1 - beta1) * grads[i];
    state.v[i] = beta2 * state.v[i] + (1 - beta2) * grads[i] * grads[i];
    const mHat = state.m[i] / (1 - Math.pow(beta1, t));
    const vHat = state.v[i] / (1 - Math.pow(beta2, t));
    params[i] -= (lr * mHat) / (Math.sqrt(vHat) + eps);
  }
}

export function train(
  xs: number[][],
  ys: number[],
  config: TrainConfig = DEFAULT_CONFIG,
): TrainResult {
  if (xs.length === 0) throw new Error("cannot train on an empty dataset");
  const model = initMlp(xs[0].length, config.hiddenSize, config.seed);
  // parameter rows updated in place: w1 rows, b1, w2 row, b2
  const paramRows: number[][] = [...model.w1, model.b1, ...model.w2, model.b2];
  const states: AdamState[] = paramRows.map((row) => ({
    m: new Array(row.length).fill(0),
    v: new Array(row.length).fill(0),
    t: 0,
  }));

  let best = Number.POSITIVE_INFINITY;
  let current = Number.POSITIVE_INFINITY;
  let sinceImprovement = 0;
  let iterations = 0;
  let converged = false;
  for (let iter = 1; iter <= config.maxIter; iter++) {
    iterations = iter;
    const g = gradients(model, xs, ys);
    const gradRows: number[][] = [...g.gw1, g.gb1, ...g.gw2, g.gb2];
    for (let r = 0; r < paramRows.length; r++) {
      states[r].t = iter;
      adamStep(states[r], paramRows[r], gradRows[r], config.learningRate);
    }
    current = loss(model, xs, ys);
    if (current < best - config.tolerance) {
      best = current;
      sinceImprovement = 0;
    } else {
      sinceImprovement++;
    }
    if (sinceImprovement >= config.patience) {
      converged = true;
      break;
    }
  }
  return { model, iterations, finalLoss: current, converged };
}

/** Deterministic stratified split: same label mix in train and held-out sets. */
export function stratifiedSplit(
  xs: number[][],
  ys: number[],
  testFraction: number,
  seed: number,
): { trainX: number[][]; trainY: number[]; testX: number[][]; testY: number[] } {
  if (!(testFraction > 0 && testFraction < 1)) {
    throw new Error(`split fraction must be in (0,1), got ${testFraction}`);
  }
  const rand = mulberry32(seed ^ 0x5f3759df);
  const byLabel: Record<number, number[]> = { 0: [], 1: [] };
  ys.forEach((y, i) => byLabel[y].push(i));
  const trainIdx: number[] = [];
  const testIdx: number[] = [];
  for (const label of [0, 1]) {
    const indices = shuffle(rand, [...byLabel[label]]);
    const take = Math.round(indices.length * testFraction);
    if (indices.length > 0 && (take === 0 || take === indices.length)) {
      throw new Error("dataset too small for a stratified split");
    }
    testIdx.push(...indices.slice(0, take));
    trainIdx.push(...indices.slice(take));
  }
  trainIdx.sort((a, b) => a - b);
  testIdx.sort((a, b) => a - b);
  return {
    trainX: trainIdx.map((i) => xs[i]),
    trainY: trainIdx.map((i) => ys[i]),
    testX: testIdx.map((i) => xs[i]),
    testY: testIdx.map((i) => ys[i]),
  };
}
