/**
 * Batch training script: binarized dataset in, portable weights document and
 * metrics report out.
 *
 *   node dist/train.js --data binarized.csv --out model.json \
 *       --metrics metrics.json [--hidden 16] [--seed 42] [--split 0.2] \
 *       [--max-iter 500] [--lr 0.05]
 */

import { writeFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { parseArgs } from "node:util";

import { loadBinarized } from "./data.js";
import { DEFAULT_CONFIG, predict, stratifiedSplit, train } from "./mlp.js";
import { classificationReport } from "./metrics.js";
import { buildWeightsDoc, serializeWeightsDoc } from "./weightsDoc.js";

export interface RunOptions {
  data: string;
  out: string;
  metrics?: string;
  hidden: number;
  seed: number;
  split: number;
  maxIter: number;
  learningRate: number;
}

export function runTraining(options: RunOptions) {
  const dataset = loadBinarized(options.data);
  const { trainX, trainY, testX, testY } = stratifiedSplit(
    dataset.xs,
    dataset.ys,
    options.split,
    options.seed,
  );
  const config = {
    ...DEFAULT_CONFIG,
    hiddenSize: options.hidden,
    seed: options.seed,
    maxIter: options.maxIter,
    learningRate: options.learningRate,
  };
  const result = train(trainX, trainY, config);
  const heldOut = classificationReport(
    testY,
    testX.map((x) => predict(result.model, x)),
  );
  const trainReport = classificationReport(
    trainY,
    trainX.map((x) => predict(result.model, x)),
  );
  const warnings: string[] = [];
  if (!result.converged) {
    warnings.push(
      `training did not converge within ${config.maxIter} iterations ` +
        `(final loss ${result.finalLoss.toFixed(6)})`,
    );
  }
  const doc = buildWeightsDoc(result.model, dataset.featureNames);
  const metrics = {
    held_out: heldOut,
    train: trainReport,
    final_loss: result.finalLoss,
    iterations: result.iterations,
    converged: result.converged,
    warnings,
    config: {
      hidden: config.hiddenSize,
      seed: config.seed,
      split: options.split,
      max_iter: config.maxIter,
      learning_rate: config.learningRate,
      rows: dataset.xs.length,
      train_rows: trainX.length,
      test_rows: testX.length,
    },
  };
  writeFileSync(options.out, serializeWeightsDoc(doc));
  if (options.metrics) {
    writeFileSync(options.metrics, JSON.stringify(metrics, null, 1) + "\n");
  }
  return { doc, metrics, model: result.model };
}

function cliMain() {
  const { values } = parseArgs({
    options: {
      data: { type: "string" },
      out: { type: "string" },
      metrics: { type: "string" },
      hidden: { type: "string", default: "16" },
      seed: { type: "string", default: "42" },
      split: { type: "string", default: "0.2" },
      "max-iter": { type: "string", default: "500" },
      lr: { type: "string", default: "0.05" },
    },
  });
  if (!values.data || !values.out) {
    console.error(
      "usage: train --data binarized.csv --out model.json [--metrics metrics.json]" +
        " [--hidden N] [--seed N] [--split F] [--max-iter N] [--lr F]",
    );
    process.exit(2);
  }
  const hidden = Number(values.hidden);
  if (!(hidden >= 1)) {
    console.error(`hidden width must be >= 1, got ${values.hidden}`);
    process.exit(2);
  }
  try {
    const { metrics } = runTraining({
      data: values.data,
      out: values.out,
      metrics: values.metrics,
      hidden,
      seed: Number(values.seed),
      split: Number(values.split),
      maxIter: Number(values["max-iter"]),
      learningRate: Number(values.lr),
    });
    console.log(
      `held-out accuracy ${(metrics.held_out.accuracy * 100).toFixed(2)}%` +
        ` over ${metrics.held_out.total} rows` +
        (metrics.warnings.length ? ` (${metrics.warnings.join("; ")})` : ""),
    );
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    process.exit(3);
  }
}

if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
  cliMain();
}
