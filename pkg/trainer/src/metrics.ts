/** Held-out classification metrics: accuracy plus per-class precision/recall/F1. */

export interface ClassMetrics {
  precision: number;
  recall: number;
  f1: number;
  support: number;
}

export interface ClassificationReport {
  accuracy: number;
  negative: ClassMetrics;
  positive: ClassMetrics;
  total: number;
}

function classMetrics(
  actual: number[],
  predicted: number[],
  label: number,
): ClassMetrics {
  let tp = 0;
  let fp = 0;
  let fn = 0;
  let support = 0;
  for (let i = 0; i < actual.length; i++) {
    const isClass = actual[i] === label;
    const said = predicted[i] === label;
    if (isClass) support++;
    if (said && isClass) tp++;
    else if (said && !isClass) fp++;
    else if (!said && isClass) fn++;
  }
  const precision = tp + fp > 0 ? tp / (tp + fp) : 0;
  const recall = tp + fn > 0 ? tp / (tp + fn) : 0;
  const f1 = precision + recall > 0 ? (2 * precision * recall) / (precision + recall) : 0;
  return { precision, recall, f1, support };
}

export function classificationReport(
  actual: number[],
  predicted: number[],
): ClassificationReport {
  if (actual.length !== predicted.length || actual.length === 0) {
    throw new Error("actual/predicted label arrays must be nonempty and aligned");
  }
  let correct = 0;
  for (let i = 0; i < actual.length; i++) if (actual[i] === predicted[i]) correct++;
  return {
    accuracy: correct / actual.length,
    negative: classMetrics(actual, predicted, 0),
    positive: classMetrics(actual, predicted, 1),
    total: actual.length,
  };
}
