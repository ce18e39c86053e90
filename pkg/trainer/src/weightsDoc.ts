/**
 * Portable weights document: the interchange format the explainer consumes.
 * JSON numbers serialize via shortest round-trip decimals, so the weights
 * survive the text round-trip bit-exactly.
 */

import type { Mlp } from "./mlp.js";
import { PROTECTED_FEATURE, questionFor } from "./survey.js";

export interface WeightsDoc {
  n: number;
  feature_names: string[];
  questions: string[];
  protected_index?: number;
  layers: { weights: number[][]; bias: number[] }[];
  activation: "relu";
  output_rule: "logit_ge_0";
}

export function buildWeightsDoc(model: Mlp, featureNames: string[]): WeightsDoc {
  if (featureNames.length !== model.inputSize) {
    throw new Error(
      `${featureNames.length} feature names for ${model.inputSize} inputs`,
    );
  }
  const doc: WeightsDoc = {
    n: model.inputSize,
    feature_names: [...featureNames],
    questions: featureNames.map(questionFor),
    layers: [
      { weights: model.w1.map((row) => [...row]), bias: [...model.b1] },
      { weights: model.w2.map((row) => [...row]), bias: [...model.b2] },
    ],
    activation: "relu",
    output_rule: "logit_ge_0",
  };
  const protectedIndex = featureNames.indexOf(PROTECTED_FEATURE);
  if (protectedIndex >= 0) doc.protected_index = protectedIndex;
  return doc;
}

export function serializeWeightsDoc(doc: WeightsDoc): string {
  return JSON.stringify(doc, null, 1) + "\n";
}
