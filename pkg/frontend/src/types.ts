/**
 * Wire shapes of the interview service.
 *
 * Everything here mirrors a JSON body documented in docs/api.md; the UI
 * never invents fields beyond these.  Values cross the wire as labels
 * (strings), never as indices.
 */

export interface AskStep {
  type: "ask";
  attribute: string;
  /** legal labels, in the model's stored domain order */
  options: string[];
}

export interface PredictedStep {
  type: "predicted";
  attribute: string;
  value: string;
  /** stored confidence that cleared the session's sigma */
  confidence: number;
}

export interface FinishedStep {
  type: "finished";
}

export type Step = AskStep | PredictedStep | FinishedStep;

export interface AttributeSummary {
  name: string;
  domain: string[];
  index: number;
}

export interface ModelSummary {
  id: string;
  name: string;
  created_at: string;
  root_attribute: string;
  depth: number;
  rule_count: number;
  schema_digest: string;
  schema: AttributeSummary[];
}

export interface ModelList {
  models: ModelSummary[];
}

export interface SessionOpened {
  session_id: string;
  step: Step;
}

export interface AnswerReply {
  steps: Step[];
}

export interface Correction {
  attribute: string;
  predicted: string;
  corrected: string;
}

export interface SessionRecord {
  status: "awaiting_answer" | "finished";
  pending: string | null;
  final_labels: (string | null)[];
  indicators: number[];
  corrections: Correction[];
}

export interface SessionState {
  model_id: string;
  sigma: number;
  record: SessionRecord;
  step: Step;
}

export interface SessionReport {
  result: {
    final_values: number[];
    indicators: number[];
    confidences: number[];
    visit_order: number[];
    corrections: number[][];
  };
  attributes: string[];
  final_labels: string[];
  model_id: string;
  sigma: number;
}
