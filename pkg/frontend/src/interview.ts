/**
 * Client-side interview state.
 *
 * Tracks the timeline in the order the service resolves attributes, the
 * pending question, and the verification status of every predicted entry.
 * Pure bookkeeping: every value stored here arrived in a service response
 * or was typed by the interviewer; nothing is inferred client-side.
 */

import type { AskStep, AttributeSummary, SessionState, Step } from "./types";

export interface AskedEntry {
  kind: "asked";
  attribute: string;
  value: string;
}

export interface PredictedEntry {
  kind: "predicted";
  attribute: string;
  value: string;
  confidence: number;
  verification: "pending" | "confirmed" | "corrected";
  correctedValue?: string;
}

export type TimelineEntry = AskedEntry | PredictedEntry;

export class InterviewState {
  readonly timeline: TimelineEntry[] = [];
  pendingAsk: AskStep | null = null;
  finished = false;

  constructor(
    readonly sessionId: string,
    readonly schema: AttributeSummary[],
    openingStep: Step,
  ) {
    this.applySteps([openingStep]);
  }

  get total(): number {
    return this.schema.length;
  }

  get resolved(): number {
    return this.timeline.length;
  }

  get predictedCount(): number {
    return this.timeline.filter((e) => e.kind === "predicted").length;
  }

  get correctionCount(): number {
    return this.timeline.filter(
      (e) => e.kind === "predicted" && e.verification === "corrected",
    ).length;
  }

  /** fraction of questions never asked, the session's reduction */
  get reduction(): number {
    return this.total === 0 ? 0 : this.predictedCount / this.total;
  }

  entryFor(attribute: string): TimelineEntry | undefined {
    return this.timeline.find((e) => e.attribute === attribute);
  }

  domainOf(attribute: string): string[] {
    const col = this.schema.find((a) => a.name === attribute);
    if (!col) throw new Error(`unknown attribute ${attribute}`);
    return col.domain;
  }

  /** The interviewer answered the pending question; the burst follows separately. */
  recordAnswer(value: string): void {
    if (!this.pendingAsk) throw new Error("no question is pending");
    this.timeline.push({
      kind: "asked",
      attribute: this.pendingAsk.attribute,
      value,
    });
    this.pendingAsk = null;
  }

  applySteps(steps: Step[]): void {
    for (const step of steps) {
      if (step.type === "predicted") {
        this.timeline.push({
          kind: "predicted",
          attribute: step.attribute,
          value: step.value,
          confidence: step.confidence,
          verification: "pending",
        });
      } else if (step.type === "ask") {
        this.pendingAsk = step;
      } else {
        this.finished = true;
        this.pendingAsk = null;
      }
    }
  }

  markConfirmed(attribute: string): void {
    const entry = this.requirePredicted(attribute);
    entry.verification = "confirmed";
  }

  markCorrected(attribute: string, correctedValue: string): void {
    const entry = this.requirePredicted(attribute);
    entry.verification = "corrected";
    entry.correctedValue = correctedValue;
  }

  /** Final label per the interview, corrections applied. */
  finalValue(entry: TimelineEntry): string {
    return entry.kind === "predicted" && entry.correctedValue !== undefined
      ? entry.correctedValue
      : entry.value;
  }

  /**
   * Re-align with a freshly fetched state after a lost response or a 409.
   * The service is the source of truth for what is pending or finished;
   * the local timeline keeps what it has (it only ever lags, never leads).
   */
  reconcile(state: SessionState): void {
    if (state.record.status === "finished") {
      this.finished = true;
      this.pendingAsk = null;
      return;
    }
    if (state.step.type === "ask") {
      this.pendingAsk = state.step;
      this.finished = false;
    }
  }

  private requirePredicted(attribute: string): PredictedEntry {
    const entry = this.entryFor(attribute);
    if (!entry || entry.kind !== "predicted") {
      throw new Error(`${attribute} was not predicted`);
    }
    return entry;
  }
}
