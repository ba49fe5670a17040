/**
 * Interviewer console: pick a model and threshold, run the interview,
 * verify or correct predicted answers inline, read the final report.
 *
 * One active session per tab.  All mutation goes through the service; on
 * errors the last action is kept for the retry banner, and a 409 (lost
 * race or stale tab) refetches the authoritative session state.
 */

import {
  ApiError,
  confirmPrediction,
  correctPrediction,
  getReport,
  getSessionState,
  listModels,
  openSession,
  submitAnswer,
} from "./client";
import { InterviewState } from "./interview";
import {
  renderBanner,
  renderProgress,
  renderQuestion,
  renderReport,
  renderStartForm,
  renderTimeline,
} from "./render";
import type { ModelSummary } from "./types";

interface Regions {
  start: HTMLElement;
  progress: HTMLElement;
  question: HTMLElement;
  timeline: HTMLElement;
  report: HTMLElement;
  banner: HTMLElement;
}

class App {
  private regions: Regions;
  private models: ModelSummary[] = [];
  private state: InterviewState | null = null;
  private lastAction: (() => Promise<void>) | null = null;

  constructor(root: HTMLElement) {
    root.innerHTML = `
      <header class="header"><h1>fpqm interviewer</h1></header>
      <div id="banner"></div>
      <section id="start"></section>
      <section id="progress"></section>
      <section id="question"></section>
      <section id="timeline"></section>
      <section id="report"></section>
    `;
    const region = (id: string) => root.querySelector<HTMLElement>(`#${id}`)!;
    this.regions = {
      start: region("start"),
      progress: region("progress"),
      question: region("question"),
      timeline: region("timeline"),
      report: region("report"),
      banner: region("banner"),
    };
  }

  async boot(): Promise<void> {
    await this.guarded(async () => {
      this.models = (await listModels()).models;
      renderStartForm(this.regions.start, this.models, (modelId, sigma) => {
        void this.start(modelId, sigma);
      });
    });
  }

  private async start(modelId: string, sigma: number): Promise<void> {
    await this.guarded(async () => {
      const summary = this.models.find((m) => m.id === modelId);
      if (!summary) throw new Error(`model ${modelId} not in the list`);
      const opened = await openSession(modelId, sigma);
      this.state = new InterviewState(opened.session_id, summary.schema, opened.step);
      this.regions.start.innerHTML = "";
      this.repaint();
    });
  }

  private async answer(value: string): Promise<void> {
    const state = this.state;
    if (!state || !state.pendingAsk) return;
    const attribute = state.pendingAsk.attribute;
    await this.guarded(async () => {
      const reply = await submitAnswer(state.sessionId, attribute, value);
      state.recordAnswer(value);
      state.applySteps(reply.steps);
      this.repaint();
      if (state.finished) await this.showReport();
    });
  }

  private async confirm(attribute: string): Promise<void> {
    const state = this.state;
    if (!state) return;
    await this.guarded(async () => {
      await confirmPrediction(state.sessionId, attribute);
      state.markConfirmed(attribute);
      this.repaint();
      if (state.finished) await this.showReport();
    });
  }

  private async correct(attribute: string, value: string): Promise<void> {
    const state = this.state;
    if (!state) return;
    await this.guarded(async () => {
      await correctPrediction(state.sessionId, attribute, value);
      state.markCorrected(attribute, value);
      this.repaint();
      if (state.finished) await this.showReport();
    });
  }

  private async showReport(): Promise<void> {
    const state = this.state;
    if (!state) return;
    const report = await getReport(state.sessionId);
    renderReport(this.regions.report, report, state);
  }

  private repaint(): void {
    const state = this.state;
    if (!state) return;
    renderProgress(this.regions.progress, state);
    renderQuestion(this.regions.question, state, (v) => void this.answer(v));
    renderTimeline(
      this.regions.timeline,
      state,
      (a) => void this.confirm(a),
      (a, v) => void this.correct(a, v),
    );
  }

  /** Run an action; on failure keep it around for the retry button. */
  private async guarded(action: () => Promise<void>): Promise<void> {
    this.lastAction = action;
    renderBanner(this.regions.banner, null);
    try {
      await action();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409 && this.state) {
        const fresh = await getSessionState(this.state.sessionId);
        this.state.reconcile(fresh);
        this.repaint();
        if (this.state.finished) await this.showReport();
        renderBanner(this.regions.banner, `Out of turn (${err.detail}); state refreshed.`);
        return;
      }
      const message = err instanceof ApiError ? err.message : `Network problem: ${err}`;
      renderBanner(this.regions.banner, message, () => {
        const retry = this.lastAction;
        if (retry) void this.guarded(retry);
      });
    }
  }
}

export function initApp(root: HTMLElement): App {
  const app = new App(root);
  void app.boot();
  return app;
}

const mount = document.getElementById("app");
if (mount) initApp(mount);
