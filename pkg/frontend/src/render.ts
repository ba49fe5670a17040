/**
 * DOM rendering, no framework.  Each function replaces the content of one
 * region; main.ts decides when regions are refreshed.
 */

import type { InterviewState, PredictedEntry } from "./interview";
import type { ModelSummary, SessionReport } from "./types";

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function option(text: string, value: string): HTMLOptionElement {
  const opt = document.createElement("option");
  opt.value = value;
  opt.textContent = text;
  return opt;
}

export function renderStartForm(
  root: HTMLElement,
  models: ModelSummary[],
  onStart: (modelId: string, sigma: number) => void,
): void {
  root.innerHTML = "";
  const form = el("form", "start-form");

  const select = document.createElement("select");
  select.id = "model-select";
  for (const m of models) {
    const opt = document.createElement("option");
    opt.value = m.id;
    opt.textContent = `${m.name} (root ${m.root_attribute}, ${m.rule_count} rules)`;
    select.appendChild(opt);
  }

  const sigma = document.createElement("input");
  sigma.id = "sigma-input";
  sigma.type = "number";
  sigma.step = "0.05";
  sigma.min = "0";
  sigma.value = "0.8";

  const button = el("button", "primary", "Start interview") as HTMLButtonElement;
  button.type = "submit";
  button.disabled = models.length === 0;

  form.appendChild(labelled("Model", select));
  form.appendChild(labelled("Confidence threshold σ", sigma));
  form.appendChild(button);
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    onStart(select.value, Number(sigma.value));
  });
  root.appendChild(form);
  if (models.length === 0) {
    root.appendChild(el("p", "muted", "No models stored yet; train one first."));
  }
}

function labelled(text: string, control: HTMLElement): HTMLElement {
  const wrap = el("label", "field");
  wrap.appendChild(el("span", "field-name", text));
  wrap.appendChild(control);
  return wrap;
}

export function renderProgress(root: HTMLElement, state: InterviewState): void {
  root.innerHTML = "";
  root.appendChild(
    el("span", "progress-text", `${state.resolved} of ${state.total} resolved`),
  );
  const bar = el("div", "bar");
  const fill = el("div", "bar-fill");
  fill.style.width = `${(100 * state.resolved) / state.total}%`;
  bar.appendChild(fill);
  root.appendChild(bar);
}

export function renderQuestion(
  root: HTMLElement,
  state: InterviewState,
  onAnswer: (value: string) => void,
): void {
  root.innerHTML = "";
  const ask = state.pendingAsk;
  if (!ask) return;
  const card = el("div", "question-card");
  card.appendChild(el("h2", "question-attribute", ask.attribute));
  const options = el("div", "options");
  for (const label of ask.options) {
    const button = el("button", "option", label) as HTMLButtonElement;
    button.type = "button";
    button.addEventListener("click", () => onAnswer(label));
    options.appendChild(button);
  }
  card.appendChild(options);
  root.appendChild(card);
}

export function renderTimeline(
  root: HTMLElement,
  state: InterviewState,
  onConfirm: (attribute: string) => void,
  onCorrect: (attribute: string, value: string) => void,
): void {
  root.innerHTML = "";
  const list = el("ol", "timeline");
  for (const entry of state.timeline) {
    const item = el("li", `entry ${entry.kind}`);
    item.dataset.attribute = entry.attribute;
    item.appendChild(el("span", "entry-attribute", entry.attribute));
    item.appendChild(el("span", "entry-value", state.finalValue(entry)));
    if (entry.kind === "predicted") {
      item.appendChild(
        el("span", "badge predicted-badge", entry.confidence.toFixed(2)),
      );
      item.appendChild(verificationControls(entry, state, onConfirm, onCorrect));
    } else {
      item.appendChild(el("span", "badge asked-badge", "asked"));
    }
    list.appendChild(item);
  }
  root.appendChild(list);
}

function verificationControls(
  entry: PredictedEntry,
  state: InterviewState,
  onConfirm: (attribute: string) => void,
  onCorrect: (attribute: string, value: string) => void,
): HTMLElement {
  const wrap = el("span", "verify");
  if (entry.verification === "confirmed") {
    wrap.appendChild(el("span", "verified", "✓"));
    return wrap;
  }
  if (entry.verification === "corrected") {
    wrap.appendChild(el("span", "corrected", `was ${entry.value}`));
    return wrap;
  }
  const confirm = el("button", "confirm", "confirm") as HTMLButtonElement;
  confirm.type = "button";
  confirm.addEventListener("click", () => onConfirm(entry.attribute));
  wrap.appendChild(confirm);

  const picker = document.createElement("select");
  picker.className = "correct-picker";
  picker.appendChild(option("correct to…", ""));
  for (const label of state.domainOf(entry.attribute)) {
    if (label !== entry.value) picker.appendChild(option(label, label));
  }
  picker.addEventListener("change", () => {
    if (picker.value) onCorrect(entry.attribute, picker.value);
  });
  wrap.appendChild(picker);
  return wrap;
}

export function renderReport(
  root: HTMLElement,
  report: SessionReport,
  state: InterviewState,
): void {
  root.innerHTML = "";
  const panel = el("div", "report-panel");
  panel.appendChild(el("h2", undefined, "Interview report"));

  const asked = report.result.indicators.filter((i) => i === 0).length;
  const predicted = report.result.indicators.length - asked;
  const reduction = predicted / report.result.indicators.length;
  const summary = el("p", "report-summary");
  summary.textContent =
    `${asked} asked, ${predicted} predicted ` +
    `(reduction ${reduction.toFixed(2)}), ` +
    `${report.result.corrections.length} corrected`;
  panel.appendChild(summary);

  const table = document.createElement("table");
  table.className = "report-table";
  const head = el("tr");
  for (const title of ["Attribute", "Final value", "How", "Confidence"]) {
    head.appendChild(el("th", undefined, title));
  }
  const thead = el("thead");
  thead.appendChild(head);
  table.appendChild(thead);
  const body = el("tbody");
  report.attributes.forEach((name, j) => {
    const row = el("tr");
    row.appendChild(el("td", undefined, name));
    row.appendChild(el("td", undefined, report.final_labels[j]));
    row.appendChild(
      el("td", undefined, report.result.indicators[j] ? "predicted" : "asked"),
    );
    row.appendChild(el("td", undefined, report.result.confidences[j].toFixed(2)));
    body.appendChild(row);
  });
  table.appendChild(body);
  panel.appendChild(table);

  if (state.correctionCount !== report.result.corrections.length) {
    // should never happen; the service is authoritative, flag loudly
    panel.appendChild(
      el("p", "mismatch", "local correction count disagrees with the report"),
    );
  }
  root.appendChild(panel);
}

export function renderBanner(
  root: HTMLElement,
  message: string | null,
  onRetry?: () => void,
): void {
  root.innerHTML = "";
  if (message === null) return;
  const banner = el("div", "banner", message);
  if (onRetry) {
    const retry = el("button", "retry", "retry") as HTMLButtonElement;
    retry.type = "button";
    retry.addEventListener("click", onRetry);
    banner.appendChild(retry);
  }
  root.appendChild(banner);
}
