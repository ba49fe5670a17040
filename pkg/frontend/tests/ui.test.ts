/**
 * Scripted interviews against recorded service transcripts, driving the
 * real DOM: the five-question model, answered through clicks, with
 * prediction badges, verification controls, and the final report.
 */

import { beforeEach, describe, expect, it } from "vitest";

import { initApp } from "../src/main";
import type { SessionReport } from "../src/types";
import {
  CONFLICT,
  CORRECTION,
  NEVER_PREDICT,
  SINGLE_BURST,
  WALKTHROUGH,
  flush,
  installFetch,
  scenario,
  transcripts,
} from "./harness";

function reportsFor(sessionId: string): SessionReport[] {
  return transcripts
    .filter((c) => c.path === `/api/sessions/${sessionId}/report`)
    .map((c) => c.response as SessionReport);
}

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="root"></div>';
  root = document.getElementById("root")!;
});

async function startInterview(sigma?: number): Promise<void> {
  initApp(root);
  await flush();
  if (sigma !== undefined) {
    const input = root.querySelector<HTMLInputElement>("#sigma-input")!;
    input.value = String(sigma);
  }
  root.querySelector("form")!.dispatchEvent(new Event("submit", { cancelable: true }));
  await flush();
}

async function answer(label: string): Promise<void> {
  const buttons = [...root.querySelectorAll<HTMLButtonElement>(".option")];
  const target = buttons.find((b) => b.textContent === label);
  expect(target, `option ${label} should be on screen`).toBeTruthy();
  target!.click();
  await flush();
}

const pendingQuestion = () =>
  root.querySelector(".question-attribute")?.textContent ?? null;

const timelineEntries = () => [...root.querySelectorAll<HTMLElement>(".entry")];

const predictedBadges = () =>
  [...root.querySelectorAll<HTMLElement>(".predicted-badge")].map(
    (b) => b.textContent,
  );

describe("interviewer console", () => {
  it("lists stored models on the start form", async () => {
    installFetch(scenario(WALKTHROUGH));
    initApp(root);
    await flush();
    const options = [...root.querySelectorAll<HTMLOptionElement>("#model-select option")];
    expect(options).toHaveLength(1);
    expect(options[0].textContent).toContain("root Income");
    expect(options[0].textContent).toContain("16 rules");
  });

  it("runs the worked example: two asks, a burst of three predictions", async () => {
    installFetch(scenario(WALKTHROUGH));
    await startInterview();

    expect(pendingQuestion()).toBe("Income");
    const optionLabels = [...root.querySelectorAll(".option")].map((b) => b.textContent);
    expect(optionLabels).toEqual(["1", "2", "0"]);

    await answer("0");
    expect(pendingQuestion()).toBe("Work Ability");
    expect(timelineEntries()).toHaveLength(1);
    expect(root.querySelector("#progress")!.textContent).toContain("1 of 5");

    await answer("1");
    expect(pendingQuestion()).toBeNull();
    expect(predictedBadges()).toEqual(["1.00", "1.00", "1.00"]);
    expect(root.querySelector("#progress")!.textContent).toContain("5 of 5");

    // timeline order is the service's visit order, nothing reordered
    const [report] = reportsFor(WALKTHROUGH);
    const names = report.result.visit_order.map((id) => report.attributes[id - 1]);
    expect(timelineEntries().map((e) => e.dataset.attribute)).toEqual(names);

    // confirming a prediction keeps the report at zero corrections
    const education = timelineEntries().find((e) => e.dataset.attribute === "Education")!;
    education.querySelector<HTMLButtonElement>(".confirm")!.click();
    await flush();
    // the repaint swaps the timeline nodes out, so find the entry again
    const confirmed = timelineEntries().find((e) => e.dataset.attribute === "Education")!;
    expect(confirmed.querySelector(".verified")).toBeTruthy();
    expect(root.querySelector(".report-summary")!.textContent).toContain("0 corrected");
  });

  it("shows Education predicted at 1.00 straight after answering Income 1", async () => {
    installFetch(scenario(SINGLE_BURST));
    await startInterview();
    await answer("1");

    const first = timelineEntries()[1]; // entry 0 is the asked Income
    expect(first.dataset.attribute).toBe("Education");
    expect(first.classList.contains("predicted")).toBe(true);
    expect(first.querySelector(".predicted-badge")!.textContent).toBe("1.00");
    expect(first.querySelector(".entry-value")!.textContent).toBe("0");
  });

  it("renders the final report straight from the report body", async () => {
    installFetch(scenario(SINGLE_BURST));
    await startInterview();
    await answer("1");

    const [report] = reportsFor(SINGLE_BURST);
    const rows = [...root.querySelectorAll<HTMLTableRowElement>(".report-table tbody tr")];
    expect(rows).toHaveLength(report.attributes.length);
    rows.forEach((row, j) => {
      const cells = [...row.cells].map((c) => c.textContent);
      expect(cells[0]).toBe(report.attributes[j]);
      expect(cells[1]).toBe(report.final_labels[j]);
      expect(cells[2]).toBe(report.result.indicators[j] ? "predicted" : "asked");
      expect(cells[3]).toBe(report.result.confidences[j].toFixed(2));
    });
    expect(root.querySelector(".report-summary")!.textContent).toContain(
      "1 asked, 4 predicted",
    );
  });

  it("asks every question and shows no badges when sigma is 1.5", async () => {
    const mock = installFetch(scenario(NEVER_PREDICT));
    await startInterview(1.5);

    for (const label of ["0", "1", "1", "1", "0"]) {
      expect(predictedBadges()).toEqual([]);
      await answer(label);
    }
    expect(pendingQuestion()).toBeNull();
    expect(predictedBadges()).toEqual([]);
    expect(timelineEntries().every((e) => e.classList.contains("asked"))).toBe(true);
    expect(root.querySelector(".report-summary")!.textContent).toContain(
      "5 asked, 0 predicted (reduction 0.00)",
    );
    expect(mock.remaining()).toEqual([]);
  });

  it("correcting a predicted value bumps the report's correction count", async () => {
    installFetch(scenario(CORRECTION));
    await startInterview();
    await answer("0");
    await answer("1");
    expect(root.querySelector(".report-summary")!.textContent).toContain("0 corrected");

    const socialSkills = timelineEntries().find(
      (e) => e.dataset.attribute === "Social Skills",
    )!;
    const picker = socialSkills.querySelector<HTMLSelectElement>(".correct-picker")!;
    picker.value = "0";
    picker.dispatchEvent(new Event("change"));
    await flush();

    const corrected = timelineEntries().find(
      (e) => e.dataset.attribute === "Social Skills",
    )!;
    expect(corrected.querySelector(".entry-value")!.textContent).toBe("0");
    expect(corrected.querySelector(".corrected")!.textContent).toBe("was 1");
    expect(root.querySelector(".report-summary")!.textContent).toContain("1 corrected");

    const [, after] = reportsFor(CORRECTION);
    expect(after.result.corrections).toHaveLength(1);
    const rows = [...root.querySelectorAll<HTMLTableRowElement>(".report-table tbody tr")];
    expect(rows[2].cells[1].textContent).toBe("0"); // Social Skills row, corrected
  });

  it("recovers from a conflict by refetching the session state", async () => {
    installFetch(scenario(CONFLICT));
    await startInterview();
    await answer("0");
    expect(pendingQuestion()).toBe("Work Ability");

    // the next answer draws the recorded 409 (another writer got there first)
    await answer("1");
    expect(root.querySelector(".banner")!.textContent).toContain("state refreshed");
    expect(pendingQuestion()).toBe("Work Ability");
    expect(timelineEntries()).toHaveLength(1); // the lost answer was not invented
  });

  it("keeps local state and offers a retry when the network fails", async () => {
    const mock = installFetch(scenario(CONFLICT));
    await startInterview();
    await answer("0");
    // drain the recorded calls; the next fetch rejects like a dead network
    while (mock.remaining().length > 0) {
      await answer("1");
    }

    await answer("1");
    const banner = root.querySelector(".banner")!;
    expect(banner.textContent).toContain("Network problem");
    expect(banner.querySelector(".retry")).toBeTruthy();
    expect(pendingQuestion()).toBe("Work Ability"); // nothing lost or invented
    expect(timelineEntries()).toHaveLength(1);
  });
});
