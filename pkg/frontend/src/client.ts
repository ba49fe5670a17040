import type {
  AnswerReply,
  ModelList,
  ModelSummary,
  SessionOpened,
  SessionRecord,
  SessionReport,
  SessionState,
} from "./types";

// Served from the same origin as the API (/ui next to /api), so relative
// to the site root by default; VITE_API_BASE points somewhere else in dev.
const BASE: string = import.meta.env?.VITE_API_BASE ?? "";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`${status}: ${detail}`);
    this.name = "ApiError";
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const res = await fetch(`${BASE}${path}`, init);
  if (!res.ok) {
    let detail = res.statusText;
    try {
      const body = await res.json();
      if (typeof body?.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body, keep the status text
    }
    throw new ApiError(res.status, detail);
  }
  return res.json() as Promise<T>;
}

function post<T>(path: string, body: unknown): Promise<T> {
  return request<T>(path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
}

export const listModels = () => request<ModelList>("/api/models");

export const getModel = (id: string) => request<ModelSummary>(`/api/models/${id}`);

export const openSession = (modelId: string, sigma: number) =>
  post<SessionOpened>("/api/sessions", { model_id: modelId, sigma });

export const getSessionState = (sessionId: string) =>
  request<SessionState>(`/api/sessions/${sessionId}`);

export const submitAnswer = (sessionId: string, attribute: string, value: string) =>
  post<AnswerReply>(`/api/sessions/${sessionId}/answers`, { attribute, value });

export const confirmPrediction = (sessionId: string, attribute: string) =>
  post<SessionRecord>(`/api/sessions/${sessionId}/verify`, {
    attribute,
    confirmed: true,
  });

export const correctPrediction = (
  sessionId: string,
  attribute: string,
  correctedValue: string,
) =>
  post<SessionRecord>(`/api/sessions/${sessionId}/verify`, {
    attribute,
    confirmed: false,
    corrected_value: correctedValue,
  });

export const getReport = (sessionId: string) =>
  request<SessionReport>(`/api/sessions/${sessionId}/report`);
