import { afterEach, describe, expect, it, vi } from "vitest";

import {
  ApiError,
  confirmPrediction,
  correctPrediction,
  listModels,
  openSession,
  submitAnswer,
} from "../src/client";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("client", () => {
  it("returns the parsed body on success", async () => {
    vi.stubGlobal("fetch", vi.fn().mockResolvedValue(jsonResponse({ models: [] })));
    expect(await listModels()).toEqual({ models: [] });
  });

  it("posts the documented answer body", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse({ steps: [] }));
    vi.stubGlobal("fetch", fetchMock);
    await submitAnswer("s1", "Income", "2");
    const [url, init] = fetchMock.mock.calls[0];
    expect(url).toBe("/api/sessions/s1/answers");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body)).toEqual({ attribute: "Income", value: "2" });
  });

  it("sends confirmation and correction shapes distinctly", async () => {
    // a fresh Response per call; a body can only be read once
    const fetchMock = vi
      .fn()
      .mockImplementation(async () => jsonResponse({ status: "finished" }));
    vi.stubGlobal("fetch", fetchMock);
    await confirmPrediction("s1", "Education");
    await correctPrediction("s1", "Education", "0");
    expect(JSON.parse(fetchMock.mock.calls[0][1].body)).toEqual({
      attribute: "Education",
      confirmed: true,
    });
    expect(JSON.parse(fetchMock.mock.calls[1][1].body)).toEqual({
      attribute: "Education",
      confirmed: false,
      corrected_value: "0",
    });
  });

  it("turns an error body's detail into an ApiError", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(jsonResponse({ detail: "no model 'zzz'" }, 404)),
    );
    const err = await openSession("zzz", 0.8).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(404);
    expect(err.detail).toBe("no model 'zzz'");
  });

  it("falls back to the status text for non-JSON error bodies", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(
        new Response("<html>boom</html>", { status: 500, statusText: "Internal Server Error" }),
      ),
    );
    const err = await listModels().catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.detail).toBe("Internal Server Error");
  });

  it("lets network failures surface as-is", async () => {
    vi.stubGlobal("fetch", vi.fn().mockRejectedValue(new TypeError("fetch failed")));
    const err = await listModels().catch((e) => e);
    expect(err).toBeInstanceOf(TypeError);
    expect(err).not.toBeInstanceOf(ApiError);
  });
});
