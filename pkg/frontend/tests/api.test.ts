import { describe, expect, it } from "vitest";

import { ApiError, FriaApi } from "../src/api";

type Call = { url: string; init?: RequestInit };

function fakeFetch(status: number, body: string, contentType = "application/json") {
  const calls: Call[] = [];
  const impl = (async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    return new Response(body, {
      status,
      headers: { "content-type": contentType },
    });
  }) as unknown as typeof fetch;
  return { impl, calls };
}

describe("api client", () => {
  it("carries the version token on answer writes", async () => {
    const { impl, calls } = fakeFetch(200, JSON.stringify({ version: 5, next_required: null }));
    const api = new FriaApi("http://service", impl);
    await api.submitAnswer("rec", "usage-duration", "value", 4);
    expect(calls[0].url).toBe("http://service/records/rec/answers");
    const body = JSON.parse(String(calls[0].init?.body));
    expect(body).toEqual({ question_id: "usage-duration", value: "value", version: 4 });
  });

  it("maps 409 to a conflict error", async () => {
    const { impl } = fakeFetch(409, JSON.stringify({ error: "stale version token" }));
    const api = new FriaApi("http://service", impl);
    const error = await api.compile("rec").catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.isConflict).toBe(true);
    expect(error.isFieldError).toBe(false);
  });

  it("maps 422 to a field error carrying the module message", async () => {
    const { impl } = fakeFetch(
      422,
      JSON.stringify({ error: "usage-duration: x is not a catalogued instance" }),
    );
    const api = new FriaApi("http://service", impl);
    const error = await api.submitAnswer("rec", "usage-duration", "x", 1).catch((e) => e);
    expect(error.isFieldError).toBe(true);
    expect(error.message).toContain("not a catalogued instance");
  });

  it("returns plain text for turtle exports", async () => {
    const { impl, calls } = fakeFetch(200, "@prefix fria: <x:y> .\n", "text/turtle");
    const api = new FriaApi("http://service", impl);
    const text = await api.exportRecord("rec", "ttl");
    expect(text).toContain("@prefix");
    expect(calls[0].url).toContain("format=ttl");
  });

  it("survives non-JSON error bodies", async () => {
    const { impl } = fakeFetch(500, "boom", "text/plain");
    const api = new FriaApi("http://service", impl);
    const error = await api.getRecord("rec").catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(500);
  });
});
