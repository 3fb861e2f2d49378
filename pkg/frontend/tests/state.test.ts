import { describe, expect, it } from "vitest";

import { ApiError, FriaApi } from "../src/api";
import { WizardStore } from "../src/state";

function storeWith(responses: Record<string, () => unknown>): WizardStore {
  const impl = (async (url: string, init?: RequestInit) => {
    const key = `${init?.method ?? "GET"} ${new URL(url).pathname}`;
    const handler = responses[key];
    if (!handler) return new Response("{}", {
      status: 200, headers: { "content-type": "application/json" },
    });
    const result = handler();
    if (result instanceof Response) return result;
    return new Response(JSON.stringify(result), {
      status: 200, headers: { "content-type": "application/json" },
    });
  }) as unknown as typeof fetch;
  return new WizardStore(new FriaApi("http://service", impl));
}

const storedView = {
  id: "rec", state: "Draft", version: 3, stale: false,
  record: {
    iri: "x:rec",
    metadata: {
      created: "2024-11-30", modified: null, title: "t", identifier: "rec",
      publisher: "x:org", description: "", creator_tool: null,
    },
    necessity: null, inputs: null, outcome: null, notification: null,
    tools_used: [], questionnaires: [],
  },
};

describe("wizard store", () => {
  it("surfaces 409 as the reload prompt", async () => {
    const store = storeWith({
      "GET /records/rec": () => storedView,
      "GET /records/rec/questionnaire": () => ({ id: "q", title: "t", sections: [] }),
      "GET /records/rec/questionnaire/next": () => ({ question: null, version: 3 }),
      "GET /records/rec/validation": () => ({ conforms: true, violations: [] }),
      "GET /records/rec/cq": () => ({ answers: [] }),
      "POST /records/rec/answers": () =>
        new Response(JSON.stringify({ error: "stale version token" }), {
          status: 409, headers: { "content-type": "application/json" },
        }),
    });
    await store.open("rec");
    const ok = await store.answer("usage-duration", "x:value");
    expect(ok).toBe(false);
    expect(store.current.error).toBe("record changed elsewhere — reload");
  });

  it("surfaces 422 as an inline field error", async () => {
    const store = storeWith({
      "GET /records/rec": () => storedView,
      "GET /records/rec/questionnaire": () => ({ id: "q", title: "t", sections: [] }),
      "GET /records/rec/questionnaire/next": () => ({ question: null, version: 3 }),
      "GET /records/rec/validation": () => ({ conforms: true, violations: [] }),
      "GET /records/rec/cq": () => ({ answers: [] }),
      "POST /records/rec/answers": () =>
        new Response(JSON.stringify({ error: "usage-duration: wrong class" }), {
          status: 422, headers: { "content-type": "application/json" },
        }),
    });
    await store.open("rec");
    await store.answer("usage-duration", "x:bad");
    expect(store.current.fieldError).toContain("wrong class");
    expect(store.current.error).toBeNull();
  });

  it("refuses an exemption without a basis before calling the server", async () => {
    let called = false;
    const store = storeWith({
      "GET /records/rec": () => storedView,
      "GET /records/rec/questionnaire": () => ({ id: "q", title: "t", sections: [] }),
      "GET /records/rec/questionnaire/next": () => ({ question: null, version: 3 }),
      "GET /records/rec/validation": () => ({ conforms: true, violations: [] }),
      "GET /records/rec/cq": () => ({ answers: [] }),
      "POST /records/rec/notification": () => {
        called = true;
        return storedView;
      },
    });
    await store.open("rec");
    await store.resolveNotification({ exempt: true, basis: "  " });
    expect(called).toBe(false);
    expect(store.current.fieldError).toContain("basis");
  });

  it("notifies subscribers on every change", async () => {
    const store = storeWith({
      "GET /records/rec": () => storedView,
      "GET /records/rec/questionnaire": () => ({ id: "q", title: "t", sections: [] }),
      "GET /records/rec/questionnaire/next": () => ({ question: null, version: 3 }),
      "GET /records/rec/validation": () => ({ conforms: true, violations: [] }),
      "GET /records/rec/cq": () => ({ answers: [] }),
    });
    let seen = 0;
    store.subscribe(() => {
      seen += 1;
    });
    await store.open("rec");
    expect(seen).toBeGreaterThan(0);
    expect(store.current.view?.id).toBe("rec");
  });
});
