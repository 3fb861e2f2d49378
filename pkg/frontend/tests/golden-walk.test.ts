// Scripted end-to-end walk of the golden path against the real engine
// service, driven through the same client and store the wizard DOM uses.
// The downloaded Turtle must be byte-identical to the engine's checked-in
// golden export, and stage gating must agree with the server's 409s.

import { spawn, ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError, FriaApi } from "../src/api";
import { WizardStore, currentStage, enabledStages } from "../src/state";

const PORT = 8912;
const BASE = `http://127.0.0.1:${PORT}`;
const REPO_ROOT = join(__dirname, "..", "..");

const GOLDEN_TTL = readFileSync(
  join(REPO_ROOT, "tests", "fixtures", "golden.ttl"), "utf-8");
const GOLDEN_ANSWERS: Record<string, string | boolean | string[]> = JSON.parse(
  readFileSync(join(REPO_ROOT, "tests", "fixtures", "golden_answers.json"), "utf-8"));

let service: ChildProcess;

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 60; attempt += 1) {
    try {
      const response = await fetch(`${BASE}/cq-prompts`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  const storeDir = mkdtempSync(join(tmpdir(), "fria-walk-"));
  service = spawn(
    "python3",
    ["-m", "fria.cli", "--store", storeDir, "serve", "--port", String(PORT)],
    {
      cwd: REPO_ROOT,
      env: { ...process.env, PYTHONPATH: join(REPO_ROOT, "src") },
      stdio: "ignore",
    },
  );
  await waitForService();
});

afterAll(() => {
  service?.kill();
});

describe("golden walk", () => {
  const api = new FriaApi(BASE);
  const store = new WizardStore(api);

  it("completes the golden path and downloads the golden Turtle", async () => {
    await store.create({
      id: "golden",
      created: "2024-11-30",
      title: "Benefit triage assistant",
      publisher: "https://example.org/org/city-services",
      description: "Assessment of the benefit application triage assistant.",
    });
    expect(store.current.error).toBeNull();
    expect(store.stage()).toBe("necessity");

    // stage gating equals server truth: outcome is locally disabled and the
    // server rejects it with 409
    expect(store.enabled().has("outcome")).toBe(false);
    const early = await api.determineOutcome("golden").catch((e) => e);
    expect(early).toBeInstanceOf(ApiError);
    expect((early as ApiError).status).toBe(409);

    await store.submitNecessity({
      status: "required",
      flags: {
        "deployer-is-public-body": true,
        "deployer-provides-public-services": false,
        "system-evaluates-creditworthiness": false,
        "system-prices-life-or-health-insurance": false,
      },
      justification: "public body deploying a high-risk triage system",
    });
    expect(store.stage()).toBe("inputs");
    expect(store.enabled().has("notification")).toBe(false);

    // the wizard cannot compile until the cursor is exhausted
    expect(store.canCompile).toBe(false);
    for (const [questionId, value] of Object.entries(GOLDEN_ANSWERS)) {
      const ok = await store.answer(questionId, value);
      expect(ok, `answer ${questionId}`).toBe(true);
    }
    expect(store.current.next?.question).toBeNull();
    expect(store.canCompile).toBe(true);

    await store.compile();
    expect(store.current.report?.conforms).toBe(true);
    expect(store.stage()).toBe("outcome");

    // notification is still gated; the server agrees
    expect(store.enabled().has("notification")).toBe(false);
    const earlySent = await api.markSent("golden").catch((e) => e);
    expect((earlySent as ApiError).status).toBe(409);

    await store.determineOutcome("all residual risks mitigated");
    expect(store.current.view?.record.outcome?.deployment_permitted).toBe(true);
    expect(store.stage()).toBe("notification");

    await store.resolveNotification({
      exempt: false,
      authority: "https://example.org/authority/ie-market-surveillance",
    });
    expect(store.current.view?.record.notification?.status.endsWith("NotSent")).toBe(true);
    expect(store.current.noticeText).toContain("FRIA NOTIFICATION NOTICE");

    await store.markSent("2024-12-10");
    expect(store.current.view?.state).toBe("Complete");
    expect(store.stage()).toBe("exports");

    const downloaded = await store.downloadExport("ttl");
    expect(downloaded).toBe(GOLDEN_TTL);
  });

  it("exposes the CQ dashboard with all eight answers populated", async () => {
    const dashboard = await api.cqDashboard("golden");
    expect(dashboard.answers).toHaveLength(8);
    for (const answer of dashboard.answers) {
      expect(answer.bindings.length, answer.cq).toBeGreaterThan(0);
    }
  });

  it("surfaces a version conflict as the reload prompt", async () => {
    await store.create({ id: "conflict-check" });
    const version = store.current.view!.version;
    // another client writes first
    await api.submitAnswer(
      "conflict-check", "process-description", "written elsewhere", version);
    const ok = await store.answer("process-description", "stale write");
    expect(ok).toBe(false);
    expect(store.current.error).toBe("record changed elsewhere — reload");
  });

  it("serves choice lists from the vocabulary, never the client", async () => {
    await api.createRecord({ id: "choices-check" });
    const definition = await api.questionnaire("choices-check");
    const questions = definition.sections.flatMap((s) => s.questions);
    const frequency = questions.find((q) => q.id === "usage-frequency");
    expect(frequency?.choices?.length).toBe(4);
    const labels = new Set(frequency?.choices?.map((c) => c.label));
    expect(labels.has("Continuous Frequency")).toBe(true);
  });

  it("keeps local gating consistent with every server state label", () => {
    for (const label of [
      "Draft",
      "NecessityDone(required=true)",
      "InputsComplete",
      "OutcomeDone(FRIAOutcomeRisksMitigated)",
      "Complete",
      "ClosedNotRequired",
    ]) {
      expect(enabledStages(label).has(currentStage(label))).toBe(true);
    }
  });
});
