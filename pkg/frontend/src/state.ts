// Wizard state: which stage the record is in, which stages are reachable,
// and a small subscribe/notify store the renderer hangs off.
//
// Stage gating is derived purely from the server's state label, mirroring
// the engine's transition table; a stage the state machine cannot enter is
// disabled. The server stays the source of truth: any 409 is surfaced as a
// reload prompt, never retried silently.

import { ApiError, FriaApi, NecessityBody, NotificationBody } from "./api";
import type {
  AnswerValue,
  CqAnswerView,
  NextQuestion,
  QuestionnaireView,
  StoredView,
  ValidationView,
} from "./types";

export const STAGES = ["necessity", "inputs", "outcome", "notification", "exports"] as const;
export type Stage = (typeof STAGES)[number];

export function currentStage(stateLabel: string): Stage {
  if (stateLabel === "Draft") return "necessity";
  if (stateLabel.startsWith("NecessityDone(required=true)") || stateLabel.startsWith("Reopened")) {
    return "inputs";
  }
  if (stateLabel === "InputsComplete") return "outcome";
  if (stateLabel.startsWith("OutcomeDone")) return "notification";
  return "exports"; // Complete, ClosedNotRequired, NotificationResolved
}

export function enabledStages(stateLabel: string): Set<Stage> {
  // cumulative: a stage stays viewable once passed; unreachable stages stay off
  if (stateLabel === "Draft") return new Set(["necessity"]);
  if (stateLabel === "ClosedNotRequired") return new Set(["necessity", "exports"]);
  if (stateLabel.startsWith("NecessityDone(required=true)") || stateLabel.startsWith("Reopened")) {
    return new Set(["necessity", "inputs"]);
  }
  if (stateLabel === "InputsComplete") return new Set(["necessity", "inputs", "outcome"]);
  if (stateLabel.startsWith("OutcomeDone")) {
    return new Set(["necessity", "inputs", "outcome", "notification"]);
  }
  return new Set(STAGES); // NotificationResolved, Complete
}

export interface WizardState {
  recordId: string | null;
  view: StoredView | null;
  questionnaire: QuestionnaireView | null;
  next: NextQuestion | null;
  report: ValidationView | null;
  cqAnswers: CqAnswerView[];
  noticeText: string | null;
  error: string | null;
  fieldError: string | null;
  busy: boolean;
}

type Listener = (state: WizardState) => void;

export class WizardStore {
  private state: WizardState = {
    recordId: null,
    view: null,
    questionnaire: null,
    next: null,
    report: null,
    cqAnswers: [],
    noticeText: null,
    error: null,
    fieldError: null,
    busy: false,
  };
  private listeners: Listener[] = [];

  constructor(private readonly api: FriaApi) {}

  get current(): WizardState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private set(patch: Partial<WizardState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  private async run<T>(action: () => Promise<T>): Promise<T | null> {
    this.set({ busy: true, error: null, fieldError: null });
    try {
      const result = await action();
      this.set({ busy: false });
      return result;
    } catch (err) {
      if (err instanceof ApiError && err.isConflict) {
        this.set({ busy: false, error: "record changed elsewhere — reload" });
      } else if (err instanceof ApiError && err.isFieldError) {
        this.set({ busy: false, fieldError: err.message });
      } else {
        this.set({ busy: false, error: String(err) });
      }
      return null;
    }
  }

  async refresh(): Promise<void> {
    const id = this.state.recordId;
    if (!id) return;
    const view = await this.api.getRecord(id);
    const next = await this.api.nextQuestion(id);
    const report = await this.api.validation(id);
    const cq = await this.api.cqDashboard(id);
    let noticeText: string | null = null;
    if (view.record.notification?.notice) {
      noticeText = (await this.api.notice(id)).text;
    }
    this.set({ view, next, report, cqAnswers: cq.answers, noticeText });
  }

  async open(id: string): Promise<void> {
    await this.run(async () => {
      const view = await this.api.getRecord(id);
      const questionnaire = await this.api.questionnaire(id);
      this.set({ recordId: id, view, questionnaire });
      await this.refresh();
    });
  }

  async create(body: {
    id?: string; title?: string; publisher?: string; created?: string; description?: string;
  }): Promise<void> {
    await this.run(async () => {
      const view = await this.api.createRecord(body);
      const questionnaire = await this.api.questionnaire(view.id);
      this.set({ recordId: view.id, view, questionnaire });
      await this.refresh();
    });
  }

  async submitNecessity(body: NecessityBody): Promise<void> {
    const id = this.requireRecord();
    await this.run(async () => {
      await this.api.assessNecessity(id, body);
      await this.refresh();
    });
  }

  async answer(questionId: string, value: AnswerValue): Promise<boolean> {
    const id = this.requireRecord();
    const version = this.state.view?.version;
    if (version === undefined) throw new Error("no record loaded");
    const result = await this.run(() => this.api.submitAnswer(id, questionId, value, version));
    if (result !== null) {
      await this.refresh();
      return true;
    }
    return false;
  }

  get canCompile(): boolean {
    // compile unlocks only when no required question is unanswered
    return this.state.next !== null && this.state.next.question === null
      && this.stage() === "inputs";
  }

  async compile(): Promise<void> {
    const id = this.requireRecord();
    await this.run(async () => {
      const result = await this.api.compile(id);
      this.set({ report: result.report });
      await this.refresh();
    });
  }

  async determineOutcome(rationale = ""): Promise<void> {
    const id = this.requireRecord();
    await this.run(async () => {
      await this.api.determineOutcome(id, rationale);
      await this.refresh();
    });
  }

  async resolveNotification(body: NotificationBody): Promise<void> {
    if (body.exempt && !(body.basis ?? "").trim()) {
      this.set({ fieldError: "an exemption requires a basis" });
      return;
    }
    const id = this.requireRecord();
    await this.run(async () => {
      await this.api.resolveNotification(id, body);
      await this.refresh();
    });
  }

  async markSent(sentOn?: string): Promise<void> {
    const id = this.requireRecord();
    await this.run(async () => {
      await this.api.markSent(id, sentOn);
      await this.refresh();
    });
  }

  async downloadExport(format: "ttl" | "nt"): Promise<string | null> {
    const id = this.requireRecord();
    return this.run(() => this.api.exportRecord(id, format));
  }

  stage(): Stage {
    return this.state.view ? currentStage(this.state.view.state) : "necessity";
  }

  enabled(): Set<Stage> {
    return this.state.view ? enabledStages(this.state.view.state) : new Set(["necessity"]);
  }

  private requireRecord(): string {
    if (!this.state.recordId) throw new Error("no record loaded");
    return this.state.recordId;
  }
}
