// Thin typed client over the fria-engine JSON API. Every wizard action maps
// to exactly one call here; the optimistic version token rides along on
// answer writes and conflicts surface as ApiError with status 409.

import type {
  AnswerValue,
  CqAnswerView,
  NextQuestion,
  NoticeView,
  OutcomeResult,
  QuestionnaireView,
  StoredView,
  ValidationView,
} from "./types";

export class ApiError extends Error {
  readonly status: number;
  readonly payload: Record<string, unknown>;

  constructor(status: number, payload: Record<string, unknown>) {
    super(typeof payload.error === "string" ? payload.error : `HTTP ${status}`);
    this.status = status;
    this.payload = payload;
  }

  get isConflict(): boolean {
    return this.status === 409;
  }

  get isFieldError(): boolean {
    return this.status === 422;
  }
}

export interface CreateRecordBody {
  id?: string;
  created?: string;
  title?: string;
  publisher?: string;
  description?: string;
}

export interface NecessityBody {
  status: "required" | "not-required";
  flags: Record<string, boolean>;
  justification?: string;
}

export interface NotificationBody {
  exempt: boolean;
  basis?: string;
  authority?: string;
}

export class FriaApi {
  constructor(private readonly baseUrl: string, private readonly fetchImpl: typeof fetch = fetch) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body !== undefined ? { "Content-Type": "application/json" } : undefined,
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    const text = await response.text();
    if (!response.ok) {
      let payload: Record<string, unknown> = { error: text };
      try {
        payload = JSON.parse(text);
      } catch {
        // non-JSON error body; keep raw text
      }
      throw new ApiError(response.status, payload);
    }
    const contentType = response.headers.get("content-type") ?? "";
    if (contentType.includes("application/json")) {
      return JSON.parse(text) as T;
    }
    return text as unknown as T;
  }

  createRecord(body: CreateRecordBody): Promise<StoredView> {
    return this.request("POST", "/records", body);
  }

  getRecord(id: string): Promise<StoredView> {
    return this.request("GET", `/records/${id}`);
  }

  assessNecessity(id: string, body: NecessityBody): Promise<StoredView> {
    return this.request("POST", `/records/${id}/necessity`, body);
  }

  questionnaire(id: string): Promise<QuestionnaireView> {
    return this.request("GET", `/records/${id}/questionnaire`);
  }

  nextQuestion(id: string): Promise<NextQuestion> {
    return this.request("GET", `/records/${id}/questionnaire/next`);
  }

  submitAnswer(
    id: string,
    questionId: string,
    value: AnswerValue,
    version: number,
  ): Promise<{ version: number; next_required: string | null }> {
    return this.request("POST", `/records/${id}/answers`, {
      question_id: questionId,
      value,
      version,
    });
  }

  compile(id: string): Promise<{ state: string; version: number; report: ValidationView }> {
    return this.request("POST", `/records/${id}/compile`);
  }

  validation(id: string): Promise<ValidationView> {
    return this.request("GET", `/records/${id}/validation`);
  }

  cq(id: string, number: number): Promise<CqAnswerView> {
    return this.request("GET", `/records/${id}/cq/${number}`);
  }

  cqDashboard(id: string): Promise<{ answers: CqAnswerView[] }> {
    return this.request("GET", `/records/${id}/cq`);
  }

  determineOutcome(id: string, rationale = ""): Promise<OutcomeResult> {
    return this.request("POST", `/records/${id}/outcome`, { rationale });
  }

  resolveNotification(id: string, body: NotificationBody): Promise<StoredView> {
    return this.request("POST", `/records/${id}/notification`, body);
  }

  markSent(id: string, sentOn?: string): Promise<StoredView> {
    return this.request("POST", `/records/${id}/notification/sent`,
      sentOn ? { sent_on: sentOn } : {});
  }

  exportRecord(id: string, format: "ttl" | "nt"): Promise<string> {
    return this.request("GET", `/records/${id}/export?format=${format}`);
  }

  notice(id: string): Promise<NoticeView> {
    return this.request("GET", `/records/${id}/notice`);
  }

  ontology(): Promise<string> {
    return this.request("GET", "/ontology");
  }
}
