// DOM rendering for the wizard: stage navigation, one-question-at-a-time
// panel, validation panel with clause citations, CQ dashboard, outcome
// banner and notification panel. All choice lists, statuses and citations
// come from API payloads.

import { STAGES, Stage, WizardStore } from "./state";
import { shorten, statusCaption } from "./display";
import type { QuestionView } from "./types";

const STAGE_TITLES: Record<Stage, string> = {
  necessity: "1. Necessity",
  inputs: "2. Inputs",
  outcome: "3. Outcome",
  notification: "4. Notification",
  exports: "5. Exports",
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderWizard(root: HTMLElement, store: WizardStore): void {
  const container = el("div", "wizard");
  const nav = el("nav", "wizard-nav");
  const content = el("section", "wizard-content");
  const side = el("aside", "wizard-side");
  root.appendChild(container);
  container.appendChild(nav);
  container.appendChild(content);
  container.appendChild(side);

  let viewedStage: Stage | null = null;

  function sync(): void {
    const state = store.current;
    const enabled = store.enabled();
    const stage = viewedStage && enabled.has(viewedStage) ? viewedStage : store.stage();

    nav.innerHTML = "";
    for (const candidate of STAGES) {
      const button = el("button", candidate === stage ? "active" : "");
      button.textContent = STAGE_TITLES[candidate];
      button.disabled = !enabled.has(candidate);
      button.addEventListener("click", () => {
        viewedStage = candidate;
        sync();
      });
      nav.appendChild(button);
    }

    content.innerHTML = "";
    if (state.error) {
      const banner = el("div", "error-banner", state.error);
      if (state.error.includes("reload")) {
        const reload = el("button", "", "Reload");
        reload.addEventListener("click", () => void store.refresh().then(sync));
        banner.appendChild(reload);
      }
      content.appendChild(banner);
    }
    if (!state.view) {
      renderStart(content);
    } else if (stage === "necessity") {
      renderNecessity(content);
    } else if (stage === "inputs") {
      renderInputs(content);
    } else if (stage === "outcome") {
      renderOutcome(content);
    } else if (stage === "notification") {
      renderNotification(content);
    } else {
      renderExports(content);
    }

    side.innerHTML = "";
    if (state.view) {
      renderValidationPanel(side);
      renderCqDashboard(side);
    }
  }

  function renderStart(parent: HTMLElement): void {
    const form = el("form", "start-form");
    const idInput = el("input");
    idInput.placeholder = "record id (blank to generate)";
    const titleInput = el("input");
    titleInput.placeholder = "title";
    const publisherInput = el("input");
    publisherInput.placeholder = "publisher IRI (organisation conducting the assessment)";
    const submit = el("button", "", "Create record");
    form.append(idInput, titleInput, publisherInput, submit);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void store
        .create({
          id: idInput.value || undefined,
          title: titleInput.value || undefined,
          publisher: publisherInput.value || undefined,
        })
        .then(sync);
    });
    parent.appendChild(form);

    const openForm = el("form", "start-form");
    const openInput = el("input");
    openInput.placeholder = "existing record id";
    const openButton = el("button", "", "Open record");
    openForm.append(openInput, openButton);
    openForm.addEventListener("submit", (event) => {
      event.preventDefault();
      if (openInput.value) void store.open(openInput.value).then(sync);
    });
    parent.appendChild(openForm);
  }

  function renderNecessity(parent: HTMLElement): void {
    const state = store.current;
    const questionnaire = state.questionnaire;
    const decided = state.view?.record.necessity;
    if (decided) {
      parent.appendChild(el("p", "status-line",
        `Necessity: ${statusCaption(decided.status)}`));
      if (decided.justification) {
        parent.appendChild(el("p", "muted", decided.justification));
      }
      return;
    }
    if (!questionnaire) return;
    const form = el("form", "necessity-form");
    const flagInputs: Record<string, HTMLInputElement> = {};
    const necessitySection = questionnaire.sections.find((s) =>
      s.questions.some((q) => q.target_stage === "necessity"));
    for (const question of necessitySection?.questions ?? []) {
      if (question.answer_kind !== "boolean") continue;
      const row = el("label", "flag-row");
      const box = el("input");
      box.type = "checkbox";
      flagInputs[question.id] = box;
      row.appendChild(box);
      row.appendChild(el("span", "", question.prompt));
      if (question.guidance) row.appendChild(el("small", "muted", question.guidance));
      form.appendChild(row);
    }
    const justification = el("textarea");
    justification.placeholder = "justification";
    form.appendChild(justification);
    const required = el("button", "", "Assessment required");
    const notRequired = el("button", "", "Not required");
    form.append(required, notRequired);
    const submit = (status: "required" | "not-required") => {
      const flags: Record<string, boolean> = {};
      for (const [id, box] of Object.entries(flagInputs)) flags[id] = box.checked;
      void store
        .submitNecessity({ status, flags, justification: justification.value })
        .then(sync);
    };
    required.addEventListener("click", (event) => {
      event.preventDefault();
      submit("required");
    });
    notRequired.addEventListener("click", (event) => {
      event.preventDefault();
      submit("not-required");
    });
    parent.appendChild(form);
  }

  function renderQuestionControl(question: QuestionView): {
    node: HTMLElement; read: () => string | boolean | string[];
  } {
    if (question.answer_kind === "boolean") {
      const box = el("input");
      box.type = "checkbox";
      return { node: box, read: () => box.checked };
    }
    if (question.choices && question.answer_kind === "iri_choice") {
      const select = el("select");
      for (const choice of question.choices) {
        const option = el("option", "", choice.label);
        option.value = choice.iri;
        option.title = choice.definition;
        select.appendChild(option);
      }
      return { node: select, read: () => select.value };
    }
    if (question.choices && question.answer_kind === "iri_multi") {
      const box = el("div", "multi-choice");
      const inputs: HTMLInputElement[] = [];
      for (const choice of question.choices) {
        const row = el("label");
        const check = el("input");
        check.type = "checkbox";
        check.value = choice.iri;
        check.title = choice.definition;
        inputs.push(check);
        row.appendChild(check);
        row.appendChild(el("span", "", choice.label));
        box.appendChild(row);
      }
      return {
        node: box,
        read: () => inputs.filter((i) => i.checked).map((i) => i.value),
      };
    }
    const input = el("input");
    input.type = question.answer_kind === "date" ? "date" : "text";
    return { node: input, read: () => input.value };
  }

  function renderInputs(parent: HTMLElement): void {
    const state = store.current;
    const question = state.next?.question ?? null;
    if (question) {
      const panel = el("div", "question-panel");
      panel.appendChild(el("h3", "", question.prompt));
      if (question.guidance) panel.appendChild(el("p", "muted", question.guidance));
      const control = renderQuestionControl(question);
      panel.appendChild(control.node);
      if (state.fieldError) panel.appendChild(el("p", "field-error", state.fieldError));
      const submit = el("button", "", "Answer");
      submit.addEventListener("click", () => {
        void store.answer(question.id, control.read()).then(sync);
      });
      panel.appendChild(submit);
      parent.appendChild(panel);
    } else {
      parent.appendChild(el("p", "status-line", "All required questions answered."));
    }
    const compile = el("button", "compile", "Compile inputs");
    compile.disabled = !store.canCompile;
    compile.addEventListener("click", () => void store.compile().then(sync));
    parent.appendChild(compile);
  }

  function renderOutcome(parent: HTMLElement): void {
    const outcome = store.current.view?.record.outcome ?? null;
    if (outcome) {
      renderOutcomeBanner(parent);
      return;
    }
    const rationale = el("textarea");
    rationale.placeholder = "rationale";
    const button = el("button", "", "Determine outcome");
    button.addEventListener("click", () =>
      void store.determineOutcome(rationale.value).then(sync));
    parent.append(rationale, button);
  }

  function renderOutcomeBanner(parent: HTMLElement): void {
    const outcome = store.current.view?.record.outcome;
    if (!outcome) return;
    const banner = el("div",
      `outcome-banner ${outcome.deployment_permitted ? "permitted" : "blocked"}`);
    banner.appendChild(el("strong", "", statusCaption(outcome.status)));
    banner.appendChild(el("span", "",
      outcome.deployment_permitted ? "deployment permitted" : "deployment not permitted"));
    for (const right of outcome.rights_impacted) {
      banner.appendChild(el("span", "right-chip", shorten(right)));
    }
    parent.appendChild(banner);
  }

  function renderNotification(parent: HTMLElement): void {
    renderOutcomeBanner(parent);
    const state = store.current;
    const notification = state.view?.record.notification ?? null;
    const panel = el("div", "notification-panel");
    if (notification) {
      panel.appendChild(el("p", "status-line",
        `Notification: ${statusCaption(notification.status)}`));
      if (state.noticeText) panel.appendChild(el("pre", "notice-text", state.noticeText));
    }
    if (!notification || notification.status.endsWith("NotSent")) {
      const authority = el("input");
      authority.placeholder = "authority IRI";
      if (notification?.authority) authority.value = notification.authority;
      const draft = el("button", "", "Draft notice");
      draft.addEventListener("click", () =>
        void store.resolveNotification({ exempt: false, authority: authority.value }).then(sync));
      panel.append(authority, draft);
      if (notification?.status.endsWith("NotSent")) {
        const send = el("button", "", "Mark sent");
        send.addEventListener("click", () => void store.markSent().then(sync));
        panel.appendChild(send);
      }
      const basis = el("input");
      basis.placeholder = "exemption basis (required to claim exemption)";
      const exempt = el("button", "", "Claim exemption");
      exempt.addEventListener("click", () =>
        void store.resolveNotification({ exempt: true, basis: basis.value }).then(sync));
      panel.append(basis, exempt);
    }
    if (state.fieldError) panel.appendChild(el("p", "field-error", state.fieldError));
    parent.appendChild(panel);
  }

  function renderExports(parent: HTMLElement): void {
    renderOutcomeBanner(parent);
    for (const format of ["ttl", "nt"] as const) {
      const button = el("button", "", `Download ${format === "ttl" ? "Turtle" : "N-Triples"}`);
      button.addEventListener("click", () => {
        void store.downloadExport(format).then((text) => {
          if (text === null) return;
          const blob = new Blob([text], { type: "text/plain" });
          const link = document.createElement("a");
          link.href = URL.createObjectURL(blob);
          link.download = `${store.current.recordId}.${format}`;
          link.click();
          URL.revokeObjectURL(link.href);
        });
      });
      parent.appendChild(button);
    }
  }

  function renderValidationPanel(parent: HTMLElement): void {
    const report = store.current.report;
    const panel = el("div", "validation-panel");
    panel.appendChild(el("h3", "", "Validation"));
    if (!report) {
      panel.appendChild(el("p", "muted", "not checked yet"));
    } else if (report.conforms) {
      panel.appendChild(el("p", "ok", "conforms"));
    } else {
      for (const violation of report.violations) {
        const row = el("div", "violation");
        row.appendChild(el("strong", "", `[${violation.source}]`));
        row.appendChild(el("span", "", ` ${violation.message}`));
        row.appendChild(el("small", "muted", ` path ${shorten(violation.path)}`));
        panel.appendChild(row);
      }
    }
    parent.appendChild(panel);
  }

  function renderCqDashboard(parent: HTMLElement): void {
    const panel = el("div", "cq-dashboard");
    panel.appendChild(el("h3", "", "Competency questions"));
    for (const answer of store.current.cqAnswers) {
      const card = el("div", "cq-card");
      card.appendChild(el("strong", "", `${answer.cq}. ${answer.question}`));
      if (answer.bindings.length === 0) {
        card.appendChild(el("p", "muted", answer.empty_reason ?? "no data"));
      } else {
        for (const row of answer.bindings) {
          card.appendChild(el("p", "", row.map(shorten).join(" | ")));
        }
      }
      panel.appendChild(card);
    }
    parent.appendChild(panel);
  }

  store.subscribe(() => sync());
  sync();
}
