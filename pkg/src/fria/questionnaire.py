"""Questionnaire definitions, answer sessions, and compilation to records.

A questionnaire is declarative: every question names the predicate its
answer maps to and the assessment stage it belongs to. The built-in
questionnaire renders the Article 27(1) information requirements; a
regulator-issued template can replace it by loading a JSON definition
with the same structure.

Compiling a session assembles the answers into the record's structured
fields (minting node IRIs under the record for free-text answers) and
returns the updated record together with the graph fragment it adds,
including the completed-questionnaire node.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from datetime import date

from .errors import AnswerTypeError, MissingAnswersError, QuestionnaireError
from .graph import Graph, Iri
from .model import (
    HAS_ACCEPTANCE,
    HAS_CONDITION,
    HAS_DATA,
    HAS_DATA_SUBJECT,
    HAS_DOCUMENTATION,
    HAS_DURATION,
    HAS_FREQUENCY,
    HAS_HUMAN_INVOLVEMENT,
    HAS_IMPACT,
    HAS_INTENDED_USE,
    HAS_LIKELIHOOD,
    HAS_MITIGATION,
    HAS_PROCESS,
    HAS_PURPOSE,
    HAS_RECIPIENT,
    HAS_RESIDUAL_LEVEL,
    HAS_RISK,
    HAS_STATUS,
    HAS_TOM,
    DescribedNode,
    FriaRecord,
    ImpactEntry,
    MitigationMeasure,
    NecessityDecision,
    ProcedureInputs,
    ResidualLevel,
    RiskEntry,
    TextPurpose,
    to_graph,
)
from .namespaces import DCT, DPV, FRIA, RISK
from .vocabulary import TermKind, Vocabulary, catalog

ANSWER_KINDS = ("text", "date", "boolean", "reference", "iri_choice", "iri_multi")

BUILTIN_QUESTIONNAIRE_IRI = Iri("https://example.com/FRIA/questionnaire/builtin")
ENGINE_TOOL_IRI = Iri("https://example.com/FRIA/engine")


@dataclass(frozen=True)
class AnswerKind:
    kind: str
    value_class: Iri | None = None

    def __post_init__(self) -> None:
        if self.kind not in ANSWER_KINDS:
            raise QuestionnaireError(f"unknown answer kind: {self.kind}")
        if (self.value_class is not None) != (self.kind in ("iri_choice", "iri_multi")):
            raise QuestionnaireError("value class is set exactly for iri_choice/iri_multi")


@dataclass(frozen=True)
class Question:
    id: str
    prompt: str
    maps_to: Iri
    target_stage: str  # necessity | inputs | outcome | notification
    answer_kind: AnswerKind
    required: bool = False
    guidance: str = ""


@dataclass(frozen=True)
class Section:
    id: str
    title: str
    questions: tuple[Question, ...]


@dataclass(frozen=True)
class Questionnaire:
    id: Iri
    title: str
    sections: tuple[Section, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for q in self.questions():
            if q.id in seen:
                raise QuestionnaireError(f"duplicate question id: {q.id}")
            seen.add(q.id)

    def questions(self) -> list[Question]:
        return [q for s in self.sections for q in s.questions]

    def question(self, qid: str) -> Question:
        for q in self.questions():
            if q.id == qid:
                return q
        raise QuestionnaireError(f"unknown question: {qid}")

    def check_against(self, v: Vocabulary) -> None:
        """Every maps_to predicate and every choice class must be catalogued."""
        for q in self.questions():
            if q.maps_to.value not in v.terms:
                raise QuestionnaireError(f"{q.id}: predicate not in catalog: {q.maps_to}")
            if q.answer_kind.value_class is not None:
                cls = v.term(q.answer_kind.value_class)
                if cls.kind is not TermKind.CLASS:
                    raise QuestionnaireError(f"{q.id}: {cls.iri} is not a class")
            if q.target_stage not in ("necessity", "inputs", "outcome", "notification"):
                raise QuestionnaireError(f"{q.id}: unknown stage {q.target_stage}")


@dataclass(frozen=True)
class QuestionnaireSession:
    id: str
    questionnaire: Iri
    record: Iri
    answers: dict = field(default_factory=dict)
    status: str = "open"  # open | compiled

    def cursor(self, questionnaire: Questionnaire) -> str | None:
        """Id of the next unanswered required question, or None."""
        for q in questionnaire.questions():
            if q.required and q.id not in self.answers:
                return q.id
        return None

    def missing_required(self, questionnaire: Questionnaire) -> list[str]:
        return [
            q.id
            for q in questionnaire.questions()
            if q.required and q.id not in self.answers
        ]


# ---------------------------------------------------------------------------
# Built-in questionnaire
# ---------------------------------------------------------------------------

def builtin_questionnaire() -> Questionnaire:
    """The Article 27 information requirements as an answerable questionnaire."""
    choice = lambda cls: AnswerKind("iri_choice", Iri(cls))  # noqa: E731
    multi = lambda cls: AnswerKind("iri_multi", Iri(cls))  # noqa: E731
    text = AnswerKind("text")
    boolean = AnswerKind("boolean")
    reference = AnswerKind("reference")

    necessity = Section("necessity", "Necessity of the assessment", (
        Question("deployer-is-public-body",
                 "Is the deployer a body governed by public law?",
                 Iri(HAS_CONDITION), "necessity", boolean, required=True,
                 guidance="Public bodies deploying high-risk AI systems must conduct "
                          "the assessment (AI Act Art 27(1))."),
        Question("deployer-provides-public-services",
                 "Is the deployer a private entity providing public services?",
                 Iri(HAS_CONDITION), "necessity", boolean, required=True),
        Question("system-evaluates-creditworthiness",
                 "Does the system evaluate creditworthiness or establish credit scores?",
                 Iri(HAS_CONDITION), "necessity", boolean, required=True,
                 guidance="AI Act Annex III 5(b) systems trigger the obligation."),
        Question("system-prices-life-or-health-insurance",
                 "Does the system perform risk assessment or pricing for life or "
                 "health insurance?",
                 Iri(HAS_CONDITION), "necessity", boolean, required=True,
                 guidance="AI Act Annex III 5(c) systems trigger the obligation."),
        Question("necessity-status",
                 "Must a fundamental rights impact assessment be conducted?",
                 Iri(HAS_STATUS), "necessity", choice(FRIA + "FRIANecessityStatus"),
                 required=True,
                 guidance="Answer 'required' when any trigger condition applies."),
        Question("necessity-justification",
                 "Reasoning behind the necessity decision.",
                 Iri(DCT + "description"), "necessity", text),
    ))
    process = Section("process", "Deployer processes (Art 27(1)(a))", (
        Question("process-description",
                 "Describe the deployer's processes in which the AI system will be "
                 "used.",
                 Iri(HAS_PROCESS), "inputs", text, required=True),
        Question("intended-purpose",
                 "What is the intended purpose of the AI system?",
                 Iri(HAS_PURPOSE), "inputs", text, required=True),
        Question("reused-assessments",
                 "Reference a previously conducted impact assessment (FRIA or DPIA) "
                 "this assessment relies on, if any.",
                 Iri(HAS_DATA), "inputs", reference,
                 guidance="Prior assessments may be reused per AI Act Art 27(2) and "
                          "Art 27(4)."),
    ))
    usage = Section("usage", "Period and frequency of use (Art 27(1)(b))", (
        Question("usage-duration",
                 "For how long will the system be used?",
                 Iri(HAS_DURATION), "inputs", choice(DPV + "Duration"), required=True),
        Question("usage-frequency",
                 "How often will the system be used?",
                 Iri(HAS_FREQUENCY), "inputs", choice(DPV + "Frequency"), required=True),
        Question("intended-uses",
                 "Describe the contextual uses intended in this deployment.",
                 Iri(HAS_INTENDED_USE), "inputs", text),
    ))
    affected = Section("affected-persons", "Affected persons and impacts (Art 27(1)(c))", (
        Question("subject-categories",
                 "Which categories of natural persons or groups are likely to be "
                 "affected?",
                 Iri(HAS_DATA_SUBJECT), "inputs", multi(DPV + "DataSubject"),
                 required=True),
        Question("rights-impacted",
                 "Which fundamental rights might the system's use impact?",
                 Iri(HAS_IMPACT), "inputs", multi(DPV + "Right"), required=True),
        Question("impact-likelihood",
                 "How likely is the impact on those rights?",
                 Iri(HAS_LIKELIHOOD), "inputs", choice(DPV + "Likelihood"),
                 required=True),
    ))
    harms = Section("harms", "Risks of harm (Art 27(1)(d))", (
        Question("harm-categories",
                 "Which categories of harm could materialise?",
                 Iri(HAS_RISK), "inputs", multi(RISK + "Harm"), required=True),
    ))
    oversight = Section("oversight", "Human oversight (Art 27(1)(e))", (
        Question("oversight-measures",
                 "Describe the human oversight measures.",
                 Iri(HAS_HUMAN_INVOLVEMENT), "inputs", text, required=True),
        Question("instructions-for-use",
                 "Reference the provider's instructions for use, if available.",
                 Iri(HAS_DOCUMENTATION), "inputs", reference),
    ))
    mitigations = Section("mitigations", "Measures if risks materialise (Art 27(1)(f))", (
        Question("mitigation-measures",
                 "Describe the measures to be taken when the risks materialise.",
                 Iri(HAS_MITIGATION), "inputs", text, required=True),
        Question("governance-procedures",
                 "Describe internal governance and complaint arrangements backing "
                 "those measures.",
                 Iri(HAS_TOM), "inputs", text),
    ))
    outcome = Section("outcome-evidence", "Residual risk evidence", (
        Question("residual-risk-level",
                 "After the mitigation measures, what level of risk to fundamental "
                 "rights remains?",
                 Iri(HAS_RESIDUAL_LEVEL), "outcome", text, required=True,
                 guidance="One of: none, acceptable, high, unacceptable."),
        Question("risks-accepted",
                 "Does the deployer accept the residual risks?",
                 Iri(HAS_ACCEPTANCE), "outcome", boolean, required=True),
    ))
    notification = Section("notification", "Notification to the authority (Art 27(3))", (
        Question("notification-authority",
                 "Which market surveillance authority should be notified?",
                 Iri(HAS_RECIPIENT), "notification", reference),
        Question("exemption-basis",
                 "If the deployer is exempt from notifying, state the basis.",
                 Iri(DCT + "description"), "notification", text,
                 guidance="Exemption per AI Act Art 46(1)."),
    ))
    return Questionnaire(
        id=BUILTIN_QUESTIONNAIRE_IRI,
        title="AI Act Article 27 fundamental rights impact assessment",
        sections=(necessity, process, usage, affected, harms, oversight, mitigations,
                  outcome, notification),
    )


# ---------------------------------------------------------------------------
# Answering
# ---------------------------------------------------------------------------

def _check_value(question: Question, value, v: Vocabulary):
    kind = question.answer_kind
    if kind.kind == "boolean":
        if not isinstance(value, bool):
            raise AnswerTypeError(f"{question.id}: expected a boolean")
        return value
    if kind.kind == "text":
        if not isinstance(value, str) or not value.strip():
            raise AnswerTypeError(f"{question.id}: expected non-empty text")
        return value
    if kind.kind == "date":
        if isinstance(value, date):
            return value.isoformat()
        try:
            return date.fromisoformat(str(value)).isoformat()
        except ValueError as exc:
            raise AnswerTypeError(f"{question.id}: expected an ISO date") from exc
    if kind.kind == "reference":
        try:
            return Iri(str(value)).value
        except ValueError as exc:
            raise AnswerTypeError(f"{question.id}: expected an absolute IRI") from exc
    if kind.kind == "iri_choice":
        iri = _as_instance(question, str(value), v)
        return iri
    if kind.kind == "iri_multi":
        values = value if isinstance(value, (list, tuple)) else [value]
        if not values:
            raise AnswerTypeError(f"{question.id}: expected at least one value")
        return sorted(_as_instance(question, str(item), v) for item in values)
    raise AnswerTypeError(f"{question.id}: unhandled answer kind {kind.kind}")


def _as_instance(question: Question, value: str, v: Vocabulary) -> str:
    cls = question.answer_kind.value_class
    assert cls is not None
    try:
        iri = Iri(value)
    except ValueError as exc:
        raise AnswerTypeError(f"{question.id}: expected an IRI value") from exc
    if not v.is_instance_of(Graph(), iri, cls):
        raise AnswerTypeError(
            f"{question.id}: {value} is not a catalogued instance of {cls.value}"
        )
    return iri.value


def answer(session: QuestionnaireSession, questionnaire: Questionnaire, qid: str,
           value, v: Vocabulary | None = None) -> QuestionnaireSession:
    """Record one answer; re-answering overwrites the previous value."""
    v = v or catalog()
    if session.status != "open":
        raise QuestionnaireError("session is already compiled")
    question = questionnaire.question(qid)
    checked = _check_value(question, value, v)
    answers = dict(session.answers)
    answers[qid] = checked
    return replace(session, answers=answers)


# ---------------------------------------------------------------------------
# Compilation
# ---------------------------------------------------------------------------

def _mint(record: FriaRecord, name: str) -> Iri:
    return Iri(f"{record.iri.value}#{name}")


class _Answers:
    """Answered questions indexed by (target stage, maps_to predicate).

    Compilation reads answers through this index, so any questionnaire
    whose questions declare the right predicates compiles, not just the
    built-in one.
    """

    def __init__(self, session: QuestionnaireSession, questionnaire: Questionnaire):
        self.rows: list[tuple[Question, object]] = [
            (q, session.answers[q.id])
            for q in questionnaire.questions()
            if q.id in session.answers
        ]

    def all(self, stage: str, predicate: str) -> list[tuple[Question, object]]:
        return [
            (q, value)
            for q, value in self.rows
            if q.target_stage == stage and q.maps_to.value == predicate
        ]

    def texts(self, stage: str, predicate: str) -> list[str]:
        return [str(value) for q, value in self.all(stage, predicate)
                if q.answer_kind.kind == "text"]

    def iris(self, stage: str, predicate: str) -> list[Iri]:
        out: list[Iri] = []
        for q, value in self.all(stage, predicate):
            if q.answer_kind.kind in ("reference", "iri_choice"):
                out.append(Iri(str(value)))
            elif q.answer_kind.kind == "iri_multi":
                out.extend(Iri(str(item)) for item in value)  # type: ignore[union-attr]
        return sorted(set(out), key=str)

    def single_iri(self, stage: str, predicate: str, what: str) -> Iri:
        iris = self.iris(stage, predicate)
        if len(iris) != 1:
            raise QuestionnaireError(
                f"the questionnaire must provide exactly one answer for {what}"
            )
        return iris[0]

    def single_text(self, stage: str, predicate: str) -> str | None:
        texts = self.texts(stage, predicate)
        return texts[0] if texts else None

    def booleans(self, stage: str, predicate: str) -> list[tuple[str, bool]]:
        return [
            (q.id, bool(value))
            for q, value in self.all(stage, predicate)
            if q.answer_kind.kind == "boolean"
        ]


def _minted_nodes(record: FriaRecord, prefix: str, texts: list[str],
                  iris: list[Iri]) -> frozenset[DescribedNode]:
    nodes = [DescribedNode(iri) for iri in iris]
    nodes += [
        DescribedNode(_mint(record, f"{prefix}-{n}"), text)
        for n, text in enumerate(sorted(texts))
    ]
    return frozenset(nodes)


def compile_session(
    session: QuestionnaireSession,
    questionnaire: Questionnaire,
    record: FriaRecord,
    v: Vocabulary | None = None,
) -> tuple[Graph, FriaRecord, QuestionnaireSession]:
    """Assemble the session's answers into the record.

    Returns the graph fragment the compilation adds, the updated record,
    and the session marked compiled. Answer order does not matter: the
    result is a pure function of the answer set.
    """
    v = v or catalog()
    missing = session.missing_required(questionnaire)
    if missing:
        raise MissingAnswersError(missing)
    a = _Answers(session, questionnaire)

    level_answers = a.texts("outcome", HAS_RESIDUAL_LEVEL)
    if len(level_answers) != 1:
        raise QuestionnaireError(
            "the questionnaire must provide exactly one residual risk level"
        )
    try:
        level = ResidualLevel(level_answers[0].strip().lower())
    except ValueError as exc:
        raise AnswerTypeError(
            "residual risk level: expected one of "
            + ", ".join(l.value for l in ResidualLevel)
        ) from exc
    acceptance = a.booleans("outcome", HAS_ACCEPTANCE)
    if len(acceptance) != 1:
        raise QuestionnaireError(
            "the questionnaire must provide exactly one risk acceptance answer"
        )
    accepted = acceptance[0][1]
    if level is ResidualLevel.NONE and not accepted:
        raise AnswerTypeError(
            "a residual level of 'none' implies the risks are accepted"
        )

    likelihood = a.single_iri("inputs", HAS_LIKELIHOOD, "the impact likelihood")
    impacts = [
        ImpactEntry(
            node=_mint(record, f"impact-{n}"),
            impact=Iri(RISK + "ImpactToRights"),
            affected=right,
            likelihood=likelihood,
            right=right,
        )
        for n, right in enumerate(a.iris("inputs", HAS_IMPACT))
    ]
    governance = _minted_nodes(
        record, "governance", a.texts("inputs", HAS_TOM), []
    )
    measures = [
        MitigationMeasure(
            iri=_mint(record, f"measure-{n}"),
            description=text,
            governance=governance,
        )
        for n, text in enumerate(sorted(a.texts("inputs", HAS_MITIGATION)))
    ] + [
        MitigationMeasure(iri=iri)
        for iri in a.iris("inputs", HAS_MITIGATION)
    ]
    measure_iris = frozenset(m.iri for m in measures)
    risks = [
        RiskEntry(
            risk=_mint(record, f"risk-{n}"),
            harm_category=harm,
            residual_level=level,
            accepted=accepted,
            mitigations=measure_iris,
        )
        for n, harm in enumerate(a.iris("inputs", HAS_RISK))
    ]

    purpose_text = a.single_text("inputs", HAS_PURPOSE)
    purpose_iris = a.iris("inputs", HAS_PURPOSE)
    if purpose_text is not None:
        purpose: TextPurpose | Iri = TextPurpose(purpose_text)
    elif len(purpose_iris) == 1:
        purpose = purpose_iris[0]
    else:
        raise QuestionnaireError("the questionnaire must provide the intended purpose")

    inputs = ProcedureInputs(
        processes=_minted_nodes(
            record, "process", a.texts("inputs", HAS_PROCESS), []
        ),
        intended_purpose=purpose,
        duration=a.single_iri("inputs", HAS_DURATION, "the duration"),
        frequency=a.single_iri("inputs", HAS_FREQUENCY, "the frequency"),
        intended_uses=_minted_nodes(
            record, "use", a.texts("inputs", HAS_INTENDED_USE), []
        ),
        human_subject_categories=frozenset(a.iris("inputs", HAS_DATA_SUBJECT)),
        impacts=frozenset(impacts),
        harms=frozenset(risks),
        oversight_measures=_minted_nodes(
            record, "oversight",
            a.texts("inputs", HAS_HUMAN_INVOLVEMENT),
            a.iris("inputs", HAS_HUMAN_INVOLVEMENT),
        ),
        instructions_for_use=next(iter(a.iris("inputs", HAS_DOCUMENTATION)), None),
        mitigation_measures=frozenset(measures),
        reused_assessments=frozenset(a.iris("inputs", HAS_DATA)),
    )

    necessity = record.necessity
    if necessity is None:
        statuses = a.iris("necessity", HAS_STATUS)
        if len(statuses) != 1:
            raise QuestionnaireError(
                "the questionnaire must provide exactly one necessity status"
            )
        necessity = NecessityDecision(
            status=statuses[0],
            justification=a.single_text("necessity", DCT + "description") or "",
            condition_flags=tuple(sorted(a.booleans("necessity", HAS_CONDITION))),
        )

    completed = _mint(record, "completed-questionnaire")
    metadata = record.metadata
    if metadata.creator_tool is None:
        metadata = replace(metadata, creator_tool=ENGINE_TOOL_IRI)
    updated = replace(
        record,
        metadata=metadata,
        necessity=necessity,
        inputs=inputs,
        questionnaires=record.questionnaires | {completed},
        tools_used=record.tools_used | {ENGINE_TOOL_IRI},
    )
    before = to_graph(record, v)
    after = to_graph(updated, v)
    fragment = Graph(after.triples - before.triples, after.prefixes)
    return fragment, updated, replace(session, status="compiled")


def notification_defaults(session: QuestionnaireSession,
                          questionnaire: Questionnaire) -> dict:
    """Notification-stage answers, used as defaults when resolving."""
    a = _Answers(session, questionnaire)
    out = {}
    authorities = a.iris("notification", HAS_RECIPIENT)
    if authorities:
        out["authority"] = authorities[0].value
    basis = a.single_text("notification", DCT + "description")
    if basis:
        out["basis"] = basis
    return out


# ---------------------------------------------------------------------------
# JSON definition files
# ---------------------------------------------------------------------------

def questionnaire_to_json(q: Questionnaire) -> str:
    return json.dumps(
        {
            "id": q.id.value,
            "title": q.title,
            "sections": [
                {
                    "id": s.id,
                    "title": s.title,
                    "questions": [
                        {
                            "id": question.id,
                            "prompt": question.prompt,
                            "maps_to": question.maps_to.value,
                            "target_stage": question.target_stage,
                            "answer_kind": question.answer_kind.kind,
                            **(
                                {"value_class": question.answer_kind.value_class.value}
                                if question.answer_kind.value_class is not None
                                else {}
                            ),
                            "required": question.required,
                            **({"guidance": question.guidance} if question.guidance else {}),
                        }
                        for question in s.questions
                    ],
                }
                for s in q.sections
            ],
        },
        indent=2,
    )


def _reject_unknown(obj: dict, allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise QuestionnaireError(f"{where}: unknown fields {sorted(unknown)}")


def questionnaire_from_json(text: str, v: Vocabulary | None = None) -> Questionnaire:
    """Parse a questionnaire definition; unknown fields are rejected."""
    v = v or catalog()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuestionnaireError(f"malformed questionnaire JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise QuestionnaireError("questionnaire definition must be a JSON object")
    _reject_unknown(data, {"id", "title", "sections"}, "questionnaire")
    sections = []
    for s in data.get("sections", []):
        _reject_unknown(s, {"id", "title", "questions"}, f"section {s.get('id')}")
        questions = []
        for qd in s.get("questions", []):
            _reject_unknown(
                qd,
                {"id", "prompt", "maps_to", "target_stage", "answer_kind",
                 "value_class", "required", "guidance"},
                f"question {qd.get('id')}",
            )
            kind = AnswerKind(
                qd["answer_kind"],
                Iri(qd["value_class"]) if "value_class" in qd else None,
            )
            questions.append(
                Question(
                    id=qd["id"],
                    prompt=qd["prompt"],
                    maps_to=Iri(qd["maps_to"]),
                    target_stage=qd["target_stage"],
                    answer_kind=kind,
                    required=bool(qd.get("required", False)),
                    guidance=qd.get("guidance", ""),
                )
            )
        sections.append(Section(s["id"], s["title"], tuple(questions)))
    q = Questionnaire(Iri(data["id"]), data["title"], tuple(sections))
    q.check_against(v)
    return q
