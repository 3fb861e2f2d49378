"""Shape constraints over FRIA graphs and the competency-question catalog.

The constraint engine is a small SHACL-like evaluator: shapes target a
class, and each property constraint checks cardinality (``min_count`` /
``max_count``), a value class, or an enumerated value set on one predicate.
A constraint may carry a guard (``when_path``/``when_value``) so it only
applies to focus nodes in a given state, which expresses rules such as "a
sent notification must reference its notice".

Every violation carries the AI Act clause it is grounded in, so reports
can show the legal basis next to each message.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .errors import RecordGraphError
from .graph import Graph, Iri, Literal, Term, term_sort_key
from .model import (
    HAS_ASSESSMENT,
    HAS_CONSEQUENCE,
    HAS_DATA_SUBJECT,
    HAS_DOCUMENTATION,
    HAS_DURATION,
    HAS_FREQUENCY,
    HAS_HUMAN_INVOLVEMENT,
    HAS_IMPACT,
    HAS_IMPACT_ON,
    HAS_LIKELIHOOD,
    HAS_MITIGATION,
    HAS_NOTICE,
    HAS_PROCESS,
    HAS_PURPOSE,
    HAS_RECIPIENT,
    HAS_RISK,
    HAS_STATUS,
    MITIGATED_BY,
    NOTIF_EXEMPT,
    NOTIF_NEEDED,
    NOTIF_NOT_SENT,
    NOTIF_SENT,
    OUTCOME_ACCEPTABLE,
    OUTCOME_HIGH_RESIDUAL,
    OUTCOME_MITIGATED,
    OUTCOME_UNACCEPTABLE,
    STATUS_NOT_REQUIRED,
    STATUS_REQUIRED,
    USES_TECHNOLOGY,
)
from .namespaces import DCT, DPV, EU_AIACT, FRIA, RDF_TYPE, RISK
from .vocabulary import Vocabulary, catalog


@dataclass(frozen=True)
class PropertyConstraint:
    path: Iri
    min_count: int = 0
    max_count: int | None = None
    value_class: Iri | None = None
    value_in: frozenset[Iri] | None = None
    message: str = ""
    source: str = ""
    when_path: Iri | None = None
    when_value: Iri | None = None

    def __post_init__(self) -> None:
        if self.max_count is not None and self.min_count > self.max_count:
            raise ValueError("min_count exceeds max_count")


@dataclass(frozen=True)
class Shape:
    id: str
    target_class: Iri
    constraints: tuple[PropertyConstraint, ...]


@dataclass(frozen=True)
class Violation:
    focus: str
    shape_id: str
    path: str
    constraint_kind: str
    message: str
    source: str


@dataclass(frozen=True)
class ValidationReport:
    conforms: bool
    violations: tuple[Violation, ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "conforms": self.conforms,
                "violations": [
                    {
                        "focus": v.focus,
                        "shape": v.shape_id,
                        "path": v.path,
                        "constraint": v.constraint_kind,
                        "message": v.message,
                        "source": v.source,
                    }
                    for v in self.violations
                ],
            },
            indent=2,
        )

    def to_text(self) -> str:
        if self.conforms:
            return "conforms: yes\n"
        lines = ["conforms: no", f"violations: {len(self.violations)}"]
        for v in self.violations:
            lines.append(f"- [{v.source}] {v.focus}: {v.message} (path {v.path})")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Built-in shape catalog
# ---------------------------------------------------------------------------

_DURATIONS = frozenset(
    Iri(DPV + local)
    for local in (
        "EndlessDuration", "FixedDuration", "TemporalDuration",
        "UntilEventDuration", "UntilTimeDuration",
    )
)
_FREQUENCIES = frozenset(
    Iri(DPV + local)
    for local in ("ContinuousFrequency", "OftenFrequency", "SingularFrequency", "SporadicFrequency")
)


def builtin_shapes() -> list[Shape]:
    """Shape catalog covering Article 27(1)(a)-(f) plus status cardinalities."""
    c = PropertyConstraint
    return [
        Shape(
            "necessity-status",
            Iri(FRIA + "FRIANecessityAssessment"),
            (
                c(Iri(HAS_STATUS), min_count=1, max_count=1,
                  value_in=frozenset({STATUS_REQUIRED, STATUS_NOT_REQUIRED}),
                  message="the necessity assessment must record exactly one status "
                          "(required or not required)",
                  source="AI Act Art 27(1)"),
            ),
        ),
        Shape(
            "procedure-inputs",
            Iri(FRIA + "FRIAProcedure"),
            (
                c(Iri(HAS_PROCESS), min_count=1,
                  message="describe the deployer's processes in which the AI system "
                          "will be used",
                  source="AI Act Art 27(1)(a)"),
                c(Iri(HAS_PURPOSE), min_count=1,
                  message="state the intended purpose of the AI system",
                  source="AI Act Art 27(1)(a)"),
                c(Iri(HAS_DURATION), min_count=1, value_in=_DURATIONS,
                  message="state the period of time within which the system will be "
                          "used, as one of the enumerated durations",
                  source="AI Act Art 27(1)(b)"),
                c(Iri(HAS_FREQUENCY), min_count=1, value_in=_FREQUENCIES,
                  message="state how often the system will be used, as one of the "
                          "enumerated frequencies",
                  source="AI Act Art 27(1)(b)"),
                c(Iri(HAS_DATA_SUBJECT), min_count=1,
                  message="identify the categories of natural persons and groups "
                          "affected by the system's use",
                  source="AI Act Art 27(1)(c)"),
                c(Iri(HAS_IMPACT), min_count=1,
                  message="record the impacts likely to affect those categories",
                  source="AI Act Art 27(1)(c)"),
                c(Iri(HAS_RISK), min_count=1,
                  message="record the specific risks of harm",
                  source="AI Act Art 27(1)(d)"),
                c(Iri(HAS_HUMAN_INVOLVEMENT), min_count=1,
                  message="describe the human oversight measures",
                  source="AI Act Art 27(1)(e)"),
                c(Iri(HAS_DOCUMENTATION), min_count=0,
                  value_class=Iri(EU_AIACT + "InstructionsForUse"),
                  message="reference the provider's instructions for use where such "
                          "instructions exist (optional otherwise)",
                  source="AI Act Art 27(1)(e)"),
                c(Iri(HAS_MITIGATION), min_count=1,
                  message="describe the measures to be taken if the risks "
                          "materialise",
                  source="AI Act Art 27(1)(f)"),
            ),
        ),
        Shape(
            "impact-evidence",
            Iri(DPV + "Impact"),
            (
                c(Iri(HAS_LIKELIHOOD), min_count=1,
                  message="every recorded impact must state its likelihood",
                  source="AI Act Art 27(1)(c)"),
            ),
        ),
        Shape(
            "outcome-status",
            Iri(FRIA + "FRIAOutcome"),
            (
                c(Iri(HAS_STATUS), min_count=1, max_count=1,
                  value_in=frozenset({
                      OUTCOME_UNACCEPTABLE, OUTCOME_HIGH_RESIDUAL,
                      OUTCOME_ACCEPTABLE, OUTCOME_MITIGATED,
                  }),
                  message="the outcome must record exactly one of the four outcome "
                          "statuses",
                  source="AI Act Art 27(1)"),
            ),
        ),
        Shape(
            "notification-status",
            Iri(FRIA + "FRIANotificationAssessment"),
            (
                c(Iri(HAS_STATUS), min_count=1, max_count=1,
                  value_in=frozenset({
                      NOTIF_NEEDED, NOTIF_NOT_SENT, NOTIF_SENT, NOTIF_EXEMPT,
                  }),
                  message="the notification assessment must record exactly one "
                          "notification status",
                  source="AI Act Art 27(3)"),
                c(Iri(HAS_NOTICE), min_count=1,
                  when_path=Iri(HAS_STATUS), when_value=NOTIF_SENT,
                  message="a sent notification must reference the notice that was "
                          "communicated",
                  source="AI Act Art 27(3)"),
            ),
        ),
    ]


# ---------------------------------------------------------------------------
# Constraint evaluation
# ---------------------------------------------------------------------------

def _focus_nodes(graph: Graph, target: Iri, v: Vocabulary) -> list[Term]:
    found = []
    for t in graph.match(None, Iri(RDF_TYPE), None):
        if not isinstance(t.object, Iri):
            continue
        asserted = t.object.value
        if asserted == target.value or (
            asserted in v.terms and target.value in v.superclass_closure(asserted)
        ):
            found.append(t.subject)
    return sorted(set(found), key=term_sort_key)


def _term_str(term: Term) -> str:
    if isinstance(term, Iri):
        return term.value
    if isinstance(term, Literal):
        return term.lexical
    return "_:" + term.label


def validate(graph: Graph, shapes: list[Shape] | None = None,
             v: Vocabulary | None = None) -> ValidationReport:
    """Evaluate the shapes against every matching focus node.

    Malformed content yields violations, never exceptions; the violation
    order is deterministic (focus, shape, path, kind).
    """
    v = v or catalog()
    shapes = builtin_shapes() if shapes is None else shapes
    violations: list[Violation] = []
    for shape in shapes:
        for focus in _focus_nodes(graph, shape.target_class, v):
            for constraint in shape.constraints:
                if constraint.when_path is not None:
                    guard_values = graph.objects(focus, constraint.when_path)
                    if constraint.when_value not in guard_values:
                        continue
                values = graph.objects(focus, constraint.path)

                def report(kind: str, detail: str = "") -> None:
                    violations.append(
                        Violation(
                            focus=_term_str(focus),
                            shape_id=shape.id,
                            path=constraint.path.value,
                            constraint_kind=kind,
                            message=constraint.message + detail,
                            source=constraint.source,
                        )
                    )

                if len(values) < constraint.min_count:
                    report("min_count")
                if constraint.max_count is not None and len(values) > constraint.max_count:
                    report("max_count")
                if constraint.value_in is not None:
                    for value in sorted(values, key=term_sort_key):
                        if value not in constraint.value_in:
                            report("value_in", f" (got {_term_str(value)})")
                if constraint.value_class is not None:
                    for value in sorted(values, key=term_sort_key):
                        if isinstance(value, Literal) or not v.is_instance_of(
                            graph, value, constraint.value_class
                        ):
                            report("value_class", f" (got {_term_str(value)})")
    violations.sort(key=lambda x: (x.focus, x.shape_id, x.path, x.constraint_kind, x.message))
    return ValidationReport(conforms=not violations, violations=tuple(violations))


# ---------------------------------------------------------------------------
# Competency questions
# ---------------------------------------------------------------------------

class CqId(Enum):
    CQ1 = "CQ1"
    CQ2 = "CQ2"
    CQ3 = "CQ3"
    CQ4 = "CQ4"
    CQ5 = "CQ5"
    CQ6 = "CQ6"
    CQ7 = "CQ7"
    CQ8 = "CQ8"


CQ_PROMPTS: dict[CqId, str] = {
    CqId.CQ1: "When was the FRIA conducted?",
    CqId.CQ2: "What is the intended purpose of the AI system?",
    CqId.CQ3: "What are the risks, consequences and impacts?",
    CqId.CQ4: "What are the mitigation measures?",
    CqId.CQ5: "What is the outcome of the FRIA process?",
    CqId.CQ6: "What fundamental rights are affected?",
    CqId.CQ7: "What authorities are notified for the FRIA?",
    CqId.CQ8: "What documentation and tools were used for the FRIA?",
}

_EMPTY_REASONS: dict[CqId, str] = {
    CqId.CQ1: "no creation date recorded",
    CqId.CQ2: "no intended purpose recorded",
    CqId.CQ3: "no risks, consequences or impacts recorded",
    CqId.CQ4: "no mitigation measures recorded",
    CqId.CQ5: "outcome not determined",
    CqId.CQ6: "no impacts on fundamental rights recorded",
    CqId.CQ7: "no authority notified",
    CqId.CQ8: "no documentation or tools recorded",
}


@dataclass(frozen=True)
class CqAnswer:
    cq: CqId
    bindings: tuple[tuple[Term, ...], ...]
    empty_reason: str | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "cq": self.cq.value,
                "question": CQ_PROMPTS[self.cq],
                "bindings": [[_term_str(t) for t in row] for row in self.bindings],
                "empty_reason": self.empty_reason,
            },
            indent=2,
        )


def _assessment_nodes(graph: Graph, fria: Iri, type_iri: str, v: Vocabulary) -> list[Iri]:
    nodes = []
    for obj in graph.objects(fria, Iri(HAS_ASSESSMENT)):
        if isinstance(obj, Iri) and v.is_instance_of(graph, obj, type_iri):
            nodes.append(obj)
    return nodes


def answer_cq(graph: Graph, fria: Iri, cq: CqId | str, v: Vocabulary | None = None) -> CqAnswer:
    """Run one of the eight fixed competency-question queries."""
    v = v or catalog()
    if isinstance(cq, str):
        try:
            cq = CqId(cq.upper() if cq.upper().startswith("CQ") else f"CQ{cq}")
        except ValueError as exc:
            raise ValueError(f"unknown competency question: {cq}") from exc
    if not v.is_instance_of(graph, fria, EU_AIACT + "FRIA"):
        raise RecordGraphError(f"{fria} is not typed as an AI Act FRIA in the graph")

    procedures = _assessment_nodes(graph, fria, FRIA + "FRIAProcedure", v)
    rows: list[tuple[Term, ...]] = []

    if cq is CqId.CQ1:
        for predicate in (DCT + "created", DCT + "modified"):
            for value in graph.objects(fria, Iri(predicate)):
                rows.append((Iri(predicate), value))
    elif cq is CqId.CQ2:
        for proc in procedures:
            for purpose in graph.objects(proc, Iri(HAS_PURPOSE)):
                title = None
                if isinstance(purpose, Iri):
                    titles = [
                        o for o in graph.objects(purpose, Iri(DCT + "title"))
                        if isinstance(o, Literal)
                    ]
                    title = titles[0] if len(titles) == 1 else None
                rows.append((purpose, title) if title is not None else (purpose,))
    elif cq is CqId.CQ3:
        links = (Iri(HAS_RISK), Iri(HAS_CONSEQUENCE), Iri(HAS_IMPACT))
        seen: set[Term] = set()
        frontier: list[Term] = list(procedures)
        while frontier:
            node = frontier.pop()
            for predicate in links:
                for obj in graph.objects(node, predicate):  # type: ignore[arg-type]
                    if obj not in seen:
                        seen.add(obj)
                        rows.append((predicate, obj))
                        frontier.append(obj)
    elif cq is CqId.CQ4:
        measures: set[Term] = set()
        for proc in procedures:
            measures.update(graph.objects(proc, Iri(HAS_MITIGATION)))
            for risk in graph.objects(proc, Iri(HAS_RISK)):
                measures.update(graph.objects(risk, Iri(MITIGATED_BY)))  # type: ignore[arg-type]
        rows = [(m,) for m in measures]
    elif cq is CqId.CQ5:
        for node in _assessment_nodes(graph, fria, FRIA + "FRIAOutcome", v):
            rows.extend((status,) for status in graph.objects(node, Iri(HAS_STATUS)))
    elif cq is CqId.CQ6:
        rights: set[Term] = set()
        for t in graph.match(None, Iri(RDF_TYPE), None):
            if isinstance(t.object, Iri) and v.is_instance_of(
                graph, t.subject, RISK + "ImpactToRights"
            ):
                for target in graph.objects(t.subject, Iri(HAS_IMPACT_ON)):
                    if v.is_instance_of(graph, target, DPV + "Right"):
                        rights.add(target)
        rows = [(r,) for r in rights]
    elif cq is CqId.CQ7:
        recipients: set[Term] = set()
        for node in _assessment_nodes(graph, fria, FRIA + "FRIANotificationAssessment", v):
            recipients.update(graph.objects(node, Iri(HAS_RECIPIENT)))
            for notice in graph.objects(node, Iri(HAS_NOTICE)):
                recipients.update(graph.objects(notice, Iri(HAS_RECIPIENT)))  # type: ignore[arg-type]
        rows = [(r,) for r in recipients]
    elif cq is CqId.CQ8:
        used: set[Term] = set()
        used.update(graph.objects(fria, Iri(USES_TECHNOLOGY)))
        used.update(graph.objects(fria, Iri(HAS_DOCUMENTATION)))
        rows = [(u,) for u in used]

    rows = sorted(set(rows), key=lambda row: tuple(term_sort_key(t) for t in row))
    return CqAnswer(
        cq=cq,
        bindings=tuple(rows),
        empty_reason=None if rows else _EMPTY_REASONS[cq],
    )
