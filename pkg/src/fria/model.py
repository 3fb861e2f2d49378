"""Structured view of one FRIA record and its graph mapping.

``FriaRecord`` holds the metadata, necessity decision, procedure inputs,
outcome and notification of a single assessment. ``to_graph`` serializes a
record to RDF; ``from_graph`` reads it back. Reading is lossless: triples
that are not part of the record serialization are kept in an opaque
``remainder`` graph and re-emitted verbatim, so a read-modify-write cycle
never drops foreign data.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from datetime import date
from enum import Enum
from typing import Union

from .errors import RecordGraphError, UnknownTermError
from .graph import Graph, GraphBuilder, Iri, Literal, Subject
from .namespaces import (
    DCT,
    DPV,
    EU_AIACT,
    FRIA,
    RDF_TYPE,
    RISK,
    SERIALIZATION_PREFIXES,
    TECH,
    XSD_BOOLEAN,
    XSD_DATE,
)
from .vocabulary import Vocabulary, catalog

# predicates
HAS_ASSESSMENT = DPV + "hasAssessment"
HAS_STATUS = DPV + "hasStatus"
HAS_PROCESS = DPV + "hasProcess"
HAS_PURPOSE = DPV + "hasPurpose"
HAS_DURATION = DPV + "hasDuration"
HAS_FREQUENCY = DPV + "hasFrequency"
HAS_DATA_SUBJECT = DPV + "hasDataSubject"
HAS_LIKELIHOOD = DPV + "hasLikelihood"
HAS_IMPACT = DPV + "hasImpact"
HAS_IMPACT_ON = DPV + "hasImpactOn"
HAS_CONSEQUENCE = DPV + "hasConsequence"
HAS_RISK = DPV + "hasRisk"
HAS_HUMAN_INVOLVEMENT = DPV + "hasHumanInvolvement"
HAS_MITIGATION = DPV + "hasRiskMitigationMeasure"
MITIGATED_BY = DPV + "isMitigatedByMeasure"
HAS_TOM = DPV + "hasTechnicalOrganisationalMeasure"
HAS_DATA = DPV + "hasData"
HAS_NOTICE = DPV + "hasNotice"
HAS_RECIPIENT = DPV + "hasRecipient"
USES_TECHNOLOGY = DPV + "isImplementedUsingTechnology"
HAS_INTENDED_USE = TECH + "hasIntendedUse"
HAS_DOCUMENTATION = TECH + "hasDocumentation"
HAS_CONDITION = FRIA + "hasNecessityCondition"
HAS_RESIDUAL_LEVEL = FRIA + "hasResidualRiskLevel"
HAS_ACCEPTANCE = FRIA + "hasRiskAcceptance"

# statuses
STATUS_REQUIRED = Iri(FRIA + "FRIARequired")
STATUS_NOT_REQUIRED = Iri(FRIA + "FRIANotRequired")
OUTCOME_UNACCEPTABLE = Iri(FRIA + "FRIAOutcomeUnacceptableRisk")
OUTCOME_HIGH_RESIDUAL = Iri(FRIA + "FRIAOutcomeHighResidualRisk")
OUTCOME_ACCEPTABLE = Iri(FRIA + "FRIAOutcomeRisksAcceptable")
OUTCOME_MITIGATED = Iri(FRIA + "FRIAOutcomeRisksMitigated")
NOTIF_NEEDED = Iri(FRIA + "FRIANotificationNeeded")
NOTIF_NOT_SENT = Iri(FRIA + "FRIANotificationNotSent")
NOTIF_SENT = Iri(FRIA + "FRIANotificationSent")
NOTIF_EXEMPT = Iri(FRIA + "FRIANotificationExempt")

_FLAG_RE = re.compile(r"^([A-Za-z0-9][A-Za-z0-9._-]*)=(true|false)$")


class ResidualLevel(Enum):
    NONE = "none"
    ACCEPTABLE = "acceptable"
    HIGH = "high"
    UNACCEPTABLE = "unacceptable"


@dataclass(frozen=True)
class FriaMetadata:
    """Record metadata; fields map one-to-one onto DCMI terms."""

    created: date
    title: str
    identifier: str
    publisher: Iri
    description: str = ""
    modified: date | None = None
    date_submitted: date | None = None
    date_accepted: date | None = None
    temporal_coverage: str | None = None
    valid_until: date | None = None
    conforms_to: frozenset[Iri] = frozenset()
    is_version_of: Iri | None = None
    subject: frozenset[Iri] = frozenset()
    coverage: str | None = None
    contributors: frozenset[Iri] = frozenset()
    creator_tool: Iri | None = None
    provenance_log: Iri | None = None

    def __post_init__(self) -> None:
        if not self.identifier:
            raise ValueError("identifier must be non-empty")
        if self.modified is not None and self.modified < self.created:
            raise ValueError("modified date precedes created date")


@dataclass(frozen=True)
class DescribedNode:
    """A node IRI with an optional free-text description."""

    iri: Iri
    description: str = ""


@dataclass(frozen=True)
class TextPurpose:
    """Free-text intended purpose, serialized as a locally minted node."""

    text: str


@dataclass(frozen=True)
class ImpactEntry:
    node: Iri
    impact: Iri
    affected: Iri
    likelihood: Iri
    right: Iri | None = None

    def __post_init__(self) -> None:
        if self.right is None and catalog().is_instance_of(Graph(), self.affected, DPV + "Right"):
            object.__setattr__(self, "right", self.affected)
        if self.impact.value == RISK + "ImpactToRights" and self.right is None:
            raise ValueError("an impact to rights must name the affected right")


@dataclass(frozen=True)
class RiskEntry:
    risk: Iri
    harm_category: Iri
    residual_level: ResidualLevel
    accepted: bool
    mitigations: frozenset[Iri] = frozenset()

    def __post_init__(self) -> None:
        if self.residual_level is ResidualLevel.NONE and not self.accepted:
            raise ValueError("a fully mitigated risk (level 'none') must be accepted")


@dataclass(frozen=True)
class MitigationMeasure:
    iri: Iri
    description: str = ""
    governance: frozenset[DescribedNode] = frozenset()


@dataclass(frozen=True)
class ProcedureInputs:
    """Information collected for Article 27(1)(a)-(f), plus reused assessments."""

    processes: frozenset[DescribedNode]
    intended_purpose: Union[Iri, TextPurpose]
    duration: Iri
    frequency: Iri
    human_subject_categories: frozenset[Iri]
    impacts: frozenset[ImpactEntry]
    harms: frozenset[RiskEntry]
    oversight_measures: frozenset[DescribedNode]
    mitigation_measures: frozenset[MitigationMeasure]
    intended_uses: frozenset[DescribedNode] = frozenset()
    instructions_for_use: Iri | None = None
    reused_assessments: frozenset[Iri] = frozenset()

    def __post_init__(self) -> None:
        v = catalog()
        for value, cls in ((self.duration, DPV + "Duration"), (self.frequency, DPV + "Frequency")):
            if not v.is_instance_of(Graph(), value, cls):
                raise ValueError(f"{value} is not a catalogued instance of {cls}")


@dataclass(frozen=True)
class NecessityDecision:
    status: Iri
    justification: str = ""
    condition_flags: tuple[tuple[str, bool], ...] = ()

    def __post_init__(self) -> None:
        if self.status not in (STATUS_REQUIRED, STATUS_NOT_REQUIRED):
            raise ValueError(f"not a necessity status: {self.status}")
        object.__setattr__(self, "condition_flags", tuple(sorted(self.condition_flags)))

    @property
    def required(self) -> bool:
        return self.status == STATUS_REQUIRED

    def flags(self) -> dict[str, bool]:
        return dict(self.condition_flags)


@dataclass(frozen=True)
class OutcomeDecision:
    status: Iri
    rights_impacted: frozenset[Iri] = frozenset()
    rationale: str = ""

    def __post_init__(self) -> None:
        if self.status not in (
            OUTCOME_UNACCEPTABLE, OUTCOME_HIGH_RESIDUAL, OUTCOME_ACCEPTABLE, OUTCOME_MITIGATED,
        ):
            raise ValueError(f"not an outcome status: {self.status}")


@dataclass(frozen=True)
class NotificationState:
    status: Iri
    authority: Iri | None = None
    notice: Iri | None = None
    exemption_basis: str | None = None
    sent_on: date | None = None

    def __post_init__(self) -> None:
        if self.status not in (NOTIF_NEEDED, NOTIF_NOT_SENT, NOTIF_SENT, NOTIF_EXEMPT):
            raise ValueError(f"not a notification status: {self.status}")
        if (self.exemption_basis is not None) != (self.status == NOTIF_EXEMPT):
            raise ValueError("exemption basis present iff status is exempt")
        if (self.sent_on is not None) != (self.status == NOTIF_SENT):
            raise ValueError("sent date present iff status is sent")


@dataclass(frozen=True)
class FriaRecord:
    iri: Iri
    metadata: FriaMetadata
    necessity: NecessityDecision | None = None
    inputs: ProcedureInputs | None = None
    outcome: OutcomeDecision | None = None
    notification: NotificationState | None = None
    tools_used: frozenset[Iri] = frozenset()
    questionnaires: frozenset[Iri] = frozenset()
    remainder: Graph = field(default_factory=Graph)

    def __post_init__(self) -> None:
        if self.outcome is not None:
            if self.necessity is None or not self.necessity.required:
                raise ValueError("an outcome requires a 'required' necessity decision")
        if self.notification is not None and self.outcome is None:
            raise ValueError("a notification requires an outcome")

    def stage_iri(self, stage: str) -> Iri:
        return Iri(f"{self.iri.value}#{stage}")


def touch(record: FriaRecord, when: date) -> FriaRecord:
    """Set the modified date; the store flags the record for re-assessment."""
    if when < record.metadata.created:
        raise ValueError("modification date precedes creation date")
    return replace(record, metadata=replace(record.metadata, modified=when))


# ---------------------------------------------------------------------------
# Record -> Graph
# ---------------------------------------------------------------------------

def _date_literal(d: date) -> Literal:
    return Literal(d.isoformat(), Iri(XSD_DATE))


def _bool_literal(value: bool) -> Literal:
    return Literal("true" if value else "false", Iri(XSD_BOOLEAN))


def _check_known(v: Vocabulary, *iris: Iri | None) -> None:
    for iri in iris:
        if iri is not None and iri.value.startswith((FRIA, DPV, TECH, RISK, EU_AIACT)):
            if iri.value not in v.terms:
                raise UnknownTermError(f"term not in catalog: {iri.value}")


def _metadata_triples(builder: GraphBuilder, node: Iri, m: FriaMetadata) -> None:
    builder.add(node, Iri(DCT + "created"), _date_literal(m.created))
    builder.add(node, Iri(DCT + "title"), Literal(m.title))
    builder.add(node, Iri(DCT + "identifier"), Literal(m.identifier))
    builder.add(node, Iri(DCT + "publisher"), m.publisher)
    if m.description:
        builder.add(node, Iri(DCT + "description"), Literal(m.description))
    if m.modified is not None:
        builder.add(node, Iri(DCT + "modified"), _date_literal(m.modified))
    if m.date_submitted is not None:
        builder.add(node, Iri(DCT + "dateSubmitted"), _date_literal(m.date_submitted))
    if m.date_accepted is not None:
        builder.add(node, Iri(DCT + "dateAccepted"), _date_literal(m.date_accepted))
    if m.temporal_coverage is not None:
        builder.add(node, Iri(DCT + "temporal"), Literal(m.temporal_coverage))
    if m.valid_until is not None:
        builder.add(node, Iri(DCT + "valid"), _date_literal(m.valid_until))
    for iri in sorted(m.conforms_to, key=str):
        builder.add(node, Iri(DCT + "conformsTo"), iri)
    if m.is_version_of is not None:
        builder.add(node, Iri(DCT + "isVersionOf"), m.is_version_of)
    for iri in sorted(m.subject, key=str):
        builder.add(node, Iri(DCT + "subject"), iri)
    if m.coverage is not None:
        builder.add(node, Iri(DCT + "coverage"), Literal(m.coverage))
    for iri in sorted(m.contributors, key=str):
        builder.add(node, Iri(DCT + "contributor"), iri)
    if m.creator_tool is not None:
        builder.add(node, Iri(DCT + "creator"), m.creator_tool)
    if m.provenance_log is not None:
        builder.add(node, Iri(DCT + "provenance"), m.provenance_log)


def _described(builder: GraphBuilder, parent: Iri, predicate: str, node: DescribedNode,
               type_iri: str) -> None:
    builder.add(parent, Iri(predicate), node.iri)
    builder.add(node.iri, Iri(RDF_TYPE), Iri(type_iri))
    if node.description:
        builder.add(node.iri, Iri(DCT + "description"), Literal(node.description))


def _inputs_triples(builder: GraphBuilder, record: FriaRecord, proc: Iri,
                    inputs: ProcedureInputs, v: Vocabulary) -> None:
    for p in sorted(inputs.processes, key=lambda x: x.iri.value):
        _described(builder, proc, HAS_PROCESS, p, FRIA + "AIProcess")
    if isinstance(inputs.intended_purpose, TextPurpose):
        pnode = record.stage_iri("purpose")
        builder.add(proc, Iri(HAS_PURPOSE), pnode)
        builder.add(pnode, Iri(RDF_TYPE), Iri(EU_AIACT + "IntendedPurpose"))
        builder.add(pnode, Iri(DCT + "title"), Literal(inputs.intended_purpose.text))
    else:
        _check_known(v, inputs.intended_purpose)
        builder.add(proc, Iri(HAS_PURPOSE), inputs.intended_purpose)
    builder.add(proc, Iri(HAS_DURATION), inputs.duration)
    builder.add(proc, Iri(HAS_FREQUENCY), inputs.frequency)
    for u in sorted(inputs.intended_uses, key=lambda x: x.iri.value):
        _described(builder, proc, HAS_INTENDED_USE, u, FRIA + "IntendedUse")
    for c in sorted(inputs.human_subject_categories, key=str):
        builder.add(proc, Iri(HAS_DATA_SUBJECT), c)
    for entry in sorted(inputs.impacts, key=lambda x: x.node.value):
        _check_known(v, entry.impact, entry.likelihood)
        builder.add(proc, Iri(HAS_IMPACT), entry.node)
        builder.add(entry.node, Iri(RDF_TYPE), entry.impact)
        builder.add(entry.node, Iri(HAS_LIKELIHOOD), entry.likelihood)
        builder.add(entry.node, Iri(HAS_IMPACT_ON), entry.affected)
        if entry.right is not None and entry.right != entry.affected:
            builder.add(entry.node, Iri(HAS_IMPACT_ON), entry.right)
    for entry in sorted(inputs.harms, key=lambda x: x.risk.value):
        _check_known(v, entry.harm_category)
        builder.add(proc, Iri(HAS_RISK), entry.risk)
        builder.add(entry.risk, Iri(RDF_TYPE), Iri(DPV + "Risk"))
        builder.add(entry.risk, Iri(HAS_CONSEQUENCE), entry.harm_category)
        builder.add(entry.risk, Iri(HAS_RESIDUAL_LEVEL), Literal(entry.residual_level.value))
        builder.add(entry.risk, Iri(HAS_ACCEPTANCE), _bool_literal(entry.accepted))
        for m in sorted(entry.mitigations, key=str):
            builder.add(entry.risk, Iri(MITIGATED_BY), m)
    for o in sorted(inputs.oversight_measures, key=lambda x: x.iri.value):
        _described(builder, proc, HAS_HUMAN_INVOLVEMENT, o, DPV + "HumanInvolvementForOversight")
    if inputs.instructions_for_use is not None:
        builder.add(proc, Iri(HAS_DOCUMENTATION), inputs.instructions_for_use)
        builder.add(inputs.instructions_for_use, Iri(RDF_TYPE), Iri(EU_AIACT + "InstructionsForUse"))
    for m in sorted(inputs.mitigation_measures, key=lambda x: x.iri.value):
        builder.add(proc, Iri(HAS_MITIGATION), m.iri)
        builder.add(m.iri, Iri(RDF_TYPE), Iri(DPV + "RiskMitigationMeasure"))
        if m.description:
            builder.add(m.iri, Iri(DCT + "description"), Literal(m.description))
        for g in sorted(m.governance, key=lambda x: x.iri.value):
            _described(builder, m.iri, HAS_TOM, g, DPV + "GovernanceProcedures")
    for a in sorted(inputs.reused_assessments, key=str):
        builder.add(proc, Iri(HAS_DATA), a)


def to_graph(record: FriaRecord, v: Vocabulary | None = None) -> Graph:
    """Serialize a record to a graph; deterministic for equal records."""
    v = v or catalog()
    builder = GraphBuilder(SERIALIZATION_PREFIXES)
    node = record.iri
    builder.add(node, Iri(RDF_TYPE), Iri(EU_AIACT + "FRIA"))
    _metadata_triples(builder, node, record.metadata)

    if record.necessity is not None:
        nec = record.stage_iri("necessity")
        builder.add(node, Iri(HAS_ASSESSMENT), nec)
        builder.add(nec, Iri(RDF_TYPE), Iri(FRIA + "FRIANecessityAssessment"))
        builder.add(nec, Iri(HAS_STATUS), record.necessity.status)
        if record.necessity.justification:
            builder.add(nec, Iri(DCT + "description"), Literal(record.necessity.justification))
        for name, value in record.necessity.condition_flags:
            flag = "true" if value else "false"
            builder.add(nec, Iri(HAS_CONDITION), Literal(f"{name}={flag}"))

    if record.inputs is not None:
        proc = record.stage_iri("procedure")
        builder.add(node, Iri(HAS_ASSESSMENT), proc)
        builder.add(proc, Iri(RDF_TYPE), Iri(FRIA + "FRIAProcedure"))
        _inputs_triples(builder, record, proc, record.inputs, v)

    if record.outcome is not None:
        out = record.stage_iri("outcome")
        builder.add(node, Iri(HAS_ASSESSMENT), out)
        builder.add(out, Iri(RDF_TYPE), Iri(FRIA + "FRIAOutcome"))
        builder.add(out, Iri(HAS_STATUS), record.outcome.status)
        for right in sorted(record.outcome.rights_impacted, key=str):
            builder.add(out, Iri(HAS_IMPACT_ON), right)
        if record.outcome.rationale:
            builder.add(out, Iri(DCT + "description"), Literal(record.outcome.rationale))

    if record.notification is not None:
        notif = record.stage_iri("notification")
        builder.add(node, Iri(HAS_ASSESSMENT), notif)
        builder.add(notif, Iri(RDF_TYPE), Iri(FRIA + "FRIANotificationAssessment"))
        builder.add(notif, Iri(HAS_STATUS), record.notification.status)
        if record.notification.authority is not None:
            builder.add(notif, Iri(HAS_RECIPIENT), record.notification.authority)
        if record.notification.notice is not None:
            builder.add(notif, Iri(HAS_NOTICE), record.notification.notice)
        if record.notification.exemption_basis is not None:
            builder.add(notif, Iri(DCT + "description"), Literal(record.notification.exemption_basis))
        if record.notification.sent_on is not None:
            builder.add(notif, Iri(DCT + "dateSubmitted"), _date_literal(record.notification.sent_on))

    for tool in sorted(record.tools_used, key=str):
        builder.add(node, Iri(USES_TECHNOLOGY), tool)
        builder.add(tool, Iri(RDF_TYPE), Iri(FRIA + "FRIATool"))
    for q in sorted(record.questionnaires, key=str):
        builder.add(node, Iri(HAS_DOCUMENTATION), q)
        builder.add(q, Iri(RDF_TYPE), Iri(FRIA + "FRIACompletedQuestionnaire"))

    for t in record.remainder.triples:
        builder.add_triple(t)
    return builder.build()


# ---------------------------------------------------------------------------
# Graph -> Record
# ---------------------------------------------------------------------------

class _Reader:
    def __init__(self, graph: Graph, fria: Iri, v: Vocabulary):
        self.g = graph
        self.node = fria
        self.v = v

    def fail(self, message: str) -> RecordGraphError:
        return RecordGraphError(f"{self.node}: {message}")

    def _literal(self, subject: Subject, predicate: str) -> str | None:
        values = [
            o.lexical
            for o in self.g.objects(subject, Iri(predicate))
            if isinstance(o, Literal)
        ]
        return values[0] if len(values) == 1 else None

    def _date(self, subject: Subject, predicate: str, required: bool = False) -> date | None:
        raw = self._literal(subject, predicate)
        if raw is None:
            if required:
                raise self.fail(f"missing date value for {predicate}")
            return None
        try:
            return date.fromisoformat(raw[:10])
        except ValueError as exc:
            raise self.fail(f"malformed date {raw!r} for {predicate}") from exc

    def _iris(self, subject: Subject, predicate: str) -> list[Iri]:
        return [o for o in self.g.objects(subject, Iri(predicate)) if isinstance(o, Iri)]

    def _single_iri(self, subject: Subject, predicate: str) -> Iri | None:
        iris = self._iris(subject, predicate)
        if len(iris) > 1:
            raise self.fail(f"multiple values for {predicate} on {subject}")
        return iris[0] if iris else None

    def _status(self, subject: Subject, allowed: tuple[Iri, ...], stage: str) -> Iri:
        statuses = [o for o in self._iris(subject, HAS_STATUS) if o in allowed]
        if len(statuses) != 1:
            raise self.fail(
                f"{stage} assessment must carry exactly one status, found {len(statuses)}"
            )
        return statuses[0]

    def stage_nodes(self, type_iri: str) -> list[Iri]:
        found = []
        for obj in self._iris(self.node, HAS_ASSESSMENT):
            types = {o.value for o in self._iris(obj, RDF_TYPE)}
            for t in types:
                if t == type_iri or (t in self.v.terms and type_iri in self.v.superclass_closure(t)):
                    found.append(obj)
                    break
        return found

    def stage_node(self, type_iri: str, stage: str) -> Iri | None:
        nodes = self.stage_nodes(type_iri)
        if len(nodes) > 1:
            raise self.fail(f"more than one {stage} assessment node")
        return nodes[0] if nodes else None

    def metadata(self) -> FriaMetadata:
        created = self._date(self.node, DCT + "created")
        title = self._literal(self.node, DCT + "title")
        identifier = self._literal(self.node, DCT + "identifier")
        publisher = self._single_iri(self.node, DCT + "publisher")
        if created is None or title is None or identifier is None or publisher is None:
            raise self.fail("record metadata must include created, title, identifier and publisher")
        return FriaMetadata(
            created=created,
            title=title,
            identifier=identifier,
            publisher=publisher,
            description=self._literal(self.node, DCT + "description") or "",
            modified=self._date(self.node, DCT + "modified"),
            date_submitted=self._date(self.node, DCT + "dateSubmitted"),
            date_accepted=self._date(self.node, DCT + "dateAccepted"),
            temporal_coverage=self._literal(self.node, DCT + "temporal"),
            valid_until=self._date(self.node, DCT + "valid"),
            conforms_to=frozenset(self._iris(self.node, DCT + "conformsTo")),
            is_version_of=self._single_iri(self.node, DCT + "isVersionOf"),
            subject=frozenset(self._iris(self.node, DCT + "subject")),
            coverage=self._literal(self.node, DCT + "coverage"),
            contributors=frozenset(self._iris(self.node, DCT + "contributor")),
            creator_tool=self._single_iri(self.node, DCT + "creator"),
            provenance_log=self._single_iri(self.node, DCT + "provenance"),
        )

    def necessity(self) -> NecessityDecision | None:
        nec = self.stage_node(FRIA + "FRIANecessityAssessment", "necessity")
        if nec is None:
            return None
        status = self._status(nec, (STATUS_REQUIRED, STATUS_NOT_REQUIRED), "necessity")
        flags = []
        for o in self.g.objects(nec, Iri(HAS_CONDITION)):
            if not isinstance(o, Literal):
                continue
            m = _FLAG_RE.match(o.lexical)
            if not m:
                raise self.fail(f"malformed necessity condition flag {o.lexical!r}")
            flags.append((m.group(1), m.group(2) == "true"))
        return NecessityDecision(
            status=status,
            justification=self._literal(nec, DCT + "description") or "",
            condition_flags=tuple(flags),
        )

    def described(self, parent: Iri, predicate: str) -> frozenset[DescribedNode]:
        nodes = []
        for iri in self._iris(parent, predicate):
            nodes.append(DescribedNode(iri, self._literal(iri, DCT + "description") or ""))
        return frozenset(nodes)

    def inputs(self) -> ProcedureInputs | None:
        proc = self.stage_node(FRIA + "FRIAProcedure", "procedure")
        if proc is None:
            return None
        purpose_iri = self._single_iri(proc, HAS_PURPOSE)
        if purpose_iri is None:
            raise self.fail("procedure must declare an intended purpose")
        purpose: Union[Iri, TextPurpose] = purpose_iri
        minted = Iri(f"{self.node.value}#purpose")
        if purpose_iri == minted:
            title = self._literal(purpose_iri, DCT + "title")
            if title is not None:
                purpose = TextPurpose(title)
        duration = self._single_iri(proc, HAS_DURATION)
        frequency = self._single_iri(proc, HAS_FREQUENCY)
        if duration is None or frequency is None:
            raise self.fail("procedure must declare duration and frequency")

        impacts = []
        for inode in self._iris(proc, HAS_IMPACT):
            types = self._iris(inode, RDF_TYPE)
            if len(types) != 1:
                raise self.fail(f"impact node {inode} must have exactly one type")
            likelihood = self._single_iri(inode, HAS_LIKELIHOOD)
            if likelihood is None:
                raise self.fail(f"impact node {inode} must carry a likelihood")
            targets = self._iris(inode, HAS_IMPACT_ON)
            rights = [t for t in targets if self.v.is_instance_of(self.g, t, DPV + "Right")]
            others = [t for t in targets if t not in rights]
            if len(rights) > 1 or len(others) > 1 or not targets:
                raise self.fail(f"impact node {inode} must affect one subject and at most one right")
            right = rights[0] if rights else None
            affected = others[0] if others else rights[0]
            impacts.append(ImpactEntry(inode, types[0], affected, likelihood, right))

        harms = []
        for rnode in self._iris(proc, HAS_RISK):
            harm = self._single_iri(rnode, HAS_CONSEQUENCE)
            level_raw = self._literal(rnode, HAS_RESIDUAL_LEVEL)
            accepted_raw = self._literal(rnode, HAS_ACCEPTANCE)
            if harm is None or level_raw is None or accepted_raw is None:
                raise self.fail(f"risk node {rnode} must carry harm, residual level and acceptance")
            try:
                level = ResidualLevel(level_raw)
            except ValueError as exc:
                raise self.fail(f"unknown residual level {level_raw!r}") from exc
            harms.append(
                RiskEntry(
                    risk=rnode,
                    harm_category=harm,
                    residual_level=level,
                    accepted=accepted_raw == "true",
                    mitigations=frozenset(self._iris(rnode, MITIGATED_BY)),
                )
            )

        measures = []
        for mnode in self._iris(proc, HAS_MITIGATION):
            measures.append(
                MitigationMeasure(
                    iri=mnode,
                    description=self._literal(mnode, DCT + "description") or "",
                    governance=self.described(mnode, HAS_TOM),
                )
            )

        return ProcedureInputs(
            processes=self.described(proc, HAS_PROCESS),
            intended_purpose=purpose,
            duration=duration,
            frequency=frequency,
            intended_uses=self.described(proc, HAS_INTENDED_USE),
            human_subject_categories=frozenset(self._iris(proc, HAS_DATA_SUBJECT)),
            impacts=frozenset(impacts),
            harms=frozenset(harms),
            oversight_measures=self.described(proc, HAS_HUMAN_INVOLVEMENT),
            instructions_for_use=self._single_iri(proc, HAS_DOCUMENTATION),
            mitigation_measures=frozenset(measures),
            reused_assessments=frozenset(self._iris(proc, HAS_DATA)),
        )

    def outcome(self) -> OutcomeDecision | None:
        out = self.stage_node(FRIA + "FRIAOutcome", "outcome")
        if out is None:
            return None
        status = self._status(
            out,
            (OUTCOME_UNACCEPTABLE, OUTCOME_HIGH_RESIDUAL, OUTCOME_ACCEPTABLE, OUTCOME_MITIGATED),
            "outcome",
        )
        return OutcomeDecision(
            status=status,
            rights_impacted=frozenset(self._iris(out, HAS_IMPACT_ON)),
            rationale=self._literal(out, DCT + "description") or "",
        )

    def notification(self) -> NotificationState | None:
        notif = self.stage_node(FRIA + "FRIANotificationAssessment", "notification")
        if notif is None:
            return None
        status = self._status(
            notif, (NOTIF_NEEDED, NOTIF_NOT_SENT, NOTIF_SENT, NOTIF_EXEMPT), "notification"
        )
        basis = self._literal(notif, DCT + "description") if status == NOTIF_EXEMPT else None
        sent_on = self._date(notif, DCT + "dateSubmitted") if status == NOTIF_SENT else None
        if status == NOTIF_EXEMPT and basis is None:
            raise self.fail("exempt notification must state its basis")
        if status == NOTIF_SENT and sent_on is None:
            raise self.fail("sent notification must carry the dispatch date")
        return NotificationState(
            status=status,
            authority=self._single_iri(notif, HAS_RECIPIENT),
            notice=self._single_iri(notif, HAS_NOTICE),
            exemption_basis=basis,
            sent_on=sent_on,
        )


def from_graph(graph: Graph, fria: Iri, v: Vocabulary | None = None) -> FriaRecord:
    """Read the structured record for ``fria`` out of a graph.

    Triples that are not part of the record serialization are preserved in
    the record's ``remainder``, so ``to_graph(from_graph(g))`` contains every
    triple of ``g``.
    """
    v = v or catalog()
    type_ok = any(
        isinstance(t.object, Iri)
        and (
            t.object.value == EU_AIACT + "FRIA"
            or (
                t.object.value in v.terms
                and EU_AIACT + "FRIA" in v.superclass_closure(t.object.value)
            )
        )
        for t in graph.match(fria, Iri(RDF_TYPE), None)
    )
    if not type_ok:
        raise RecordGraphError(f"{fria} is not typed as an AI Act FRIA in the graph")

    reader = _Reader(graph, fria, v)
    record = FriaRecord(
        iri=fria,
        metadata=reader.metadata(),
        necessity=reader.necessity(),
        inputs=reader.inputs(),
        outcome=reader.outcome(),
        notification=reader.notification(),
        tools_used=frozenset(reader._iris(fria, USES_TECHNOLOGY)),
        questionnaires=frozenset(reader._iris(fria, HAS_DOCUMENTATION)),
    )
    structured = to_graph(record, v).triples
    remainder = graph.triples - structured
    if remainder:
        record = replace(record, remainder=Graph(remainder))
    return record
