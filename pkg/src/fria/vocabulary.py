"""Built-in catalog of the FRIA vocabulary and the external terms it reuses.

The catalog covers three groups:

* the new ``fria:`` concept terms for the assessment stages (necessity,
  procedure, outcome, notification) and the questionnaire/tool concepts,
  each carrying an AI Act Article 27 citation;
* three ``fria:`` record-keeping properties used to serialize evidence the
  statuses are derived from (condition flags, residual risk level and risk
  acceptance) — these are properties, not concepts;
* stub definitions for every reused DPV / DPV-extension / DCMI term, so the
  engine is self-contained and works offline.

Subclass and instance semantics are the reflexive-transitive closure over
parent links; no other reasoning is performed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import UnknownTermError
from .graph import Graph, GraphBuilder, Iri, Literal, Subject, Term
from .namespaces import (
    AI,
    DCT,
    DPV,
    EU_AIACT,
    FRIA,
    RDF,
    RDFS,
    RDF_TYPE,
    RISK,
    SKOS,
    TECH,
    VOCAB_PREFIXES,
)

RDFS_CLASS = RDFS + "Class"
RDF_PROPERTY = RDF + "Property"
RDFS_SUBCLASS_OF = RDFS + "subClassOf"
RDFS_SUBPROPERTY_OF = RDFS + "subPropertyOf"
SKOS_PREF_LABEL = SKOS + "prefLabel"
SKOS_DEFINITION = SKOS + "definition"
SKOS_SCOPE_NOTE = SKOS + "scopeNote"
DCT_SOURCE = DCT + "source"


class TermKind(Enum):
    CLASS = "class"
    PROPERTY = "property"
    INSTANCE = "instance"


@dataclass(frozen=True)
class TermDef:
    """One catalog entry: a class, property or instance with parent links."""

    iri: str
    kind: TermKind
    parents: frozenset[str]
    label: str
    definition: str
    source: str
    note: str = ""


class Vocabulary:
    """Immutable term catalog with closure-based subclass/instance checks."""

    def __init__(self, terms: dict[str, TermDef], namespaces: dict[str, str]):
        self.terms = dict(terms)
        self.namespaces = dict(namespaces)

    def __contains__(self, iri: Iri | str) -> bool:
        return str(iri) in self.terms

    def term(self, iri: Iri | str) -> TermDef:
        key = str(iri)
        if key not in self.terms:
            raise UnknownTermError(f"term not in catalog: {key}")
        return self.terms[key]

    def terms_of_kind(self, kind: TermKind) -> list[TermDef]:
        return sorted(
            (t for t in self.terms.values() if t.kind is kind), key=lambda t: t.iri
        )

    def superclass_closure(self, iri: Iri | str) -> set[str]:
        """Reflexive-transitive closure over parent links."""
        start = self.term(iri).iri
        closure = {start}
        frontier = [start]
        while frontier:
            current = frontier.pop()
            for parent in self.terms[current].parents:
                if parent not in closure:
                    closure.add(parent)
                    if parent in self.terms:
                        frontier.append(parent)
        return closure

    def instances_of(self, class_iri: Iri | str) -> list[TermDef]:
        """Catalog instances whose parent closure reaches the class (sorted)."""
        target = str(class_iri)
        found = []
        for t in self.terms.values():
            if t.kind is not TermKind.INSTANCE:
                continue
            if any(target in self.superclass_closure(p) for p in t.parents if p in self.terms):
                found.append(t)
        return sorted(found, key=lambda t: t.iri)

    def is_instance_of(self, graph: Graph, node: Term, class_iri: Iri | str) -> bool:
        """True when the graph types the node under the class, or the node is
        a catalog instance whose parent closure reaches the class."""
        target = self.term(class_iri)
        if target.kind is not TermKind.CLASS:
            raise UnknownTermError(f"not a class: {target.iri}")
        if not isinstance(node, Literal):
            for t in graph.match(node, Iri(RDF_TYPE), None):
                if isinstance(t.object, Iri):
                    asserted = t.object.value
                    if asserted == target.iri:
                        return True
                    if asserted in self.terms and target.iri in self.superclass_closure(asserted):
                        return True
        if isinstance(node, Iri) and node.value in self.terms:
            entry = self.terms[node.value]
            if entry.kind is TermKind.INSTANCE:
                for parent in entry.parents:
                    if parent in self.terms and target.iri in self.superclass_closure(parent):
                        return True
        return False

    def find_cycle(self) -> list[str] | None:
        """A parent-link cycle if one exists (the catalog must be a DAG)."""
        visiting: set[str] = set()
        done: set[str] = set()

        def visit(iri: str, path: list[str]) -> list[str] | None:
            if iri in done:
                return None
            if iri in visiting:
                return path[path.index(iri):]
            visiting.add(iri)
            path.append(iri)
            for parent in sorted(self.terms[iri].parents):
                if parent in self.terms:
                    cycle = visit(parent, path)
                    if cycle:
                        return cycle
            path.pop()
            visiting.discard(iri)
            done.add(iri)
            return None

        for iri in sorted(self.terms):
            cycle = visit(iri, [])
            if cycle:
                return cycle
        return None


# ---------------------------------------------------------------------------
# Catalog content
# ---------------------------------------------------------------------------

_ART_27_1 = "AI Act Art 27(1)"
_ART_27_1A = "AI Act Art 27(1)(a)"
_ART_27_1B = "AI Act Art 27(1)(b)"
_ART_27_1C = "AI Act Art 27(1)(c)"
_ART_27_1D = "AI Act Art 27(1)(d)"
_ART_27_1E = "AI Act Art 27(1)(e)"
_ART_27_1F = "AI Act Art 27(1)(f)"
_ART_27_2 = "AI Act Art 27(2)"
_ART_27_3 = "AI Act Art 27(3)"
_ART_27_5 = "AI Act Art 27(5)"
_DPV_SRC = "DPV"
_TECH_SRC = "DPV TECH extension"
_RISK_SRC = "DPV RISK extension"
_AI_SRC = "DPV AI extension"
_AIACT_SRC = "DPV EU AI Act extension"
_DCT_SRC = "DCMI Metadata Terms"


def _defs() -> list[TermDef]:
    c, p, i = TermKind.CLASS, TermKind.PROPERTY, TermKind.INSTANCE

    def term(ns: str, local: str, kind: TermKind, parents: tuple[str, ...], label: str,
             definition: str, source: str, note: str = "") -> TermDef:
        return TermDef(ns + local, kind, frozenset(parents), label, definition, source, note)

    fria, dpv, tech, risk, aiact = FRIA, DPV, TECH, RISK, EU_AIACT
    out: list[TermDef] = []

    # -- new concepts: necessity stage -------------------------------------
    out += [
        term(fria, "FRIANecessityAssessment", c, (aiact + "FRIA",),
             "FRIA Necessity Assessment",
             "Assessment of whether a fundamental rights impact assessment must be "
             "conducted for an AI system deployment.", _ART_27_1),
        term(fria, "FRIANecessityStatus", c, (dpv + "Status",),
             "FRIA Necessity Status",
             "Status recording the result of the necessity assessment.", _ART_27_1),
        term(fria, "FRIARequired", i, (fria + "FRIANecessityStatus",),
             "FRIA Required",
             "A fundamental rights impact assessment must be conducted.", _ART_27_1),
        term(fria, "FRIANotRequired", i, (fria + "FRIANecessityStatus",),
             "FRIA Not Required",
             "No fundamental rights impact assessment is required.", _ART_27_1),
    ]

    # -- new concepts: procedure and inputs --------------------------------
    out += [
        term(fria, "FRIAProcedure", c, (aiact + "FRIA",),
             "FRIA Procedure",
             "The process of carrying out the fundamental rights impact assessment, "
             "collecting the inputs required by Article 27(1).", _ART_27_1),
        term(fria, "AIProcess", c, (dpv + "Process",),
             "AI Process",
             "A deployer process in which the AI system is used; combines purposes, "
             "data, technologies and entities in specific roles.", _ART_27_1A),
        term(fria, "IntendedUse", c, (tech + "IntendedUse",),
             "Intended Use",
             "Contextual application of the AI system's intended purpose in a "
             "specific deployment scenario.", _ART_27_1B),
    ]

    # -- new concepts: outcome stage ----------------------------------------
    out += [
        term(fria, "FRIAOutcome", c, (aiact + "FRIA",),
             "FRIA Outcome",
             "The process of determining the outcome of the assessment.", _ART_27_1),
        term(fria, "FRIAOutcomeStatus", c, (dpv + "Status",),
             "FRIA Outcome Status",
             "Status recording the determined outcome of the assessment.", _ART_27_1),
        term(fria, "FRIAOutcomeUnacceptableRisk", i, (fria + "FRIAOutcomeStatus",),
             "Outcome: Unacceptable Risk",
             "The use poses an unacceptable risk to fundamental rights; the AI "
             "system should not be used.", _ART_27_1),
        term(fria, "FRIAOutcomeHighResidualRisk", i, (fria + "FRIAOutcomeStatus",),
             "Outcome: High Residual Risk",
             "High residual risk to fundamental rights remains and continuation is "
             "not acceptable.", _ART_27_1),
        term(fria, "FRIAOutcomeRisksAcceptable", i, (fria + "FRIAOutcomeStatus",),
             "Outcome: Risks Acceptable",
             "Residual risks to fundamental rights remain and are acceptable for "
             "continuation.", _ART_27_1),
        term(fria, "FRIAOutcomeRisksMitigated", i, (fria + "FRIAOutcomeStatus",),
             "Outcome: Risks Mitigated",
             "Risks to fundamental rights have been mitigated and continuation is "
             "safe.", _ART_27_1),
    ]

    # -- new concepts: notification stage ------------------------------------
    out += [
        term(fria, "FRIANotificationAssessment", c, (aiact + "FRIA",),
             "FRIA Notification Assessment",
             "Assessment of whether the market surveillance authority must be "
             "notified of the assessment's results.", _ART_27_3),
        term(fria, "FRIANotificationStatus", c, (dpv + "Status",),
             "FRIA Notification Status",
             "Status of the notification obligation.", _ART_27_3),
        term(fria, "FRIANotificationNeeded", i, (fria + "FRIANotificationStatus",),
             "Notification Needed",
             "A notification has been identified as needed and awaits further "
             "handling.", _ART_27_3),
        term(fria, "FRIANotificationNotSent", i, (fria + "FRIANotificationStatus",),
             "Notification Not Sent",
             "A required notification has been prepared but not sent yet.", _ART_27_3),
        term(fria, "FRIANotificationSent", i, (fria + "FRIANotificationStatus",),
             "Notification Sent",
             "The notification has been sent to the market surveillance "
             "authority.", _ART_27_3),
        term(fria, "FRIANotificationExempt", i, (fria + "FRIANotificationStatus",),
             "Notification Exempt",
             "The obligation to notify does not apply, per the exemption in "
             "Article 46(1).", "AI Act Art 27(3), Art 46(1)",
             note="Jurisdiction-specific exemption statuses can be added as "
                  "additional instances."),
        term(fria, "FRIANotice", c, (dpv + "Notice",),
             "FRIA Notice",
             "Communication of the assessment's results to a market surveillance "
             "authority.", _ART_27_3),
    ]

    # -- new concepts: questionnaire and tool --------------------------------
    out += [
        term(fria, "FRIAQuestionnaire", c, (tech + "Documentation",),
             "FRIA Questionnaire",
             "Template questionnaire supplied to deployers to complete their "
             "assessment obligations.", _ART_27_5),
        term(fria, "FRIACompletedQuestionnaire", c, (fria + "FRIAQuestionnaire",),
             "FRIA Completed Questionnaire",
             "A filled-out questionnaire, suitable for inclusion in the notice to "
             "the market surveillance authority.", _ART_27_5),
        term(fria, "FRIATool", c, (dpv + "Technology",),
             "FRIA Tool",
             "A tool, automated or otherwise, used to carry out assessment "
             "steps.", _ART_27_5),
    ]

    # -- record-keeping properties (not part of the concept vocabulary) ------
    out += [
        term(fria, "hasNecessityCondition", p, (),
             "has necessity condition",
             "Declared condition flag ('name=true|false') evaluated when deciding "
             "whether an assessment is required.", _ART_27_1),
        term(fria, "hasResidualRiskLevel", p, (),
             "has residual risk level",
             "Evidence level ('none', 'acceptable', 'high', 'unacceptable') of the "
             "risk remaining after mitigation; outcome statuses are derived from "
             "it.", _ART_27_1D),
        term(fria, "hasRiskAcceptance", p, (),
             "has risk acceptance",
             "Whether the deployer accepts the residual risk.", _ART_27_1D),
    ]

    # -- reused: EU AI Act extension -----------------------------------------
    out += [
        term(aiact, "FRIA", c, (dpv + "FRIA",),
             "FRIA (AI Act)",
             "Fundamental rights impact assessment as defined in the AI Act; both "
             "an activity and an artefact.", _AIACT_SRC),
        term(aiact, "IntendedPurpose", c, (dpv + "Purpose",),
             "Intended Purpose",
             "The use for which the AI system is intended by the provider.",
             _AIACT_SRC,
             note="Could additionally be modelled as a subclass of dpv:Process, "
                  "since an intended purpose spans techniques and data; recorded "
                  "here as a note, not an axiom."),
        term(aiact, "InstructionsForUse", c, (tech + "Documentation",),
             "Instructions For Use",
             "Provider-issued information on the proper use of the AI system.",
             _AIACT_SRC),
    ]

    # -- reused: DPV core ------------------------------------------------------
    out += [
        term(dpv, "FRIA", c, (),
             "FRIA", "Fundamental rights impact assessment.", _DPV_SRC),
        term(dpv, "hasAssessment", p, (),
             "has assessment", "Links a subject to an assessment conducted for it.",
             _DPV_SRC),
        term(dpv, "Status", c, (),
             "Status", "The state or condition of something.", _DPV_SRC),
        term(dpv, "hasStatus", p, (),
             "has status", "Links a subject to its status.", _DPV_SRC),
        term(dpv, "Process", c, (),
             "Process", "An organisational process combining purposes, data, "
             "technologies and entities.", _DPV_SRC),
        term(dpv, "hasProcess", p, (),
             "has process", "Links a subject to a process.", _DPV_SRC),
        term(dpv, "Purpose", c, (),
             "Purpose", "The objective or goal for which something is used.",
             _DPV_SRC),
        term(dpv, "hasPurpose", p, (),
             "has purpose", "Links a subject to its purpose.", _DPV_SRC),
        term(dpv, "Duration", c, (),
             "Duration", "The temporal extent of an activity.", _DPV_SRC),
        term(dpv, "hasDuration", p, (),
             "has duration", "Links a subject to its duration.", _DPV_SRC),
        term(dpv, "EndlessDuration", i, (dpv + "Duration",),
             "Endless Duration", "Duration without a defined end.", _DPV_SRC),
        term(dpv, "FixedDuration", i, (dpv + "Duration",),
             "Fixed Duration", "Duration of a fixed length.", _DPV_SRC),
        term(dpv, "TemporalDuration", i, (dpv + "Duration",),
             "Temporal Duration", "Duration over a specific calendar period.",
             _DPV_SRC),
        term(dpv, "UntilEventDuration", i, (dpv + "Duration",),
             "Until Event Duration", "Duration lasting until a specified event.",
             _DPV_SRC),
        term(dpv, "UntilTimeDuration", i, (dpv + "Duration",),
             "Until Time Duration", "Duration lasting until a specified time.",
             _DPV_SRC),
        term(dpv, "Frequency", c, (),
             "Frequency", "How often an activity takes place.", _DPV_SRC),
        term(dpv, "hasFrequency", p, (),
             "has frequency", "Links a subject to its frequency.", _DPV_SRC),
        term(dpv, "ContinuousFrequency", i, (dpv + "Frequency",),
             "Continuous Frequency", "Activity occurring without interruption.",
             _DPV_SRC, note="Listed in the source vocabulary under the variant "
                            "spelling 'continous'."),
        term(dpv, "OftenFrequency", i, (dpv + "Frequency",),
             "Often Frequency", "Activity occurring regularly.", _DPV_SRC),
        term(dpv, "SingularFrequency", i, (dpv + "Frequency",),
             "Singular Frequency", "Activity occurring once.", _DPV_SRC),
        term(dpv, "SporadicFrequency", i, (dpv + "Frequency",),
             "Sporadic Frequency", "Activity occurring irregularly.", _DPV_SRC),
        term(dpv, "DataSubject", c, (),
             "Data Subject",
             "Natural persons whose data is processed or who are subjected to the "
             "use of a technology, including AI systems.", _DPV_SRC,
             note="Used here for the categories of natural persons and groups "
                  "affected by the AI system's use; an alternative modelling "
                  "introduces a broader HumanSubject parent concept."),
        term(dpv, "hasDataSubject", p, (),
             "has data subject", "Links a subject to affected person categories.",
             _DPV_SRC),
        term(dpv, "Adult", i, (dpv + "DataSubject",),
             "Adult", "Adult natural persons.", _DPV_SRC),
        term(dpv, "Child", i, (dpv + "DataSubject",),
             "Child", "Natural persons below the age of majority.", _DPV_SRC),
        term(dpv, "Employee", i, (dpv + "DataSubject",),
             "Employee", "Persons employed by an organisation.", _DPV_SRC),
        term(dpv, "Tourist", i, (dpv + "DataSubject",),
             "Tourist", "Persons travelling or visiting.", _DPV_SRC),
        term(dpv, "VulnerableDataSubject", i, (dpv + "DataSubject",),
             "Vulnerable Data Subject", "Persons in a vulnerable situation.",
             _DPV_SRC),
        term(dpv, "Likelihood", c, (),
             "Likelihood", "The chance of something occurring.", _DPV_SRC),
        term(dpv, "hasLikelihood", p, (),
             "has likelihood", "Links a subject to its likelihood.", _DPV_SRC),
        term(dpv, "HighLikelihood", i, (dpv + "Likelihood",),
             "High Likelihood", "High chance of occurring.", _DPV_SRC),
        term(dpv, "ModerateLikelihood", i, (dpv + "Likelihood",),
             "Moderate Likelihood", "Moderate chance of occurring.", _DPV_SRC),
        term(dpv, "LowLikelihood", i, (dpv + "Likelihood",),
             "Low Likelihood", "Low chance of occurring.", _DPV_SRC),
        term(dpv, "Consequence", c, (),
             "Consequence", "An event following from another event, such as "
             "equipment failure.", _DPV_SRC),
        term(dpv, "hasConsequence", p, (),
             "has consequence", "Links a subject to a consequence.", _DPV_SRC),
        term(dpv, "hasConsequenceOn", p, (),
             "has consequence on", "Links a consequence to what it affects.",
             _DPV_SRC),
        term(dpv, "Impact", c, (dpv + "Consequence",),
             "Impact", "A consequence that significantly affects entities, for "
             "example through physical harm or loss of resources.", _DPV_SRC),
        term(dpv, "hasImpact", p, (),
             "has impact", "Links a subject to an impact.", _DPV_SRC),
        term(dpv, "hasImpactOn", p, (),
             "has impact on", "Links an impact to the affected entity.", _DPV_SRC),
        term(dpv, "Risk", c, (),
             "Risk", "A possibility of harm or loss.", _DPV_SRC),
        term(dpv, "hasRisk", p, (),
             "has risk", "Links a subject to an identified risk.", _DPV_SRC),
        term(dpv, "HumanInvolvement", c, (),
             "Human Involvement", "Involvement of humans in an activity.",
             _DPV_SRC),
        term(dpv, "HumanInvolvementForOversight", c, (dpv + "HumanInvolvement",),
             "Human Involvement For Oversight",
             "Human involvement for the purposes of overseeing an activity.",
             _DPV_SRC),
        term(dpv, "hasHumanInvolvement", p, (),
             "has human involvement", "Links a subject to human involvement "
             "measures.", _DPV_SRC),
        term(dpv, "RiskMitigationMeasure", c, (),
             "Risk Mitigation Measure", "A measure that mitigates an identified "
             "risk.", _DPV_SRC),
        term(dpv, "hasRiskMitigationMeasure", p, (),
             "has risk mitigation measure", "Links a subject to a mitigation "
             "measure.", _DPV_SRC),
        term(dpv, "isMitigatedByMeasure", p, (),
             "is mitigated by measure", "Links a risk to the measure mitigating "
             "it.", _DPV_SRC),
        term(dpv, "GovernanceProcedures", c, (),
             "Governance Procedures", "Arrangements for internal governance and "
             "complaint mechanisms.", _DPV_SRC),
        term(dpv, "IncidentManagementProcedures", c, (dpv + "GovernanceProcedures",),
             "Incident Management Procedures", "Procedures for managing "
             "incidents.", _DPV_SRC),
        term(dpv, "IncidentReportingCommunication", c, (dpv + "GovernanceProcedures",),
             "Incident Reporting Communication", "Communication channels for "
             "reporting incidents.", _DPV_SRC),
        term(dpv, "hasTechnicalOrganisationalMeasure", p, (),
             "has technical organisational measure",
             "Links a subject to technical or organisational measures, such as "
             "governance procedures backing a mitigation.", _DPV_SRC),
        term(dpv, "hasData", p, (),
             "has data", "Links a subject to data or documents used as input, "
             "such as previously conducted assessments.", _DPV_SRC),
        term(dpv, "Right", c, (),
             "Right", "A right held by an entity.", _DPV_SRC),
        term(dpv, "Notice", c, (),
             "Notice", "Communication of information between entities.", _DPV_SRC),
        term(dpv, "hasNotice", p, (),
             "has notice", "Links a subject to a notice.", _DPV_SRC),
        term(dpv, "hasRecipient", p, (),
             "has recipient", "Links a communication to its recipient.", _DPV_SRC),
        term(dpv, "Technology", c, (),
             "Technology", "A technology, such as a tool, system or service.",
             _DPV_SRC),
        term(dpv, "isImplementedUsingTechnology", p, (),
             "is implemented using technology",
             "Links an activity to the technology used to implement it.", _DPV_SRC),
    ]

    # -- reused: EU Charter rights as instances of dpv:Right -------------------
    charter = [
        ("RightToHumanDignity", "Human Dignity", "EU Charter Art 1"),
        ("RightToRespectForPrivateAndFamilyLife", "Respect for Private and Family Life", "EU Charter Art 7"),
        ("RightToProtectionOfPersonalData", "Protection of Personal Data", "EU Charter Art 8"),
        ("RightToFreedomOfExpressionAndInformation", "Freedom of Expression and Information", "EU Charter Art 11"),
        ("RightToFreedomOfAssemblyAndAssociation", "Freedom of Assembly and Association", "EU Charter Art 12"),
        ("RightToEducation", "Right to Education", "EU Charter Art 14"),
        ("RightToNonDiscrimination", "Non-Discrimination", "EU Charter Art 21"),
        ("RightToEqualityBetweenWomenAndMen", "Equality Between Women and Men", "EU Charter Art 23"),
        ("RightsOfTheChild", "Rights of the Child", "EU Charter Art 24"),
        ("RightsOfTheElderly", "Rights of the Elderly", "EU Charter Art 25"),
        ("RightToConsumerProtection", "Consumer Protection", "EU Charter Art 38"),
        ("RightToEffectiveRemedyAndFairTrial", "Effective Remedy and Fair Trial", "EU Charter Art 47"),
    ]
    for local, label, source in charter:
        out.append(term(dpv, local, i, (dpv + "Right",), label,
                        f"Fundamental right: {label.lower()}.", source))

    # -- reused: RISK extension -------------------------------------------------
    out += [
        term(risk, "Harm", c, (),
             "Harm", "Harm to an entity; usable as a risk source, risk, "
             "consequence or impact depending on the linking relation.",
             _RISK_SRC),
        term(risk, "ImpactToRights", c, (dpv + "Impact",),
             "Impact to Rights", "An impact affecting one or more rights.",
             _RISK_SRC),
    ]
    harms = [
        ("PhysicalHarm", "Physical Harm"),
        ("PsychologicalHarm", "Psychological Harm"),
        ("FinancialLoss", "Financial Loss"),
        ("ReputationalHarm", "Reputational Harm"),
        ("SocietalHarm", "Societal Harm"),
    ]
    for local, label in harms:
        out.append(term(risk, local, i, (risk + "Harm",), label,
                        f"{label} caused to affected persons or groups.", _RISK_SRC))
    # per-right impact concepts, so an impacted right can be stated directly
    for local, label, source in charter:
        out.append(term(risk, "ImpactOn" + local, c, (risk + "ImpactToRights",),
                        f"Impact on {label}",
                        f"Impact affecting the right: {label.lower()}.", source))

    # -- reused: TECH and AI extensions ------------------------------------------
    out += [
        term(tech, "IntendedUse", c, (),
             "Intended Use", "Use intended for a technology by its provider.",
             _TECH_SRC),
        term(tech, "hasIntendedUse", p, (),
             "has intended use", "Links a technology or process to an intended "
             "use.", _TECH_SRC),
        term(tech, "Documentation", c, (),
             "Documentation", "Documentation associated with a technology.",
             _TECH_SRC),
        term(tech, "hasDocumentation", p, (),
             "has documentation", "Links a subject to documentation.", _TECH_SRC),
        term(AI, "AISystem", c, (dpv + "Technology",),
             "AI System", "A machine-based system that infers outputs from inputs "
             "for explicit or implicit objectives.", _AI_SRC),
    ]

    # -- structural RDF vocabulary -------------------------------------------------
    out.append(term(RDF, "type", p, (), "rdf:type",
                    "States that a resource is an instance of a class.", "RDF"))

    # -- reused: DCMI metadata terms ---------------------------------------------
    dct_terms = [
        ("created", "Date the assessment record was created."),
        ("modified", "Date the assessment record was last changed."),
        ("dateSubmitted", "Date the assessment was submitted."),
        ("dateAccepted", "Date the assessment was accepted."),
        ("temporal", "Temporal coverage of the assessment."),
        ("valid", "Date until which the assessment is valid."),
        ("conformsTo", "Standards or codes of conduct the assessment conforms to."),
        ("title", "Name of the assessment."),
        ("description", "Description of the assessment."),
        ("identifier", "Unambiguous reference for the assessment."),
        ("isVersionOf", "The assessment this record is a version of."),
        ("subject", "Topics of the assessment."),
        ("coverage", "Scope of the assessment."),
        ("publisher", "Organisation responsible for conducting the assessment."),
        ("contributor", "Personnel and entities involved in the assessment."),
        ("provenance", "Log of changes to the assessment."),
        ("creator", "Entity or tool that created the record."),
    ]
    for local, definition in dct_terms:
        out.append(term(DCT, local, p, (), "dct:" + local, definition, _DCT_SRC))

    return out


@lru_cache(maxsize=1)
def catalog() -> Vocabulary:
    """The built-in vocabulary; built once and shared (immutable)."""
    terms = {}
    for t in _defs():
        if t.iri in terms:
            raise ValueError(f"duplicate catalog term: {t.iri}")
        terms[t.iri] = t
    return Vocabulary(terms, dict(VOCAB_PREFIXES))


def new_concept_terms(vocabulary: Vocabulary) -> list[TermDef]:
    """The new fria-namespace concept terms (classes and instances)."""
    return sorted(
        (
            t
            for t in vocabulary.terms.values()
            if t.iri.startswith(FRIA) and t.kind is not TermKind.PROPERTY
        ),
        key=lambda t: t.iri,
    )


# ---------------------------------------------------------------------------
# Ontology graph export / import
# ---------------------------------------------------------------------------

_KIND_TYPE = {TermKind.CLASS: RDFS_CLASS, TermKind.PROPERTY: RDF_PROPERTY}
_PARENT_PRED = {TermKind.CLASS: RDFS_SUBCLASS_OF, TermKind.PROPERTY: RDFS_SUBPROPERTY_OF}


def export_ontology(vocabulary: Vocabulary, fria_base: str | None = None) -> Graph:
    """Emit the catalog as a graph: types, parent links and annotations.

    ``fria_base`` rebases the new terms onto a different namespace IRI,
    leaving reused external terms untouched.
    """

    def rebase(iri: str) -> Iri:
        if fria_base and iri.startswith(FRIA):
            return Iri(fria_base + iri[len(FRIA):])
        return Iri(iri)

    builder = GraphBuilder({**vocabulary.namespaces, "rdf": RDF, "rdfs": RDFS, "skos": SKOS})
    if fria_base:
        builder.bind("fria", fria_base)
    for iri in sorted(vocabulary.terms):
        t = vocabulary.terms[iri]
        node = rebase(iri)
        if t.kind is TermKind.INSTANCE:
            for parent in sorted(t.parents):
                builder.add(node, Iri(RDF_TYPE), rebase(parent))
        else:
            builder.add(node, Iri(RDF_TYPE), Iri(_KIND_TYPE[t.kind]))
            for parent in sorted(t.parents):
                builder.add(node, Iri(_PARENT_PRED[t.kind]), rebase(parent))
        builder.add(node, Iri(SKOS_PREF_LABEL), Literal(t.label))
        builder.add(node, Iri(SKOS_DEFINITION), Literal(t.definition))
        builder.add(node, Iri(DCT_SOURCE), Literal(t.source))
        if t.note:
            builder.add(node, Iri(SKOS_SCOPE_NOTE), Literal(t.note))
    return builder.build()


def import_ontology(graph: Graph) -> Vocabulary:
    """Read an exported ontology graph back into a Vocabulary."""
    terms: dict[str, TermDef] = {}
    nodes: set[Subject] = {t.subject for t in graph.triples}
    for node in nodes:
        if not isinstance(node, Iri):
            continue
        types = [o for o in graph.objects(node, Iri(RDF_TYPE)) if isinstance(o, Iri)]
        type_values = {o.value for o in types}
        if RDFS_CLASS in type_values:
            kind = TermKind.CLASS
            parents = frozenset(
                o.value for o in graph.objects(node, Iri(RDFS_SUBCLASS_OF))
                if isinstance(o, Iri)
            )
        elif RDF_PROPERTY in type_values:
            kind = TermKind.PROPERTY
            parents = frozenset(
                o.value for o in graph.objects(node, Iri(RDFS_SUBPROPERTY_OF))
                if isinstance(o, Iri)
            )
        elif types:
            kind = TermKind.INSTANCE
            parents = frozenset(type_values)
        else:
            continue

        def text(pred: str) -> str:
            value = graph.value(node, Iri(pred))
            return value.lexical if isinstance(value, Literal) else ""

        terms[node.value] = TermDef(
            node.value, kind, parents,
            text(SKOS_PREF_LABEL), text(SKOS_DEFINITION), text(DCT_SOURCE),
            text(SKOS_SCOPE_NOTE),
        )
    return Vocabulary(terms, dict(VOCAB_PREFIXES))
