import os
import sys
from datetime import date

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from fria.graph import Iri
from fria.model import FriaMetadata, FriaRecord
from fria.namespaces import DPV, FRIA, RISK
from fria.notification import draft_notice
from fria.questionnaire import (
    QuestionnaireSession,
    answer,
    builtin_questionnaire,
    compile_session,
)
from fria.workflow import (
    AssessNecessity,
    DetermineOutcome,
    Draft,
    NotificationDecision,
    ResolveNotification,
    SubmitInputs,
    apply,
)

GOLDEN_IRI = Iri("https://example.org/fria/golden")
GOLDEN_AUTHORITY = Iri("https://example.org/authority/ie-market-surveillance")
GOLDEN_PUBLISHER = Iri("https://example.org/org/city-services")

GOLDEN_ANSWERS = {
    "deployer-is-public-body": True,
    "deployer-provides-public-services": False,
    "system-evaluates-creditworthiness": False,
    "system-prices-life-or-health-insurance": False,
    "necessity-status": FRIA + "FRIARequired",
    "necessity-justification": "public body deploying a high-risk triage system",
    "process-description": "social benefit application intake and triage",
    "intended-purpose": "prioritise benefit applications for caseworker review",
    "reused-assessments": "https://example.org/assessments/dpia-2024-007",
    "usage-duration": DPV + "FixedDuration",
    "usage-frequency": DPV + "ContinuousFrequency",
    "intended-uses": "ranking incoming applications in the case management system",
    "subject-categories": [DPV + "Adult"],
    "rights-impacted": [DPV + "RightToNonDiscrimination"],
    "impact-likelihood": DPV + "LowLikelihood",
    "harm-categories": [RISK + "FinancialLoss"],
    "oversight-measures": "caseworkers review every automated ranking before decisions",
    "instructions-for-use": "https://example.org/docs/vendor-instructions-v3",
    "mitigation-measures": "quarterly bias audit with published results",
    "governance-procedures": "complaints desk with escalation to the data protection officer",
    "residual-risk-level": "none",
    "risks-accepted": True,
    "notification-authority": str(GOLDEN_AUTHORITY),
}

NECESSITY_FLAG_IDS = (
    "deployer-is-public-body",
    "deployer-provides-public-services",
    "system-evaluates-creditworthiness",
    "system-prices-life-or-health-insurance",
)


def new_golden_draft() -> FriaRecord:
    return FriaRecord(
        iri=GOLDEN_IRI,
        metadata=FriaMetadata(
            created=date(2024, 11, 30),
            title="Benefit triage assistant",
            identifier="golden",
            publisher=GOLDEN_PUBLISHER,
            description="Assessment of the benefit application triage assistant.",
        ),
    )


def build_golden_record() -> FriaRecord:
    """Drive the golden path end to end through the module operations."""
    questionnaire = builtin_questionnaire()
    record = new_golden_draft()
    state = Draft()

    session = QuestionnaireSession(
        id="golden-session", questionnaire=questionnaire.id, record=record.iri
    )
    for qid, value in GOLDEN_ANSWERS.items():
        session = answer(session, questionnaire, qid, value)

    transition = apply(
        state,
        AssessNecessity(
            status=Iri(GOLDEN_ANSWERS["necessity-status"]),
            flags=tuple((qid, bool(GOLDEN_ANSWERS[qid])) for qid in NECESSITY_FLAG_IDS),
            justification=str(GOLDEN_ANSWERS["necessity-justification"]),
        ),
        record,
    )
    state, record = transition.state, transition.record

    _, record, session = compile_session(session, questionnaire, record)
    transition = apply(state, SubmitInputs(record.inputs), record)
    state, record = transition.state, transition.record

    transition = apply(state, DetermineOutcome(rationale="all residual risks mitigated"), record)
    state, record = transition.state, transition.record

    record, _ = draft_notice(record, GOLDEN_AUTHORITY)
    transition = apply(
        state,
        ResolveNotification(NotificationDecision(exempt=False, sent_on=date(2024, 12, 10))),
        record,
    )
    return transition.record


@pytest.fixture(scope="session")
def golden_record() -> FriaRecord:
    return build_golden_record()
