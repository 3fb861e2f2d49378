"""The assessment lifecycle state machine.

Stable states progress ``Draft -> NecessityDone(required=True) ->
InputsComplete -> OutcomeDone -> Complete`` (via the transient
``NotificationResolved``), or end at ``ClosedNotRequired`` when no
assessment is needed. ``Reopen`` re-enters at ``NecessityDone(True)`` from
any non-draft state, touching the record so the re-assessment obligation
is visible.

``apply`` is pure: timestamps come from event payloads, never the clock.
An event either follows the transition table or raises
``IllegalTransition``; nothing is silently ignored. Transitions that the
table chains automatically (``NecessityDone(False) -> ClosedNotRequired``
and ``NotificationResolved -> Complete``) are reported as a path of
states so the log shows every hop.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import date
from typing import Union

from .errors import IllegalTransition, InputsIncomplete, NotificationError
from .graph import Iri
from .model import (
    NOTIF_EXEMPT,
    NOTIF_NOT_SENT,
    NOTIF_SENT,
    OUTCOME_ACCEPTABLE,
    OUTCOME_HIGH_RESIDUAL,
    OUTCOME_MITIGATED,
    OUTCOME_UNACCEPTABLE,
    STATUS_NOT_REQUIRED,
    STATUS_REQUIRED,
    FriaRecord,
    NecessityDecision,
    NotificationState,
    OutcomeDecision,
    ProcedureInputs,
    ResidualLevel,
    to_graph,
    touch,
)
from .namespaces import FRIA


# ---------------------------------------------------------------------------
# States and events
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Draft:
    pass


@dataclass(frozen=True)
class NecessityDone:
    required: bool


@dataclass(frozen=True)
class InputsComplete:
    pass


@dataclass(frozen=True)
class OutcomeDone:
    status: Iri


@dataclass(frozen=True)
class NotificationResolved:
    status: Iri


@dataclass(frozen=True)
class ClosedNotRequired:
    pass


@dataclass(frozen=True)
class Complete:
    pass


@dataclass(frozen=True)
class Reopened:
    previous: str  # label of the state the record was reopened from


WorkflowState = Union[
    Draft, NecessityDone, InputsComplete, OutcomeDone,
    NotificationResolved, ClosedNotRequired, Complete, Reopened,
]


@dataclass(frozen=True)
class AssessNecessity:
    status: Iri
    flags: tuple[tuple[str, bool], ...] = ()
    justification: str = ""


@dataclass(frozen=True)
class SubmitInputs:
    inputs: ProcedureInputs


@dataclass(frozen=True)
class DetermineOutcome:
    rationale: str = ""


@dataclass(frozen=True)
class NotificationDecision:
    exempt: bool
    basis: str | None = None
    sent_on: date | None = None


@dataclass(frozen=True)
class ResolveNotification:
    decision: NotificationDecision


@dataclass(frozen=True)
class Reopen:
    reason: str
    when: date


WorkflowEvent = Union[AssessNecessity, SubmitInputs, DetermineOutcome, ResolveNotification, Reopen]


def state_label(state: WorkflowState) -> str:
    """Compact single-token label, used in logs and the store."""
    if isinstance(state, NecessityDone):
        return f"NecessityDone(required={'true' if state.required else 'false'})"
    if isinstance(state, OutcomeDone):
        return f"OutcomeDone({state.status.value.rsplit('#', 1)[-1]})"
    if isinstance(state, NotificationResolved):
        return f"NotificationResolved({state.status.value.rsplit('#', 1)[-1]})"
    if isinstance(state, Reopened):
        return f"Reopened(from={state.previous})"
    return type(state).__name__


def parse_state(label: str) -> WorkflowState:
    if label == "Draft":
        return Draft()
    if label == "InputsComplete":
        return InputsComplete()
    if label == "ClosedNotRequired":
        return ClosedNotRequired()
    if label == "Complete":
        return Complete()
    if label.startswith("NecessityDone("):
        return NecessityDone(required="true" in label)
    if label.startswith("OutcomeDone("):
        return OutcomeDone(Iri(FRIA + label[len("OutcomeDone("):-1]))
    if label.startswith("NotificationResolved("):
        return NotificationResolved(Iri(FRIA + label[len("NotificationResolved("):-1]))
    if label.startswith("Reopened(from="):
        return Reopened(label[len("Reopened(from="):-1])
    raise ValueError(f"unknown state label: {label}")


def event_name(event: WorkflowEvent) -> str:
    return type(event).__name__


@dataclass(frozen=True)
class Transition:
    """States entered by one event (the last entry is the new state)."""

    path: tuple[WorkflowState, ...]
    record: FriaRecord

    @property
    def state(self) -> WorkflowState:
        return self.path[-1]


# ---------------------------------------------------------------------------
# Outcome derivation
# ---------------------------------------------------------------------------

_SEVERITY_BY_STATUS = {
    OUTCOME_MITIGATED: 0,
    OUTCOME_ACCEPTABLE: 1,
    OUTCOME_HIGH_RESIDUAL: 2,
    OUTCOME_UNACCEPTABLE: 3,
}


def entry_severity(level: ResidualLevel, accepted: bool) -> int:
    """Severity rank of one risk entry's residual evidence (0..3)."""
    if level is ResidualLevel.UNACCEPTABLE:
        return 3
    if level is ResidualLevel.HIGH:
        return 2 if not accepted else 1
    if level is ResidualLevel.ACCEPTABLE:
        return 1
    return 0


def derive_outcome(inputs: ProcedureInputs) -> Iri:
    """Worst residual evidence across risk entries decides the outcome."""
    worst = max((entry_severity(e.residual_level, e.accepted) for e in inputs.harms), default=0)
    for status, severity in _SEVERITY_BY_STATUS.items():
        if severity == worst:
            return status
    raise AssertionError("unreachable")


def deployment_permitted(status: Iri) -> bool:
    """Whether the AI system may be used under the given outcome status."""
    if status not in _SEVERITY_BY_STATUS:
        raise ValueError(f"not an outcome status: {status}")
    return _SEVERITY_BY_STATUS[status] <= 1


# ---------------------------------------------------------------------------
# Transitions
# ---------------------------------------------------------------------------

def apply(state: WorkflowState, event: WorkflowEvent, record: FriaRecord) -> Transition:
    """Apply one event; raises IllegalTransition when the table forbids it."""
    if isinstance(event, Reopen):
        if isinstance(state, Draft):
            raise IllegalTransition(state_label(state), event_name(event))
        previous = record.metadata.modified or record.metadata.created
        if record.metadata.modified is not None and event.when <= previous:
            raise ValueError("reopen date must advance the record's modification date")
        reopened = touch(record, event.when)
        necessity = reopened.necessity or NecessityDecision(status=STATUS_REQUIRED)
        if not necessity.required:
            necessity = replace(necessity, status=STATUS_REQUIRED)
        note = f"reopened: {event.reason}" if event.reason else "reopened"
        justification = (necessity.justification + "; " + note).lstrip("; ")
        # outcome, notification and the drafted notice are invalidated by the
        # re-assessment; the transition log keeps the history
        notice_iri = record.stage_iri("notice")
        from .graph import Graph  # local import keeps module deps one-way

        trimmed = Graph(
            (t for t in reopened.remainder.triples if t.subject != notice_iri),
            reopened.remainder.prefixes,
        )
        reopened = replace(
            reopened,
            necessity=replace(necessity, justification=justification),
            outcome=None,
            notification=None,
            remainder=trimmed,
        )
        return Transition((Reopened(state_label(state)), NecessityDone(True)), reopened)

    if isinstance(state, Draft) and isinstance(event, AssessNecessity):
        if event.status not in (STATUS_REQUIRED, STATUS_NOT_REQUIRED):
            raise ValueError(f"not a necessity status: {event.status}")
        decided = replace(
            record,
            necessity=NecessityDecision(
                status=event.status,
                justification=event.justification,
                condition_flags=event.flags,
            ),
        )
        if event.status == STATUS_REQUIRED:
            return Transition((NecessityDone(True),), decided)
        return Transition((NecessityDone(False), ClosedNotRequired()), decided)

    if isinstance(state, NecessityDone) and state.required and isinstance(event, SubmitInputs):
        candidate = replace(record, inputs=event.inputs)
        from .validation import validate  # local import to avoid a cycle

        report = validate(to_graph(candidate))
        if not report.conforms:
            raise InputsIncomplete(list(report.violations))
        return Transition((InputsComplete(),), candidate)

    if isinstance(state, InputsComplete) and isinstance(event, DetermineOutcome):
        assert record.inputs is not None
        status = derive_outcome(record.inputs)
        rights = frozenset(e.right for e in record.inputs.impacts if e.right is not None)
        decided = replace(
            record,
            outcome=OutcomeDecision(status=status, rights_impacted=rights, rationale=event.rationale),
        )
        return Transition((OutcomeDone(status),), decided)

    if isinstance(state, OutcomeDone) and isinstance(event, ResolveNotification):
        decision = event.decision
        if decision.exempt:
            if not decision.basis:
                raise NotificationError("an exemption must state its basis")
            resolved = replace(
                record,
                notification=NotificationState(NOTIF_EXEMPT, exemption_basis=decision.basis),
            )
            return Transition((NotificationResolved(NOTIF_EXEMPT), Complete()), resolved)
        current = record.notification
        if current is None or current.status != NOTIF_NOT_SENT or current.notice is None:
            raise NotificationError(
                "a notice must be drafted (status 'not sent') before marking the "
                "notification as sent"
            )
        if decision.sent_on is None:
            raise NotificationError("marking a notification sent requires the dispatch date")
        resolved = replace(
            record,
            notification=replace(current, status=NOTIF_SENT, sent_on=decision.sent_on),
        )
        return Transition((NotificationResolved(NOTIF_SENT), Complete()), resolved)

    raise IllegalTransition(state_label(state), event_name(event))
