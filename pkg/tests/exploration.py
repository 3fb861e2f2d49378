"""Exhaustive workflow exploration shared by unit and acceptance tests.

Tries every event kind at every node along all legal prefixes of length
<= max_depth, checking each step against an independently stated
transition table, and collects the abstract state traces.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import date, timedelta

from fria.errors import IllegalTransition, InputsIncomplete, NotificationError
from fria.model import NOTIF_NOT_SENT, STATUS_NOT_REQUIRED, STATUS_REQUIRED
from fria.notification import draft_notice
from fria.workflow import (
    AssessNecessity,
    DetermineOutcome,
    Draft,
    NecessityDone,
    NotificationDecision,
    NotificationResolved,
    OutcomeDone,
    Reopen,
    Reopened,
    ResolveNotification,
    SubmitInputs,
    apply,
)


def abstract(state) -> str:
    if isinstance(state, NecessityDone):
        return f"NecessityDone({'true' if state.required else 'false'})"
    if isinstance(state, OutcomeDone):
        return "OutcomeDone"
    if isinstance(state, NotificationResolved):
        return "NotificationResolved"
    if isinstance(state, Reopened):
        return "Reopened"
    return type(state).__name__


def oracle_edges() -> dict:
    """Independent statement of the transition table."""
    edges = {
        ("Draft", "necessity-required"): ("NecessityDone(true)",),
        ("Draft", "necessity-not-required"): ("NecessityDone(false)", "ClosedNotRequired"),
        ("NecessityDone(true)", "submit-valid"): ("InputsComplete",),
        ("InputsComplete", "determine-outcome"): ("OutcomeDone",),
        ("OutcomeDone", "resolve-exempt"): ("NotificationResolved", "Complete"),
        ("OutcomeDone", "resolve-sent"): ("NotificationResolved", "Complete"),
    }
    for source in (
        "NecessityDone(true)", "NecessityDone(false)", "InputsComplete", "OutcomeDone",
        "NotificationResolved", "ClosedNotRequired", "Complete", "Reopened",
    ):
        edges[(source, "reopen")] = ("Reopened", "NecessityDone(true)")
    return edges


def event_alphabet(golden_record):
    bad_inputs = replace(golden_record.inputs, human_subject_categories=frozenset())
    return {
        "necessity-required": AssessNecessity(status=STATUS_REQUIRED),
        "necessity-not-required": AssessNecessity(status=STATUS_NOT_REQUIRED),
        "submit-valid": SubmitInputs(golden_record.inputs),
        "submit-invalid": SubmitInputs(bad_inputs),
        "determine-outcome": DetermineOutcome(),
        "resolve-exempt": ResolveNotification(
            NotificationDecision(exempt=True, basis="Article 46(1) authorisation")
        ),
        "resolve-sent": ResolveNotification(
            NotificationDecision(exempt=False, sent_on=date(2025, 1, 2))
        ),
        "reopen": Reopen(reason="update", when=date(2025, 1, 3)),
    }


def drive(record, state, event, authority):
    """Apply with the record fix-ups the CLI/service layer performs."""
    if (
        isinstance(event, ResolveNotification)
        and not event.decision.exempt
        and isinstance(state, OutcomeDone)
    ):
        if record.notification is None or record.notification.status != NOTIF_NOT_SENT:
            record, _ = draft_notice(record, authority)
    if isinstance(event, Reopen):
        previous = record.metadata.modified or record.metadata.created
        event = Reopen(reason=event.reason, when=previous + timedelta(days=1))
    return apply(state, event, record)


@dataclass
class ExplorationResult:
    visited: int
    complete_traces: list[tuple[str, ...]]
    closed_traces: list[tuple[str, ...]]


def explore(draft_record, golden_record, authority, max_depth: int = 8) -> ExplorationResult:
    alphabet = event_alphabet(golden_record)
    edges = oracle_edges()
    complete_traces: list[tuple[str, ...]] = []
    closed_traces: list[tuple[str, ...]] = []
    visited = 0
    stack = [(Draft(), draft_record, ("Draft",), 0)]
    seen = set()
    while stack:
        state, record, trace, depth = stack.pop()
        if depth >= max_depth:
            continue
        for name, event in alphabet.items():
            visited += 1
            key = abstract(state)
            expected = edges.get((key, name))
            try:
                transition = drive(record, state, event, authority)
            except (IllegalTransition, NotificationError, ValueError, InputsIncomplete):
                # nothing may be silently accepted: the oracle must agree
                assert expected is None, f"{key} + {name} should be legal"
                continue
            got = tuple(abstract(s) for s in transition.path)
            assert expected == got, f"{key} + {name}: expected {expected}, got {got}"
            new_trace = trace + got
            if got[-1] == "Complete":
                complete_traces.append(new_trace)
            if got[-1] == "ClosedNotRequired":
                closed_traces.append(new_trace)
            if new_trace not in seen:
                seen.add(new_trace)
                stack.append((transition.state, transition.record, new_trace, depth + 1))
    return ExplorationResult(visited, complete_traces, closed_traces)


def check_stage_order(result: ExplorationResult) -> None:
    assert result.complete_traces, "Complete must be reachable"
    for trace in result.complete_traces:
        positions = []
        for stage in (
            "NecessityDone(true)", "InputsComplete", "OutcomeDone", "NotificationResolved",
        ):
            last = max((i for i, s in enumerate(trace) if s.startswith(stage)), default=-1)
            assert last >= 0, f"{stage} missing from {trace}"
            positions.append(last)
        assert positions == sorted(positions), f"stage order violated in {trace}"
        assert trace[-1] == "Complete"
        assert trace[-2].startswith("NotificationResolved")
    for trace in result.closed_traces:
        idx = len(trace) - 1 - trace[::-1].index("ClosedNotRequired")
        assert trace[idx - 1] == "NecessityDone(false)"
