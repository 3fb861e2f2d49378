"""Notification handling: status resolution and notice construction.

Dispatch is recorded, never performed: the module produces the notice
artifacts (graph and plain text) and the status flips happen through
explicit actions, keeping an auditable trail without inventing a wire
protocol towards authorities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date
from pathlib import Path

from .errors import NotificationError
from .graph import Graph, GraphBuilder, Iri
from .model import (
    HAS_IMPACT_ON,
    HAS_MITIGATION,
    HAS_NOTICE,
    HAS_RECIPIENT,
    HAS_STATUS,
    NOTIF_EXEMPT,
    NOTIF_NEEDED,
    NOTIF_NOT_SENT,
    NOTIF_SENT,
    HAS_DOCUMENTATION,
    FriaRecord,
    _date_literal,
    to_graph,
)
from .namespaces import DCT, FRIA, RDF_TYPE, SERIALIZATION_PREFIXES
from .validation import CqId, answer_cq
from .vocabulary import TermDef, TermKind, Vocabulary
from .workflow import deployment_permitted


@dataclass(frozen=True)
class NoticeSummary:
    outcome_status: Iri
    rights_impacted: tuple[Iri, ...]
    mitigations: tuple[Iri, ...]


@dataclass(frozen=True)
class Notice:
    iri: Iri
    record: Iri
    authority: Iri
    summary: NoticeSummary
    sent_on: date | None = None
    completed_questionnaire: Iri | None = None
    exemption_basis: str | None = None


@dataclass(frozen=True)
class Decision:
    """The deployer's notification decision: exempt (with basis) or notify."""

    exempt: bool
    basis: str | None = None


def resolve_notification(record: FriaRecord, decision: Decision) -> Iri:
    """The notification status the record is in under the given decision."""
    if record.outcome is None:
        raise NotificationError("the outcome must be determined before resolving notification")
    if decision.exempt:
        if not decision.basis or not decision.basis.strip():
            raise NotificationError("an exemption must state its basis")
        return NOTIF_EXEMPT
    current = record.notification
    if current is not None and current.status == NOTIF_SENT:
        return NOTIF_SENT
    if current is not None and current.notice is not None:
        return NOTIF_NOT_SENT
    return NOTIF_NEEDED


def build_notice(record: FriaRecord, authority: Iri) -> tuple[Notice, Graph]:
    """Draft the notice for an authority: structured artifact plus graph.

    The rights list is taken from the record graph with the same query the
    competency-question catalog uses, so notice and CQ answers agree.
    """
    if record.outcome is None:
        raise NotificationError("the outcome must be determined before drafting a notice")
    status = record.notification.status if record.notification is not None else None
    if status not in (None, NOTIF_NEEDED, NOTIF_NOT_SENT):
        raise NotificationError(
            "a notice can only be drafted while the notification is pending"
        )

    graph = to_graph(record)
    rights = tuple(
        row[0]
        for row in answer_cq(graph, record.iri, CqId.CQ6).bindings
        if isinstance(row[0], Iri)
    )
    mitigations = tuple(
        row[0]
        for row in answer_cq(graph, record.iri, CqId.CQ4).bindings
        if isinstance(row[0], Iri)
    )
    questionnaire = min(record.questionnaires, key=str) if record.questionnaires else None

    notice = Notice(
        iri=record.stage_iri("notice"),
        record=record.iri,
        authority=authority,
        summary=NoticeSummary(
            outcome_status=record.outcome.status,
            rights_impacted=rights,
            mitigations=mitigations,
        ),
        completed_questionnaire=questionnaire,
    )

    builder = GraphBuilder(SERIALIZATION_PREFIXES)
    builder.add(record.stage_iri("notification"), Iri(HAS_NOTICE), notice.iri)
    builder.add(notice.iri, Iri(RDF_TYPE), Iri(FRIA + "FRIANotice"))
    builder.add(notice.iri, Iri(HAS_RECIPIENT), authority)
    builder.add(notice.iri, Iri(HAS_STATUS), record.outcome.status)
    for right in rights:
        builder.add(notice.iri, Iri(HAS_IMPACT_ON), right)
    for measure in mitigations:
        builder.add(notice.iri, Iri(HAS_MITIGATION), measure)
    if questionnaire is not None:
        builder.add(notice.iri, Iri(HAS_DOCUMENTATION), questionnaire)
    if record.notification is not None and record.notification.sent_on is not None:
        builder.add(notice.iri, Iri(DCT + "dateSubmitted"),
                    _date_literal(record.notification.sent_on))
    return notice, builder.build()


def render_notice_text(notice: Notice, record: FriaRecord) -> str:
    """Human-readable notice with a fixed field order; byte-deterministic."""
    status_name = notice.summary.outcome_status.value.rsplit("#", 1)[-1]
    permitted = "yes" if deployment_permitted(notice.summary.outcome_status) else "no"
    lines = [
        "FRIA NOTIFICATION NOTICE",
        f"record: {notice.record}",
        f"title: {record.metadata.title}",
        f"conducted by: {record.metadata.publisher}",
        f"created: {record.metadata.created.isoformat()}",
        f"authority: {notice.authority}",
        f"outcome: {status_name}",
        f"deployment permitted: {permitted}",
        "rights impacted:",
    ]
    lines += [f"- {r}" for r in notice.summary.rights_impacted] or ["- none recorded"]
    lines.append("mitigation measures:")
    lines += [f"- {m}" for m in notice.summary.mitigations] or ["- none recorded"]
    if notice.completed_questionnaire is not None:
        lines.append(f"completed questionnaire: {notice.completed_questionnaire}")
    if notice.sent_on is not None:
        lines.append(f"sent on: {notice.sent_on.isoformat()}")
    return "\n".join(lines) + "\n"


def draft_notice(record: FriaRecord, authority: Iri) -> tuple[FriaRecord, Notice]:
    """Draft a notice and attach it: status becomes 'not sent'.

    The notice graph is folded into the record's remainder (minus the
    triples the record serialization already emits), so exports carry the
    notice and the record value stays read-back stable.
    """
    from dataclasses import replace

    from .model import NotificationState

    notice, notice_graph = build_notice(record, authority)
    # a previous draft for the same record is superseded entirely
    kept = frozenset(t for t in record.remainder.triples if t.subject != notice.iri)
    updated = replace(
        record,
        notification=NotificationState(
            status=NOTIF_NOT_SENT, authority=authority, notice=notice.iri
        ),
        remainder=Graph(kept, record.remainder.prefixes),
    )
    emitted = to_graph(updated).triples
    extra = notice_graph.triples - emitted
    if extra:
        updated = replace(
            updated, remainder=Graph(updated.remainder.triples | extra)
        )
    return updated, notice


def notice_for_record(record: FriaRecord) -> tuple[Notice, str, Graph]:
    """The notice artifacts for a record whose notice has been drafted.

    Works for both pending and sent notifications; the summary is read from
    the record graph so it reflects exactly what the record states.
    """
    if record.notification is None or record.notification.notice is None:
        raise NotificationError("no notice has been drafted for this record")
    if record.outcome is None or record.notification.authority is None:
        raise NotificationError("the record's notification is missing its authority")
    graph = to_graph(record)
    rights = tuple(
        row[0]
        for row in answer_cq(graph, record.iri, CqId.CQ6).bindings
        if isinstance(row[0], Iri)
    )
    mitigations = tuple(
        row[0]
        for row in answer_cq(graph, record.iri, CqId.CQ4).bindings
        if isinstance(row[0], Iri)
    )
    notice = Notice(
        iri=record.notification.notice,
        record=record.iri,
        authority=record.notification.authority,
        summary=NoticeSummary(
            outcome_status=record.outcome.status,
            rights_impacted=rights,
            mitigations=mitigations,
        ),
        sent_on=record.notification.sent_on,
        completed_questionnaire=(
            min(record.questionnaires, key=str) if record.questionnaires else None
        ),
    )
    notice_graph = Graph(
        (
            t
            for t in graph.triples
            if t.subject == notice.iri
            or (t.predicate.value == HAS_NOTICE and t.object == notice.iri)
        ),
        graph.prefixes,
    )
    return notice, render_notice_text(notice, record), notice_graph


def load_status_extensions(vocabulary: Vocabulary, path: Path | str) -> Vocabulary:
    """Extend the catalog with jurisdiction-specific notification statuses.

    The file is a JSON list of {"local", "label", "definition", "source"}
    entries; each becomes an instance of the notification status class.
    """
    entries = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(entries, list):
        raise NotificationError("status extension file must contain a JSON list")
    terms = dict(vocabulary.terms)
    for entry in entries:
        unknown = set(entry) - {"local", "label", "definition", "source"}
        if unknown:
            raise NotificationError(f"unknown fields in status extension: {sorted(unknown)}")
        iri = FRIA + entry["local"]
        terms[iri] = TermDef(
            iri=iri,
            kind=TermKind.INSTANCE,
            parents=frozenset({FRIA + "FRIANotificationStatus"}),
            label=entry["label"],
            definition=entry.get("definition", ""),
            source=entry.get("source", ""),
        )
    return Vocabulary(terms, vocabulary.namespaces)
