"""On-disk record store and the operations CLI and service share.

Layout: one directory per record under the store root, holding
``record.ttl`` (the record graph, canonical Turtle), ``meta.json`` (state
label, version counter, staleness flag), ``session.json`` (the
questionnaire session) and ``log.txt`` (append-only transition log,
one ``timestamp state event state'`` line per hop).

Writes go through an advisory file lock per record directory and land via
write-to-temp plus atomic rename, so a reader never sees a half-written
file and concurrent writers serialize. The version counter
increases by exactly one per committed mutation and doubles as the
optimistic-concurrency token.
"""

from __future__ import annotations

import fcntl
import json
import os
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass, replace
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Callable

from .errors import StaleVersionError, StoreError
from .graph import Iri
from .model import FriaMetadata, FriaRecord, from_graph, to_graph, touch
from .notification import draft_notice
from .questionnaire import (
    Questionnaire,
    QuestionnaireSession,
    answer as answer_question,
    builtin_questionnaire,
    compile_session,
    notification_defaults,
)
from .turtle import parse_turtle, serialize_turtle
from .validation import CqAnswer, ValidationReport, answer_cq, validate
from .workflow import (
    AssessNecessity,
    Draft,
    DetermineOutcome,
    NotificationDecision,
    Reopen,
    ResolveNotification,
    SubmitInputs,
    Transition,
    WorkflowEvent,
    WorkflowState,
    apply,
    event_name,
    parse_state,
    state_label,
)

DEFAULT_BASE_IRI = "https://example.org/fria/"
DEFAULT_PUBLISHER = "https://example.org/organisation"


@dataclass(frozen=True)
class StoredRecord:
    id: str
    record: FriaRecord
    state: WorkflowState
    session: QuestionnaireSession | None
    version: int
    stale: bool = False


def _atomic_write(path: Path, data: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class RecordStore:
    """Record persistence plus the engine operations, one instance per root."""

    def __init__(self, root: Path | str, base_iri: str = DEFAULT_BASE_IRI,
                 questionnaire: Questionnaire | None = None):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.base_iri = base_iri
        self.questionnaire = questionnaire or builtin_questionnaire()

    # -- paths and primitives -------------------------------------------------

    def record_iri(self, record_id: str) -> Iri:
        return Iri(self.base_iri + record_id)

    def _dir(self, record_id: str) -> Path:
        if not record_id or "/" in record_id or record_id.startswith("."):
            raise StoreError(f"invalid record id: {record_id!r}")
        return self.root / record_id

    def exists(self, record_id: str) -> bool:
        return (self._dir(record_id) / "meta.json").exists()

    def list_ids(self) -> list[str]:
        if not self.root.exists():
            return []
        return sorted(p.name for p in self.root.iterdir() if (p / "meta.json").exists())

    @contextmanager
    def _lock(self, record_id: str):
        directory = self._dir(record_id)
        directory.mkdir(parents=True, exist_ok=True)
        lock_path = directory / ".lock"
        with open(lock_path, "w") as handle:
            fcntl.flock(handle.fileno(), fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(handle.fileno(), fcntl.LOCK_UN)

    def _write(self, record_id: str, stored: StoredRecord) -> None:
        directory = self._dir(record_id)
        directory.mkdir(parents=True, exist_ok=True)
        _atomic_write(directory / "record.ttl", serialize_turtle(to_graph(stored.record)))
        meta = {
            "state": state_label(stored.state),
            "version": stored.version,
            "stale": stored.stale,
        }
        _atomic_write(directory / "meta.json", json.dumps(meta, indent=2) + "\n")
        if stored.session is not None:
            session = {
                "id": stored.session.id,
                "questionnaire": stored.session.questionnaire.value,
                "record": stored.session.record.value,
                "answers": stored.session.answers,
                "status": stored.session.status,
            }
            _atomic_write(directory / "session.json", json.dumps(session, indent=2) + "\n")

    def _append_log(self, record_id: str, before: WorkflowState, event: WorkflowEvent,
                    path: tuple[WorkflowState, ...]) -> None:
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        lines = []
        current = before
        name = event_name(event)
        for hop in path:
            lines.append(f"{stamp} {state_label(current)} {name} {state_label(hop)}")
            current = hop
            name = "advance"
        with open(self._dir(record_id) / "log.txt", "a", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")

    def load(self, record_id: str) -> StoredRecord:
        directory = self._dir(record_id)
        meta_path = directory / "meta.json"
        if not meta_path.exists():
            raise StoreError(f"unknown record: {record_id}")
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        graph = parse_turtle((directory / "record.ttl").read_text(encoding="utf-8"))
        record = from_graph(graph, self.record_iri(record_id))
        session = None
        session_path = directory / "session.json"
        if session_path.exists():
            data = json.loads(session_path.read_text(encoding="utf-8"))
            session = QuestionnaireSession(
                id=data["id"],
                questionnaire=Iri(data["questionnaire"]),
                record=Iri(data["record"]),
                answers=data["answers"],
                status=data["status"],
            )
        return StoredRecord(
            id=record_id,
            record=record,
            state=parse_state(meta["state"]),
            session=session,
            version=int(meta["version"]),
            stale=bool(meta.get("stale", False)),
        )

    def _mutate(self, record_id: str,
                fn: Callable[[StoredRecord], StoredRecord],
                expected_version: int | None = None) -> StoredRecord:
        with self._lock(record_id):
            stored = self.load(record_id)
            if expected_version is not None and expected_version != stored.version:
                raise StaleVersionError(stored.version, expected_version)
            updated = fn(stored)
            committed = replace(updated, version=stored.version + 1)
            self._write(record_id, committed)
            return committed

    def _apply_event(self, stored: StoredRecord, event: WorkflowEvent,
                     record: FriaRecord | None = None) -> tuple[StoredRecord, Transition]:
        transition = apply(stored.state, event, record if record is not None else stored.record)
        self._append_log(stored.id, stored.state, event, transition.path)
        return (
            replace(stored, record=transition.record, state=transition.state),
            transition,
        )

    # -- operations ------------------------------------------------------------

    def create(self, record_id: str, *, created: date | None = None,
               title: str | None = None, publisher: str | None = None,
               description: str = "") -> StoredRecord:
        with self._lock(record_id):
            if self.exists(record_id):
                raise StoreError(f"record already exists: {record_id}")
            iri = self.record_iri(record_id)
            record = FriaRecord(
                iri=iri,
                metadata=FriaMetadata(
                    created=created or date.today(),
                    title=title or record_id,
                    identifier=record_id,
                    publisher=Iri(publisher or DEFAULT_PUBLISHER),
                    description=description,
                ),
            )
            session = QuestionnaireSession(
                id=f"{record_id}-session",
                questionnaire=self.questionnaire.id,
                record=iri,
            )
            stored = StoredRecord(
                id=record_id, record=record, state=Draft(), session=session, version=1
            )
            self._write(record_id, stored)
            return stored

    def assess_necessity(self, record_id: str, status: Iri,
                         flags: dict[str, bool] | None = None,
                         justification: str = "") -> StoredRecord:
        event = AssessNecessity(
            status=status,
            flags=tuple(sorted((flags or {}).items())),
            justification=justification,
        )

        def mutate(stored: StoredRecord) -> StoredRecord:
            updated, _ = self._apply_event(stored, event)
            return updated

        return self._mutate(record_id, mutate)

    def answer(self, record_id: str, question_id: str, value,
               expected_version: int | None = None) -> StoredRecord:
        def mutate(stored: StoredRecord) -> StoredRecord:
            if stored.session is None:
                raise StoreError(f"record {record_id} has no questionnaire session")
            session = answer_question(stored.session, self.questionnaire, question_id, value)
            return replace(stored, session=session)

        return self._mutate(record_id, mutate, expected_version)

    def answer_many(self, record_id: str, answers: dict,
                    expected_version: int | None = None) -> StoredRecord:
        def mutate(stored: StoredRecord) -> StoredRecord:
            if stored.session is None:
                raise StoreError(f"record {record_id} has no questionnaire session")
            session = stored.session
            for question_id, value in answers.items():
                session = answer_question(session, self.questionnaire, question_id, value)
            return replace(stored, session=session)

        return self._mutate(record_id, mutate, expected_version)

    def compile(self, record_id: str) -> StoredRecord:
        """Compile the session into the record and submit the inputs.

        When the record is still a draft and the session answers include the
        necessity decision, the necessity event is applied first.
        """

        def mutate(stored: StoredRecord) -> StoredRecord:
            if stored.session is None:
                raise StoreError(f"record {record_id} has no questionnaire session")
            _, compiled_record, session = compile_session(
                stored.session, self.questionnaire, stored.record
            )
            current = stored
            if isinstance(current.state, Draft):
                assert compiled_record.necessity is not None
                necessity_event = AssessNecessity(
                    status=compiled_record.necessity.status,
                    flags=compiled_record.necessity.condition_flags,
                    justification=compiled_record.necessity.justification,
                )
                current, _ = self._apply_event(current, necessity_event)
            merged = replace(
                current.record,
                metadata=compiled_record.metadata,
                questionnaires=compiled_record.questionnaires,
                tools_used=compiled_record.tools_used,
            )
            current, _ = self._apply_event(
                current, SubmitInputs(compiled_record.inputs), merged
            )
            return replace(current, session=session)

        return self._mutate(record_id, mutate)

    def determine_outcome(self, record_id: str, rationale: str = "") -> StoredRecord:
        def mutate(stored: StoredRecord) -> StoredRecord:
            updated, _ = self._apply_event(stored, DetermineOutcome(rationale=rationale))
            return updated

        return self._mutate(record_id, mutate)

    def notify_exempt(self, record_id: str, basis: str | None = None) -> StoredRecord:
        def mutate(stored: StoredRecord) -> StoredRecord:
            resolved_basis = basis
            if resolved_basis is None and stored.session is not None:
                resolved_basis = notification_defaults(
                    stored.session, self.questionnaire
                ).get("basis")
            event = ResolveNotification(NotificationDecision(exempt=True, basis=resolved_basis))
            updated, _ = self._apply_event(stored, event)
            return updated

        return self._mutate(record_id, mutate)

    def notify_draft(self, record_id: str, authority: str | None = None) -> StoredRecord:
        def mutate(stored: StoredRecord) -> StoredRecord:
            resolved = authority
            if resolved is None and stored.session is not None:
                resolved = notification_defaults(
                    stored.session, self.questionnaire
                ).get("authority")
            if resolved is None:
                raise StoreError("an authority IRI is required to draft the notice")
            record, _ = draft_notice(stored.record, Iri(resolved))
            return replace(stored, record=record)

        return self._mutate(record_id, mutate)

    def notify_sent(self, record_id: str, when: date | None = None) -> StoredRecord:
        def mutate(stored: StoredRecord) -> StoredRecord:
            event = ResolveNotification(
                NotificationDecision(exempt=False, sent_on=when or date.today())
            )
            updated, _ = self._apply_event(stored, event)
            return updated

        return self._mutate(record_id, mutate)

    def reopen(self, record_id: str, reason: str, when: date | None = None) -> StoredRecord:
        def mutate(stored: StoredRecord) -> StoredRecord:
            updated, _ = self._apply_event(
                stored, Reopen(reason=reason, when=when or date.today())
            )
            session = updated.session
            if session is not None and session.status == "compiled":
                session = replace(session, status="open")
            return replace(updated, session=session, stale=False)

        return self._mutate(record_id, mutate)

    def touch(self, record_id: str, when: date | None = None) -> StoredRecord:
        """Record an update date and flag the record for re-assessment."""

        def mutate(stored: StoredRecord) -> StoredRecord:
            return replace(
                stored,
                record=touch(stored.record, when or date.today()),
                stale=True,
            )

        return self._mutate(record_id, mutate)

    # -- read-only operations ----------------------------------------------------

    def validation_report(self, record_id: str) -> ValidationReport:
        stored = self.load(record_id)
        return validate(to_graph(stored.record))

    def cq(self, record_id: str, cq_id) -> CqAnswer:
        stored = self.load(record_id)
        return answer_cq(to_graph(stored.record), stored.record.iri, cq_id)

    def export(self, record_id: str, fmt: str = "ttl") -> str:
        stored = self.load(record_id)
        if fmt == "ttl":
            return serialize_turtle(to_graph(stored.record))
        if fmt == "nt":
            from .ntriples import serialize_ntriples

            return serialize_ntriples(to_graph(stored.record))
        if fmt == "report-json":
            return self.validation_report(record_id).to_json()
        raise StoreError(f"unknown export format: {fmt}")
