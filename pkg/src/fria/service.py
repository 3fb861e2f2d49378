"""HTTP/JSON API over the record store.

Adapter layer only: every endpoint calls the same store operations the
CLI uses, so exports over HTTP are byte-identical to CLI exports. Errors
map to 404 (unknown record), 409 (illegal transition or stale version
token) and 422 (semantic or type errors, carrying the module's message).
"""

from __future__ import annotations

import json
import uuid
from dataclasses import asdict
from datetime import date

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .errors import (
    AnswerTypeError,
    FriaError,
    IllegalTransition,
    InputsIncomplete,
    MissingAnswersError,
    NotificationError,
    QuestionnaireError,
    RecordGraphError,
    StaleVersionError,
    StoreError,
)
from .model import FriaRecord, STATUS_NOT_REQUIRED, STATUS_REQUIRED, TextPurpose
from .notification import notice_for_record
from .questionnaire import Question, questionnaire_to_json
from .store import RecordStore, StoredRecord
from .turtle import serialize_turtle
from .validation import CQ_PROMPTS, CqAnswer, ValidationReport
from .vocabulary import catalog, export_ontology
from .workflow import deployment_permitted, state_label

TURTLE_MEDIA = "text/turtle; charset=utf-8"
NTRIPLES_MEDIA = "application/n-triples; charset=utf-8"


def _iso(value: date | None) -> str | None:
    return value.isoformat() if value else None


def _record_view(record: FriaRecord) -> dict:
    view: dict = {
        "iri": record.iri.value,
        "metadata": {
            "created": _iso(record.metadata.created),
            "modified": _iso(record.metadata.modified),
            "title": record.metadata.title,
            "identifier": record.metadata.identifier,
            "publisher": record.metadata.publisher.value,
            "description": record.metadata.description,
            "creator_tool": (
                record.metadata.creator_tool.value if record.metadata.creator_tool else None
            ),
        },
        "necessity": None,
        "inputs": None,
        "outcome": None,
        "notification": None,
        "tools_used": sorted(t.value for t in record.tools_used),
        "questionnaires": sorted(q.value for q in record.questionnaires),
    }
    if record.necessity:
        view["necessity"] = {
            "status": record.necessity.status.value,
            "justification": record.necessity.justification,
            "condition_flags": dict(record.necessity.condition_flags),
        }
    if record.inputs:
        inputs = record.inputs
        purpose = inputs.intended_purpose
        view["inputs"] = {
            "intended_purpose": (
                {"text": purpose.text} if isinstance(purpose, TextPurpose)
                else {"iri": purpose.value}
            ),
            "duration": inputs.duration.value,
            "frequency": inputs.frequency.value,
            "processes": sorted(p.iri.value for p in inputs.processes),
            "human_subject_categories": sorted(
                c.value for c in inputs.human_subject_categories
            ),
            "impacts": [
                {
                    "impact": e.impact.value,
                    "affected": e.affected.value,
                    "likelihood": e.likelihood.value,
                    "right": e.right.value if e.right else None,
                }
                for e in sorted(inputs.impacts, key=lambda e: e.node.value)
            ],
            "risks": [
                {
                    "risk": e.risk.value,
                    "harm_category": e.harm_category.value,
                    "residual_level": e.residual_level.value,
                    "accepted": e.accepted,
                }
                for e in sorted(inputs.harms, key=lambda e: e.risk.value)
            ],
            "mitigation_measures": sorted(m.iri.value for m in inputs.mitigation_measures),
        }
    if record.outcome:
        view["outcome"] = {
            "status": record.outcome.status.value,
            "deployment_permitted": deployment_permitted(record.outcome.status),
            "rights_impacted": sorted(r.value for r in record.outcome.rights_impacted),
            "rationale": record.outcome.rationale,
        }
    if record.notification:
        view["notification"] = {
            "status": record.notification.status.value,
            "authority": (
                record.notification.authority.value if record.notification.authority else None
            ),
            "notice": record.notification.notice.value if record.notification.notice else None,
            "exemption_basis": record.notification.exemption_basis,
            "sent_on": _iso(record.notification.sent_on),
        }
    return view


def _stored_view(stored: StoredRecord) -> dict:
    return {
        "id": stored.id,
        "state": state_label(stored.state),
        "version": stored.version,
        "stale": stored.stale,
        "record": _record_view(stored.record),
    }


def _question_view(question: Question, store: RecordStore) -> dict:
    view = {
        "id": question.id,
        "prompt": question.prompt,
        "maps_to": question.maps_to.value,
        "target_stage": question.target_stage,
        "answer_kind": question.answer_kind.kind,
        "required": question.required,
        "guidance": question.guidance,
        "choices": None,
    }
    if question.answer_kind.value_class is not None:
        view["value_class"] = question.answer_kind.value_class.value
        view["choices"] = [
            {"iri": t.iri, "label": t.label, "definition": t.definition}
            for t in catalog().instances_of(question.answer_kind.value_class)
        ]
    return view


def _report_payload(report: ValidationReport) -> dict:
    return json.loads(report.to_json())


def _cq_payload(answer: CqAnswer) -> dict:
    return json.loads(answer.to_json())


def create_app(store: RecordStore, cors_origin: str | None = None) -> FastAPI:
    app = FastAPI(title="FRIA engine", version="0.1.0")

    if cors_origin:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(FriaError)
    async def _fria_error(request: Request, exc: FriaError) -> JSONResponse:
        payload: dict = {"error": str(exc)}
        if isinstance(exc, StaleVersionError):
            return JSONResponse(payload | {"current_version": exc.expected}, status_code=409)
        if isinstance(exc, IllegalTransition):
            return JSONResponse(payload, status_code=409)
        if isinstance(exc, StoreError):
            code = 404 if "unknown record" in str(exc) else 409
            return JSONResponse(payload, status_code=code)
        if isinstance(exc, InputsIncomplete):
            payload["violations"] = [asdict(v) for v in exc.violations]
            return JSONResponse(payload, status_code=422)
        if isinstance(exc, MissingAnswersError):
            payload["missing"] = exc.question_ids
            return JSONResponse(payload, status_code=422)
        if isinstance(
            exc, (AnswerTypeError, QuestionnaireError, NotificationError, RecordGraphError)
        ):
            return JSONResponse(payload, status_code=422)
        return JSONResponse(payload, status_code=422)

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse({"error": str(exc)}, status_code=422)

    @app.post("/records", status_code=201)
    async def create_record(body: dict | None = None):
        body = body or {}
        record_id = body.get("id") or uuid.uuid4().hex[:12]
        created = date.fromisoformat(body["created"]) if body.get("created") else None
        stored = store.create(
            record_id,
            created=created,
            title=body.get("title"),
            publisher=body.get("publisher"),
            description=body.get("description", ""),
        )
        return _stored_view(stored)

    @app.get("/records")
    async def list_records():
        return {"records": store.list_ids()}

    @app.get("/records/{record_id}")
    async def get_record(record_id: str):
        return _stored_view(store.load(record_id))

    @app.post("/records/{record_id}/necessity")
    async def assess_necessity(record_id: str, body: dict):
        raw_status = body.get("status", "")
        if raw_status in ("required", STATUS_REQUIRED.value):
            status = STATUS_REQUIRED
        elif raw_status in ("not-required", STATUS_NOT_REQUIRED.value):
            status = STATUS_NOT_REQUIRED
        else:
            return JSONResponse(
                {"error": f"unknown necessity status: {raw_status!r}"}, status_code=422
            )
        flags = {str(k): bool(v) for k, v in (body.get("flags") or {}).items()}
        stored = store.assess_necessity(
            record_id, status, flags, body.get("justification", "")
        )
        return _stored_view(stored)

    @app.get("/records/{record_id}/questionnaire")
    async def questionnaire_definition(record_id: str):
        store.load(record_id)  # 404 for unknown records
        definition = json.loads(questionnaire_to_json(store.questionnaire))
        for section in definition["sections"]:
            section["questions"] = [
                _question_view(store.questionnaire.question(q["id"]), store)
                for q in section["questions"]
            ]
        return definition

    @app.get("/records/{record_id}/questionnaire/next")
    async def next_question(record_id: str):
        stored = store.load(record_id)
        if stored.session is None:
            return {"question": None, "version": stored.version}
        cursor = stored.session.cursor(store.questionnaire)
        if cursor is None:
            return {"question": None, "version": stored.version}
        question = store.questionnaire.question(cursor)
        return {"question": _question_view(question, store), "version": stored.version}

    @app.post("/records/{record_id}/answers")
    async def record_answer(record_id: str, body: dict):
        if "question_id" not in body or "value" not in body:
            return JSONResponse(
                {"error": "body must carry question_id and value"}, status_code=422
            )
        version = body.get("version")
        stored = store.answer(
            record_id, str(body["question_id"]), body["value"],
            expected_version=int(version) if version is not None else None,
        )
        cursor = stored.session.cursor(store.questionnaire) if stored.session else None
        return {"version": stored.version, "next_required": cursor}

    @app.post("/records/{record_id}/compile")
    async def compile_record(record_id: str):
        stored = store.compile(record_id)
        report = store.validation_report(record_id)
        return {
            "state": state_label(stored.state),
            "version": stored.version,
            "report": _report_payload(report),
        }

    @app.get("/records/{record_id}/validation")
    async def validation(record_id: str):
        return _report_payload(store.validation_report(record_id))

    @app.get("/records/{record_id}/cq/{number}")
    async def competency_question(record_id: str, number: str):
        return _cq_payload(store.cq(record_id, number))

    @app.get("/records/{record_id}/cq")
    async def competency_dashboard(record_id: str):
        return {
            "answers": [
                _cq_payload(store.cq(record_id, str(n))) for n in range(1, 9)
            ]
        }

    @app.post("/records/{record_id}/outcome")
    async def determine_outcome(record_id: str, body: dict | None = None):
        body = body or {}
        stored = store.determine_outcome(record_id, body.get("rationale", ""))
        status = stored.record.outcome.status
        return {
            "state": state_label(stored.state),
            "version": stored.version,
            "status": status.value,
            "deployment_permitted": deployment_permitted(status),
        }

    @app.post("/records/{record_id}/notification")
    async def resolve_notification(record_id: str, body: dict):
        if body.get("exempt"):
            stored = store.notify_exempt(record_id, body.get("basis"))
        else:
            stored = store.notify_draft(record_id, body.get("authority"))
        return _stored_view(stored)

    @app.post("/records/{record_id}/notification/sent")
    async def mark_sent(record_id: str, body: dict | None = None):
        body = body or {}
        when = date.fromisoformat(body["sent_on"]) if body.get("sent_on") else None
        stored = store.notify_sent(record_id, when)
        return _stored_view(stored)

    @app.get("/records/{record_id}/export")
    async def export_record(record_id: str, format: str = "ttl"):
        if format not in ("ttl", "nt"):
            return JSONResponse(
                {"error": f"unknown export format: {format}"}, status_code=422
            )
        media = TURTLE_MEDIA if format == "ttl" else NTRIPLES_MEDIA
        return Response(content=store.export(record_id, format), media_type=media)

    @app.get("/records/{record_id}/notice")
    async def get_notice(record_id: str):
        stored = store.load(record_id)
        notice, text, graph = notice_for_record(stored.record)
        return {
            "notice": notice.iri.value,
            "authority": notice.authority.value,
            "text": text,
            "graph_ttl": serialize_turtle(graph),
        }

    @app.get("/ontology")
    async def ontology():
        return Response(
            content=serialize_turtle(export_ontology(catalog())), media_type=TURTLE_MEDIA
        )

    @app.get("/cq-prompts")
    async def cq_prompts():
        return {cq.value: prompt for cq, prompt in CQ_PROMPTS.items()}

    return app
