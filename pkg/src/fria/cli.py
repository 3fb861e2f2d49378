"""Command-line surface for the engine.

Every command is a thin adapter over the store operations; machine
outputs (Turtle, N-Triples, report JSON, CQ JSON) are byte-identical to
the module serializations. Exit codes: 0 success, 1 usage or module
error, 2 validation non-conformance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import date
from pathlib import Path

from .errors import FriaError
from .model import STATUS_NOT_REQUIRED, STATUS_REQUIRED
from .namespaces import SERIALIZATION_PREFIXES
from .notification import notice_for_record
from .questionnaire import questionnaire_from_json
from .store import RecordStore, DEFAULT_BASE_IRI
from .turtle import serialize_turtle
from .vocabulary import catalog, export_ontology
from .workflow import deployment_permitted, state_label


def expand_curie(value: str) -> str:
    """Expand a prefix:local shorthand against the engine's prefix map."""
    prefix, sep, local = value.partition(":")
    if sep and prefix in SERIALIZATION_PREFIXES and not local.startswith("//"):
        return SERIALIZATION_PREFIXES[prefix] + local
    return value


def _parse_date(raw: str) -> date:
    return date.fromisoformat(raw)


def _parse_flags(pairs: list[str]) -> dict[str, bool]:
    flags = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or value not in ("true", "false"):
            raise SystemExit(f"--flag expects name=true|false, got {pair!r}")
        flags[name] = value == "true"
    return flags


def _coerce_answer(store: RecordStore, question_id: str, raw: str):
    question = store.questionnaire.question(question_id)
    kind = question.answer_kind.kind
    if kind == "boolean":
        if raw not in ("true", "false"):
            raise SystemExit(f"{question_id} expects true|false")
        return raw == "true"
    if kind == "iri_multi":
        return [expand_curie(part.strip()) for part in raw.split(",") if part.strip()]
    if kind in ("iri_choice", "reference"):
        return expand_curie(raw)
    return raw


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fria",
        description="Manage machine-readable fundamental rights impact assessments "
                    "(AI Act Article 27).",
    )
    parser.add_argument(
        "--store", default=os.environ.get("FRIA_STORE", "./fria-store"),
        help="record store directory (env FRIA_STORE)",
    )
    parser.add_argument(
        "--base-iri", default=os.environ.get("FRIA_BASE_IRI", DEFAULT_BASE_IRI),
        help="base IRI under which record IRIs are minted",
    )
    parser.add_argument(
        "--questionnaire", default=os.environ.get("FRIA_QUESTIONNAIRE"),
        help="JSON questionnaire definition replacing the built-in one",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    new = sub.add_parser("new", help="create a draft record")
    new.add_argument("id")
    new.add_argument("--created", type=_parse_date, help="creation date (default today)")
    new.add_argument("--title")
    new.add_argument("--publisher", help="IRI of the organisation conducting the assessment")
    new.add_argument("--description", default="")

    necessity = sub.add_parser("necessity", help="record the necessity decision")
    necessity.add_argument("id")
    necessity.add_argument("--status", required=True, choices=["required", "not-required"])
    necessity.add_argument("--flag", action="append", default=[], metavar="NAME=BOOL")
    necessity.add_argument("--justification", default="")

    answer = sub.add_parser("answer", help="answer questionnaire questions")
    answer.add_argument("id")
    answer.add_argument("question_id", nargs="?")
    answer.add_argument("value", nargs="?")
    answer.add_argument("--file", help="JSON file of {question-id: value} answers")

    compile_ = sub.add_parser("compile", help="compile the session into the record")
    compile_.add_argument("id")

    validate_ = sub.add_parser("validate", help="validate the record against the shapes")
    validate_.add_argument("id")
    validate_.add_argument("--json", action="store_true", help="emit the JSON report")

    outcome = sub.add_parser("outcome", help="derive and record the outcome")
    outcome.add_argument("id")
    outcome.add_argument("--rationale", default="")

    cq = sub.add_parser("cq", help="answer a competency question (1-8)")
    cq.add_argument("id")
    cq.add_argument("number", choices=[str(n) for n in range(1, 9)])

    notify = sub.add_parser("notify", help="resolve the notification obligation")
    notify.add_argument("id")
    notify.add_argument("--exempt", action="store_true")
    notify.add_argument("--basis", help="exemption basis (with --exempt)")
    notify.add_argument("--authority", help="authority IRI; drafts the notice")
    notify.add_argument("--mark-sent", action="store_true")
    notify.add_argument("--date", type=_parse_date, help="dispatch date for --mark-sent")

    export = sub.add_parser("export", help="print record artifacts")
    export.add_argument("id")
    export.add_argument("--format", default="ttl", choices=["ttl", "nt", "report-json"])

    ontology = sub.add_parser("ontology", help="vocabulary operations")
    ontology_sub = ontology.add_subparsers(dest="ontology_command", required=True)
    ontology_export = ontology_sub.add_parser("export", help="print the vocabulary graph")
    ontology_export.add_argument("--base", help="rebase the new terms onto this namespace IRI")

    reopen = sub.add_parser("reopen", help="reopen a record for re-assessment")
    reopen.add_argument("id")
    reopen.add_argument("--reason", required=True)
    reopen.add_argument("--date", type=_parse_date)

    touch = sub.add_parser("touch", help="record an update date; flags re-assessment")
    touch.add_argument("id")
    touch.add_argument("--date", type=_parse_date)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--cors-origin", help="allow this origin for browser clients")

    return parser


def _run(args: argparse.Namespace) -> int:
    questionnaire = None
    if args.questionnaire:
        questionnaire = questionnaire_from_json(Path(args.questionnaire).read_text("utf-8"))
    store = RecordStore(args.store, base_iri=args.base_iri, questionnaire=questionnaire)

    if args.command == "new":
        stored = store.create(
            args.id,
            created=args.created,
            title=args.title,
            publisher=expand_curie(args.publisher) if args.publisher else None,
            description=args.description,
        )
        print(f"created {args.id} ({stored.record.iri}) state={state_label(stored.state)}")
        return 0

    if args.command == "necessity":
        status = STATUS_REQUIRED if args.status == "required" else STATUS_NOT_REQUIRED
        stored = store.assess_necessity(
            args.id, status, _parse_flags(args.flag), args.justification
        )
        print(f"state={state_label(stored.state)}")
        return 0

    if args.command == "answer":
        if args.file:
            answers = json.loads(Path(args.file).read_text("utf-8"))
            coerced = {}
            for question_id, value in answers.items():
                if isinstance(value, str):
                    value = _coerce_answer(store, question_id, value)
                elif isinstance(value, list):
                    value = [expand_curie(str(item)) for item in value]
                coerced[question_id] = value
            stored = store.answer_many(args.id, coerced)
            print(f"recorded {len(coerced)} answers")
        else:
            if not args.question_id or args.value is None:
                raise SystemExit("answer requires <question-id> <value> or --file")
            value = _coerce_answer(store, args.question_id, args.value)
            stored = store.answer(args.id, args.question_id, value)
            print(f"recorded {args.question_id}")
        remaining = stored.session.cursor(store.questionnaire) if stored.session else None
        if remaining:
            print(f"next required question: {remaining}")
        return 0

    if args.command == "compile":
        stored = store.compile(args.id)
        print(f"state={state_label(stored.state)}")
        return 0

    if args.command == "validate":
        report = store.validation_report(args.id)
        sys.stdout.write(report.to_json() + "\n" if args.json else report.to_text())
        return 0 if report.conforms else 2

    if args.command == "outcome":
        stored = store.determine_outcome(args.id, args.rationale)
        status = stored.record.outcome.status
        print(f"outcome: {status.value.rsplit('#', 1)[-1]}")
        print(f"deployment permitted: {'true' if deployment_permitted(status) else 'false'}")
        return 0

    if args.command == "cq":
        print(store.cq(args.id, args.number).to_json())
        return 0

    if args.command == "notify":
        if args.exempt:
            stored = store.notify_exempt(args.id, args.basis)
        elif args.mark_sent:
            stored = store.notify_sent(args.id, args.date)
        else:
            stored = store.notify_draft(
                args.id, expand_curie(args.authority) if args.authority else None
            )
            _, text, _ = notice_for_record(stored.record)
            notice_path = Path(args.store) / args.id / "notice.txt"
            notice_path.write_text(text, encoding="utf-8")
            sys.stdout.write(text)
        status = stored.record.notification.status if stored.record.notification else None
        if status is not None:
            print(f"notification: {status.value.rsplit('#', 1)[-1]}")
        return 0

    if args.command == "export":
        sys.stdout.write(store.export(args.id, args.format))
        return 0

    if args.command == "ontology":
        graph = export_ontology(catalog(), fria_base=args.base)
        sys.stdout.write(serialize_turtle(graph))
        return 0

    if args.command == "reopen":
        stored = store.reopen(args.id, args.reason, args.date)
        print(f"state={state_label(stored.state)}")
        return 0

    if args.command == "touch":
        stored = store.touch(args.id, args.date)
        print(f"modified={stored.record.metadata.modified} stale={stored.stale}")
        return 0

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        app = create_app(store, cors_origin=args.cors_origin)
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
        return 0

    raise SystemExit(f"unhandled command {args.command}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except FriaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
