"""Exception types shared across the engine."""

from __future__ import annotations


class FriaError(Exception):
    """Base class for all engine errors."""


class GraphSyntaxError(FriaError):
    """Raised by the Turtle and N-Triples parsers on malformed input."""

    def __init__(self, message: str, line: int, column: int, token: str | None = None):
        self.line = line
        self.column = column
        self.token = token
        detail = f"line {line}, column {column}: {message}"
        if token is not None:
            detail += f" (at {token!r})"
        super().__init__(detail)


class UndefinedPrefixError(GraphSyntaxError):
    """A prefixed name used a prefix that was never declared."""


class UnknownTermError(FriaError):
    """An IRI was looked up that is not in the vocabulary catalog."""


class RecordGraphError(FriaError):
    """A graph could not be read back into a structured record."""


class IllegalTransition(FriaError):
    """A workflow event was applied in a state where it is not allowed."""

    def __init__(self, state: object, event: object):
        self.state = state
        self.event = event
        super().__init__(f"event {event} is not legal in state {state}")


class InputsIncomplete(FriaError):
    """Procedure inputs failed shape validation; carries the violations."""

    def __init__(self, violations: list):
        self.violations = violations
        paths = ", ".join(sorted({v.path for v in violations}))
        super().__init__(f"inputs do not conform ({len(violations)} violation(s): {paths})")


class QuestionnaireError(FriaError):
    """Base for questionnaire definition and session errors."""


class AnswerTypeError(QuestionnaireError):
    """An answer value does not match the question's declared answer kind."""


class MissingAnswersError(QuestionnaireError):
    """Compilation was attempted with required questions unanswered."""

    def __init__(self, question_ids: list[str]):
        self.question_ids = list(question_ids)
        super().__init__("required questions unanswered: " + ", ".join(self.question_ids))


class NotificationError(FriaError):
    """Notification resolution or notice construction failed."""


class StoreError(FriaError):
    """Record store access failed (unknown record, stale version, lock)."""


class StaleVersionError(StoreError):
    """An optimistic-concurrency token did not match the stored version."""

    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"stale version token: record is at {expected}, request carried {got}")
