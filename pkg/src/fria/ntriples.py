"""N-Triples parser and canonical serializer.

One triple per line. The serializer relabels blank nodes canonically and
sorts the emitted lines, which makes the output the engine's bit-exact
reference form: two graphs are equal exactly when their N-Triples
serializations are byte-identical (after blank-node canonicalization).
"""

from __future__ import annotations

import re

from .errors import GraphSyntaxError
from .graph import (
    BlankNode,
    Graph,
    GraphBuilder,
    Iri,
    Literal,
    Subject,
    Term,
    canonicalize_blanks,
)
from .namespaces import XSD_STRING

_IRIREF = r"<([^<>\s\"{}|^`\\]*)>"
_BLANK = r"_:([A-Za-z0-9][A-Za-z0-9._-]*)"
_STRING = r'"((?:[^"\\\n\r]|\\.)*)"'
_LITERAL = rf"{_STRING}(?:@([A-Za-z][A-Za-z0-9-]*)|\^\^{_IRIREF})?"

_TRIPLE_RE = re.compile(
    rf"^\s*(?:{_IRIREF}|{_BLANK})"      # subject: groups 1, 2
    rf"\s+{_IRIREF}"                    # predicate: group 3
    rf"\s+(?:{_IRIREF}|{_BLANK}|{_LITERAL})"  # object: groups 4-8
    r"\s*\.\s*(?:#.*)?$"
)

_DECODE_RE = re.compile(r"\\(?:u([0-9A-Fa-f]{4})|U([0-9A-Fa-f]{8})|(.))")
_SIMPLE_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def _decode(raw: str, line_no: int) -> str:
    def repl(m: re.Match) -> str:
        if m.group(1):
            return chr(int(m.group(1), 16))
        if m.group(2):
            return chr(int(m.group(2), 16))
        c = m.group(3)
        if c not in _SIMPLE_ESCAPES:
            raise GraphSyntaxError(f"unknown escape \\{c}", line_no, 1)
        return _SIMPLE_ESCAPES[c]

    return _DECODE_RE.sub(repl, raw)


def parse_ntriples(text: str) -> Graph:
    """Parse an N-Triples document; errors carry the offending line number."""
    builder = GraphBuilder()
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _TRIPLE_RE.match(line)
        if not m:
            raise GraphSyntaxError("malformed N-Triples line", line_no, 1, stripped[:40])
        s_iri, s_blank, pred, o_iri, o_blank, o_lex, o_lang, o_dt = m.groups()
        subject: Subject = Iri(s_iri) if s_iri is not None else BlankNode(s_blank)
        obj: Term
        if o_iri is not None:
            obj = Iri(o_iri)
        elif o_blank is not None:
            obj = BlankNode(o_blank)
        else:
            lexical = _decode(o_lex, line_no)
            if o_lang:
                obj = Literal.tagged(lexical, o_lang)
            elif o_dt:
                obj = Literal(lexical, Iri(o_dt))
            else:
                obj = Literal(lexical)
        builder.add(subject, Iri(pred), obj)
    return builder.build()


def _encode(text: str) -> str:
    out: list[str] = []
    for c in text:
        if c == "\\":
            out.append("\\\\")
        elif c == '"':
            out.append('\\"')
        elif c == "\n":
            out.append("\\n")
        elif c == "\r":
            out.append("\\r")
        elif c == "\t":
            out.append("\\t")
        elif ord(c) < 0x20:
            out.append(f"\\u{ord(c):04X}")
        else:
            out.append(c)
    return "".join(out)


def _term(term: Term) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if term.language is not None:
        return f'"{_encode(term.lexical)}"@{term.language}'
    if term.datatype.value == XSD_STRING:
        return f'"{_encode(term.lexical)}"'
    return f'"{_encode(term.lexical)}"^^<{term.datatype.value}>'


def serialize_ntriples(graph: Graph) -> str:
    """Serialize to sorted N-Triples lines after canonical blank relabeling."""
    canonical = canonicalize_blanks(graph)
    lines = sorted(
        f"{_term(t.subject)} {_term(t.predicate)} {_term(t.object)} ."
        for t in canonical.triples
    )
    return "\n".join(lines) + "\n" if lines else ""
