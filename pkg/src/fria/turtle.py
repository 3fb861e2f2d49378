"""Turtle subset parser and deterministic serializer.

Supported grammar: ``@prefix``/``@base`` directives, the ``a`` keyword,
predicate lists with ``;``, object lists with ``,``, anonymous blank-node
property lists ``[...]``, labeled blank nodes ``_:x``, prefixed names,
absolute IRIs, plain/typed/language-tagged string literals, bare integers
and booleans, and ``#`` comments. RDF collections ``(...)`` and the rest
of the full Turtle grammar are intentionally out of scope.

Serialization is canonical: blank nodes are relabeled deterministically,
prefix declarations are sorted by prefix name, subject blocks are sorted
by serialized subject, predicates within a subject and objects within a
predicate are sorted likewise. Identical graphs therefore serialize to
byte-identical documents.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from urllib.parse import urljoin

from .errors import GraphSyntaxError, UndefinedPrefixError
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
from .namespaces import RDF_TYPE, XSD_BOOLEAN, XSD_INTEGER, XSD_STRING

_ABSOLUTE_IRI_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:")
_INTEGER_RE = re.compile(r"^[+-]?[0-9]+$")
_PN_LOCAL_RE = re.compile(r"^(?:[A-Za-z0-9_][A-Za-z0-9_.-]*[A-Za-z0-9_-]|[A-Za-z0-9_])?$")

_ESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_UNESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    line: int
    column: int


def _is_name_char(c: str) -> bool:
    return c.isalnum() or c in "_-.:%"


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def error(self, message: str, token: str | None = None) -> GraphSyntaxError:
        return GraphSyntaxError(message, self.line, self.column, token)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos < len(self.text) and self.text[self.pos] == "\n":
                self.line += 1
                self.column = 1
            else:
                self.column += 1
            self.pos += 1

    def _peek(self, offset: int = 0) -> str:
        j = self.pos + offset
        return self.text[j] if j < len(self.text) else ""

    def tokens(self) -> list[_Token]:
        out: list[_Token] = []
        while self.pos < len(self.text):
            c = self._peek()
            if c.isspace():
                self._advance()
                continue
            if c == "#":
                while self.pos < len(self.text) and self._peek() != "\n":
                    self._advance()
                continue
            line, col = self.line, self.column
            if c == "<":
                out.append(_Token("iriref", self._lex_iriref(), line, col))
            elif c == '"':
                out.append(_Token("string", self._lex_string(), line, col))
            elif c == "@":
                out.append(self._lex_at(line, col))
            elif c == "^":
                if self._peek(1) != "^":
                    raise self.error("expected '^^'", c)
                self._advance(2)
                out.append(_Token("hathat", "^^", line, col))
            elif c in "[];,.":
                self._advance()
                out.append(_Token(c, c, line, col))
            elif c == "_" and self._peek(1) == ":":
                self._advance(2)
                label = self._lex_name()
                if not label:
                    raise self.error("blank node label expected after '_:'")
                out.append(_Token("blank", label, line, col))
            elif c.isdigit() or (c in "+-" and self._peek(1).isdigit()):
                out.append(_Token("integer", self._lex_number(), line, col))
            elif c.isalpha():
                out.append(_Token("name", self._lex_name(), line, col))
            else:
                raise self.error("unexpected character", c)
        out.append(_Token("eof", "", self.line, self.column))
        return out

    def _lex_iriref(self) -> str:
        self._advance()  # '<'
        chars: list[str] = []
        while True:
            c = self._peek()
            if c == "":
                raise self.error("unterminated IRI reference")
            if c == ">":
                self._advance()
                return "".join(chars)
            if c.isspace() and c != " ":
                raise self.error("whitespace inside IRI reference")
            chars.append(c)
            self._advance()

    def _lex_string(self) -> str:
        self._advance()  # opening quote
        chars: list[str] = []
        while True:
            c = self._peek()
            if c == "" or c == "\n":
                raise self.error("unterminated string literal")
            if c == '"':
                self._advance()
                return "".join(chars)
            if c == "\\":
                self._advance()
                esc = self._peek()
                if esc in _ESCAPES:
                    chars.append(_ESCAPES[esc])
                    self._advance()
                elif esc in "uU":
                    width = 4 if esc == "u" else 8
                    self._advance()
                    hexits = self.text[self.pos : self.pos + width]
                    if len(hexits) != width or not all(h in "0123456789abcdefABCDEF" for h in hexits):
                        raise self.error(f"malformed \\{esc} escape")
                    chars.append(chr(int(hexits, 16)))
                    self._advance(width)
                else:
                    raise self.error("unknown string escape", esc)
                continue
            chars.append(c)
            self._advance()

    def _lex_at(self, line: int, col: int) -> _Token:
        self._advance()  # '@'
        word = self._lex_bare_word()
        if word == "prefix":
            return _Token("@prefix", word, line, col)
        if word == "base":
            return _Token("@base", word, line, col)
        if word and word.isalpha():
            # language tag, possibly with subtags
            tag = word
            while self._peek() == "-":
                self._advance()
                tag += "-" + self._lex_bare_word()
            return _Token("langtag", tag, line, col)
        raise self.error(f"unknown directive @{word}")

    def _lex_bare_word(self) -> str:
        chars: list[str] = []
        while self._peek().isalnum():
            chars.append(self._peek())
            self._advance()
        return "".join(chars)

    def _lex_name(self) -> str:
        chars: list[str] = []
        while _is_name_char(self._peek()):
            # A '.' only belongs to the name when followed by another name
            # character; otherwise it is the statement terminator.
            if self._peek() == "." and not _is_name_char(self._peek(1)):
                break
            chars.append(self._peek())
            self._advance()
        return "".join(chars)

    def _lex_number(self) -> str:
        chars: list[str] = [self._peek()]
        self._advance()
        while self._peek().isdigit():
            chars.append(self._peek())
            self._advance()
        return "".join(chars)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[_Token], base: str | None):
        self.tokens = tokens
        self.pos = 0
        self.base = base
        self.prefixes: dict[str, str] = {}
        self.builder = GraphBuilder()
        self.anon_counter = 0

    def _peek(self) -> _Token:
        return self.tokens[self.pos]

    def _next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect(self, kind: str) -> _Token:
        tok = self._next()
        if tok.kind != kind:
            raise GraphSyntaxError(f"expected {kind!r}", tok.line, tok.column, tok.value or tok.kind)
        return tok

    def error(self, message: str, tok: _Token) -> GraphSyntaxError:
        return GraphSyntaxError(message, tok.line, tok.column, tok.value or tok.kind)

    def parse(self) -> Graph:
        while self._peek().kind != "eof":
            kind = self._peek().kind
            if kind == "@prefix":
                self._parse_prefix()
            elif kind == "@base":
                self._parse_base()
            else:
                self._parse_statement()
        for name, ns in self.prefixes.items():
            self.builder.bind(name, ns)
        return self.builder.build()

    def _parse_prefix(self) -> None:
        self._next()
        name_tok = self._expect("name")
        if not name_tok.value.endswith(":"):
            raise self.error("prefix declaration must end with ':'", name_tok)
        iri_tok = self._expect("iriref")
        self.prefixes[name_tok.value[:-1]] = self._resolve(iri_tok)
        self._expect(".")

    def _parse_base(self) -> None:
        self._next()
        iri_tok = self._expect("iriref")
        self.base = self._resolve(iri_tok)
        self._expect(".")

    def _resolve(self, tok: _Token) -> str:
        if _ABSOLUTE_IRI_RE.match(tok.value):
            return tok.value
        if self.base is None:
            raise self.error("relative IRI without a base", tok)
        return urljoin(self.base, tok.value)

    def _parse_statement(self) -> None:
        tok = self._peek()
        if tok.kind == "[":
            subject = self._parse_property_list()
            # A bare property list may stand alone as a statement.
            if self._peek().kind != ".":
                self._parse_predicate_object_list(subject)
        else:
            subject = self._parse_subject()
            self._parse_predicate_object_list(subject)
        self._expect(".")

    def _parse_subject(self) -> Subject:
        tok = self._next()
        if tok.kind == "iriref":
            return Iri(self._resolve(tok))
        if tok.kind == "blank":
            return BlankNode(tok.value)
        if tok.kind == "name":
            return self._prefixed(tok)
        raise self.error("expected subject", tok)

    def _parse_predicate_object_list(self, subject: Subject) -> None:
        while True:
            predicate = self._parse_predicate()
            self._parse_object_list(subject, predicate)
            if self._peek().kind == ";":
                self._next()
                # allow a trailing ';' before '.' or ']'
                if self._peek().kind in (".", "]"):
                    return
                continue
            return

    def _parse_predicate(self) -> Iri:
        tok = self._next()
        if tok.kind == "iriref":
            return Iri(self._resolve(tok))
        if tok.kind == "name":
            if tok.value == "a":
                return Iri(RDF_TYPE)
            return self._prefixed(tok)
        raise self.error("expected predicate", tok)

    def _parse_object_list(self, subject: Subject, predicate: Iri) -> None:
        while True:
            obj = self._parse_object()
            self.builder.add(subject, predicate, obj)
            if self._peek().kind == ",":
                self._next()
                continue
            return

    def _parse_object(self) -> Term:
        tok = self._peek()
        if tok.kind == "[":
            return self._parse_property_list()
        self._next()
        if tok.kind == "iriref":
            return Iri(self._resolve(tok))
        if tok.kind == "blank":
            return BlankNode(tok.value)
        if tok.kind == "string":
            return self._parse_literal_tail(tok.value)
        if tok.kind == "integer":
            return Literal(tok.value, Iri(XSD_INTEGER))
        if tok.kind == "name":
            if tok.value in ("true", "false"):
                return Literal(tok.value, Iri(XSD_BOOLEAN))
            return self._prefixed(tok)
        raise self.error("expected object", tok)

    def _parse_literal_tail(self, lexical: str) -> Literal:
        tok = self._peek()
        if tok.kind == "langtag":
            self._next()
            return Literal.tagged(lexical, tok.value)
        if tok.kind == "hathat":
            self._next()
            dt_tok = self._next()
            if dt_tok.kind == "iriref":
                return Literal(lexical, Iri(self._resolve(dt_tok)))
            if dt_tok.kind == "name":
                return Literal(lexical, self._prefixed(dt_tok))
            raise self.error("expected datatype IRI after '^^'", dt_tok)
        return Literal(lexical)

    def _parse_property_list(self) -> BlankNode:
        open_tok = self._expect("[")
        self.anon_counter += 1
        node = BlankNode(f"anon{self.anon_counter}")
        if self._peek().kind == "]":
            self._next()
            return node
        self._parse_predicate_object_list(node)
        close = self._next()
        if close.kind != "]":
            raise self.error("unterminated blank-node property list", open_tok)
        return node

    def _prefixed(self, tok: _Token) -> Iri:
        if ":" not in tok.value:
            raise self.error("expected a prefixed name or keyword", tok)
        prefix, _, local = tok.value.partition(":")
        if prefix not in self.prefixes:
            raise UndefinedPrefixError(
                f"undefined prefix {prefix!r}", tok.line, tok.column, tok.value
            )
        return Iri(self.prefixes[prefix] + local)


def parse_turtle(text: str, base: Iri | None = None) -> Graph:
    """Parse a Turtle document (the subset above) into a Graph."""
    tokens = _Lexer(text).tokens()
    return _Parser(tokens, base.value if base else None).parse()


# ---------------------------------------------------------------------------
# Serializer
# ---------------------------------------------------------------------------

def _escape(text: str) -> str:
    out: list[str] = []
    for c in text:
        if c in _UNESCAPES:
            out.append(_UNESCAPES[c])
        elif ord(c) < 0x20:
            out.append(f"\\u{ord(c):04X}")
        else:
            out.append(c)
    return "".join(out)


class _TurtleWriter:
    def __init__(self, graph: Graph):
        self.graph = graph
        # longest namespace wins when several prefixes could apply
        self.namespaces = sorted(
            graph.prefixes.items(), key=lambda kv: len(kv[1]), reverse=True
        )
        incoming: dict[BlankNode, int] = {}
        edges: dict[BlankNode, set[BlankNode]] = {}
        for t in graph.triples:
            if isinstance(t.object, BlankNode):
                incoming[t.object] = incoming.get(t.object, 0) + 1
                if isinstance(t.subject, BlankNode):
                    edges.setdefault(t.subject, set()).add(t.object)
        self.incoming = incoming
        # Blank nodes on a blank-to-blank cycle can never be inlined; they
        # keep their labels so their triples are not lost.
        cyclic: set[BlankNode] = set()
        for start in edges:
            stack, seen = [start], set()
            while stack:
                node = stack.pop()
                for nxt in edges.get(node, ()):
                    if nxt == start:
                        cyclic.add(start)
                        stack.clear()
                        break
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
        self.inline = {
            node for node, count in incoming.items() if count == 1 and node not in cyclic
        }

    def _inlinable(self, node: BlankNode, stack: tuple[BlankNode, ...]) -> bool:
        return node in self.inline and node not in stack

    def iri(self, iri: Iri) -> str:
        for name, ns in self.namespaces:
            if iri.value.startswith(ns):
                local = iri.value[len(ns):]
                if _PN_LOCAL_RE.match(local):
                    return f"{name}:{local}"
        return f"<{iri.value}>"

    def literal(self, lit: Literal) -> str:
        if lit.language is not None:
            return f'"{_escape(lit.lexical)}"@{lit.language}'
        dt = lit.datatype.value
        if dt == XSD_INTEGER and _INTEGER_RE.match(lit.lexical):
            return lit.lexical
        if dt == XSD_BOOLEAN and lit.lexical in ("true", "false"):
            return lit.lexical
        if dt == XSD_STRING:
            return f'"{_escape(lit.lexical)}"'
        return f'"{_escape(lit.lexical)}"^^{self.iri(lit.datatype)}'

    def term(self, term: Term, stack: tuple[BlankNode, ...]) -> str:
        if isinstance(term, Iri):
            return self.iri(term)
        if isinstance(term, Literal):
            return self.literal(term)
        if self._inlinable(term, stack):
            return self.property_list(term, stack + (term,))
        return f"_:{term.label}"

    def predicate(self, predicate: Iri) -> str:
        if predicate.value == RDF_TYPE:
            return "a"
        return self.iri(predicate)

    def property_list(self, node: BlankNode, stack: tuple[BlankNode, ...]) -> str:
        parts = []
        for pred, objs in self._grouped(node, stack):
            parts.append(f"{pred} {', '.join(objs)}")
        if not parts:
            return "[]"
        return "[ " + " ; ".join(parts) + " ]"

    def _grouped(self, subject: Subject, stack: tuple[BlankNode, ...]) -> list[tuple[str, list[str]]]:
        by_pred: dict[str, list[str]] = {}
        for t in self.graph.match(subject, None, None):
            by_pred.setdefault(self.predicate(t.predicate), []).append(
                self.term(t.object, stack)
            )
        return sorted((pred, sorted(objs)) for pred, objs in by_pred.items())

    def write(self) -> str:
        lines: list[str] = []
        for name in sorted(self.graph.prefixes):
            lines.append(f"@prefix {name}: <{self.graph.prefixes[name]}> .")
        subjects: dict[str, Subject] = {}
        for t in self.graph.triples:
            if isinstance(t.subject, BlankNode):
                if t.subject in self.inline:
                    continue  # rendered inline at its single reference
                key = "[ " if self.incoming.get(t.subject, 0) == 0 else "_:"
                key += t.subject.label
                subjects.setdefault(key, t.subject)
            else:
                subjects.setdefault(self.iri(t.subject), t.subject)
        blocks: list[str] = []
        for _, subject in sorted(subjects.items()):
            stack = (subject,) if isinstance(subject, BlankNode) else ()
            if isinstance(subject, BlankNode) and self.incoming.get(subject, 0) == 0:
                blocks.append(f"{self.property_list(subject, stack)} .")
                continue
            head = f"_:{subject.label}" if isinstance(subject, BlankNode) else self.iri(subject)
            parts = [f"{pred} {', '.join(objs)}" for pred, objs in self._grouped(subject, stack)]
            joined = " ;\n    ".join(parts)
            blocks.append(f"{head} {joined} .")
        if lines and blocks:
            lines.append("")
        lines.extend(blocks)
        return "\n".join(lines) + "\n" if lines else ""


def serialize_turtle(graph: Graph) -> str:
    """Serialize a graph to canonical Turtle (deterministic byte output)."""
    return _TurtleWriter(canonicalize_blanks(graph)).write()
