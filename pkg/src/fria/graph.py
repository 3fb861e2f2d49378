"""Immutable RDF data model: terms, triples and graphs.

Graphs are value objects: a frozen set of triples plus a prefix map used
only for presentation. Two graphs are equal when their triple sets are
equal; ``canonical_eq`` additionally relabels blank nodes so that graphs
that differ only in blank-node labels compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Union

from .namespaces import RDF_LANGSTRING, XSD_STRING


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI."""

    value: str

    def __post_init__(self) -> None:
        if not self.value:
            raise ValueError("IRI must be non-empty")
        if ":" not in self.value:
            raise ValueError(f"IRI must be absolute (no scheme separator): {self.value!r}")
        if any(c.isspace() for c in self.value):
            raise ValueError(f"IRI must not contain whitespace: {self.value!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class BlankNode:
    """A blank node; labels are scoped to one document or graph value."""

    label: str

    def __str__(self) -> str:
        return "_:" + self.label


@dataclass(frozen=True, slots=True)
class Literal:
    """An RDF literal: lexical form plus datatype, optionally a language tag.

    The datatype defaults to xsd:string. A language tag is only allowed
    together with the rdf:langString datatype, and is stored lowercase.
    """

    lexical: str
    datatype: Iri = field(default=Iri(XSD_STRING))
    language: Optional[str] = None

    def __post_init__(self) -> None:
        if self.language is not None:
            if self.datatype.value != RDF_LANGSTRING:
                raise ValueError("language tag requires the rdf:langString datatype")
            object.__setattr__(self, "language", self.language.lower())
        elif self.datatype.value == RDF_LANGSTRING:
            raise ValueError("rdf:langString literal requires a language tag")

    @classmethod
    def tagged(cls, lexical: str, language: str) -> "Literal":
        return cls(lexical, Iri(RDF_LANGSTRING), language)


Term = Union[Iri, BlankNode, Literal]
Subject = Union[Iri, BlankNode]


def term_sort_key(term: Term) -> tuple[int, str, str, str]:
    """Total deterministic order over terms: IRIs, then blanks, then literals."""
    if isinstance(term, Iri):
        return (0, term.value, "", "")
    if isinstance(term, BlankNode):
        return (1, term.label, "", "")
    return (2, term.lexical, term.datatype.value, term.language or "")


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Subject
    predicate: Iri
    object: Term

    def __post_init__(self) -> None:
        if isinstance(self.subject, Literal):
            raise ValueError("literal cannot appear in subject position")
        if not isinstance(self.predicate, Iri):
            raise ValueError("predicate must be an IRI")

    def sort_key(self) -> tuple:
        return (term_sort_key(self.subject), self.predicate.value, term_sort_key(self.object))


class Graph:
    """An immutable set of triples with a prefix map for serialization."""

    __slots__ = ("_triples", "_prefixes")

    def __init__(
        self,
        triples: Iterable[Triple] = (),
        prefixes: Mapping[str, str] | None = None,
    ):
        self._triples: frozenset[Triple] = frozenset(triples)
        self._prefixes: dict[str, str] = dict(prefixes or {})

    @property
    def triples(self) -> frozenset[Triple]:
        return self._triples

    @property
    def prefixes(self) -> dict[str, str]:
        return dict(self._prefixes)

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self._triples, key=Triple.sort_key))

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self) -> int:
        return hash(self._triples)

    def __repr__(self) -> str:
        return f"Graph({len(self._triples)} triples)"

    def match(
        self,
        subject: Subject | None = None,
        predicate: Iri | None = None,
        object: Term | None = None,
    ) -> list[Triple]:
        """All triples matching the bound positions; unbound positions match anything.

        Results are sorted, so iteration order is deterministic.
        """
        found = [
            t
            for t in self._triples
            if (subject is None or t.subject == subject)
            and (predicate is None or t.predicate == predicate)
            and (object is None or t.object == object)
        ]
        found.sort(key=Triple.sort_key)
        return found

    def objects(self, subject: Subject, predicate: Iri) -> list[Term]:
        return [t.object for t in self.match(subject, predicate, None)]

    def value(self, subject: Subject, predicate: Iri) -> Term | None:
        """The single object for (subject, predicate), or None if absent.

        Raises ValueError when more than one object is present, since the
        callers that use this expect at-most-one cardinality.
        """
        objs = self.objects(subject, predicate)
        if not objs:
            return None
        if len(objs) > 1:
            raise ValueError(f"multiple objects for ({subject}, {predicate})")
        return objs[0]

    def subjects(self, predicate: Iri, object: Term) -> list[Subject]:
        return [t.subject for t in self.match(None, predicate, object)]

    def with_prefixes(self, prefixes: Mapping[str, str]) -> "Graph":
        merged = dict(self._prefixes)
        merged.update(prefixes)
        return Graph(self._triples, merged)

    def union(self, other: "Graph") -> "Graph":
        merged = dict(self._prefixes)
        merged.update(other._prefixes)
        return Graph(self._triples | other._triples, merged)


class GraphBuilder:
    """Mutable accumulator for constructing a Graph; confine to one thread."""

    def __init__(self, prefixes: Mapping[str, str] | None = None):
        self._triples: set[Triple] = set()
        self._prefixes: dict[str, str] = dict(prefixes or {})
        self._blank_counter = 0

    def bind(self, prefix: str, namespace: str) -> None:
        self._prefixes[prefix] = namespace

    def add(self, subject: Subject, predicate: Iri, object: Term) -> None:
        self._triples.add(Triple(subject, predicate, object))

    def add_triple(self, triple: Triple) -> None:
        self._triples.add(triple)

    def fresh_blank(self) -> BlankNode:
        self._blank_counter += 1
        return BlankNode(f"gen{self._blank_counter}")

    def __len__(self) -> int:
        return len(self._triples)

    def build(self) -> Graph:
        return Graph(self._triples, self._prefixes)


def _blank_signature(graph: Graph, node: BlankNode, seen: frozenset[BlankNode]) -> tuple:
    """Structural signature of a blank node, following outgoing triples.

    Blank nodes in record and fixture graphs form shallow trees (they come
    from anonymous property lists), so outgoing structure plus the incoming
    edge identifies them. A cycle guard caps recursion for graphs built
    directly through the API.
    """
    if node in seen:
        return ("cycle",)
    seen = seen | {node}
    out = []
    for t in graph.match(node, None, None):
        if isinstance(t.object, BlankNode):
            out.append((t.predicate.value, "b", _blank_signature(graph, t.object, seen)))
        else:
            out.append((t.predicate.value, "t", term_sort_key(t.object)))
    out.sort()
    incoming = sorted(
        (t.predicate.value, term_sort_key(t.subject))
        for t in graph.match(None, None, node)
        if not isinstance(t.subject, BlankNode)
    )
    return (tuple(out), tuple(incoming))


def blank_nodes(graph: Graph) -> set[BlankNode]:
    found: set[BlankNode] = set()
    for t in graph.triples:
        if isinstance(t.subject, BlankNode):
            found.add(t.subject)
        if isinstance(t.object, BlankNode):
            found.add(t.object)
    return found


def canonicalize_blanks(graph: Graph) -> Graph:
    """Relabel blank nodes deterministically (b0, b1, ...) by structure.

    Signatures are refined once with the signatures of blank parents, which
    makes the relabeling exact for the tree-shaped property lists the engine
    and its fixtures produce; it is not a general isomorphism check.
    """
    blanks = blank_nodes(graph)
    if not blanks:
        return graph
    base: dict[BlankNode, tuple] = {
        b: _blank_signature(graph, b, frozenset()) for b in blanks
    }
    refined: dict[BlankNode, tuple] = {}
    for b in blanks:
        parents = sorted(
            (t.predicate.value, base[t.subject])
            for t in graph.match(None, None, b)
            if isinstance(t.subject, BlankNode)
        )
        refined[b] = (base[b], tuple(parents))
    ordered = sorted(blanks, key=lambda b: (refined[b], b.label))
    mapping = {b: BlankNode(f"b{i}") for i, b in enumerate(ordered)}

    def sub(term: Term) -> Term:
        return mapping.get(term, term) if isinstance(term, BlankNode) else term

    return Graph(
        (Triple(sub(t.subject), t.predicate, sub(t.object)) for t in graph.triples),
        graph.prefixes,
    )


def canonical_eq(a: Graph, b: Graph) -> bool:
    """Triple-set equality after deterministic blank-node relabeling."""
    return canonicalize_blanks(a) == canonicalize_blanks(b)
