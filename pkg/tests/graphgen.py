"""Deterministic random graph generator for round-trip testing.

Generates graphs covering every literal kind the serializers handle, plus
anonymous property-list trees, empty property lists, and multi-referenced
labeled blank nodes.
"""

from __future__ import annotations

import random

from fria.graph import BlankNode, Graph, GraphBuilder, Iri, Literal, Subject, Term
from fria.namespaces import XSD, XSD_BOOLEAN, XSD_DATE, XSD_INTEGER

EX = "http://example.org/"

_WORDS = [
    "alpha", "beta", "gamma", "delta", "review", "triage", "oversight",
    "записи", "ensayo", "みどり", 'quote"inside', "back\\slash", "tab\there",
    "new\nline", "trailing space ", " leading", "",
]


def _iri(rng: random.Random) -> Iri:
    return Iri(f"{EX}n{rng.randrange(40)}")


def _literal(rng: random.Random) -> Literal:
    kind = rng.randrange(6)
    if kind == 0:
        return Literal(rng.choice(_WORDS))
    if kind == 1:
        return Literal(str(rng.randrange(-1000, 1000)), Iri(XSD_INTEGER))
    if kind == 2:
        return Literal(rng.choice(["true", "false"]), Iri(XSD_BOOLEAN))
    if kind == 3:
        return Literal(f"2024-{rng.randrange(1, 13):02d}-{rng.randrange(1, 29):02d}", Iri(XSD_DATE))
    if kind == 4:
        return Literal.tagged(rng.choice(_WORDS), rng.choice(["en", "fr", "de-AT"]))
    return Literal(rng.choice(_WORDS), Iri(XSD + rng.choice(["token", "anyURI", "decimal"])))


def _object(rng: random.Random, builder: GraphBuilder, depth: int) -> Term:
    roll = rng.random()
    if roll < 0.15 and depth < 2:
        return _blank_tree(rng, builder, depth + 1)
    if roll < 0.55:
        return _iri(rng)
    return _literal(rng)


def _blank_tree(rng: random.Random, builder: GraphBuilder, depth: int) -> BlankNode:
    node = builder.fresh_blank()
    for _ in range(rng.randrange(0, 3)):
        builder.add(node, _iri(rng), _object(rng, builder, depth))
    return node


def generate_graph(seed: int, max_triples: int = 50) -> Graph:
    rng = random.Random(seed)
    builder = GraphBuilder({"ex": EX, "xsd": XSD})
    n = rng.randrange(0, max_triples + 1)
    subjects: list[Subject] = []
    while len(builder) < n:
        if subjects and rng.random() < 0.6:
            subject = rng.choice(subjects)
        elif rng.random() < 0.12:
            subject = _blank_tree(rng, builder, 1)  # anonymous subject block
        else:
            subject = _iri(rng)
        subjects.append(subject)
        builder.add(subject, _iri(rng), _object(rng, builder, 0))
    if n >= 4 and rng.random() < 0.4:
        # a labeled blank node referenced from two places
        shared = BlankNode(f"shared{rng.randrange(5)}")
        builder.add(shared, _iri(rng), _literal(rng))
        builder.add(_iri(rng), _iri(rng), shared)
        builder.add(_iri(rng), _iri(rng), shared)
    return builder.build()
