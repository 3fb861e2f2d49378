"""Namespace IRIs and the prefix bindings used throughout the engine."""

from __future__ import annotations

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"
SKOS = "http://www.w3.org/2004/02/skos/core#"

FRIA = "https://example.com/FRIA#"
DCT = "http://purl.org/dc/terms/"
DPV = "https://w3id.org/dpv#"
TECH = "https://w3id.org/dpv/tech#"
RISK = "https://w3id.org/dpv/risk#"
AI = "https://w3id.org/dpv/ai#"
EU_AIACT = "https://w3id.org/dpv/legal/eu/aiact#"

RDF_TYPE = RDF + "type"
XSD_STRING = XSD + "string"
XSD_INTEGER = XSD + "integer"
XSD_BOOLEAN = XSD + "boolean"
XSD_DATE = XSD + "date"
XSD_DATETIME = XSD + "dateTime"
RDF_LANGSTRING = RDF + "langString"

# The seven bindings every FRIA vocabulary ships with.
VOCAB_PREFIXES: dict[str, str] = {
    "fria": FRIA,
    "dct": DCT,
    "dpv": DPV,
    "tech": TECH,
    "risk": RISK,
    "ai": AI,
    "eu-aiact": EU_AIACT,
}

# Extra bindings used when serialising record and ontology graphs.
SERIALIZATION_PREFIXES: dict[str, str] = {
    **VOCAB_PREFIXES,
    "rdf": RDF,
    "rdfs": RDFS,
    "skos": SKOS,
    "xsd": XSD,
}
