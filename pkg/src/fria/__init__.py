"""Machine-readable Fundamental Rights Impact Assessments (AI Act Art 27).

The package stores FRIA records as RDF graphs, drives the assessment
lifecycle (necessity, inputs, outcome, notification) as a validated
workflow, answers the standard competency questions, and exposes the
questionnaire-plus-automated-tool flow through a CLI and an HTTP service.
"""

from .graph import BlankNode, Graph, GraphBuilder, Iri, Literal, Triple
from .model import FriaMetadata, FriaRecord, ProcedureInputs, from_graph, to_graph, touch
from .ntriples import parse_ntriples, serialize_ntriples
from .questionnaire import builtin_questionnaire, compile_session
from .store import RecordStore
from .turtle import parse_turtle, serialize_turtle
from .validation import CqId, answer_cq, builtin_shapes, validate
from .vocabulary import catalog, export_ontology, import_ontology
from .workflow import apply, deployment_permitted, derive_outcome

__version__ = "0.1.0"

__all__ = [
    "BlankNode", "Graph", "GraphBuilder", "Iri", "Literal", "Triple",
    "FriaMetadata", "FriaRecord", "ProcedureInputs", "from_graph", "to_graph", "touch",
    "parse_ntriples", "serialize_ntriples", "parse_turtle", "serialize_turtle",
    "builtin_questionnaire", "compile_session", "RecordStore",
    "CqId", "answer_cq", "builtin_shapes", "validate",
    "catalog", "export_ontology", "import_ontology",
    "apply", "deployment_permitted", "derive_outcome",
    "__version__",
]
