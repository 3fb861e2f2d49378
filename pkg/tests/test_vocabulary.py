import json
import random
from pathlib import Path

import pytest

from fria.errors import UnknownTermError
from fria.graph import Graph, GraphBuilder, Iri
from fria.namespaces import DPV, EU_AIACT, FRIA, RDF_TYPE, RISK
from fria.turtle import serialize_turtle
from fria.vocabulary import (
    TermKind,
    Vocabulary,
    catalog,
    export_ontology,
    import_ontology,
    new_concept_terms,
)

FIXTURES = Path(__file__).parent / "fixtures"


def closure_oracle(vocabulary, start: str) -> set[str]:
    # naive fixed-point iteration of one-step parent expansion
    closure = {start}
    while True:
        expanded = set(closure)
        for iri in closure:
            if iri in vocabulary.terms:
                expanded |= set(vocabulary.terms[iri].parents)
        if expanded == closure:
            return closure
        closure = expanded


class TestCatalogContent:
    def test_risks_mitigated_is_instance(self):
        term = catalog().term(FRIA + "FRIAOutcomeRisksMitigated")
        assert term.kind is TermKind.INSTANCE

    def test_four_notification_status_instances(self):
        instances = catalog().instances_of(FRIA + "FRIANotificationStatus")
        assert len(instances) == 4

    def test_parents_resolve_in_catalog(self):
        v = catalog()
        for term in v.terms.values():
            for parent in term.parents:
                assert parent in v.terms, f"{term.iri} has unknown parent {parent}"

    def test_new_terms_match_manifest(self):
        manifest = json.loads((FIXTURES / "new_terms_manifest.json").read_text())
        expected = {
            manifest["namespace"] + entry["local"]: (entry["kind"], frozenset(entry["parents"]))
            for entry in manifest["terms"]
        }
        actual = {
            t.iri: (t.kind.value, t.parents) for t in new_concept_terms(catalog())
        }
        assert actual == expected
        assert len(actual) == 23

    def test_namespaces_are_the_seven_bindings(self):
        assert set(catalog().namespaces) == {
            "fria", "dct", "dpv", "tech", "risk", "ai", "eu-aiact"
        }

    def test_fria_terms_cite_article_27(self):
        for term in catalog().terms.values():
            if term.iri.startswith(FRIA):
                assert "Art 27" in term.source or "Art 46" in term.source

    def test_duration_and_frequency_enumerations(self):
        v = catalog()
        assert len(v.instances_of(DPV + "Duration")) == 5
        assert len(v.instances_of(DPV + "Frequency")) == 4

    def test_parent_graph_is_a_dag(self):
        assert catalog().find_cycle() is None

    def test_seventeen_metadata_properties(self):
        dct_terms = [t for t in catalog().terms if t.startswith("http://purl.org/dc/terms/")]
        assert len(dct_terms) == 17


class TestClosure:
    def test_procedure_reaches_aiact_fria(self):
        closure = catalog().superclass_closure(FRIA + "FRIAProcedure")
        assert {FRIA + "FRIAProcedure", EU_AIACT + "FRIA"} <= closure

    def test_root_term_closure_is_itself(self):
        assert catalog().superclass_closure(DPV + "Status") == {DPV + "Status"}

    def test_unknown_term_raises(self):
        with pytest.raises(UnknownTermError):
            catalog().superclass_closure(FRIA + "NoSuchTerm")

    def test_closure_matches_fixed_point_oracle(self):
        v = catalog()
        for iri in sorted(v.terms):
            assert v.superclass_closure(iri) == closure_oracle(v, iri)

    def test_closure_monotone_along_parent_chains(self):
        v = catalog()
        rng = random.Random(4)
        terms = sorted(v.terms)
        for iri in rng.sample(terms, 30):
            for parent in v.terms[iri].parents:
                assert v.superclass_closure(parent) <= v.superclass_closure(iri)


class TestInstanceChecks:
    def test_catalog_instance_positive(self):
        v = catalog()
        assert v.is_instance_of(Graph(), Iri(FRIA + "FRIARequired"), FRIA + "FRIANecessityStatus")

    def test_catalog_instance_disjoint_branch(self):
        v = catalog()
        assert not v.is_instance_of(Graph(), Iri(FRIA + "FRIARequired"), FRIA + "FRIAOutcomeStatus")

    def test_graph_typed_node_via_closure(self):
        builder = GraphBuilder()
        node = Iri("http://ex.org/p1")
        builder.add(node, Iri(RDF_TYPE), Iri(FRIA + "FRIAProcedure"))
        v = catalog()
        assert v.is_instance_of(builder.build(), node, EU_AIACT + "FRIA")

    def test_status_instances_also_reach_dpv_status(self):
        v = catalog()
        assert v.is_instance_of(Graph(), Iri(FRIA + "FRIANotificationSent"), DPV + "Status")

    def test_unknown_class_raises(self):
        with pytest.raises(UnknownTermError):
            catalog().is_instance_of(Graph(), Iri(FRIA + "FRIARequired"), FRIA + "Nope")


class TestOntologyExport:
    def test_export_contains_notice_subclass(self):
        from fria.vocabulary import RDFS_SUBCLASS_OF

        g = export_ontology(catalog())
        assert g.match(Iri(FRIA + "FRIANotice"), Iri(RDFS_SUBCLASS_OF), Iri(DPV + "Notice"))

    def test_export_of_empty_vocabulary_is_empty(self):
        assert len(export_ontology(Vocabulary({}, {}))) == 0

    def test_reimport_preserves_term_count(self):
        v = catalog()
        assert len(import_ontology(export_ontology(v)).terms) == len(v.terms)

    def test_reimport_preserves_definitions(self):
        v = catalog()
        back = import_ontology(export_ontology(v))
        assert back.terms[FRIA + "FRIATool"].kind is TermKind.CLASS
        assert back.terms[FRIA + "FRIATool"].parents == frozenset({DPV + "Technology"})
        assert back.terms[RISK + "Harm"].definition == v.terms[RISK + "Harm"].definition

    def test_export_deterministic(self):
        catalog.cache_clear()
        first = serialize_turtle(export_ontology(catalog()))
        catalog.cache_clear()
        second = serialize_turtle(export_ontology(catalog()))
        assert first == second

    def test_rebased_export(self):
        g = export_ontology(catalog(), fria_base="https://w3id.org/dpv/fria#")
        assert g.match(Iri("https://w3id.org/dpv/fria#FRIAProcedure"), None, None)
        assert not g.match(Iri(FRIA + "FRIAProcedure"), None, None)

    def test_export_round_trip_byte_identical(self):
        v = catalog()
        once = serialize_turtle(export_ontology(v))
        from fria.turtle import parse_turtle

        again = serialize_turtle(parse_turtle(once))
        assert once == again
