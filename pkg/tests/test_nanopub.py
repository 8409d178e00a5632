import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nanokit import namespaces as ns
from nanokit.nanopub import (
    NanopubValidationError,
    RULE_IDS,
    assemble,
    part_sizes,
    validate,
)
from nanokit.rdf import Quad, QuadDocument, iri
from nanokit.store import candidate_uris


def test_birddiet_assembles(birddiet_doc, birddiet_uri):
    np = assemble(birddiet_doc, birddiet_uri)
    assert np.uri == birddiet_uri
    assert part_sizes(np) == (4, 3, 2, 3)
    assert sum(part_sizes(np)) == 12


def test_validate_valid_fixture_has_no_violations(birddiet_doc, birddiet_uri):
    report = validate(birddiet_doc, birddiet_uri)
    assert report.valid
    assert report.violations == ()


def test_empty_document_missing_head_link():
    report = validate(QuadDocument(), "http://ex.org/np1")
    assert not report.valid
    assert "missing-head-link" in report.rule_ids()


def test_missing_provenance_link(birddiet_doc, birddiet_uri):
    doc = QuadDocument(
        [q for q in birddiet_doc.quads if q.predicate.value != ns.NP_HAS_PROVENANCE]
    )
    report = validate(doc, birddiet_uri)
    assert "missing-head-link" in report.rule_ids()
    with pytest.raises(NanopubValidationError):
        assemble(doc, birddiet_uri)


def test_deleted_assertion_is_empty_assertion(birddiet_doc, birddiet_uri):
    assertion_iri = birddiet_uri + "#assertion"
    doc = QuadDocument([q for q in birddiet_doc.quads if q.graph.value != assertion_iri])
    report = validate(doc, birddiet_uri)
    assert "empty-assertion" in report.rule_ids()


def test_provenance_detached(birddiet_doc, birddiet_uri):
    assertion_iri = birddiet_uri + "#assertion"
    provenance_iri = birddiet_uri + "#provenance"
    rewired = [
        Quad(iri("http://ex.org/other"), q.predicate, q.object, q.graph)
        if q.graph.value == provenance_iri and q.subject.value == assertion_iri
        else q
        for q in birddiet_doc.quads
    ]
    report = validate(QuadDocument(rewired), birddiet_uri)
    assert "provenance-detached" in report.rule_ids()


def test_validate_reports_all_rules_not_just_first(birddiet_doc, birddiet_uri):
    assertion_iri = birddiet_uri + "#assertion"
    provenance_iri = birddiet_uri + "#provenance"
    doc = QuadDocument(
        [
            q
            for q in birddiet_doc.quads
            if q.graph.value not in (assertion_iri, provenance_iri)
        ]
    )
    rules = validate(doc, birddiet_uri).rule_ids()
    assert {"empty-assertion", "provenance-detached"} <= rules


def test_fixture_set_classifies_correctly(valid_fixture_docs, invalid_fixture_docs):
    assert len(valid_fixture_docs) >= 20
    assert len(invalid_fixture_docs) >= 15
    for name, doc in valid_fixture_docs:
        uri = candidate_uris(doc)[0]
        assert validate(doc, uri).valid, name
    covered = set()
    for name, doc in invalid_fixture_docs:
        uri = candidate_uris(doc)[0]
        report = validate(doc, uri)
        assert not report.valid, name
        target = name.rsplit("-", 1)[0]
        assert target in report.rule_ids(), (name, report.violations)
        covered.add(target)
    assert covered == set(RULE_IDS)


def test_assemble_roundtrip_identity(valid_fixture_docs):
    for name, doc in valid_fixture_docs:
        uri = candidate_uris(doc)[0]
        np = assemble(doc, uri)
        again = assemble(np.to_document(), uri)
        assert again == np, name


def test_minimal_head_is_exactly_four(corpus200):
    # generator emits exactly the four mandatory head triples
    assert all(part_sizes(np)[0] == 4 for np in corpus200)


def test_part_sizes_sum_over_corpus(corpus200):
    np100 = corpus200[:100]
    total = sum(sum(part_sizes(np)) for np in np100)
    brute = sum(len(np.to_document()) for np in np100)
    assert total == brute


@settings(max_examples=40)
@given(st.data())
def test_deleting_mandatory_head_quads_never_validates(birddiet_doc, birddiet_uri, data):
    head_iri = birddiet_uri + "#head"
    head_quads = [q for q in birddiet_doc.quads if q.graph.value == head_iri]
    subset = data.draw(st.sets(st.sampled_from(head_quads), min_size=1))
    doc = QuadDocument([q for q in birddiet_doc.quads if q not in subset])
    assert not validate(doc, birddiet_uri).valid
    # deleting even more mandatory quads keeps it invalid
    more = data.draw(st.sets(st.sampled_from(head_quads)))
    doc2 = QuadDocument([q for q in doc.quads if q not in more])
    assert not validate(doc2, birddiet_uri).valid
