import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nanokit.rdf import (
    Quad,
    QuadDocument,
    QuadPattern,
    Term,
    TrigSyntaxError,
    iri,
    literal,
    match,
    parse_trig,
    serialize_trig,
)
from nanokit import namespaces as ns

from strategies import documents, quads


def test_parse_single_quad():
    doc = parse_trig("@prefix ex: <http://ex.org/> . ex:g { ex:s ex:p ex:o . }")
    assert doc.quads == (
        Quad(iri("http://ex.org/s"), iri("http://ex.org/p"), iri("http://ex.org/o"), iri("http://ex.org/g")),
    )


def test_parse_empty_string():
    doc = parse_trig("")
    assert len(doc) == 0


def test_parse_birddiet_fixture(birddiet_doc):
    # hand-count: 4 head + 3 assertion + 2 provenance + 3 pubinfo
    assert len(birddiet_doc) == 12
    assert len(birddiet_doc.graph_names()) == 4


def test_parse_literals_and_keywords():
    text = """
    @prefix ex: <http://ex.org/> .
    ex:g {
      ex:s a ex:Thing ;
           ex:name "Ada"@en ;
           ex:count 42 ;
           ex:score 1.5 ;
           ex:flag true ;
           ex:note "multi\\nline"^^ex:dt .
    }
    """
    doc = parse_trig(text)
    objects = {q.predicate.value: q.object for q in doc.quads}
    assert objects["http://www.w3.org/1999/02/22-rdf-syntax-ns#type"] == iri("http://ex.org/Thing")
    assert objects["http://ex.org/name"] == literal("Ada", language="en")
    assert objects["http://ex.org/count"] == literal("42", datatype=ns.XSD_INTEGER)
    assert objects["http://ex.org/score"] == literal("1.5", datatype=ns.XSD_DECIMAL)
    assert objects["http://ex.org/flag"] == literal("true", datatype=ns.XSD_BOOLEAN)
    assert objects["http://ex.org/note"] == literal("multi\nline", datatype="http://ex.org/dt")


def test_syntax_error_carries_line_and_column():
    with pytest.raises(TrigSyntaxError) as err:
        parse_trig("<http://ex.org/g> {\n  <http://ex.org/s> <http://ex.org/p> }\n")
    assert err.value.line == 2


def test_blank_node_rejected():
    with pytest.raises(TrigSyntaxError):
        parse_trig("<http://ex.org/g> { _:b <http://ex.org/p> <http://ex.org/o> . }")
    with pytest.raises(TrigSyntaxError):
        parse_trig("<http://ex.org/g> { [] <http://ex.org/p> <http://ex.org/o> . }")


def test_relative_iri_rejected():
    with pytest.raises(TrigSyntaxError, match="relative IRI"):
        parse_trig("<http://ex.org/g> { <s> <http://ex.org/p> <http://ex.org/o> . }")


def test_quad_outside_graph_block_rejected():
    with pytest.raises(TrigSyntaxError, match="outside a graph block"):
        parse_trig("<http://ex.org/s> <http://ex.org/p> <http://ex.org/o> .")


def test_undeclared_prefix_rejected():
    with pytest.raises(TrigSyntaxError, match="undeclared prefix"):
        parse_trig("ex:g { ex:s ex:p ex:o . }")


def test_term_invariants():
    with pytest.raises(ValueError):
        iri("no-scheme-here")
    with pytest.raises(ValueError):
        Term("literal", "x", datatype="http://ex.org/dt", language="en")
    with pytest.raises(ValueError):
        Quad(literal("s"), iri("http://e.x/p"), iri("http://e.x/o"), iri("http://e.x/g"))


def test_document_equality_is_quadset_based():
    q1 = Quad(iri("http://e.x/s"), iri("http://e.x/p"), iri("http://e.x/o"), iri("http://e.x/g"))
    q2 = Quad(iri("http://e.x/s2"), iri("http://e.x/p"), iri("http://e.x/o"), iri("http://e.x/g"))
    assert QuadDocument([q1, q2]) == QuadDocument([q2, q1], prefixes={"ex": "http://e.x/"})
    assert QuadDocument([q1]) != QuadDocument([q2])
    # duplicates collapse
    assert len(QuadDocument([q1, q1])) == 1


def test_serialize_empty_document():
    assert serialize_trig(QuadDocument()) == ""


def test_serialize_one_quad_roundtrip():
    doc = QuadDocument(
        [Quad(iri("http://e.x/s"), iri("http://e.x/p"), literal("\t\"tricky\"\n"), iri("http://e.x/g"))]
    )
    assert parse_trig(serialize_trig(doc)) == doc


@settings(max_examples=150)
@given(documents)
def test_roundtrip_property(doc):
    assert parse_trig(serialize_trig(doc)).quad_set() == doc.quad_set()


def test_roundtrip_large_seeded_document():
    rng_quads = []
    import random

    rng = random.Random(99)
    names = [f"http://alpha.example/{i}" for i in range(40)]
    for _ in range(1000):
        rng_quads.append(
            Quad(
                iri(rng.choice(names)),
                iri(rng.choice(names)),
                literal(str(rng.random())) if rng.random() < 0.3 else iri(rng.choice(names)),
                iri(rng.choice(names[:5])),
            )
        )
    doc = QuadDocument(rng_quads)
    assert parse_trig(serialize_trig(doc)).quad_set() == doc.quad_set()


def test_match_all_wildcards_returns_everything(birddiet_doc):
    assert len(match(birddiet_doc, QuadPattern())) == len(birddiet_doc)


def test_match_absent_predicate_is_empty():
    doc = parse_trig("@prefix ex: <http://ex.org/> . ex:g { ex:s ex:p ex:o . }")
    assert match(doc, QuadPattern(predicate=iri(ns.RDF_TYPE))) == []


def test_match_planted_license_quads():
    from conftest import FIXTURES

    doc = parse_trig((FIXTURES / "licensed.trig").read_text(encoding="utf-8"))
    # oracle: brute-force scan
    expected = [q for q in doc.quads if q.predicate.value == ns.DCT_LICENSE]
    assert len(expected) == 2
    got = match(doc, QuadPattern(predicate=iri(ns.DCT_LICENSE)))
    assert got == expected


def test_match_literal_comparison_includes_datatype_and_language():
    doc = QuadDocument(
        [
            Quad(iri("http://e.x/s"), iri("http://e.x/p"), literal("1"), iri("http://e.x/g")),
            Quad(iri("http://e.x/s"), iri("http://e.x/p"), literal("1", datatype=ns.XSD_INTEGER), iri("http://e.x/g")),
            Quad(iri("http://e.x/s"), iri("http://e.x/p"), literal("1", language="en"), iri("http://e.x/g")),
        ]
    )
    assert len(match(doc, QuadPattern(object=literal("1")))) == 1
    assert len(match(doc, QuadPattern(object=literal("1", datatype=ns.XSD_INTEGER)))) == 1


@settings(max_examples=100)
@given(documents, quads)
def test_match_constraint_monotonicity(doc, q):
    everything = match(doc, QuadPattern())
    assert len(everything) == len(doc)
    constrained = match(doc, QuadPattern(subject=q.subject))
    assert len(constrained) <= len(everything)
    more = match(doc, QuadPattern(subject=q.subject, predicate=q.predicate))
    assert len(more) <= len(constrained)


@settings(max_examples=60)
@given(documents, st.sampled_from(["b0", "x1", "label"]))
def test_blank_node_token_always_rejected(doc, label):
    text = serialize_trig(doc)
    # plant a blank-node statement into an existing or fresh graph block
    planted = text + f'\n<http://alpha.example/g> {{ _:{label} <http://alpha.example/p> "v" . }}\n'
    with pytest.raises(TrigSyntaxError):
        parse_trig(planted)
