"""Hypothesis strategies over a fixed IRI alphabet."""

from hypothesis import strategies as st

from nanokit.rdf import Quad, QuadDocument, iri, literal

_IRIS = [f"http://alpha.example/{name}" for name in "abcdefghij"] + [
    f"http://beta.example/ns#{name}" for name in "xyz"
]

iris = st.sampled_from(_IRIS).map(iri)

_texts = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",)),
    max_size=20,
)

literals = st.one_of(
    _texts.map(literal),
    st.tuples(_texts, st.sampled_from(_IRIS)).map(lambda t: literal(t[0], datatype=t[1])),
    st.tuples(_texts, st.sampled_from(["en", "en-US", "de"])).map(
        lambda t: literal(t[0], language=t[1])
    ),
)

terms = st.one_of(iris, literals)

quads = st.builds(Quad, subject=iris, predicate=iris, object=terms, graph=iris)

documents = st.lists(quads, max_size=30).map(QuadDocument)
