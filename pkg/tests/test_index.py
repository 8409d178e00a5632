import random

import pytest

from nanokit.corpusgen import synthetic_trusty_uris
from nanokit.index import (
    IndexCycleError,
    IndexError_,
    IndexMetadata,
    IndexRecord,
    UnresolvableIndexError,
    build_incremental,
    build_index,
    expand,
    list_indexes,
)
from nanokit.nanopub import validate
from nanokit.store import NanopubStore
from nanokit.trusty import verify

from oracles import transitive_union

META = IndexMetadata(title="Test index", created="2018-01-01T00:00:00Z")


def make_resolver(*record_lists):
    by_uri = {}
    for records in record_lists:
        for record in records:
            by_uri[record.uri] = record
    return lambda uri: by_uri[uri]


def test_build_small_index_is_single_complete_record():
    elements = synthetic_trusty_uris(3)
    records = build_index(elements, metadata=META)
    assert len(records) == 1
    (head,) = records
    assert not head.is_incomplete
    assert head.appends is None
    assert set(head.elements) == set(elements)
    assert head.title == "Test index"


def test_build_2500_elements_capacity_1000_gives_chain_of_3():
    elements = synthetic_trusty_uris(2500)
    records = build_index(elements, metadata=META)
    assert len(records) == 3
    assert [len(r.elements) for r in records] == [1000, 1000, 500]
    assert [r.is_incomplete for r in records] == [True, True, False]
    assert records[1].appends == records[0].uri
    assert records[2].appends == records[1].uri
    assert records[2].title == "Test index"
    assert records[0].title is None


def test_every_emitted_record_is_valid_and_verifiable():
    records = build_index(synthetic_trusty_uris(2500), metadata=META)
    for record in records:
        doc = record.nanopub.to_document()
        assert validate(doc, record.uri).valid
        assert verify(doc, record.uri)


def test_union_of_two_subindexes():
    small = build_index(synthetic_trusty_uris(20, label="small"), metadata=META, capacity=8)
    large = build_index(synthetic_trusty_uris(48, label="large"), metadata=META, capacity=8)
    union = build_index(
        [],
        sub_indexes=[small[-1].uri, large[-1].uri],
        metadata=IndexMetadata(title="Union", created="2018-01-02T00:00:00Z"),
    )
    resolver = make_resolver(small, large, union)
    members = expand(union[-1], resolver)
    assert len(members) == 68
    all_elements = {e for r in small + large for e in r.elements}
    assert members == all_elements
    assert union[-1].sub_indexes == (small[-1].uri, large[-1].uri)


def test_expand_no_subs_no_appends_is_own_elements():
    records = build_index(synthetic_trusty_uris(5), metadata=META)
    assert expand(records[0], make_resolver(records)) == set(records[0].elements)


def test_expand_random_dag_equals_bruteforce():
    rng = random.Random(4)
    pool = synthetic_trusty_uris(500)
    chains = []
    for i in range(10):
        elements = rng.sample(pool, rng.randint(0, 60))
        subs = [chains[j][-1].uri for j in range(len(chains)) if rng.random() < 0.3]
        chains.append(
            build_index(
                elements,
                sub_indexes=subs,
                metadata=IndexMetadata(title=f"idx-{i}", created="2018-01-01T00:00:00Z"),
                capacity=25,
            )
        )
    resolver = make_resolver(*chains)

    elements_of, subs_of, appends_of = {}, {}, {}
    for chain in chains:
        for record in chain:
            elements_of[record.uri] = set(record.elements)
            subs_of[record.uri] = list(record.sub_indexes)
            appends_of[record.uri] = record.appends

    for chain in chains:
        head = chain[-1]
        assert expand(head, resolver) == transitive_union(
            head.uri, elements_of, subs_of, appends_of
        )


def test_expand_unresolvable_reference_raises():
    records = build_index(
        synthetic_trusty_uris(3),
        sub_indexes=["http://example.org/idx/" + "RA" + "B" * 43],
        metadata=META,
    )
    with pytest.raises(UnresolvableIndexError):
        expand(records[-1], make_resolver(records))


def test_expand_cycle_detected():
    a = build_index(synthetic_trusty_uris(2), metadata=META)
    b = build_index(
        synthetic_trusty_uris(2, label="other"), sub_indexes=[a[-1].uri], metadata=META
    )
    # forge a cyclic resolver: a resolves to b's head under a's URI
    cyclic = {
        a[-1].uri: IndexRecord(
            uri=a[-1].uri,
            nanopub=a[-1].nanopub,
            elements=a[-1].elements,
            sub_indexes=(b[-1].uri,),
            appends=None,
            is_incomplete=False,
        ),
        b[-1].uri: b[-1],
    }
    with pytest.raises(IndexCycleError):
        expand(b[-1], lambda uri: cyclic[uri])


def test_build_rejects_duplicates_and_bad_capacity():
    elements = synthetic_trusty_uris(2)
    with pytest.raises(IndexError_, match="duplicate"):
        build_index(elements + [elements[0]], metadata=META)
    with pytest.raises(IndexError_, match="capacity"):
        build_index(elements, metadata=META, capacity=0)
    with pytest.raises(IndexError_, match="trusty"):
        build_index(["http://example.org/not-a-code"], metadata=META)
    with pytest.raises(IndexError_, match="metadata"):
        build_index(elements, metadata=IndexMetadata())


def test_incremental_noop_version_has_same_expansion():
    elements = synthetic_trusty_uris(40)
    v1 = build_index(elements, metadata=META, capacity=25)
    resolver = make_resolver(v1)
    v2 = build_incremental(
        v1[-1],
        added=[],
        removed=set(),
        metadata=IndexMetadata(title="v2", created="2018-02-01T00:00:00Z"),
        resolver=resolver,
        capacity=25,
    )
    resolver2 = make_resolver(v1, v2)
    assert expand(v2[-1], resolver2) == expand(v1[-1], resolver)
    assert v2[-1].uri != v1[-1].uri


def test_incremental_growth_reuses_full_links():
    v1 = build_index(synthetic_trusty_uris(1000), metadata=META)
    assert len(v1) == 1
    resolver = make_resolver(v1)
    added = synthetic_trusty_uris(155, label="added")
    v2 = build_incremental(
        v1[-1],
        added=added,
        removed=set(),
        metadata=IndexMetadata(title="v2", created="2018-02-01T00:00:00Z"),
        resolver=resolver,
    )
    # <= 2 newly minted element-bearing records
    assert len([r for r in v2 if r.elements]) <= 2
    members = expand(v2[-1], make_resolver(v1, v2))
    assert len(members) == 1155
    assert members == set(v1[-1].elements) | set(added)


def test_incremental_disgenet_shaped_growth_at_scale_1000th():
    v2_elements = synthetic_trusty_uris(940, label="gda")
    v2 = build_index(
        v2_elements, metadata=IndexMetadata(title="GDA v2", created="2015-03-04T00:00:00Z")
    )
    resolver = make_resolver(v2)
    added = synthetic_trusty_uris(79, label="gda-new")
    v3 = build_incremental(
        v2[-1],
        added=added,
        removed=set(),
        metadata=IndexMetadata(title="GDA v3", created="2015-11-15T00:00:00Z"),
        resolver=resolver,
    )
    full = make_resolver(v2, v3)
    assert len(expand(v2[-1], full)) == 940
    assert len(expand(v3[-1], full)) == 1019
    # set-algebra oracle
    assert expand(v3[-1], full) == expand(v2[-1], full) | set(added)


def test_incremental_removal_reemits_suffix():
    elements = synthetic_trusty_uris(60)
    v1 = build_index(elements, metadata=META, capacity=20)
    resolver = make_resolver(v1)
    removed = {elements[25], elements[59]}  # second link and head link
    added = synthetic_trusty_uris(5, label="fresh")
    v2 = build_incremental(
        v1[-1],
        added=added,
        removed=removed,
        metadata=IndexMetadata(title="v2", created="2018-02-01T00:00:00Z"),
        resolver=resolver,
        capacity=20,
    )
    # first link untouched by removal stays reused
    assert v2[0].appends == v1[0].uri
    members = expand(v2[-1], make_resolver(v1, v2))
    assert members == (set(elements) - removed) | set(added)


def test_incremental_rejects_unknown_removal():
    v1 = build_index(synthetic_trusty_uris(10), metadata=META)
    stranger = synthetic_trusty_uris(1, label="stranger")[0]
    with pytest.raises(IndexError_, match="not in previous"):
        build_incremental(
            v1[-1],
            added=[],
            removed={stranger},
            metadata=META,
            resolver=make_resolver(v1),
        )


def test_chain_law_pure_append_versions_grow():
    v1 = build_index(synthetic_trusty_uris(30), metadata=META, capacity=10)
    resolver = make_resolver(v1)
    v2 = build_incremental(
        v1[-1],
        added=synthetic_trusty_uris(7, label="v2"),
        removed=set(),
        metadata=IndexMetadata(title="v2", created="2018-03-01T00:00:00Z"),
        resolver=resolver,
        capacity=10,
    )
    full = make_resolver(v1, v2)
    assert expand(v1[-1], full) <= expand(v2[-1], full)


def test_list_indexes_empty_store():
    assert list_indexes(NanopubStore()) == []


def test_list_indexes_excludes_incomplete_chain_links():
    store = NanopubStore()
    records = build_index(synthetic_trusty_uris(25), metadata=META, capacity=10)
    assert len(records) == 3
    for record in records:
        store.put(record.nanopub)
    summaries = list_indexes(store)
    assert len(summaries) == 1
    assert summaries[0].uri == records[-1].uri
    assert summaries[0].size == 25
    assert summaries[0].title == "Test index"


def test_list_indexes_date_order_and_sizes():
    store = NanopubStore()
    rows = [
        ("OpenBEL small 1.0", "2015-03-02T00:00:00Z", 20),
        ("OpenBEL large 1.0", "2015-03-02T01:00:00Z", 48),
        ("OpenBEL small 20131211", "2015-03-02T02:00:00Z", 12),
        ("OpenBEL large 20131211", "2015-03-02T03:00:00Z", 72),
        ("AIDA", "2015-03-04T00:00:00Z", 15),
        ("GDA v2", "2015-03-04T01:00:00Z", 94),
        ("Protein data", "2015-03-09T00:00:00Z", 40),
        ("LIDDI v1.01", "2015-07-17T00:00:00Z", 9),
    ]
    for i, (title, created, count) in enumerate(rows):
        records = build_index(
            synthetic_trusty_uris(count, label=f"row{i}"),
            metadata=IndexMetadata(title=title, created=created),
        )
        for record in records:
            store.put(record.nanopub)
    summaries = list_indexes(store)
    assert [s.title for s in summaries] == [title for title, _, _ in rows]
    assert [s.size for s in summaries] == [count for _, _, count in rows]
    assert [s.number for s in summaries] == list(range(1, 9))
    assert all(s.sub_count == 0 for s in summaries)
