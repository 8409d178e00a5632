import pytest
import requests

from nanokit import namespaces as ns
from nanokit.api import ApiError, ApiServer, ApiService, NotFoundError
from nanokit.index import IndexMetadata, build_index
from nanokit.rdf import QuadPattern, iri, parse_trig
from nanokit.store import NanopubStore
from nanokit.trusty import verify

from oracles import as_pairs, scan_pattern, scan_uri


@pytest.fixture(scope="module")
def service(store200):
    return ApiService(store200)


@pytest.fixture(scope="module")
def nanopub_pairs(corpus200):
    return as_pairs(corpus200)


def test_wildcard_over_empty_store_is_empty():
    service = ApiService(NanopubStore())
    assert service.find_latest_nanopubs_with_pattern() == []
    assert service.get_all_indexes() == []


def test_pattern_methods_agree_with_each_other_and_oracle(service, nanopub_pairs):
    pred = iri(ns.DCT_LICENSE)
    latest = service.find_latest_nanopubs_with_pattern(pred=pred)
    loose = service.find_nanopubs_with_pattern(pred=pred)
    expected = scan_pattern(nanopub_pairs, predicate=pred)
    assert set(latest) == set(loose) == expected


def test_uri_methods_agree_with_oracle(service, nanopub_pairs, corpus200):
    target = corpus200[17].uri
    latest = service.find_latest_nanopubs_with_uri(target)
    loose = service.find_nanopubs_with_uri(target)
    expected = scan_uri(nanopub_pairs, target)
    assert set(latest) == set(loose) == expected
    assert service.find_latest_nanopubs_with_uri("http://unknown.example/x") == []


def test_pagination_arithmetic(service):
    everything = service.find_latest_nanopubs_with_pattern(page_size=10000)
    assert len(everything) == 200
    pages = [
        service.find_latest_nanopubs_with_pattern(page=p, page_size=90)
        for p in (1, 2, 3)
    ]
    assert [len(p) for p in pages] == [90, 90, 20]
    assert pages[0] + pages[1] + pages[2] == everything
    # out-of-range page: empty, not an error
    assert service.find_latest_nanopubs_with_pattern(page=4, page_size=90) == []


def test_page_parameter_validation(service):
    with pytest.raises(ApiError):
        service.find_latest_nanopubs_with_pattern(page=0)
    with pytest.raises(ApiError):
        service.find_latest_nanopubs_with_pattern(page_size=10001)


@pytest.fixture(scope="module")
def indexed_store(corpus200):
    store = NanopubStore()
    for np in corpus200[:50]:
        store.put(np)
    codes = store.codes()
    uris = ["http://example.org/np/" + c for c in codes]
    chain = build_index(
        uris[:30],
        metadata=IndexMetadata(title="First 30", created="2017-01-01T00:00:00Z"),
        capacity=12,
    )
    solo = build_index(
        uris[30:35],
        metadata=IndexMetadata(title="Five more", created="2017-02-01T00:00:00Z"),
    )
    subbed = build_index(
        [],
        sub_indexes=[chain[-1].uri, solo[-1].uri],
        metadata=IndexMetadata(title="Union", created="2017-03-01T00:00:00Z"),
    )
    for records in (chain, solo, subbed):
        for record in records:
            store.put(record.nanopub)
    return store, chain, solo, subbed, uris


def test_get_all_indexes_excludes_incomplete(indexed_store):
    store, chain, solo, subbed, _ = indexed_store
    rows = ApiService(store).get_all_indexes()
    assert [r.title for r in rows] == ["First 30", "Five more", "Union"]
    assert [r.sub_count for r in rows] == [0, 0, 2]
    assert [r.size for r in rows] == [30, 5, 35]
    assert [r.number for r in rows] == [1, 2, 3]


def test_get_index_elements_follows_chain_not_subs(indexed_store):
    store, chain, solo, subbed, uris = indexed_store
    service = ApiService(store)
    # the chained index: direct elements across the whole appends chain
    got = service.get_index_elements(chain[-1].uri, page_size=10000)
    assert sorted(got) == sorted(uris[:30])
    # the sub-index-only head: no direct elements at all
    assert service.get_index_elements(subbed[-1].uri) == []


def test_get_index_elements_paginates(indexed_store):
    store, chain, _, _, uris = indexed_store
    service = ApiService(store)
    pages = [service.get_index_elements(chain[-1].uri, page=p, page_size=12) for p in (1, 2, 3, 4)]
    assert [len(p) for p in pages] == [12, 12, 6, 0]
    flat = [uri for page in pages for uri in page]
    assert sorted(flat) == sorted(uris[:30])


def test_get_index_elements_unknown_index(indexed_store):
    store = indexed_store[0]
    with pytest.raises(NotFoundError):
        ApiService(store).get_index_elements("http://example.org/idx/" + "RA" + "Z" * 43)


def test_get_nanopub_reverifies(service, corpus200):
    np = corpus200[3]
    text = service.get_nanopub(np.uri)
    doc = parse_trig(text)
    assert verify(doc, np.uri)


def test_get_nanopub_not_found(service):
    with pytest.raises(NotFoundError):
        service.get_nanopub("http://example.org/np/" + "RA" + "Y" * 43)
    with pytest.raises(ApiError):
        service.get_nanopub("http://example.org/np/no-code-here")


def test_get_nanopub_equals_persisted_file(tmp_path, corpus200):
    store = NanopubStore(tmp_path / "s")
    np = corpus200[0]
    store.put(np)
    service = ApiService(store)
    persisted = (tmp_path / "s" / f"{np.uri[-45:]}.trig").read_text(encoding="utf-8")
    assert service.get_nanopub(np.uri) == persisted


# -- HTTP transport -----------------------------------------------------------


@pytest.fixture(scope="module")
def http_base(store200):
    server = ApiServer(ApiService(store200))
    server.serve_in_background()
    yield f"http://{server.address}"
    server.shutdown()
    server.server_close()


def test_http_pattern_route(http_base, store200):
    url = f"{http_base}/api/find_latest_nanopubs_with_pattern"
    got = requests.get(url, params={"pred": ns.DCT_LICENSE, "page_size": 10000})
    assert got.status_code == 200
    codes = got.text.splitlines()
    expected = store200.find_by_pattern(QuadPattern(predicate=iri(ns.DCT_LICENSE)))
    assert codes == expected


def test_http_literal_object_flag(http_base, store200, corpus200):
    lit = next(
        q.object
        for np in corpus200
        for q in np.to_document().quads
        if q.object.is_literal and q.object.datatype is None and q.object.language is None
    )
    url = f"{http_base}/api/find_nanopubs_with_pattern"
    got = requests.get(url, params={"obj": lit.value, "objtype": "literal"})
    expected = store200.find_by_pattern(QuadPattern(object=lit), latest=False)
    assert got.text.splitlines() == expected


def test_http_get_nanopub_returns_trig(http_base, corpus200):
    got = requests.get(f"{http_base}/api/get_nanopub", params={"uri": corpus200[5].uri})
    assert got.status_code == 200
    doc = parse_trig(got.text)
    assert verify(doc, corpus200[5].uri)


def test_http_error_body_shape(http_base):
    got = requests.get(f"{http_base}/api/get_nanopub", params={"uri": "http://x.example/none" })
    assert got.status_code == 400
    assert got.text.startswith("ERROR ")
    got = requests.get(f"{http_base}/api/no_such_method")
    assert got.status_code == 404
    assert got.text.startswith("ERROR ")
    got = requests.get(f"{http_base}/api/find_latest_nanopubs_with_uri")
    assert got.status_code == 400
    assert "uri is required" in got.text
