"""Nanopublication indexes: build, expand, version, and list.

An index is itself a nanopublication whose assertion defines a set:
direct elements, sub-indexes (whose expansions are unioned in), and an
``appends`` pointer chaining capacity-limited records together.  The
vocabulary lives under the npx namespace: the record is typed
npx:NanopubIndex in its assertion; membership uses npx:includesElement,
npx:includesSubindex, and npx:appendsIndex; non-final chain links carry
an npx:IncompleteIndex marker in their pubinfo.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import timezone
from typing import Callable, Iterable, Optional

from . import namespaces as ns
from .build import mint_nanopub, placeholders
from .nanopub import Nanopublication
from .rdf import iri, literal
from .trusty import extract_artifact_code
from .util import content_tag, parse_timestamp

DEFAULT_CAPACITY = 1000

Resolver = Callable[[str], "IndexRecord"]


class IndexError_(ValueError):
    """Base for index failures (named to avoid the builtin)."""


class NotAnIndexError(IndexError_):
    pass


class UnresolvableIndexError(IndexError_):
    pass


class IndexCycleError(IndexError_):
    pass


@dataclass(frozen=True)
class IndexMetadata:
    title: Optional[str] = None
    created: Optional[str] = None
    creators: tuple[str, ...] = ()

    def is_empty(self) -> bool:
        return self.title is None and self.created is None and not self.creators


@dataclass(frozen=True)
class IndexRecord:
    """Parsed view of one index nanopublication."""

    uri: str
    nanopub: Nanopublication
    elements: tuple[str, ...]
    sub_indexes: tuple[str, ...]
    appends: Optional[str]
    is_incomplete: bool
    title: Optional[str] = None
    created: Optional[str] = None
    creators: tuple[str, ...] = ()

    @classmethod
    def from_nanopub(cls, np: Nanopublication) -> "IndexRecord":
        uri = np.uri
        typed = False
        elements: list[str] = []
        subs: list[str] = []
        appends: list[str] = []
        for q in np.assertion.quads:
            if q.subject.value != uri:
                continue
            pred = q.predicate.value
            if pred == ns.RDF_TYPE and q.object.is_iri and q.object.value == ns.NPX_NANOPUB_INDEX:
                typed = True
            elif pred == ns.NPX_INCLUDES_ELEMENT and q.object.is_iri:
                elements.append(q.object.value)
            elif pred == ns.NPX_INCLUDES_SUBINDEX and q.object.is_iri:
                subs.append(q.object.value)
            elif pred == ns.NPX_APPENDS_INDEX and q.object.is_iri:
                appends.append(q.object.value)
        if not typed:
            raise NotAnIndexError(f"<{uri}> is not typed npx:NanopubIndex")
        if len(appends) > 1:
            raise IndexError_(f"<{uri}> appends more than one index")
        if appends and appends[0] == uri:
            raise IndexCycleError(f"<{uri}> appends itself")

        incomplete = False
        title = created = None
        creators: list[str] = []
        for q in np.pubinfo.quads:
            if q.subject.value != uri:
                continue
            pred = q.predicate.value
            if pred == ns.RDF_TYPE and q.object.is_iri and q.object.value == ns.NPX_INCOMPLETE_INDEX:
                incomplete = True
            elif pred == ns.DCT_TITLE and q.object.is_literal:
                title = q.object.value
            elif pred == ns.DCT_CREATED and q.object.is_literal:
                created = q.object.value
            elif pred == ns.DCT_CREATOR:
                creators.append(q.object.value)

        return cls(
            uri=uri,
            nanopub=np,
            elements=tuple(dict.fromkeys(elements)),
            sub_indexes=tuple(dict.fromkeys(subs)),
            appends=appends[0] if appends else None,
            is_incomplete=incomplete,
            title=title,
            created=created,
            creators=tuple(creators),
        )


def is_index_nanopub(np: Nanopublication) -> bool:
    return any(
        q.subject.value == np.uri
        and q.predicate.value == ns.RDF_TYPE
        and q.object.is_iri
        and q.object.value == ns.NPX_NANOPUB_INDEX
        for q in np.assertion.quads
    )


@dataclass(frozen=True)
class IndexSummary:
    """One row of an index listing (the complete heads only)."""

    number: int
    uri: str
    title: Optional[str]
    date: Optional[str]
    sub_count: int
    size: int


def _check_element_uris(elements: Iterable[str]):
    seen = set()
    for e in elements:
        if e in seen:
            raise IndexError_(f"duplicate element <{e}>")
        seen.add(e)
        if extract_artifact_code(e) is None:
            raise IndexError_(f"element is not a trusty URI: <{e}>")


def _mint_chain_link(
    base: str,
    elements: list[str],
    sub_indexes: list[str],
    appends: Optional[str],
    metadata: IndexMetadata,
    incomplete: bool,
) -> IndexRecord:
    ph = placeholders(base)
    me = iri(ph.uri)
    assertion = [(me, iri(ns.RDF_TYPE), iri(ns.NPX_NANOPUB_INDEX))]
    assertion += [(me, iri(ns.NPX_INCLUDES_ELEMENT), iri(e)) for e in elements]
    assertion += [(me, iri(ns.NPX_INCLUDES_SUBINDEX), iri(s)) for s in sub_indexes]
    if appends is not None:
        assertion.append((me, iri(ns.NPX_APPENDS_INDEX), iri(appends)))

    provenance = [(iri(ph.assertion), iri(ns.RDF_TYPE), iri(ns.PROV_ENTITY))]

    pubinfo = []
    if incomplete:
        pubinfo.append((me, iri(ns.RDF_TYPE), iri(ns.NPX_INCOMPLETE_INDEX)))
    else:
        if metadata.title is not None:
            pubinfo.append((me, iri(ns.DCT_TITLE), literal(metadata.title)))
        for creator in metadata.creators:
            pubinfo.append((me, iri(ns.DCT_CREATOR), iri(creator)))
    if metadata.created is not None:
        pubinfo.append(
            (me, iri(ns.DCT_CREATED), literal(metadata.created, datatype=ns.XSD_DATETIME))
        )

    _, np = mint_nanopub(base, assertion, provenance, pubinfo)
    return IndexRecord.from_nanopub(np)


def build_index(
    elements: Iterable[str],
    sub_indexes: Iterable[str] = (),
    metadata: IndexMetadata = IndexMetadata(),
    capacity: int = DEFAULT_CAPACITY,
    base: str = "http://example.org/index/",
) -> list[IndexRecord]:
    """Emit a chain of index records covering the given membership.

    Every link carries at most ``capacity`` elements; non-final links
    are marked incomplete and referenced by their successor through
    ``appends``.  The final link (last in the returned list) carries the
    title and the sub-index references.  Each link is minted under its
    own derived base so self-reference blanking cannot touch the
    membership URIs.
    """
    elements = list(elements)
    sub_indexes = list(dict.fromkeys(sub_indexes))
    if capacity < 1:
        raise IndexError_(f"capacity must be >= 1, got {capacity}")
    _check_element_uris(elements)
    if metadata.is_empty():
        raise IndexError_("index metadata must carry a title, created date, or creator")

    tag = content_tag(
        "build",
        str(capacity),
        metadata.title or "",
        metadata.created or "",
        *metadata.creators,
        *elements,
        *sub_indexes,
    )
    chunks = [elements[i : i + capacity] for i in range(0, len(elements), capacity)] or [[]]
    records: list[IndexRecord] = []
    previous_uri: Optional[str] = None
    for slot, chunk in enumerate(chunks):
        final = slot == len(chunks) - 1
        records.append(
            _mint_chain_link(
                base=f"{base}{tag}/{slot}/",
                elements=chunk,
                sub_indexes=sub_indexes if final else [],
                appends=previous_uri,
                metadata=metadata,
                incomplete=not final,
            )
        )
        previous_uri = records[-1].uri
    return records


def expand(record: IndexRecord, resolver: Resolver) -> set[str]:
    """All nanopub URIs the index contains: own elements, elements along
    the appends chain, and the expansion of every sub-index, deduplicated.

    Raises on unresolvable references and on reference cycles (shared
    sub-structure is fine, it is a DAG).
    """
    elements: set[str] = set()
    gray: set[str] = set()
    done: set[str] = set()
    stack: list[tuple[str, object]] = [("enter", record)]
    while stack:
        action, item = stack.pop()
        if action == "exit":
            gray.discard(item)  # type: ignore[arg-type]
            done.add(item)  # type: ignore[arg-type]
            continue
        rec = item if isinstance(item, IndexRecord) else None
        if rec is None:
            uri = item
            if uri in gray:
                raise IndexCycleError(f"cycle through <{uri}>")
            if uri in done:
                continue
            try:
                rec = resolver(uri)
            except (KeyError, NotAnIndexError) as exc:
                raise UnresolvableIndexError(f"cannot resolve index <{uri}>") from exc
            if rec is None:
                raise UnresolvableIndexError(f"cannot resolve index <{uri}>")
        elif rec.uri in gray or rec.uri in done:
            if rec.uri in gray:
                raise IndexCycleError(f"cycle through <{rec.uri}>")
            continue
        gray.add(rec.uri)
        stack.append(("exit", rec.uri))
        elements.update(rec.elements)
        if rec.appends is not None:
            stack.append(("enter", rec.appends))
        for sub in rec.sub_indexes:
            stack.append(("enter", sub))
    return elements


def _chain_oldest_first(head: IndexRecord, resolver: Resolver) -> list[IndexRecord]:
    chain = [head]
    seen = {head.uri}
    current = head
    while current.appends is not None:
        if current.appends in seen:
            raise IndexCycleError(f"cycle through <{current.appends}>")
        try:
            current = resolver(current.appends)
        except (KeyError, NotAnIndexError) as exc:
            raise UnresolvableIndexError(f"cannot resolve index <{current.appends}>") from exc
        seen.add(current.uri)
        chain.append(current)
    chain.reverse()
    return chain


def build_incremental(
    previous: IndexRecord,
    added: Iterable[str],
    removed: set[str],
    metadata: IndexMetadata,
    resolver: Resolver,
    capacity: int = DEFAULT_CAPACITY,
    base: str = "http://example.org/index/",
) -> list[IndexRecord]:
    """New version of ``previous``: reuse what can be reused, re-emit the rest.

    Reused are the full-capacity, removal-free links of the previous
    chain (never the previous head itself, which stays listed as its own
    version) and every sub-index untouched by removals.  The expansion
    of the new head equals (expand(previous) - removed) | added.
    """
    added = list(dict.fromkeys(added))
    _check_element_uris(added)
    if metadata.is_empty():
        raise IndexError_("index metadata must carry a title, created date, or creator")

    previous_expansion = expand(previous, resolver)
    unknown = set(removed) - previous_expansion
    if unknown:
        sample = sorted(unknown)[0]
        raise IndexError_(f"removal of URI not in previous version: <{sample}>")

    chain = _chain_oldest_first(previous, resolver)

    reused: list[IndexRecord] = []
    for link in chain[:-1]:  # the previous head is never reused
        if (
            len(link.elements) == capacity
            and not link.sub_indexes
            and not (set(link.elements) & removed)
        ):
            reused.append(link)
        else:
            break

    leftover: list[str] = []
    for link in chain[len(reused):]:
        leftover.extend(e for e in link.elements if e not in removed)

    all_subs = list(
        dict.fromkeys(s for link in chain[len(reused):] for s in link.sub_indexes)
    )
    kept_subs: list[str] = []
    for sub_uri in all_subs:
        try:
            sub = resolver(sub_uri)
        except (KeyError, NotAnIndexError) as exc:
            raise UnresolvableIndexError(f"cannot resolve index <{sub_uri}>") from exc
        sub_expansion = expand(sub, resolver)
        if sub_expansion & removed:
            leftover.extend(sorted(sub_expansion - removed))
        else:
            kept_subs.append(sub_uri)

    existing = set(leftover) | {e for link in reused for e in link.elements}
    remaining = list(dict.fromkeys(leftover)) + [e for e in added if e not in existing]

    tag = content_tag(
        "incremental",
        previous.uri,
        str(capacity),
        metadata.title or "",
        metadata.created or "",
        *metadata.creators,
        *remaining,
        *kept_subs,
        *sorted(removed),
    )
    chunks = [remaining[i : i + capacity] for i in range(0, len(remaining), capacity)] or [[]]
    records: list[IndexRecord] = []
    previous_uri = reused[-1].uri if reused else None
    for slot, chunk in enumerate(chunks):
        final = slot == len(chunks) - 1
        records.append(
            _mint_chain_link(
                base=f"{base}{tag}/{slot}/",
                elements=chunk,
                sub_indexes=kept_subs if final else [],
                appends=previous_uri,
                metadata=metadata,
                incomplete=not final,
            )
        )
        previous_uri = records[-1].uri
    return records


def list_indexes(store) -> list[IndexSummary]:
    """One summary per complete index head, date order then code order.

    A record is listed when it is an index, carries no incomplete
    marker, and no other stored record appends it.
    """
    records: list[IndexRecord] = []
    appended: set[str] = set()
    for code in store.codes():
        np = store.get(code)
        if not is_index_nanopub(np):
            continue
        record = IndexRecord.from_nanopub(np)
        records.append(record)
        if record.appends is not None:
            appended.add(record.appends)

    by_uri = {record.uri: record for record in records}

    def resolver(uri: str) -> IndexRecord:
        if uri in by_uri:
            return by_uri[uri]
        return IndexRecord.from_nanopub(store.get_by_uri(uri))

    heads = [
        record
        for record in records
        if not record.is_incomplete and record.uri not in appended
    ]

    def sort_key(record: IndexRecord):
        stamp = parse_timestamp(record.created) if record.created else None
        code = extract_artifact_code(record.uri) or ""
        if stamp is None:
            return (1, "", code)
        return (0, stamp.astimezone(timezone.utc).isoformat(), code)

    heads.sort(key=sort_key)
    return [
        IndexSummary(
            number=i + 1,
            uri=record.uri,
            title=record.title,
            date=record.created,
            sub_count=len(record.sub_indexes),
            size=len(expand(record, resolver)),
        )
        for i, record in enumerate(heads)
    ]
