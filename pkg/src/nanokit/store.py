"""In-memory + file-backed store of validated nanopublications.

Layout on disk: one ``<code>.trig`` file per nanopublication in a flat
directory plus an append-only ``journal.log`` whose lines are
``<seq> <code>``.  The journal doubles as the replication feed for the
network module.

Lookup contract is oracle equivalence, not complexity: the per-position
term indexes only pre-filter candidates, every hit is confirmed against
the actual quads.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Iterable, Optional

from . import namespaces as ns
from .nanopub import Nanopublication, assemble, validate
from .rdf import QuadDocument, QuadPattern, Term, parse_trig, serialize_trig
from .trusty import extract_artifact_code, verify_reason
from .util import parse_timestamp

JOURNAL_NAME = "journal.log"


class StoreError(ValueError):
    pass


class IntegrityError(StoreError):
    """Same artifact code, different content: the store refuses to choose."""


@dataclass(frozen=True)
class StoredNanopub:
    code: str
    nanopub: Nanopublication
    created: Optional[datetime]
    ingested_at: int
    doc: QuadDocument  # cached full document, shared quads
    latest_key: tuple = ()  # created desc, missing last, ties by code asc


def _latest_key(code: str, created: Optional[datetime]) -> tuple:
    if created is None:
        return (1, 0.0, code)
    return (0, -created.timestamp(), code)


def candidate_uris(doc) -> list[str]:
    """Distinct nanopublication URIs declared in ``doc``, in quad order."""
    seen = {}
    for q in doc.quads:
        if q.predicate.value == ns.NP_HAS_ASSERTION and q.object.is_iri:
            seen.setdefault(q.subject.value, None)
    return list(seen)


def extract_nanopub(doc, uri: str) -> Nanopublication:
    """Assemble ``uri``'s four graphs out of a possibly larger document."""
    head_quads = [
        q
        for q in doc.quads
        if q.subject.value == uri and q.predicate.value == ns.NP_HAS_ASSERTION
    ]
    if not head_quads:
        raise StoreError(f"no nanopublication <{uri}> in document")
    head_iri = head_quads[0].graph.value
    graph_iris = {head_iri}
    for q in doc.quads:
        if q.subject.value == uri and q.graph.value == head_iri and q.object.is_iri:
            if q.predicate.value in (
                ns.NP_HAS_ASSERTION,
                ns.NP_HAS_PROVENANCE,
                ns.NP_HAS_PUBINFO,
            ):
                graph_iris.add(q.object.value)
    sub = QuadDocument(
        (q for q in doc.quads if q.graph.value in graph_iris), doc.prefixes
    )
    return assemble(sub, uri)


def split_corpus(doc) -> list[Nanopublication]:
    """Split a concatenated corpus document into its nanopublications.

    Every quad must belong to exactly one nanopublication; leftovers are
    an error.
    """
    nanopubs = [extract_nanopub(doc, uri) for uri in candidate_uris(doc)]
    claimed = set()
    for np in nanopubs:
        for part in np.parts():
            claimed.add(part.iri)
    stray = [q for q in doc.quads if q.graph.value not in claimed]
    if stray:
        raise StoreError(
            f"{len(stray)} quads belong to no nanopublication "
            f"(first graph: <{stray[0].graph.value}>)"
        )
    return nanopubs


def _created_of(np: Nanopublication) -> Optional[datetime]:
    # recency := dct:created, falling back to pav:createdOn, in pubinfo
    for predicate in (ns.DCT_CREATED, ns.PAV_CREATED_ON):
        for q in np.pubinfo.quads:
            if (
                q.subject.value == np.uri
                and q.predicate.value == predicate
                and q.object.is_literal
            ):
                stamp = parse_timestamp(q.object.value)
                if stamp is not None:
                    return stamp
    return None


class NanopubStore:
    """Content-addressed nanopublication store with pattern/URI lookup."""

    def __init__(self, directory: str | Path | None = None):
        self._lock = threading.Lock()
        self._by_code: dict[str, StoredNanopub] = {}
        self._by_uri: dict[str, str] = {}
        self._seq = 0
        # per-position pre-filter indexes: Term -> set of codes
        self._pos_index: dict[str, dict[Term, set[str]]] = {
            "subject": {},
            "predicate": {},
            "object": {},
            "graph": {},
        }
        self._mention_index: dict[str, set[str]] = {}
        self.directory = Path(directory) if directory is not None else None
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)
            self._load()

    def __len__(self) -> int:
        return len(self._by_code)

    def codes(self) -> list[str]:
        """All stored codes in ingest order."""
        entries = sorted(self._by_code.values(), key=lambda r: r.ingested_at)
        return [r.code for r in entries]

    def journal_entries(self, from_seq: int = 1, limit: int | None = None) -> list[tuple[int, str]]:
        """Journal page: (seq, code) with seq >= from_seq, at most ``limit``."""
        entries = sorted(
            (r.ingested_at, r.code)
            for r in self._by_code.values()
            if r.ingested_at >= from_seq
        )
        return entries[:limit] if limit is not None else entries

    # -- ingest -----------------------------------------------------------

    def put(self, np: Nanopublication) -> str:
        """Store a valid, trusty-verified nanopublication; idempotent by code."""
        code = extract_artifact_code(np.uri)
        if code is None:
            raise StoreError(f"nanopublication URI carries no artifact code: <{np.uri}>")
        doc = np.to_document()
        report = validate(doc, np.uri)
        if not report.valid:
            rules = ", ".join(sorted(report.rule_ids()))
            raise StoreError(f"invalid nanopublication: {rules}")
        reason = verify_reason(doc, np.uri)
        if reason is not None:
            raise StoreError(f"verification failed for <{np.uri}>: {reason}")
        with self._lock:
            existing = self._by_code.get(code)
            if existing is not None:
                if existing.doc != doc:
                    raise IntegrityError(f"code {code} already stored with different content")
                return code
            self._seq += 1
            created = _created_of(np)
            record = StoredNanopub(code, np, created, self._seq, doc, _latest_key(code, created))
            if self.directory is not None:
                path = self.directory / f"{code}.trig"
                path.write_text(serialize_trig(doc), encoding="utf-8")
                with (self.directory / JOURNAL_NAME).open("a", encoding="utf-8") as fh:
                    fh.write(f"{self._seq} {code}\n")
            self._register(record)
            return code

    def _register(self, record: StoredNanopub):
        self._by_code[record.code] = record
        self._by_uri[record.nanopub.uri] = record.code
        for q in record.doc.quads:
            for position, term in (
                ("subject", q.subject),
                ("predicate", q.predicate),
                ("object", q.object),
                ("graph", q.graph),
            ):
                self._pos_index[position].setdefault(term, set()).add(record.code)
                if term.is_iri:
                    self._mention_index.setdefault(term.value, set()).add(record.code)

    def _load(self):
        journal = self.directory / JOURNAL_NAME
        if not journal.exists():
            return
        max_seq = 0
        for line in journal.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            seq_text, _, code = line.partition(" ")
            seq = int(seq_text)
            path = self.directory / f"{code}.trig"
            doc = parse_trig(path.read_text(encoding="utf-8"))
            uris = candidate_uris(doc)
            if len(uris) != 1:
                raise StoreError(f"{path.name}: expected one nanopublication, found {len(uris)}")
            np = assemble(doc, uris[0])
            reason = verify_reason(doc, np.uri)
            if reason is not None:
                raise StoreError(f"{path.name}: verification failed: {reason}")
            created = _created_of(np)
            record = StoredNanopub(
                code, np, created, seq, np.to_document(), _latest_key(code, created)
            )
            self._register(record)
            max_seq = max(max_seq, seq)
        self._seq = max_seq

    # -- retrieval --------------------------------------------------------

    def get(self, code: str) -> Optional[Nanopublication]:
        record = self._by_code.get(code)
        return record.nanopub if record is not None else None

    def get_record(self, code: str) -> Optional[StoredNanopub]:
        return self._by_code.get(code)

    def get_by_uri(self, uri: str) -> Nanopublication:
        code = self._by_uri.get(uri)
        if code is None:
            raise KeyError(uri)
        return self._by_code[code].nanopub

    def find_by_pattern(self, pattern: QuadPattern, latest: bool = True) -> list[str]:
        """Codes of nanopublications holding at least one matching quad."""
        bound = self._bound_positions(pattern)
        if not bound:
            return self._ordered(list(self._by_code), latest)
        sets = [self._pos_index[position].get(term, set()) for position, term in bound]
        candidates = set(min(sets, key=len))
        for s in sets:
            candidates &= s
        if len(bound) == 1:
            # a position index is exact for single-position patterns
            return self._ordered(candidates, latest)
        hits = [
            code
            for code in candidates
            if any(pattern.matches(q) for q in self._by_code[code].doc.quads)
        ]
        return self._ordered(hits, latest)

    def find_by_uri(self, uri: str, latest: bool = True) -> list[str]:
        """Codes of nanopublications mentioning ``uri`` in any term position."""
        hits = self._mention_index.get(uri, set())
        return self._ordered(hits, latest)

    @staticmethod
    def _bound_positions(pattern: QuadPattern) -> list[tuple[str, Term]]:
        return [
            (position, term)
            for position, term in (
                ("subject", pattern.subject),
                ("predicate", pattern.predicate),
                ("object", pattern.object),
                ("graph", pattern.graph),
            )
            if term is not None
        ]

    def _ordered(self, codes: Iterable[str], latest: bool) -> list[str]:
        if not latest:
            # unspecified but stable: ingest order
            return sorted(codes, key=lambda c: self._by_code[c].ingested_at)
        return sorted(codes, key=lambda c: self._by_code[c].latest_key)
