"""Decentralized publishing network.

Nodes expose four requests (PUBLISH, GET, GET_JOURNAL, PEERS_REQUEST)
and replicate by anti-entropy: each node pages through its peers'
append-only journals and pulls unknown codes, verifying before storing.
A node never stores anything that fails trusty verification.

The same message contract runs in-process (simulation, deterministic
given the config seed) and over TCP (one request/response per
connection; line headers ``KIND <kind>`` etc., TriG body for
nanopublication payloads).
"""

from __future__ import annotations

import random
import socket
import socketserver
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .nanopub import Nanopublication, assemble
from .rdf import parse_trig, serialize_trig
from .store import NanopubStore, StoreError, candidate_uris
from .trusty import verify

DEFAULT_PAGE_SIZE = 100


class Unreachable(Exception):
    """Peer cannot be contacted right now."""


class ProtocolError(ValueError):
    pass


# -- messages ---------------------------------------------------------------


@dataclass(frozen=True)
class Publish:
    nanopub: Nanopublication


@dataclass(frozen=True)
class Get:
    code: str


@dataclass(frozen=True)
class GetJournal:
    from_seq: int
    page_size: int


@dataclass(frozen=True)
class PeersRequest:
    pass


@dataclass(frozen=True)
class Ok:
    code: str


@dataclass(frozen=True)
class NanopubResponse:
    nanopub: Nanopublication


@dataclass(frozen=True)
class JournalPage:
    entries: tuple[tuple[int, str], ...]
    next_seq: int


@dataclass(frozen=True)
class PeerList:
    ids: tuple[str, ...]


@dataclass(frozen=True)
class NotFound:
    pass


@dataclass(frozen=True)
class Rejected:
    reason: str


Message = object
Send = Callable[[str, Message], Message]


# -- node -------------------------------------------------------------------


class ServerNode:
    """One network participant: a store, peers, and per-peer journal cursors."""

    def __init__(
        self,
        node_id: str,
        store: NanopubStore | None = None,
        peers: Iterable[str] = (),
        send: Send | None = None,
        page_size: int = DEFAULT_PAGE_SIZE,
    ):
        self.node_id = node_id
        self.store = store if store is not None else NanopubStore()
        self.peers = list(peers)
        self.send = send
        self.page_size = page_size
        self.cursors: dict[str, int] = {}

    def handle(self, msg: Message) -> Message:
        if isinstance(msg, Publish):
            try:
                code = self.store.put(msg.nanopub)
            except StoreError as exc:
                return Rejected(str(exc))
            return Ok(code)
        if isinstance(msg, Get):
            np = self.store.get(msg.code)
            return NanopubResponse(np) if np is not None else NotFound()
        if isinstance(msg, GetJournal):
            entries = self.store.journal_entries(msg.from_seq, msg.page_size)
            next_seq = entries[-1][0] + 1 if entries else msg.from_seq
            return JournalPage(tuple(entries), next_seq)
        if isinstance(msg, PeersRequest):
            return PeerList(tuple(self.peers))
        return Rejected(f"malformed message: {type(msg).__name__}")

    def sync_round(self) -> int:
        """Pull unknown nanopublications from every reachable peer.

        Pages each peer's journal from the stored cursor; cursors only
        advance over pages that were fully processed, so an unreachable
        peer is simply retried from the same place next round.
        """
        if self.send is None:
            raise RuntimeError(f"node {self.node_id} has no transport")
        fetched = 0
        for peer_id in list(self.peers):
            cursor = self.cursors.get(peer_id, 1)
            try:
                while True:
                    resp = self.send(peer_id, GetJournal(cursor, self.page_size))
                    if not isinstance(resp, JournalPage):
                        break
                    for seq, code in resp.entries:
                        if self.store.get(code) is None:
                            reply = self.send(peer_id, Get(code))
                            if isinstance(reply, NanopubResponse):
                                try:
                                    self.store.put(reply.nanopub)
                                    fetched += 1
                                except StoreError:
                                    pass  # tampered or invalid: never stored
                    cursor = resp.next_seq
                    self.cursors[peer_id] = cursor
                    if len(resp.entries) < self.page_size:
                        break
            except Unreachable:
                continue
        return fetched


def client_retrieve(code: str, known_nodes, send: Send | None = None) -> Nanopublication:
    """Fetch ``code`` from the first node that returns verifiable content.

    ``known_nodes`` may hold ServerNode objects (queried directly) or
    node ids (queried through ``send``); they are tried in the given
    order, duplicates by node id skipped.  The result always passes
    trusty verification no matter which node served it.
    """
    tried = set()
    any_reachable = False
    for node in known_nodes:
        node_id = node.node_id if isinstance(node, ServerNode) else node
        if node_id in tried:
            continue
        tried.add(node_id)
        try:
            if isinstance(node, ServerNode):
                reply = node.handle(Get(code))
            else:
                if send is None:
                    raise RuntimeError("node ids given but no transport")
                reply = send(node_id, Get(code))
        except Unreachable:
            continue
        any_reachable = True
        if isinstance(reply, NanopubResponse):
            np = reply.nanopub
            if np.uri.endswith(code) and verify(np.to_document(), np.uri):
                return np
    if not any_reachable:
        raise Unreachable(f"no reachable node for {code}")
    raise KeyError(code)


# -- wire codec ---------------------------------------------------------------


def encode_message(msg: Message) -> bytes:
    lines: list[str] = []
    body = ""
    if isinstance(msg, Publish):
        lines.append("KIND PUBLISH")
        body = serialize_trig(msg.nanopub.to_document())
    elif isinstance(msg, Get):
        lines.append("KIND GET")
        lines.append(f"CODE {msg.code}")
    elif isinstance(msg, GetJournal):
        lines.append("KIND GET_JOURNAL")
        lines.append(f"FROM {msg.from_seq}")
        lines.append(f"PAGE_SIZE {msg.page_size}")
    elif isinstance(msg, PeersRequest):
        lines.append("KIND PEERS_REQUEST")
    elif isinstance(msg, Ok):
        lines.append("KIND OK")
        lines.append(f"CODE {msg.code}")
    elif isinstance(msg, NanopubResponse):
        lines.append("KIND NANOPUB")
        body = serialize_trig(msg.nanopub.to_document())
    elif isinstance(msg, JournalPage):
        lines.append("KIND JOURNAL_PAGE")
        lines.append(f"NEXT_SEQ {msg.next_seq}")
        for seq, code in msg.entries:
            lines.append(f"ENTRY {seq} {code}")
    elif isinstance(msg, PeerList):
        lines.append("KIND PEER_LIST")
        for peer in msg.ids:
            lines.append(f"PEER {peer}")
    elif isinstance(msg, NotFound):
        lines.append("KIND NOT_FOUND")
    elif isinstance(msg, Rejected):
        lines.append("KIND REJECTED")
        lines.append(f"REASON {msg.reason}")
    else:
        raise ProtocolError(f"cannot encode {type(msg).__name__}")
    return ("\n".join(lines) + "\n\n" + body).encode("utf-8")


def _parse_nanopub_body(body: str) -> Nanopublication:
    doc = parse_trig(body)
    uris = candidate_uris(doc)
    if len(uris) != 1:
        raise ProtocolError(f"body holds {len(uris)} nanopublications, expected 1")
    return assemble(doc, uris[0])


def decode_message(data: bytes) -> Message:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ProtocolError("message is not UTF-8") from exc
    header, _, body = text.partition("\n\n")
    fields: list[tuple[str, str]] = []
    for line in header.splitlines():
        if not line.strip():
            continue
        key, _, value = line.partition(" ")
        fields.append((key, value))
    if not fields or fields[0][0] != "KIND":
        raise ProtocolError("missing KIND header")
    kind = fields[0][1]
    by_key: dict[str, list[str]] = {}
    for key, value in fields[1:]:
        by_key.setdefault(key, []).append(value)

    def one(key: str) -> str:
        values = by_key.get(key, [])
        if len(values) != 1:
            raise ProtocolError(f"expected exactly one {key} header")
        return values[0]

    if kind == "PUBLISH":
        return Publish(_parse_nanopub_body(body))
    if kind == "GET":
        return Get(one("CODE"))
    if kind == "GET_JOURNAL":
        return GetJournal(int(one("FROM")), int(one("PAGE_SIZE")))
    if kind == "PEERS_REQUEST":
        return PeersRequest()
    if kind == "OK":
        return Ok(one("CODE"))
    if kind == "NANOPUB":
        return NanopubResponse(_parse_nanopub_body(body))
    if kind == "JOURNAL_PAGE":
        entries = []
        for value in by_key.get("ENTRY", []):
            seq_text, _, code = value.partition(" ")
            entries.append((int(seq_text), code))
        return JournalPage(tuple(entries), int(one("NEXT_SEQ")))
    if kind == "PEER_LIST":
        return PeerList(tuple(by_key.get("PEER", [])))
    if kind == "NOT_FOUND":
        return NotFound()
    if kind == "REJECTED":
        return Rejected(one("REASON"))
    raise ProtocolError(f"unknown message kind {kind!r}")


# -- TCP transport ------------------------------------------------------------


def tcp_request(address: str, msg: Message, timeout: float = 10.0) -> Message:
    """One request/response exchange with ``host:port``."""
    host, _, port_text = address.rpartition(":")
    try:
        with socket.create_connection((host, int(port_text)), timeout=timeout) as conn:
            conn.sendall(encode_message(msg))
            conn.shutdown(socket.SHUT_WR)
            chunks = []
            while True:
                chunk = conn.recv(65536)
                if not chunk:
                    break
                chunks.append(chunk)
    except OSError as exc:
        raise Unreachable(f"{address}: {exc}") from exc
    return decode_message(b"".join(chunks))


class _NodeRequestHandler(socketserver.BaseRequestHandler):
    def handle(self):
        chunks = []
        while True:
            chunk = self.request.recv(65536)
            if not chunk:
                break
            chunks.append(chunk)
        try:
            msg = decode_message(b"".join(chunks))
            reply = self.server.node.handle(msg)
        except (ProtocolError, ValueError) as exc:
            reply = Rejected(str(exc))
        self.request.sendall(encode_message(reply))


class NodeServer(socketserver.ThreadingTCPServer):
    """Serves one node's message contract over TCP."""

    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, node: ServerNode, host: str = "127.0.0.1", port: int = 0):
        super().__init__((host, port), _NodeRequestHandler)
        self.node = node

    @property
    def address(self) -> str:
        host, port = self.server_address[:2]
        return f"{host}:{port}"


# -- simulation ---------------------------------------------------------------


@dataclass(frozen=True)
class SimConfig:
    """Deterministic network simulation parameters.

    ``latency`` is a distribution spec: ``constant:X``, ``uniform:A:B``,
    or ``exponential:MEAN``, sampled per message; a sample above
    ``timeout`` makes that message attempt fail.  ``failures`` entries
    are (node index, first down round, first up round): crash-stop with
    the store intact on recovery.
    """

    node_count: int
    topology: str = "complete"  # complete | ring | random
    topology_p: float = 0.5
    topology_seed: int = 0
    latency: str = "constant:0.0"
    timeout: Optional[float] = None
    failures: tuple[tuple[int, int, int], ...] = ()
    seed: int = 0
    rounds: int = 10
    page_size: int = DEFAULT_PAGE_SIZE


@dataclass(frozen=True)
class PublishEvent:
    round: int
    node_index: int
    nanopub: Nanopublication


@dataclass
class SimReport:
    rounds: int
    node_ids: tuple[str, ...]
    final_sizes: dict[str, int]
    converged: bool
    published: tuple[str, ...]
    dropped: tuple[str, ...]
    lags: dict[str, int]  # code -> rounds from publish to full replication
    unreplicated: tuple[str, ...]
    retrievability: dict[str, str]  # code -> holdings bitstring over node_ids
    total_fetches: int
    mean_latency: float

    def to_text(self) -> str:
        lines = [
            f"rounds {self.rounds}",
            "nodes " + ",".join(self.node_ids),
            f"converged {'true' if self.converged else 'false'}",
            f"published {len(self.published)}",
            f"dropped {len(self.dropped)}",
            f"unreplicated {len(self.unreplicated)}",
            f"total_fetches {self.total_fetches}",
            f"mean_latency {self.mean_latency:.9f}",
        ]
        replicated = [self.lags[c] for c in self.published if c in self.lags]
        if replicated:
            lines.append(f"mean_lag {sum(replicated) / len(replicated):.6f}")
            lines.append(f"max_lag {max(replicated)}")
        else:
            lines.append("mean_lag n/a")
            lines.append("max_lag n/a")
        for node_id in self.node_ids:
            lines.append(f"size {node_id} {self.final_sizes[node_id]}")
        for code in self.published:
            lines.append(f"retrievable {code} {self.retrievability[code]}")
        return "\n".join(lines) + "\n"


def _topology_edges(config: SimConfig) -> set[tuple[int, int]]:
    n = config.node_count
    if config.topology == "complete":
        return {(i, j) for i in range(n) for j in range(n) if i < j}
    if config.topology == "ring":
        if n == 1:
            return set()
        return {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    if config.topology == "random":
        rng = random.Random(config.topology_seed)
        edges = set()
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < config.topology_p:
                    edges.add((i, j))
        return edges
    raise ValueError(f"unknown topology {config.topology!r}")


def _latency_sampler(spec: str):
    parts = spec.split(":")
    kind = parts[0]
    if kind == "constant" and len(parts) == 2:
        value = float(parts[1])
        return lambda rng: value
    if kind == "uniform" and len(parts) == 3:
        low, high = float(parts[1]), float(parts[2])
        return lambda rng: rng.uniform(low, high)
    if kind == "exponential" and len(parts) == 2:
        mean = float(parts[1])
        return lambda rng: rng.expovariate(1.0 / mean) if mean > 0 else 0.0
    raise ValueError(f"bad latency spec {spec!r}")


class Simulation:
    """Round-based deterministic harness over in-process nodes."""

    def __init__(self, config: SimConfig):
        if config.node_count < 1:
            raise ValueError("node_count must be >= 1")
        self.config = config
        self.rng = random.Random(config.seed)
        self.sample_latency = _latency_sampler(config.latency)
        self.current_round = 0
        self.latencies: list[float] = []

        edges = _topology_edges(config)
        node_ids = [f"n{i:02d}" for i in range(config.node_count)]
        peers: dict[str, list[str]] = {nid: [] for nid in node_ids}
        for i, j in sorted(edges):
            peers[node_ids[i]].append(node_ids[j])
            peers[node_ids[j]].append(node_ids[i])
        self.nodes: dict[str, ServerNode] = {}
        for nid in node_ids:
            self.nodes[nid] = ServerNode(
                nid,
                NanopubStore(),
                sorted(peers[nid]),
                send=self._make_send(nid),
                page_size=config.page_size,
            )

    def node_ids(self) -> list[str]:
        return sorted(self.nodes)

    def is_down(self, node_id: str, rnd: int | None = None) -> bool:
        rnd = self.current_round if rnd is None else rnd
        idx = int(node_id[1:])
        return any(
            idx == fail_idx and start <= rnd < end
            for fail_idx, start, end in self.config.failures
        )

    def _make_send(self, src: str) -> Send:
        def send(dst: str, msg: Message) -> Message:
            if self.is_down(src) or self.is_down(dst):
                raise Unreachable(f"{dst} is down")
            latency = self.sample_latency(self.rng)
            self.latencies.append(latency)
            if self.config.timeout is not None and latency > self.config.timeout:
                raise Unreachable(f"{dst} timed out")
            return self.nodes[dst].handle(msg)

        return send

    def run(self, workload: Iterable[PublishEvent]) -> SimReport:
        events = sorted(
            workload, key=lambda e: (e.round, e.node_index)
        )  # stable: ties keep given order via sort stability
        by_round: dict[int, list[PublishEvent]] = {}
        for event in events:
            by_round.setdefault(event.round, []).append(event)

        node_ids = self.node_ids()
        published: list[str] = []
        dropped: list[str] = []
        publish_round: dict[str, int] = {}
        lags: dict[str, int] = {}
        total_fetches = 0

        last_event_round = max(by_round) if by_round else -1
        total_rounds = max(self.config.rounds, last_event_round + 1)

        for rnd in range(total_rounds):
            self.current_round = rnd
            for event in by_round.get(rnd, ()):
                node_id = node_ids[event.node_index]
                code = event.nanopub.uri[-45:]
                if self.is_down(node_id):
                    dropped.append(code)
                    continue
                reply = self.nodes[node_id].handle(Publish(event.nanopub))
                if isinstance(reply, Ok):
                    published.append(reply.code)
                    publish_round.setdefault(reply.code, rnd)
                else:
                    dropped.append(code)
            for node_id in node_ids:
                if not self.is_down(node_id):
                    total_fetches += self.nodes[node_id].sync_round()
            live = [nid for nid in node_ids if not self.is_down(nid)]
            for code in published:
                if code not in lags and live and all(
                    self.nodes[nid].store.get(code) is not None for nid in live
                ):
                    lags[code] = rnd - publish_round[code]

        self.current_round = total_rounds  # final liveness uses the last round
        final_sizes = {nid: len(self.nodes[nid].store) for nid in node_ids}
        live = [nid for nid in node_ids if not self.is_down(nid, total_rounds - 1)]
        code_sets = [frozenset(self.nodes[nid].store.codes()) for nid in live]
        converged = len(set(code_sets)) <= 1
        retrievability = {
            code: "".join(
                "1" if self.nodes[nid].store.get(code) is not None else "0"
                for nid in node_ids
            )
            for code in published
        }
        mean_latency = (
            sum(self.latencies) / len(self.latencies) if self.latencies else 0.0
        )
        return SimReport(
            rounds=total_rounds,
            node_ids=tuple(node_ids),
            final_sizes=final_sizes,
            converged=converged,
            published=tuple(published),
            dropped=tuple(dropped),
            lags=lags,
            unreplicated=tuple(c for c in published if c not in lags),
            retrievability=retrievability,
            total_fetches=total_fetches,
            mean_latency=mean_latency,
        )

    def live_nodes(self, rnd: int | None = None) -> list[ServerNode]:
        rnd = (self.current_round - 1) if rnd is None else rnd
        return [
            self.nodes[nid]
            for nid in self.node_ids()
            if not self.is_down(nid, rnd)
        ]


def run_simulation(config: SimConfig, workload: Iterable[PublishEvent]) -> SimReport:
    """Build the network for ``config`` and run ``workload`` to completion."""
    return Simulation(config).run(workload)
