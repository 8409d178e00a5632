"""Content addressing: mint, verify, and extract artifact codes.

A code is "RA" followed by 43 characters that encode the SHA-256 digest
of the document's canonical form.  The canonical form blanks every
self-reference (any IRI under the minting base, with any embedded code
stripped), so a document hashes the same before and after minting.
"""

from __future__ import annotations

from dataclasses import dataclass
import hashlib

from .rdf import Quad, QuadDocument, Term, iri, literal, escape_string

CODE_LENGTH = 45
CODE_PREFIX = "RA"
# six-bit groups map into this alphabet, in index order
CODE_ALPHABET = (
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ" "abcdefghijklmnopqrstuvwxyz" "0123456789-_"
)
_ALPHABET_SET = frozenset(CODE_ALPHABET)
_BASE_ENDINGS = ("/", "#", ".")


class MintError(ValueError):
    pass


def is_artifact_code(text: str) -> bool:
    return (
        len(text) == CODE_LENGTH
        and text.startswith(CODE_PREFIX)
        and all(c in _ALPHABET_SET for c in text[2:])
    )


@dataclass(frozen=True)
class TrustyUri:
    """A base IRI (ending in '/', '#', or '.') immediately followed by a code."""

    base: str
    code: str

    def __post_init__(self):
        if not self.base.endswith(_BASE_ENDINGS):
            raise ValueError(f"base must end in '/', '#' or '.': {self.base!r}")
        if not is_artifact_code(self.code):
            raise ValueError(f"malformed artifact code: {self.code!r}")

    @property
    def uri(self) -> str:
        return self.base + self.code

    @classmethod
    def from_iri(cls, value: str) -> "TrustyUri":
        code = extract_artifact_code(value)
        if code is None:
            raise ValueError(f"IRI does not end in an artifact code: {value!r}")
        return cls(value[: -CODE_LENGTH], code)


def extract_artifact_code(uri: str) -> str | None:
    """The trailing 45-character code of ``uri``, or None."""
    if len(uri) <= CODE_LENGTH:
        return None
    tail = uri[-CODE_LENGTH:]
    return tail if is_artifact_code(tail) else None


def _strip_codes(value: str, base: str) -> str:
    """Drop every artifact code sitting directly after ``base``."""
    if not value.startswith(base):
        return value
    rest = value[len(base):]
    while len(rest) >= CODE_LENGTH and is_artifact_code(rest[:CODE_LENGTH]):
        rest = rest[CODE_LENGTH:]
    return base + rest


def _canonical_term(term: Term, base: str) -> str:
    if term.is_iri:
        return f"<{_strip_codes(term.value, base)}>"
    out = f'"{escape_string(term.value)}"'
    if term.language is not None:
        return f"{out}@{term.language}"
    if term.datatype is not None:
        return f"{out}^^<{_strip_codes(term.datatype, base)}>"
    return out


def canonical_form(doc: QuadDocument, base: str) -> str:
    """Deterministic text the code is computed from.

    One ``S P O G .`` line per quad with self-references blanked to the
    bare base, sorted by byte order, newline-joined with a trailing
    newline.  Invariant under quad reordering and prefix-table changes.
    """
    lines = {
        " ".join(
            (
                _canonical_term(q.subject, base),
                _canonical_term(q.predicate, base),
                _canonical_term(q.object, base),
                _canonical_term(q.graph, base),
            )
        )
        + " ."
        for q in doc.quads
    }
    return "".join(line + "\n" for line in sorted(lines, key=lambda s: s.encode("utf-8")))


def encode_digest(digest: bytes) -> str:
    # 256 bits left-padded with 2 zero bits -> 43 six-bit groups
    n = int.from_bytes(digest, "big")
    chars = []
    for i in range(43):
        shift = 258 - 6 * (i + 1)
        chars.append(CODE_ALPHABET[(n >> shift) & 0x3F])
    return "".join(chars)


def compute_code(doc: QuadDocument, base: str) -> str:
    digest = hashlib.sha256(canonical_form(doc, base).encode("utf-8")).digest()
    return CODE_PREFIX + encode_digest(digest)


def _rewrite_term(term: Term, base: str, code: str) -> Term:
    if term.is_iri:
        if term.value.startswith(base):
            return iri(base + code + term.value[len(base):])
        return term
    if term.datatype is not None and term.datatype.startswith(base):
        return literal(term.value, datatype=base + code + term.datatype[len(base):])
    return term


def mint(doc: QuadDocument, base: str) -> tuple[TrustyUri, QuadDocument]:
    """Compute the document's code and rewrite its self-references.

    Every IRI under ``base`` is treated as a self-reference and has the
    code inserted directly after the base, so the input must not contain
    foreign trusty URIs under the same base (MintError otherwise); give
    each mintable document its own base.
    """
    if not base.endswith(_BASE_ENDINGS):
        raise MintError(f"base must end in '/', '#' or '.': {base!r}")
    for q in doc.quads:
        for term in (q.subject, q.predicate, q.object, q.graph):
            values = [term.value] if term.is_iri else []
            if term.is_literal and term.datatype is not None:
                values = [term.datatype]
            for value in values:
                if value.startswith(base) and is_artifact_code(
                    value[len(base):][:CODE_LENGTH]
                ):
                    raise MintError(
                        f"base {base!r} collides with embedded trusty URI {value!r}"
                    )
    code = compute_code(doc, base)
    rewritten = QuadDocument(
        (
            Quad(
                _rewrite_term(q.subject, base, code),
                _rewrite_term(q.predicate, base, code),
                _rewrite_term(q.object, base, code),
                _rewrite_term(q.graph, base, code),
            )
            for q in doc.quads
        ),
        doc.prefixes,
    )
    return TrustyUri(base, code), rewritten


def strip_trusty(doc: QuadDocument, base: str) -> QuadDocument:
    """Undo minting: replace base+code occurrences by the bare base."""

    def strip_term(term: Term) -> Term:
        if term.is_iri:
            return iri(_strip_codes(term.value, base))
        if term.datatype is not None:
            return literal(term.value, datatype=_strip_codes(term.datatype, base))
        return term

    return QuadDocument(
        (
            Quad(
                strip_term(q.subject),
                strip_term(q.predicate),
                strip_term(q.object),
                strip_term(q.graph),
            )
            for q in doc.quads
        ),
        doc.prefixes,
    )


def verify(doc: QuadDocument, uri: TrustyUri | str) -> bool:
    """True iff re-deriving the code from ``doc`` reproduces ``uri``'s code."""
    reason = verify_reason(doc, uri)
    return reason is None


def verify_reason(doc: QuadDocument, uri: TrustyUri | str) -> str | None:
    """None when verification passes, else a short failure reason."""
    if isinstance(uri, str):
        code = extract_artifact_code(uri)
        if code is None:
            return "IRI does not end in an artifact code"
        uri = TrustyUri(uri[:-CODE_LENGTH], code)
    try:
        recomputed = compute_code(doc, uri.base)
    except ValueError as exc:
        return str(exc)
    if recomputed != uri.code:
        return f"content hashes to {recomputed}, identifier claims {uri.code}"
    return None
