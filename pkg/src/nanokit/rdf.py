"""Terms, quads, documents, and a TriG-subset parser/serializer.

The accepted TriG subset is exactly what nanopublications need: prefix
declarations and named-graph blocks containing IRI/literal triples.
Blank nodes, collections, quoted triples, and default-graph statements
are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

from .namespaces import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
)

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_LANG_RE = re.compile(r"^[A-Za-z]+(-[A-Za-z0-9]+)*$")


class TrigSyntaxError(ValueError):
    """Raised on malformed input, with 1-based line/column of the offence."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class BlankNodeError(TrigSyntaxError):
    """Blank nodes are not representable anywhere in this toolkit."""


_IRI_FORBIDDEN = set(' \t\r\n<>"{}|^`\\')


def _check_iri(value: str):
    if not _SCHEME_RE.match(value):
        raise ValueError(f"not an absolute IRI: {value!r}")
    bad = _IRI_FORBIDDEN.intersection(value)
    if bad:
        raise ValueError(f"IRI contains forbidden character {bad.pop()!r}: {value!r}")


@dataclass(frozen=True)
class Term:
    """An RDF term: an absolute IRI or a literal.

    A literal carries at most one of ``datatype`` (an IRI) and
    ``language``.  Blank nodes are deliberately unrepresentable.
    """

    kind: str  # "iri" | "literal"
    value: str
    datatype: Optional[str] = None
    language: Optional[str] = None

    def __post_init__(self):
        if self.kind == "iri":
            if self.datatype is not None or self.language is not None:
                raise ValueError("IRI terms carry no datatype or language")
            _check_iri(self.value)
        elif self.kind == "literal":
            if self.datatype is not None and self.language is not None:
                raise ValueError("literal with both datatype and language")
            if self.datatype is not None:
                _check_iri(self.datatype)
            if self.language is not None and not _LANG_RE.match(self.language):
                raise ValueError(f"malformed language tag: {self.language!r}")
        else:
            raise ValueError(f"unknown term kind: {self.kind!r}")

    @property
    def is_iri(self) -> bool:
        return self.kind == "iri"

    @property
    def is_literal(self) -> bool:
        return self.kind == "literal"


def iri(value: str) -> Term:
    return Term("iri", value)


def literal(value: str, datatype: str | None = None, language: str | None = None) -> Term:
    return Term("literal", value, datatype, language)


@dataclass(frozen=True)
class Quad:
    """One statement placed in a named graph."""

    subject: Term
    predicate: Term
    object: Term
    graph: Term

    def __post_init__(self):
        for pos in ("subject", "predicate", "graph"):
            term = getattr(self, pos)
            if not term.is_iri:
                raise ValueError(f"quad {pos} must be an IRI, got {term.kind}")


def quad(s: str | Term, p: str | Term, o: str | Term, g: str | Term) -> Quad:
    """Quad constructor accepting bare IRI strings for convenience."""
    as_term = lambda t: t if isinstance(t, Term) else iri(t)
    return Quad(as_term(s), as_term(p), as_term(o), as_term(g))


class QuadDocument:
    """An ordered, duplicate-free collection of quads plus a prefix table.

    Prefixes are presentation only.  Two documents are equal iff their
    quad sets are equal, regardless of order and prefixes.
    """

    __slots__ = ("quads", "prefixes", "_quadset")

    def __init__(self, quads: Iterable[Quad] = (), prefixes: Mapping[str, str] | None = None):
        seen = {}
        for q in quads:
            seen.setdefault(q, None)
        object.__setattr__(self, "quads", tuple(seen))
        object.__setattr__(self, "prefixes", dict(prefixes or {}))
        object.__setattr__(self, "_quadset", frozenset(seen))

    def __setattr__(self, name, value):
        raise AttributeError("QuadDocument is immutable")

    def quad_set(self) -> frozenset[Quad]:
        return self._quadset

    def __len__(self) -> int:
        return len(self.quads)

    def __iter__(self) -> Iterator[Quad]:
        return iter(self.quads)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadDocument):
            return NotImplemented
        return self._quadset == other._quadset

    def __hash__(self) -> int:
        return hash(self._quadset)

    def __repr__(self) -> str:
        return f"QuadDocument({len(self.quads)} quads, {len(self.prefixes)} prefixes)"

    def graph_names(self) -> tuple[str, ...]:
        """Graph IRIs in first-appearance order."""
        names = {}
        for q in self.quads:
            names.setdefault(q.graph.value, None)
        return tuple(names)

    def graph_quads(self, graph_iri: str) -> tuple[Quad, ...]:
        return tuple(q for q in self.quads if q.graph.value == graph_iri)


@dataclass(frozen=True)
class QuadPattern:
    """A quad template; ``None`` in a position is a wildcard."""

    subject: Optional[Term] = None
    predicate: Optional[Term] = None
    object: Optional[Term] = None
    graph: Optional[Term] = None

    def matches(self, q: Quad) -> bool:
        return (
            (self.subject is None or q.subject == self.subject)
            and (self.predicate is None or q.predicate == self.predicate)
            and (self.object is None or q.object == self.object)
            and (self.graph is None or q.graph == self.graph)
        )


def match(doc: QuadDocument, pattern: QuadPattern) -> list[Quad]:
    """Quads of ``doc`` agreeing with every non-wildcard pattern position."""
    return [q for q in doc.quads if pattern.matches(q)]


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_PUNCT = {"{": "LBRACE", "}": "RBRACE", ".": "DOT", ";": "SEMI", ",": "COMMA"}

_ESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_NAME_END = set(" \t\r\n{}();,\"'<")


@dataclass
class _Token:
    typ: str
    value: str
    line: int
    col: int


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, msg: str, line: int | None = None, col: int | None = None):
        raise TrigSyntaxError(msg, line or self.line, col or self.col)

    def _peek(self, offset: int = 0) -> str:
        j = self.pos + offset
        return self.text[j] if j < len(self.text) else ""

    def _advance(self, n: int = 1) -> str:
        out = self.text[self.pos : self.pos + n]
        for ch in out:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return out

    def tokens(self) -> Iterator[_Token]:
        while self.pos < len(self.text):
            c = self._peek()
            if c in " \t\r\n":
                self._advance()
                continue
            if c == "#":
                while self.pos < len(self.text) and self._peek() != "\n":
                    self._advance()
                continue

            line, col = self.line, self.col

            if c == "<":
                yield self._lex_iri(line, col)
                continue
            if c in "\"'":
                yield self._lex_string(line, col)
                continue
            if c in _PUNCT:
                # '.' may start a numeric literal like .5 -- not in subset,
                # so a bare dot is always a statement terminator here.
                self._advance()
                yield _Token(_PUNCT[c], c, line, col)
                continue
            if c == "[":
                self.error("blank nodes are not allowed", line, col)
            if c == "_" and self._peek(1) == ":":
                raise BlankNodeError("blank nodes are not allowed", line, col)
            if c == "@":
                self._advance()
                word = self._lex_bareword()
                yield _Token("AT", word, line, col)
                continue
            if c.isdigit() or (c in "+-" and (self._peek(1).isdigit() or self._peek(1) == ".")):
                yield self._lex_number(line, col)
                continue

            word = self._lex_name()
            if not word:
                self.error(f"unexpected character {c!r}", line, col)
            yield _Token("NAME", word, line, col)

    def _lex_iri(self, line: int, col: int) -> _Token:
        self._advance()  # <
        out = []
        while True:
            c = self._peek()
            if c == "":
                self.error("unterminated IRI", line, col)
            if c == ">":
                self._advance()
                break
            if c in " \n\r\t":
                self.error("whitespace inside IRI", line, col)
            if c == "\\":
                self._advance()
                esc = self._peek()
                if esc in "uU":
                    out.append(self._lex_unicode_escape(line, col))
                    continue
                self.error(f"invalid IRI escape \\{esc}", line, col)
            out.append(self._advance())
        return _Token("IRI", "".join(out), line, col)

    def _lex_string(self, line: int, col: int) -> _Token:
        quote = self._advance()
        long_form = False
        if self._peek() == quote and self._peek(1) == quote:
            self._advance(2)
            long_form = True
        out = []
        while True:
            c = self._peek()
            if c == "":
                self.error("unterminated string", line, col)
            if c == "\\":
                self._advance()
                esc = self._peek()
                if esc in "uU":
                    out.append(self._lex_unicode_escape(line, col))
                    continue
                if esc in _ESCAPES:
                    self._advance()
                    out.append(_ESCAPES[esc])
                    continue
                self.error(f"invalid string escape \\{esc}", line, col)
            if c == quote:
                if not long_form:
                    self._advance()
                    break
                if self._peek(1) == quote and self._peek(2) == quote:
                    self._advance(3)
                    break
                out.append(self._advance())
                continue
            if c == "\n" and not long_form:
                self.error("newline in single-quoted string", line, col)
            out.append(self._advance())
        return _Token("STRING", "".join(out), line, col)

    def _lex_unicode_escape(self, line: int, col: int) -> str:
        kind = self._advance()  # u or U
        width = 4 if kind == "u" else 8
        hexs = self._advance(width)
        if len(hexs) != width or not all(h in "0123456789abcdefABCDEF" for h in hexs):
            self.error(f"bad \\{kind} escape", line, col)
        return chr(int(hexs, 16))

    def _lex_number(self, line: int, col: int) -> _Token:
        out = []
        if self._peek() in "+-":
            out.append(self._advance())
        seen_dot = seen_exp = False
        while True:
            c = self._peek()
            if c.isdigit():
                out.append(self._advance())
            elif c == "." and not seen_dot and not seen_exp and self._peek(1).isdigit():
                seen_dot = True
                out.append(self._advance())
            elif c in "eE" and not seen_exp and (self._peek(1).isdigit() or self._peek(1) in "+-"):
                seen_exp = True
                out.append(self._advance())
                if self._peek() in "+-":
                    out.append(self._advance())
            else:
                break
        text = "".join(out)
        typ = "DOUBLE" if seen_exp else ("DECIMAL" if seen_dot else "INTEGER")
        return _Token(typ, text, line, col)

    def _lex_bareword(self) -> str:
        # directive names and language tags: letters, digits, hyphens
        out = []
        while self._peek().isalnum() or self._peek() == "-":
            out.append(self._advance())
        return "".join(out)

    def _lex_name(self) -> str:
        # Prefixed name or keyword.  A trailing '.' is the statement
        # terminator, so include '.' only when followed by a name char.
        out = []
        while True:
            c = self._peek()
            if c == "" or c in _NAME_END:
                break
            if c == ".":
                nxt = self._peek(1)
                if nxt == "" or nxt in _NAME_END or nxt == ".":
                    break
            out.append(self._advance())
        return "".join(out)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = list(_Lexer(text).tokens())
        self.i = 0
        self.prefixes: dict[str, str] = {}
        self.quads: list[Quad] = []

    def error(self, msg: str, tok: _Token | None = None):
        if tok is None:
            tok = self.toks[self.i - 1] if self.i > 0 else _Token("EOF", "", 1, 1)
        raise TrigSyntaxError(msg, tok.line, tok.col)

    def _peek(self) -> _Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _next(self) -> _Token:
        tok = self._peek()
        if tok is None:
            last = self.toks[-1] if self.toks else _Token("EOF", "", 1, 1)
            raise TrigSyntaxError("unexpected end of input", last.line, last.col)
        self.i += 1
        return tok

    def _expect(self, typ: str) -> _Token:
        tok = self._next()
        if tok.typ != typ:
            self.error(f"expected {typ}, got {tok.typ} {tok.value!r}", tok)
        return tok

    def parse(self) -> QuadDocument:
        while (tok := self._peek()) is not None:
            if tok.typ == "AT":
                self._parse_directive()
            elif tok.typ == "NAME" and tok.value.upper() in ("PREFIX", "BASE"):
                self.error("SPARQL-style directives are not accepted; use @prefix", tok)
            elif tok.typ == "NAME" and tok.value.upper() == "GRAPH":
                self._next()
                self._parse_graph_block()
            elif tok.typ in ("IRI", "NAME"):
                self._parse_graph_block()
            else:
                self.error(f"expected a graph block, got {tok.typ} {tok.value!r}", tok)
        return QuadDocument(self.quads, self.prefixes)

    def _parse_directive(self):
        tok = self._next()
        if tok.value != "prefix":
            self.error(f"unsupported directive @{tok.value}", tok)
        label_tok = self._expect("NAME")
        label = label_tok.value
        if not label.endswith(":"):
            self.error("prefix label must end with ':'", label_tok)
        target = self._expect("IRI")
        self.prefixes[label[:-1]] = target.value
        self._expect("DOT")

    def _parse_graph_block(self):
        graph_tok = self._next()
        graph = self._term_from(graph_tok, position="graph")
        if not graph.is_iri:
            self.error("graph label must be an IRI", graph_tok)
        nxt = self._peek()
        if nxt is None or nxt.typ != "LBRACE":
            self.error("statement outside a graph block (expected '{')", nxt or graph_tok)
        self._next()
        while True:
            tok = self._peek()
            if tok is None:
                self.error("unterminated graph block", graph_tok)
            if tok.typ == "RBRACE":
                self._next()
                break
            self._parse_triples(graph)
        # optional trailing dot after a graph block
        nxt = self._peek()
        if nxt is not None and nxt.typ == "DOT":
            self._next()

    def _parse_triples(self, graph: Term):
        subject_tok = self._next()
        subject = self._term_from(subject_tok, position="subject")
        if not subject.is_iri:
            self.error("subject must be an IRI", subject_tok)
        while True:
            predicate = self._parse_predicate()
            while True:
                obj = self._term_from(self._next(), position="object")
                self.quads.append(Quad(subject, predicate, obj, graph))
                tok = self._peek()
                if tok is not None and tok.typ == "COMMA":
                    self._next()
                    continue
                break
            tok = self._next()
            if tok.typ == "SEMI":
                # allow '; .' and '; }' style endings
                nxt = self._peek()
                if nxt is not None and nxt.typ == "DOT":
                    self._next()
                    return
                if nxt is not None and nxt.typ == "RBRACE":
                    return
                continue
            if tok.typ == "DOT":
                return
            if tok.typ == "RBRACE":
                # final '.' inside a graph block is optional
                self.i -= 1
                return
            self.error(f"expected '.', ';' or ',', got {tok.typ} {tok.value!r}", tok)

    def _parse_predicate(self) -> Term:
        tok = self._next()
        if tok.typ == "NAME" and tok.value == "a":
            return iri(RDF_TYPE)
        term = self._term_from(tok, position="predicate")
        if not term.is_iri:
            self.error("predicate must be an IRI", tok)
        return term

    def _term_from(self, tok: _Token, position: str) -> Term:
        if tok.typ == "IRI":
            return self._make_iri(tok.value, tok)
        if tok.typ == "NAME":
            return self._expand_name(tok)
        if tok.typ == "STRING":
            return self._finish_literal(tok)
        if tok.typ == "INTEGER":
            return literal(tok.value, datatype=XSD_INTEGER)
        if tok.typ == "DECIMAL":
            return literal(tok.value, datatype=XSD_DECIMAL)
        if tok.typ == "DOUBLE":
            return literal(tok.value, datatype=XSD_DOUBLE)
        self.error(f"expected a term in {position} position, got {tok.typ} {tok.value!r}", tok)

    def _make_iri(self, value: str, tok: _Token) -> Term:
        if not _SCHEME_RE.match(value):
            self.error(f"relative IRI not allowed: <{value}>", tok)
        try:
            return iri(value)
        except ValueError as exc:
            self.error(str(exc), tok)

    def _expand_name(self, tok: _Token) -> Term:
        name = tok.value
        if name == "true" or name == "false":
            return literal(name, datatype=XSD_BOOLEAN)
        if ":" not in name:
            self.error(f"expected a term, got bare word {name!r}", tok)
        prefix, _, local = name.partition(":")
        if prefix not in self.prefixes:
            self.error(f"undeclared prefix {prefix!r}", tok)
        return self._make_iri(self.prefixes[prefix] + local, tok)

    def _finish_literal(self, tok: _Token) -> Term:
        nxt = self._peek()
        if nxt is not None and nxt.typ == "AT":
            self._next()
            lang = nxt.value
            if not _LANG_RE.match(lang):
                self.error(f"malformed language tag @{lang}", nxt)
            return literal(tok.value, language=lang)
        if nxt is not None and nxt.typ == "NAME" and nxt.value.startswith("^^"):
            self._next()
            dt_name = nxt.value[2:]
            if dt_name:
                dt = self._expand_name(_Token("NAME", dt_name, nxt.line, nxt.col))
            else:
                dt = self._term_from(self._next(), position="datatype")
            if not dt.is_iri:
                self.error("datatype must be an IRI", nxt)
            return literal(tok.value, datatype=dt.value)
        return literal(tok.value)


def parse_trig(text: str) -> QuadDocument:
    """Parse a TriG-subset document into quads with prefixes expanded.

    Raises :class:`TrigSyntaxError` (with line/column) on syntax errors,
    blank nodes, relative IRIs, or statements outside a graph block.
    """
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Serializer
# ---------------------------------------------------------------------------

_ESCAPE_OUT = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
    "\b": "\\b",
    "\f": "\\f",
}


def escape_string(value: str) -> str:
    return "".join(_ESCAPE_OUT.get(c, c) for c in value)


def render_term(term: Term) -> str:
    """Long-form rendering used by both the serializer and content hashing."""
    if term.is_iri:
        return f"<{term.value}>"
    out = f'"{escape_string(term.value)}"'
    if term.language is not None:
        return f"{out}@{term.language}"
    if term.datatype is not None:
        return f"{out}^^<{term.datatype}>"
    return out


def serialize_trig(doc: QuadDocument) -> str:
    """Serialize with graphs in first-appearance order, quads in insertion
    order, and every term in long form (the prefix table is decorative)."""
    lines = []
    for label, target in doc.prefixes.items():
        lines.append(f"@prefix {label}: <{target}> .")
    if doc.prefixes:
        lines.append("")
    for graph_iri in doc.graph_names():
        lines.append(f"<{graph_iri}> {{")
        for q in doc.graph_quads(graph_iri):
            lines.append(
                f"  {render_term(q.subject)} {render_term(q.predicate)} {render_term(q.object)} ."
            )
        lines.append("}")
    return "\n".join(lines) + ("\n" if lines else "")
