"""Line-oriented text formats for hypergraphs and projections.

Hypergraph file::

    # comments may appear anywhere
    n m
    k v_1 ... v_k      (m such lines, k >= 2, 0-based ids)
    t
    t_1 ... t_t        (omitted when t = 0)

Projection file::

    n_G n_H
    img_0 ... img_{n_G - 1}

Parsing is whitespace-tolerant; serialization produces the canonical
one-record-per-line form, so parse-serialize round-trips are stable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, List, Tuple

from .core import Hypergraph, ProjectionMap, TerminalSet

__all__ = [
    "ParseError",
    "parse_hypergraph",
    "serialize_hypergraph",
    "parse_projection",
    "serialize_projection",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    col: int


class _Stream:
    def __init__(self, text: str):
        self.tokens: List[_Token] = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            body = line.split("#", 1)[0]
            for match in re.finditer(r"\S+", body):
                self.tokens.append(_Token(match.group(), lineno, match.start() + 1))
        self.pos = 0

    def next_int(self, what: str, minimum: int = 0) -> int:
        if self.pos >= len(self.tokens):
            last = self.tokens[-1] if self.tokens else _Token("", 1, 1)
            raise ParseError(f"unexpected end of input, expected {what}", last.line, last.col)
        tok = self.tokens[self.pos]
        self.pos += 1
        try:
            value = int(tok.text)
        except ValueError:
            raise ParseError(f"expected {what}, got {tok.text!r}", tok.line, tok.col)
        if value < minimum:
            raise ParseError(f"{what} must be >= {minimum}, got {value}", tok.line, tok.col)
        return value

    def expect_end(self) -> None:
        if self.pos < len(self.tokens):
            tok = self.tokens[self.pos]
            raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)


def parse_hypergraph(text: str) -> Tuple[Hypergraph, TerminalSet]:
    s = _Stream(text)
    n = s.next_int("vertex count")
    m = s.next_int("edge count")
    edges = []
    for _ in range(m):
        k = s.next_int("edge cardinality", minimum=2)
        edge = [s.next_int("vertex id") for _ in range(k)]
        for v in edge:
            if v >= n:
                raise ParseError(
                    f"vertex id {v} out of range [0, {n})",
                    s.tokens[s.pos - 1].line,
                    s.tokens[s.pos - 1].col,
                )
        if len(set(edge)) < 2:
            tok = s.tokens[s.pos - 1]
            raise ParseError("edge needs at least 2 distinct vertices", tok.line, tok.col)
        edges.append(edge)
    t = s.next_int("terminal count")
    terminals = []
    for _ in range(t):
        v = s.next_int("terminal id")
        if v >= n:
            tok = s.tokens[s.pos - 1]
            raise ParseError(f"terminal id {v} out of range [0, {n})", tok.line, tok.col)
        terminals.append(v)
    s.expect_end()
    return Hypergraph(n, edges), TerminalSet(frozenset(terminals))


def serialize_hypergraph(graph: Hypergraph, terminals: TerminalSet) -> str:
    lines = [f"{graph.n} {graph.m}"]
    for e in graph.edges:
        vs = sorted(e)
        lines.append(f"{len(vs)} " + " ".join(map(str, vs)))
    T = sorted(terminals.terminals)
    lines.append(str(len(T)))
    if T:
        lines.append(" ".join(map(str, T)))
    return "\n".join(lines) + "\n"


def parse_projection(text: str) -> ProjectionMap:
    s = _Stream(text)
    n_g = s.next_int("domain size")
    n_h = s.next_int("image size", minimum=1)
    images = []
    for _ in range(n_g):
        img = s.next_int("image id")
        if img >= n_h:
            tok = s.tokens[s.pos - 1]
            raise ParseError(f"image id {img} out of range [0, {n_h})", tok.line, tok.col)
        images.append(img)
    s.expect_end()
    try:
        return ProjectionMap(n_h, tuple(images))
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1)


def serialize_projection(projection: ProjectionMap) -> str:
    return (
        f"{len(projection.map)} {projection.image_size}\n"
        + " ".join(map(str, projection.map))
        + "\n"
    )
