"""Update events and the line-oriented stream format.

Format::

    n <count>
    + u v       # insert
    - u v       # delete
    q           # query

Blank lines and ``#`` comments are ignored. Any other malformed line, or an
insert/delete that is invalid for the graph built so far, aborts ingestion
with the offending line number.
"""

from __future__ import annotations

import io
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from .graph import Edge, Graph, GraphError, canon

INSERT = "+"
DELETE = "-"
QUERY = "q"


class StreamFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class UpdateEvent:
    kind: str
    edge: Edge | None = None

    @classmethod
    def insert(cls, u: int, v: int) -> UpdateEvent:
        return cls(INSERT, canon(u, v))

    @classmethod
    def delete(cls, u: int, v: int) -> UpdateEvent:
        return cls(DELETE, canon(u, v))

    @classmethod
    def query(cls) -> UpdateEvent:
        return cls(QUERY)

    def to_line(self) -> str:
        if self.kind == QUERY:
            return "q"
        assert self.edge is not None
        return f"{self.kind} {self.edge[0]} {self.edge[1]}"


@dataclass
class UpdateStream:
    n: int
    events: list[UpdateEvent]

    def __iter__(self) -> Iterator[UpdateEvent]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def is_insert_only(self) -> bool:
        return all(e.kind != DELETE for e in self.events)

    def edge_order(self) -> list[Edge]:
        """Inserted edges in arrival order (insert-only streams)."""
        return [e.edge for e in self.events if e.kind == INSERT]

    def final_graph(self) -> Graph:
        g = Graph(self.n)
        apply_events(g, self.events)
        return g

    def dumps(self) -> str:
        buf = io.StringIO()
        write_stream(self, buf)
        return buf.getvalue()


def apply_events(g: Graph, events: Iterable[UpdateEvent]) -> None:
    for ev in events:
        if ev.kind == INSERT:
            g.insert_edge(*ev.edge)
        elif ev.kind == DELETE:
            g.delete_edge(*ev.edge)


def _parse_int(tok: str, lineno: int) -> int:
    if not tok.isdigit():
        raise StreamFormatError(lineno, f"expected a non-negative base-10 integer, got {tok!r}")
    return int(tok)


def parse_stream(lines: Iterable[str]) -> UpdateStream:
    """Parse and validate a stream against the graph it builds."""
    n: int | None = None
    g: Graph | None = None
    events: list[UpdateEvent] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if n is None:
            if len(tok) != 2 or tok[0] != "n":
                raise StreamFormatError(lineno, "expected header 'n <count>'")
            n = _parse_int(tok[1], lineno)
            g = Graph(n)
            continue
        assert g is not None
        kind = tok[0]
        if kind == QUERY:
            if len(tok) != 1:
                raise StreamFormatError(lineno, "query line takes no arguments")
            events.append(UpdateEvent.query())
            continue
        if kind not in (INSERT, DELETE) or len(tok) != 3:
            raise StreamFormatError(lineno, f"unrecognized event {line!r}")
        u, v = _parse_int(tok[1], lineno), _parse_int(tok[2], lineno)
        try:
            if kind == INSERT:
                g.insert_edge(u, v)
            else:
                g.delete_edge(u, v)
        except GraphError as exc:
            raise StreamFormatError(lineno, str(exc)) from None
        events.append(UpdateEvent(kind, canon(u, v)))
    if n is None:
        raise StreamFormatError(0, "empty stream: missing header 'n <count>'")
    return UpdateStream(n, events)


def read_stream(path: str | Path) -> UpdateStream:
    with open(path, encoding="utf-8") as fh:
        return parse_stream(fh)


def loads_stream(text: str) -> UpdateStream:
    return parse_stream(text.splitlines())


def write_stream(stream: UpdateStream, fh: TextIO) -> None:
    fh.write(f"n {stream.n}\n")
    for ev in stream.events:
        fh.write(ev.to_line() + "\n")


def save_stream(stream: UpdateStream, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_stream(stream, fh)


def stream_from_edges(n: int, edges: Iterable[Edge]) -> UpdateStream:
    return UpdateStream(n, [UpdateEvent.insert(u, v) for u, v in edges])
