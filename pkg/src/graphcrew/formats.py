"""Text formats for graphs: edge-list, adjacency-list, adjacency-matrix.

Each format is a plain-text body preceded by ``#`` header lines that pin
down what the body alone cannot: the node roster, directedness, and
weightedness.  ``parse_graph(serialize_graph(g, f), f)`` returns a graph
equal to ``g`` for every format, and serialization of a canonical graph
is byte-stable.

Grammar (one line each, blank lines ignored):

- header:            ``# nodes: A B C`` | ``# directed: true`` | ``# weighted: false``
- edge-list row:     ``U V`` (unweighted) | ``U V 7/2`` (weighted)
- adjacency row:     ``U: V, W`` (unweighted) | ``U: V(3), W(7/2)`` | ``U:``
- matrix row:        one weight per node, ``0`` meaning "no edge"

Undirected adjacency lists state every edge in both rows; undirected
matrices must be symmetric.  The matrix format cannot express an edge of
weight 0, so serializing one raises :class:`~graphcrew.graph.GraphError`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graph import (
    Graph,
    GraphError,
    Weight,
    build_graph,
    coerce_weight,
    format_weight,
)

EDGE_LIST = "edge-list"
ADJACENCY_LIST = "adjacency-list"
ADJACENCY_MATRIX = "adjacency-matrix"

FORMATS: tuple[str, ...] = (EDGE_LIST, ADJACENCY_LIST, ADJACENCY_MATRIX)


class ParseError(GraphError):
    """Text did not match the format grammar.

    ``line`` and ``column`` are 1-based positions of the offending token.
    """

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DimensionMismatchError(ParseError):
    """A matrix row count or row length disagrees with the roster."""


def check_format(fmt: str) -> str:
    if fmt not in FORMATS:
        raise GraphError(f"unknown format {fmt!r} (known: {', '.join(FORMATS)})")
    return fmt


# --- serialization ---------------------------------------------------------


def serialize_graph(graph: Graph, fmt: str) -> str:
    check_format(fmt)
    if fmt == EDGE_LIST:
        return _serialize_edge_list(graph)
    if fmt == ADJACENCY_LIST:
        return _serialize_adjacency_list(graph)
    return _serialize_matrix(graph)


def _headers(graph: Graph, with_nodes: bool) -> list[str]:
    lines = []
    if with_nodes:
        lines.append("# nodes: " + " ".join(graph.node_names))
    lines.append(f"# directed: {'true' if graph.directed else 'false'}")
    lines.append(f"# weighted: {'true' if graph.weighted else 'false'}")
    return lines


def _serialize_edge_list(graph: Graph) -> str:
    lines = _headers(graph, with_nodes=True)
    for u, v, w in graph.edges:
        nu, nv = graph.node_names[u], graph.node_names[v]
        if graph.weighted:
            lines.append(f"{nu} {nv} {format_weight(w)}")
        else:
            lines.append(f"{nu} {nv}")
    return "\n".join(lines) + "\n"


def _serialize_adjacency_list(graph: Graph) -> str:
    # The roster is recoverable from the row labels, so no nodes header.
    lines = _headers(graph, with_nodes=False)
    neigh: list[list[tuple[int, Weight]]] = [[] for _ in graph.node_names]
    for u, v, w in graph.edges:
        neigh[u].append((v, w))
        if not graph.directed:
            neigh[v].append((u, w))
    for i, name in enumerate(graph.node_names):
        entries = []
        for j, w in sorted(neigh[i]):
            if graph.weighted:
                entries.append(f"{graph.node_names[j]}({format_weight(w)})")
            else:
                entries.append(graph.node_names[j])
        lines.append(f"{name}: " + ", ".join(entries) if entries else f"{name}:")
    return "\n".join(lines) + "\n"


def _serialize_matrix(graph: Graph) -> str:
    lines = _headers(graph, with_nodes=True)
    n = graph.node_count
    cells = [["0"] * n for _ in range(n)]
    for u, v, w in graph.edges:
        if w == 0:
            nu, nv = graph.node_names[u], graph.node_names[v]
            raise GraphError(
                f"weight 0 on {nu}-{nv} cannot be written in adjacency-matrix form"
            )
        cells[u][v] = format_weight(w)
        if not graph.directed:
            cells[v][u] = format_weight(w)
    for row in cells:
        lines.append(" ".join(row))
    return "\n".join(lines) + "\n"


# --- parsing ---------------------------------------------------------------


@dataclass
class _Headers:
    nodes: list[str] | None = None
    directed: bool | None = None
    weighted: bool | None = None


_HEADER_RE = re.compile(r"^#\s*(nodes|directed|weighted)\s*:\s*(.*)$")


def _parse_bool(value: str, lineno: int, column: int) -> bool:
    if value == "true":
        return True
    if value == "false":
        return False
    raise ParseError(f"expected 'true' or 'false', got {value!r}", lineno, column)


def _split_headers(text: str) -> tuple[_Headers, list[tuple[int, str]]]:
    """Separate header lines from body lines, keeping 1-based line numbers."""
    headers = _Headers()
    body: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _HEADER_RE.match(line)
            if not match:
                raise ParseError(f"bad header line {line!r}", lineno)
            key, value = match.group(1), match.group(2).strip()
            column = raw.index(":") + 2
            if key == "nodes":
                names = value.split()
                if not names:
                    raise ParseError("empty node roster", lineno, column)
                headers.nodes = names
            elif key == "directed":
                headers.directed = _parse_bool(value, lineno, column)
            else:
                headers.weighted = _parse_bool(value, lineno, column)
        else:
            body.append((lineno, line))
    return headers, body


def parse_graph(text: str, fmt: str) -> Graph:
    """Parse ``text`` in the given format into a canonical :class:`Graph`.

    Raises :class:`ParseError` (with line/column) on grammar violations,
    :class:`DimensionMismatchError` on matrix shape problems, and other
    :class:`~graphcrew.graph.GraphError` subclasses on semantic ones
    (duplicate edges, self-loops, negative weights).
    """
    check_format(fmt)
    headers, body = _split_headers(text)
    if fmt == EDGE_LIST:
        return _parse_edge_list(headers, body)
    if fmt == ADJACENCY_LIST:
        return _parse_adjacency_list(headers, body)
    return _parse_matrix(headers, body)


def _parse_edge_list(headers: _Headers, body: list[tuple[int, str]]) -> Graph:
    directed = bool(headers.directed)
    triples: list[tuple[str, str, Weight]] = []
    saw_weight = False
    for lineno, line in body:
        tokens = line.split()
        if len(tokens) == 2:
            triples.append((tokens[0], tokens[1], 1))
        elif len(tokens) == 3:
            saw_weight = True
            try:
                w = coerce_weight(tokens[2])
            except GraphError as exc:
                raise ParseError(str(exc), lineno, line.index(tokens[2]) + 1) from None
            triples.append((tokens[0], tokens[1], w))
        else:
            raise ParseError(f"expected 'U V' or 'U V W', got {line!r}", lineno)
    if headers.nodes is not None:
        names = headers.nodes
        roster = set(names)
        for lineno, line in body:
            for token in line.split()[:2]:
                if token not in roster:
                    raise ParseError(
                        f"endpoint {token!r} missing from roster", lineno, line.index(token) + 1
                    )
    else:
        names = sorted({name for u, v, _ in triples for name in (u, v)})
    weighted = headers.weighted if headers.weighted is not None else saw_weight
    return build_graph(names, directed, weighted, triples)


_ADJ_ROW_RE = re.compile(r"^(\S+)\s*:\s*(.*)$")
_ADJ_ENTRY_RE = re.compile(r"^(?P<name>[^()\s,]+)(?:\((?P<weight>[^()]+)\))?$")


def _parse_adjacency_list(headers: _Headers, body: list[tuple[int, str]]) -> Graph:
    directed = bool(headers.directed)
    rows: list[tuple[int, str, str]] = []
    names: list[str] = []
    for lineno, line in body:
        match = _ADJ_ROW_RE.match(line)
        if not match:
            raise ParseError(f"expected 'Name: neighbors', got {line!r}", lineno)
        rows.append((lineno, match.group(1), match.group(2).strip()))
        names.append(match.group(1))
    roster = set(names)
    saw_weight = False
    entries: list[tuple[str, str, Weight]] = []
    for lineno, name, rest in rows:
        if not rest:
            continue
        for chunk in rest.split(","):
            chunk = chunk.strip()
            match = _ADJ_ENTRY_RE.match(chunk)
            if not match:
                raise ParseError(f"bad neighbor entry {chunk!r}", lineno)
            other = match.group("name")
            if other not in roster:
                raise ParseError(f"neighbor {other!r} has no row of its own", lineno)
            if match.group("weight") is not None:
                saw_weight = True
                try:
                    w = coerce_weight(match.group("weight"))
                except GraphError as exc:
                    raise ParseError(str(exc), lineno) from None
            else:
                w = 1
            entries.append((name, other, w))
    weighted = headers.weighted if headers.weighted is not None else saw_weight
    if directed:
        return build_graph(names, True, weighted, entries)
    # Undirected rows state each edge twice; fold the mirrored statements
    # and insist they agree.
    folded: dict[tuple[str, str], Weight] = {}
    stated: set[tuple[str, str]] = set()
    for u, v, w in entries:
        key = (min(u, v), max(u, v))
        if (u, v) in stated:
            raise ParseError(f"edge {u}-{v} listed twice in one row", 1)
        stated.add((u, v))
        if key in folded and folded[key] != w:
            raise ParseError(
                f"edge {key[0]}-{key[1]} has weight {format_weight(w)} on one row "
                f"and {format_weight(folded[key])} on the other",
                1,
            )
        folded[key] = w
    for u, v in list(stated):
        if (v, u) not in stated:
            raise ParseError(f"edge {u}-{v} missing its mirror entry under {v!r}", 1)
    triples = [(u, v, w) for (u, v), w in folded.items()]
    return build_graph(names, False, weighted, triples)


def _parse_matrix(headers: _Headers, body: list[tuple[int, str]]) -> Graph:
    if headers.nodes is None:
        raise ParseError("adjacency-matrix text needs a '# nodes:' header", 1)
    names = headers.nodes
    directed = bool(headers.directed)
    weighted = headers.weighted if headers.weighted is not None else True
    n = len(names)
    if len(body) != n:
        raise DimensionMismatchError(
            f"expected {n} matrix rows for {n} nodes, got {len(body)}",
            body[-1][0] if body else 1,
        )
    cells: list[list[Weight]] = []
    for rowno, (lineno, line) in enumerate(body):
        tokens = line.split()
        if len(tokens) != n:
            raise DimensionMismatchError(
                f"row {rowno + 1} has {len(tokens)} entries, expected {n}", lineno
            )
        row: list[Weight] = []
        for colno, token in enumerate(tokens):
            try:
                w = coerce_weight(token)
            except GraphError as exc:
                raise ParseError(str(exc), lineno, line.index(token) + 1) from None
            if not weighted and w not in (0, 1):
                raise ParseError(
                    f"unweighted matrix entry must be 0 or 1, got {token}",
                    lineno,
                    line.index(token) + 1,
                )
            if rowno == colno and w != 0:
                raise ParseError(f"nonzero diagonal entry {token}", lineno)
            row.append(w)
        cells.append(row)
    triples: list[tuple[str, str, Weight]] = []
    if directed:
        for i in range(n):
            for j in range(n):
                if i != j and cells[i][j] != 0:
                    triples.append((names[i], names[j], cells[i][j]))
    else:
        for i in range(n):
            for j in range(i + 1, n):
                if cells[i][j] != cells[j][i]:
                    raise ParseError(
                        f"asymmetric entries for {names[i]}-{names[j]}: "
                        f"{format_weight(cells[i][j])} vs {format_weight(cells[j][i])}",
                        body[i][0],
                    )
                if cells[i][j] != 0:
                    triples.append((names[i], names[j], cells[i][j]))
    return build_graph(names, directed, weighted, triples)


# --- tolerant reading ------------------------------------------------------


@dataclass
class LooseEdgeList:
    """Best-effort read of edge-list-shaped text.

    Unlike :func:`parse_graph` this never raises: unreadable lines land
    in ``skipped``, duplicate edges are kept for the caller to merge, and
    missing headers leave the corresponding field ``None``.
    """

    names: list[str] | None
    directed: bool | None
    weighted: bool | None
    triples: list[tuple[str, str, Weight]]
    skipped: tuple[str, ...]


def read_edge_list_loose(text: str) -> LooseEdgeList:
    names: list[str] | None = None
    directed: bool | None = None
    weighted: bool | None = None
    triples: list[tuple[str, str, Weight]] = []
    skipped: list[str] = []
    saw_weight = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _HEADER_RE.match(line)
            if not match:
                skipped.append(line)
                continue
            key, value = match.group(1), match.group(2).strip()
            if key == "nodes":
                names = value.split() or None
            elif value in ("true", "false"):
                if key == "directed":
                    directed = value == "true"
                else:
                    weighted = value == "true"
            else:
                skipped.append(line)
            continue
        tokens = line.split()
        if len(tokens) == 2:
            triples.append((tokens[0], tokens[1], 1))
        elif len(tokens) == 3:
            try:
                w = coerce_weight(tokens[2])
            except GraphError:
                skipped.append(line)
                continue
            saw_weight = True
            triples.append((tokens[0], tokens[1], w))
        else:
            skipped.append(line)
    if weighted is None and saw_weight:
        weighted = True
    return LooseEdgeList(names, directed, weighted, triples, tuple(skipped))
