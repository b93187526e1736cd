"""Graph text formats and result-record writers.

graph6 goes through networkx after a character-range check so that malformed
input always surfaces as ``FormatError``. DIMACS ``.col`` and the plain edge list
are parsed here with line numbers in every error.
"""

from collections.abc import Iterator
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

import networkx as nx
from loguru import logger

from chibound.errors import FormatError, GraphError, Violation
from chibound.graph import Graph, GraphBuilder, from_networkx, to_networkx
from chibound.oracles import Coloring, verify_coloring
from chibound.patterns import Witness, get_pattern, verify_witness
from chibound.records import ColoringRecord, ViolationRecord, WitnessRecord

if TYPE_CHECKING:
    from chibound.coloring import BranchTrace

GRAPH6 = "graph6"
DIMACS = "dimacs"
EDGES = "edges"
FORMATS = (GRAPH6, DIMACS, EDGES)

GRAPH6_HEADER = ">>graph6<<"


@dataclass(frozen=True, slots=True)
class GraphDocument:
    """A graph read from text, with an optional label and its source format."""

    graph: Graph
    name: str | None
    source_format: str


def read_graph6(text: str) -> Graph:
    """Decode one graph6 line (header optional, trailing newline ignored).

    Raises:
        FormatError: On characters outside 63..126, a truncated or overlong bit
            vector, or a size field that does not match the data
    """
    line = text.strip()
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER) :]
    if not line:
        msg = "empty graph6 line"
        raise FormatError(msg, fmt=GRAPH6)
    bad = [ch for ch in line if not 63 <= ord(ch) <= 126]
    if bad:
        msg = f"character {bad[0]!r} outside the printable range 63-126"
        raise FormatError(msg, fmt=GRAPH6)
    try:
        graph = nx.from_graph6_bytes(line.encode("ascii"))
    except (ValueError, nx.NetworkXError) as e:
        msg = f"malformed graph6 data: {e}"
        raise FormatError(msg, fmt=GRAPH6) from e
    return from_networkx(graph)


def write_graph6(g: Graph) -> str:
    """Canonical graph6 line without header or newline."""
    return nx.to_graph6_bytes(to_networkx(g), header=False).decode("ascii").strip()


def _int_token(token: str, fmt: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        msg = f"expected an integer, got {token!r}"
        raise FormatError(msg, fmt=fmt, line=line_no) from None


def _parse_dimacs(text: str) -> GraphDocument:
    builder: GraphBuilder | None = None
    name: str | None = None
    declared_edges = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        kind = tokens[0]
        if kind == "c":
            if name is None and len(tokens) > 1:
                name = " ".join(tokens[1:])
            continue
        if kind == "p":
            if builder is not None:
                msg = "second problem line"
                raise FormatError(msg, fmt=DIMACS, line=line_no)
            if len(tokens) != 4 or tokens[1] not in {"edge", "col"}:
                msg = f"expected 'p edge <n> <m>', got {raw.strip()!r}"
                raise FormatError(msg, fmt=DIMACS, line=line_no)
            n = _int_token(tokens[2], DIMACS, line_no)
            declared_edges = _int_token(tokens[3], DIMACS, line_no)
            if n < 0 or declared_edges < 0:
                msg = "vertex and edge counts must be non-negative"
                raise FormatError(msg, fmt=DIMACS, line=line_no)
            builder = GraphBuilder(n)
            continue
        if kind == "e":
            if builder is None:
                msg = "edge line before the 'p edge' header"
                raise FormatError(msg, fmt=DIMACS, line=line_no)
            if len(tokens) != 3:
                msg = f"expected 'e <u> <v>', got {raw.strip()!r}"
                raise FormatError(msg, fmt=DIMACS, line=line_no)
            u = _int_token(tokens[1], DIMACS, line_no)
            v = _int_token(tokens[2], DIMACS, line_no)
            for w in (u, v):
                if not 1 <= w <= builder.n:
                    msg = f"vertex {w} outside 1..{builder.n}"
                    raise FormatError(msg, fmt=DIMACS, line=line_no)
            try:
                builder.add_edge(u - 1, v - 1)
            except GraphError as e:
                raise FormatError(str(e), fmt=DIMACS, line=line_no) from e
            continue
        msg = f"unknown line type {kind!r}"
        raise FormatError(msg, fmt=DIMACS, line=line_no)
    if builder is None:
        msg = "missing 'p edge <n> <m>' header"
        raise FormatError(msg, fmt=DIMACS)
    graph = builder.build()
    if graph.edge_count != declared_edges:
        logger.debug(f"DIMACS header declares {declared_edges} edges, read {graph.edge_count} distinct")
    return GraphDocument(graph, name, DIMACS)


def read_dimacs_col(text: str) -> Graph:
    """Parse DIMACS ``.col`` text; duplicate and reversed edge lines are tolerated."""
    return _parse_dimacs(text).graph


def write_dimacs_col(g: Graph, name: str | None = None) -> str:
    lines = [f"c {name}"] if name else []
    lines.append(f"p edge {g.n} {g.edge_count}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    """Parse ``n=<k>`` followed by 0-indexed ``u v`` lines; ``#`` starts a comment."""
    builder: GraphBuilder | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        if builder is None:
            if not content.startswith("n="):
                msg = f"first line must be 'n=<k>', got {content!r}"
                raise FormatError(msg, fmt=EDGES, line=line_no)
            n = _int_token(content[2:].strip(), EDGES, line_no)
            if n < 0:
                msg = f"vertex count cannot be negative: {n}"
                raise FormatError(msg, fmt=EDGES, line=line_no)
            builder = GraphBuilder(n)
            continue
        tokens = content.split()
        if len(tokens) != 2:
            msg = f"expected two vertex indices, got {content!r}"
            raise FormatError(msg, fmt=EDGES, line=line_no)
        u = _int_token(tokens[0], EDGES, line_no)
        v = _int_token(tokens[1], EDGES, line_no)
        try:
            builder.add_edge(u, v)
        except GraphError as e:
            raise FormatError(str(e), fmt=EDGES, line=line_no) from e
    if builder is None:
        msg = "missing 'n=<k>' line"
        raise FormatError(msg, fmt=EDGES)
    return builder.build()


def write_edge_list(g: Graph) -> str:
    lines = [f"n={g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        msg = f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}"
        raise FormatError(msg, fmt=fmt)


def read_graph(text: str, fmt: str) -> Graph:
    _check_format(fmt)
    if fmt == GRAPH6:
        return read_graph6(text)
    if fmt == DIMACS:
        return read_dimacs_col(text)
    return read_edge_list(text)


def write_graph(g: Graph, fmt: str) -> str:
    """Serialise in ``fmt``; graph6 output ends with a newline like the other formats."""
    _check_format(fmt)
    if fmt == GRAPH6:
        return write_graph6(g) + "\n"
    if fmt == DIMACS:
        return write_dimacs_col(g)
    return write_edge_list(g)


def read_documents(text: str, fmt: str) -> Iterator[GraphDocument]:
    """Stream documents: one per nonblank graph6 line, one per DIMACS or edge-list text.

    Raises:
        FormatError: With the 1-based line number for graph6 streams
    """
    _check_format(fmt)
    if fmt == GRAPH6:
        for line_no, raw in enumerate(text.splitlines(), start=1):
            if not raw.strip():
                continue
            try:
                graph = read_graph6(raw)
            except FormatError as e:
                raise FormatError(e.detail, fmt=GRAPH6, line=line_no) from e
            yield GraphDocument(graph, None, GRAPH6)
    elif fmt == DIMACS:
        yield _parse_dimacs(text)
    else:
        yield GraphDocument(read_edge_list(text), None, EDGES)


def load_documents(path: str | Path, fmt: str) -> list[GraphDocument]:
    """Read every graph in a file.

    Raises:
        FileNotFoundError: If the file doesn't exist
        FormatError: If the content does not parse
    """
    file_path = Path(path)
    if not file_path.exists():
        msg = f"Graph file not found: {path}"
        logger.error(msg)
        raise FileNotFoundError(msg)
    logger.debug(f"Reading {fmt} graphs from {file_path}")
    documents = list(read_documents(file_path.read_text(encoding="utf-8"), fmt))
    logger.info(f"Loaded {len(documents)} graphs from {file_path}")
    return documents


def witness_record(witness: Witness, g: Graph | None = None) -> WitnessRecord:
    verified = verify_witness(g, get_pattern(witness.pattern), witness) if g is not None else None
    return WitnessRecord(pattern=witness.pattern, vertices=list(witness.vertices), verified=verified)


def coloring_record(coloring: Coloring, g: Graph | None = None) -> ColoringRecord:
    proper = verify_coloring(g, coloring) if g is not None else coloring.verified
    return ColoringRecord(colors=coloring.assignment, colors_used=coloring.colors_used, proper=proper)


def violation_record(violation: Violation, branch: str | None = None) -> ViolationRecord:
    return ViolationRecord(
        name=violation.name,
        message=violation.message,
        vertices=list(violation.vertices),
        details=dict(violation.details),
        branch=branch,
    )


def write_witness_json(witness: Witness, g: Graph | None = None) -> str:
    return witness_record(witness, g).model_dump_json()


def write_coloring_json(coloring: Coloring, g: Graph | None = None) -> str:
    """Flat record such as ``{"0":1,"1":2,"colors_used":2,"proper":true}``."""
    return coloring_record(coloring, g).model_dump_json()


def write_trace_json(trace: "BranchTrace") -> str:
    return trace.to_record().model_dump_json()


def write_violation_json(violation: Violation, branch: str | None = None) -> str:
    return violation_record(violation, branch).model_dump_json()
