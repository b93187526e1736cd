"""Immutable simple graphs over dense vertex indices.

Adjacency is stored as one bitmask row per vertex, so neighbourhood
intersections are single integer operations. Graph values never change after
construction; ``GraphBuilder`` is the mutable side.
"""

import hashlib
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import networkx as nx

from chibound.bits import full_mask, iter_bits, members, to_mask
from chibound.errors import GraphError

VertexSet = frozenset[int]


@dataclass(frozen=True, slots=True)
class Graph:
    """A finite simple undirected graph on vertices ``0..n-1``.

    Attributes:
        n: Vertex count
        rows: ``rows[v]`` is the neighbourhood bitmask of ``v``
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            msg = f"vertex count cannot be negative: {self.n}"
            raise GraphError(msg)
        if len(self.rows) != self.n:
            msg = f"expected {self.n} adjacency rows, got {len(self.rows)}"
            raise GraphError(msg)
        universe = full_mask(self.n)
        for v, row in enumerate(self.rows):
            if row & ~universe:
                msg = f"row {v} references vertices outside 0..{self.n - 1}"
                raise GraphError(msg)
            if row >> v & 1:
                msg = f"self-loop at vertex {v}"
                raise GraphError(msg)
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    msg = f"asymmetric adjacency between {v} and {u}"
                    raise GraphError(msg)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from an edge iterable; duplicates and reversed pairs are tolerated."""
        builder = GraphBuilder(n)
        for u, v in edges:
            builder.add_edge(u, v)
        return builder.build()

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            msg = f"vertex {v} out of range 0..{self.n - 1}"
            raise GraphError(msg)

    def has_edge(self, u: int, v: int) -> bool:
        self.check_vertex(u)
        self.check_vertex(v)
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return self.rows[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(u, v)`` with ``u < v``, in ascending order."""
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def mask(self, vertices: Iterable[int]) -> int:
        """Bitmask of a vertex collection, validating every member."""
        result = 0
        for v in vertices:
            self.check_vertex(v)
            result |= 1 << v
        return result


class GraphBuilder:
    """Mutable adjacency rows that freeze into a ``Graph``."""

    def __init__(self, n: int, rows: Iterable[int] | None = None):
        if n < 0:
            msg = f"vertex count cannot be negative: {n}"
            raise GraphError(msg)
        self.n = n
        self.rows = list(rows) if rows is not None else [0] * n

    @classmethod
    def from_graph(cls, g: Graph) -> "GraphBuilder":
        return cls(g.n, g.rows)

    def _check(self, u: int, v: int) -> None:
        for w in (u, v):
            if not 0 <= w < self.n:
                msg = f"vertex {w} out of range 0..{self.n - 1}"
                raise GraphError(msg)
        if u == v:
            msg = f"self-loop at vertex {u}"
            raise GraphError(msg)

    def add_edge(self, u: int, v: int) -> None:
        self._check(u, v)
        self.rows[u] |= 1 << v
        self.rows[v] |= 1 << u

    def remove_edge(self, u: int, v: int) -> None:
        self._check(u, v)
        self.rows[u] &= ~(1 << v)
        self.rows[v] &= ~(1 << u)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def build(self) -> Graph:
        return Graph(self.n, tuple(self.rows))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((v, v + 1) for v in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        msg = f"a cycle needs at least 3 vertices, got {n}"
        raise GraphError(msg)
    return Graph.from_edges(n, ((v, (v + 1) % n) for v in range(n)))


def complete_graph(n: int) -> Graph:
    universe = full_mask(n)
    return Graph(n, tuple(universe & ~(1 << v) for v in range(n)))


def complete_multipartite_graph(sizes: Iterable[int]) -> Graph:
    """Complete multipartite graph; parts occupy consecutive vertex ranges in order."""
    sizes = list(sizes)
    if any(s < 0 for s in sizes):
        msg = f"part sizes must be non-negative: {sizes}"
        raise GraphError(msg)
    n = sum(sizes)
    universe = full_mask(n)
    rows = []
    start = 0
    for size in sizes:
        part = full_mask(size) << start
        rows.extend(universe & ~part for _ in range(size))
        start += size
    return Graph(n, tuple(rows))


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Subgraph induced by ``s``, relabelled by ascending order of ``s``.

    Raises:
        GraphError: If ``s`` contains an out-of-range vertex
    """
    order = sorted(set(s))
    for v in order:
        g.check_vertex(v)
    position = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        rows.append(to_mask(position[u] for u in iter_bits(g.rows[v]) if u in position))
    return Graph(len(order), tuple(rows))


def complement(g: Graph) -> Graph:
    universe = full_mask(g.n)
    return Graph(g.n, tuple(~row & universe & ~(1 << v) for v, row in enumerate(g.rows)))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """``g1`` followed by ``g2`` with its vertices offset by ``g1.n``; no cross edges."""
    return Graph(g1.n + g2.n, g1.rows + tuple(row << g1.n for row in g2.rows))


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    left = full_mask(g1.n)
    right = full_mask(g2.n) << g1.n
    rows = tuple(row | right for row in g1.rows) + tuple(row << g1.n | left for row in g2.rows)
    return Graph(g1.n + g2.n, rows)


def neighbors(g: Graph, v: int) -> VertexSet:
    g.check_vertex(v)
    return members(g.rows[v])


def neighbors_in(g: Graph, v: int, s: Iterable[int]) -> VertexSet:
    g.check_vertex(v)
    return members(g.rows[v] & g.mask(s))


def _disjoint_masks(g: Graph, x: Iterable[int], y: Iterable[int]) -> tuple[int, int]:
    xm, ym = g.mask(x), g.mask(y)
    if xm & ym:
        msg = f"vertex sets overlap on {sorted(members(xm & ym))}"
        raise GraphError(msg)
    return xm, ym


def complete_between_masks(g: Graph, xm: int, ym: int) -> bool:
    return all(ym & ~g.rows[v] == 0 for v in iter_bits(xm))


def anticomplete_between_masks(g: Graph, xm: int, ym: int) -> bool:
    return all(ym & g.rows[v] == 0 for v in iter_bits(xm))


def is_complete_between(g: Graph, x: Iterable[int], y: Iterable[int]) -> bool:
    """True iff every vertex of ``x`` is adjacent to every vertex of ``y``."""
    xm, ym = _disjoint_masks(g, x, y)
    return complete_between_masks(g, xm, ym)


def is_anticomplete_between(g: Graph, x: Iterable[int], y: Iterable[int]) -> bool:
    """True iff no edge joins ``x`` and ``y``."""
    xm, ym = _disjoint_masks(g, x, y)
    return anticomplete_between_masks(g, xm, ym)


def is_stable_mask(g: Graph, mask: int) -> bool:
    return all(g.rows[v] & mask == 0 for v in iter_bits(mask))


def is_clique_mask(g: Graph, mask: int) -> bool:
    return all(mask & ~g.rows[v] == 1 << v for v in iter_bits(mask))


def components_mask(g: Graph, mask: int) -> list[int]:
    """Connected components of ``g[mask]`` as bitmasks, ordered by least vertex."""
    result = []
    remaining = mask
    while remaining:
        seed = remaining & -remaining
        component = seed
        frontier = seed
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= g.rows[v]
            frontier = reach & mask & ~component
            component |= frontier
        result.append(component)
        remaining &= ~component
    return result


def to_networkx(g: Graph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(g.n))
    graph.add_edges_from(g.edges())
    return graph


def from_networkx(graph: nx.Graph) -> Graph:
    """Convert a networkx graph whose nodes are exactly ``0..n-1``."""
    n = graph.number_of_nodes()
    if set(graph.nodes) != set(range(n)):
        msg = "networkx graph nodes must be the integers 0..n-1"
        raise GraphError(msg)
    return Graph.from_edges(n, ((u, v) for u, v in graph.edges() if u != v))


def graph_hash(g: Graph) -> str:
    """SHA-256 hex digest of the canonical graph6 encoding."""
    data = nx.to_graph6_bytes(to_networkx(g), header=False).strip()
    return hashlib.sha256(data).hexdigest()
