"""Named graphs, the tight extremal family, and sampled or enumerated class members."""

import random
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations

import networkx as nx
from loguru import logger

from chibound.errors import PreconditionError
from chibound.graph import Graph, GraphBuilder, cycle_graph, from_networkx, to_networkx
from chibound.patterns import HVN, is_class_member

MAX_ENUMERATION_N = 7


def hvn() -> Graph:
    """K5 with two edges sharing an endpoint removed."""
    return HVN.template


def mycielski(g: Graph) -> Graph:
    """Mycielskian: originals keep their ids, shadow of v is n + v, apex is 2n."""
    return from_networkx(nx.mycielskian(to_networkx(g)))


def grotzsch() -> Graph:
    """The 11-vertex Mycielskian of C5: triangle-free with chromatic number 4."""
    return mycielski(cycle_graph(5))


def _extremal_id(omega: int, side: int, part: int, index: int) -> int:
    return side * omega * omega + (part - 1) * omega + (index - 1)


def extremal(omega: int) -> Graph:
    """Two complete ω-partite graphs with parts of size ω joined by a perfect matching.

    Vertex ``(part p, index q)`` of the first side is ``(p-1)·ω + (q-1)``; the second
    side follows at offset ω². First-side vertex (p, q) is matched to second-side
    vertex (q, p), so each part meets every part of the other side exactly once.

    Raises:
        PreconditionError: If ``omega`` < 4
    """
    if omega < 4:
        msg = f"extremal family needs ω ≥ 4, got {omega}"
        raise PreconditionError(msg, kind="omega")
    builder = GraphBuilder(2 * omega * omega)
    parts = range(1, omega + 1)
    for side in (0, 1):
        for p1, p2 in combinations(parts, 2):
            for q1 in parts:
                for q2 in parts:
                    builder.add_edge(_extremal_id(omega, side, p1, q1), _extremal_id(omega, side, p2, q2))
    for p in parts:
        for q in parts:
            builder.add_edge(_extremal_id(omega, 0, p, q), _extremal_id(omega, 1, q, p))
    return builder.build()


@dataclass(frozen=True, slots=True)
class LowerBoundCount:
    """Counting refutation of a (⌈4ω/3⌉ − 1)-colouring of ``extremal(ω)``.

    At least ``forced`` parts on each side get a single colour, and the one-colour
    parts of the second side may only use ``available`` colours; fewer colours than
    parts is the contradiction.
    """

    omega: int
    forced: int
    available: int

    @property
    def refutes(self) -> bool:
        return self.available < self.forced


def extremal_lower_bound(omega: int) -> LowerBoundCount:
    if omega < 4:
        msg = f"extremal family needs ω ≥ 4, got {omega}"
        raise PreconditionError(msg, kind="omega")
    third = -(-omega // 3)
    return LowerBoundCount(omega, omega - third + 1, 2 * third - 2)


def sample_class_member(n: int, density: float = 0.5, seed: int | None = None) -> Graph:
    """Random graph repaired into the class by deleting edges.

    Each pair is an edge with probability ``density``; then, while a forbidden
    pattern is present, one edge of its witness, chosen uniformly, is removed. The
    edge count drops every round, so the loop ends.

    Raises:
        PreconditionError: If ``n`` < 1 or ``density`` is outside [0, 1]
    """
    if n < 1:
        msg = f"n must be at least 1, got {n}"
        raise PreconditionError(msg, kind="sample")
    if not 0.0 <= density <= 1.0:
        msg = f"density must be in [0, 1], got {density}"
        raise PreconditionError(msg, kind="sample")
    rng = random.Random(seed)
    builder = GraphBuilder(n)
    for u, v in combinations(range(n), 2):
        if rng.random() < density:
            builder.add_edge(u, v)
    repairs = 0
    while True:
        g = builder.build()
        member, witness = is_class_member(g)
        if member:
            break
        inside = [(u, v) for u, v in combinations(sorted(witness.vertices), 2) if g.has_edge(u, v)]
        builder.remove_edge(*rng.choice(inside))
        repairs += 1
    logger.debug(f"sampled n={n} density={density} seed={seed}: {repairs} repairs, {g.edge_count} edges")
    return g


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def enumerate_labeled_graphs(n: int, start: int = 0, stop: int | None = None) -> Iterator[Graph]:
    """Labeled graphs whose edge code lies in ``[start, stop)``.

    Bit ``b`` of the code is the ``b``-th pair ``(u, v)``, ``u < v``, in
    lexicographic order, so ranges partition the stream for parallel runs.
    """
    if n < 0 or n > MAX_ENUMERATION_N:
        msg = f"enumeration supports 0 <= n <= {MAX_ENUMERATION_N}, got {n}"
        raise PreconditionError(msg, kind="enumeration-size")
    pairs = _pairs(n)
    total = 1 << len(pairs)
    stop = total if stop is None else min(stop, total)
    for code in range(max(start, 0), stop):
        rows = [0] * n
        bit = 0
        while code >> bit:
            if code >> bit & 1:
                u, v = pairs[bit]
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            bit += 1
        yield Graph(n, tuple(rows))


def dedup_isomorphic(graphs: Iterable[Graph]) -> list[Graph]:
    """First representative of each isomorphism class, in input order.

    Candidates are bucketed by Weisfeiler-Lehman hash and compared with networkx
    ``is_isomorphic`` inside a bucket.
    """
    buckets: dict[str, list[nx.Graph]] = {}
    kept: list[Graph] = []
    for g in graphs:
        graph = to_networkx(g)
        key = f"{g.n}:{g.edge_count}:{nx.weisfeiler_lehman_graph_hash(graph)}"
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(graph, other) for other in bucket):
            continue
        bucket.append(graph)
        kept.append(g)
    return kept


def enumerate_class_members(n: int, *, dedup: bool = False) -> Iterator[Graph]:
    """Labeled class members on ``n`` vertices, or one per isomorphism class with ``dedup``.

    Raises:
        PreconditionError: If ``n`` > 7
    """
    members = (g for g in enumerate_labeled_graphs(n) if is_class_member(g)[0])
    if dedup:
        yield from dedup_isomorphic(members)
    else:
        yield from members
