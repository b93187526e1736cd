"""Maximum bipartite matching and Hall-violator extraction.

Left vertices are ``0..left_size-1`` and right vertices ``0..right_size-1``; the
networkx graph tags them ``("L", i)`` and ``("R", j)`` so the sides never collide.
"""

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

import networkx as nx

from chibound.errors import GraphError


@dataclass(frozen=True, slots=True)
class MatchingResult:
    """A maximum matching as ``(left, right)`` pairs."""

    pairs: frozenset[tuple[int, int]]
    left_size: int

    @property
    def saturates_left(self) -> bool:
        return len(self.pairs) == self.left_size

    def partner_of_left(self) -> dict[int, int]:
        return dict(self.pairs)


def _checked_edges(left_size: int, right_size: int, edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    if left_size < 0 or right_size < 0:
        msg = f"side sizes must be non-negative, got {left_size} and {right_size}"
        raise GraphError(msg)
    checked = []
    for left, right in edges:
        if not 0 <= left < left_size or not 0 <= right < right_size:
            msg = f"edge ({left}, {right}) outside {left_size}x{right_size}"
            raise GraphError(msg)
        checked.append((left, right))
    return sorted(set(checked))


def max_bipartite_matching(
    left_size: int, right_size: int, edges: Iterable[tuple[int, int]]
) -> MatchingResult:
    """Maximum-cardinality matching by Hopcroft-Karp.

    Args:
        left_size: Number of left vertices
        right_size: Number of right vertices
        edges: ``(left, right)`` pairs; duplicates are ignored

    Returns:
        MatchingResult with ``saturates_left`` set when every left vertex is matched

    Raises:
        GraphError: If an edge endpoint is out of range
    """
    checked = _checked_edges(left_size, right_size, edges)
    graph = nx.Graph()
    top = [("L", i) for i in range(left_size)]
    graph.add_nodes_from(top)
    graph.add_nodes_from(("R", j) for j in range(right_size))
    graph.add_edges_from((("L", u), ("R", v)) for u, v in checked)
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=top)
    pairs = frozenset((node[1], partner[1]) for node, partner in matching.items() if node[0] == "L")
    return MatchingResult(pairs, left_size)


def hall_violator(
    left_size: int,
    right_size: int,
    edges: Iterable[tuple[int, int]],
    matching: MatchingResult | None = None,
) -> frozenset[int] | None:
    """A left set S with ``|N(S)| < |S|``, or None when a saturating matching exists.

    Starting at an unmatched left vertex, S is everything reachable by alternating
    paths (any edge rightwards, matched edges leftwards); every right vertex reached
    is matched, so ``|N(S)| = |S| - 1``.
    """
    checked = _checked_edges(left_size, right_size, edges)
    if matching is None:
        matching = max_bipartite_matching(left_size, right_size, checked)
    if matching.saturates_left:
        return None
    adjacency: dict[int, list[int]] = {u: [] for u in range(left_size)}
    for u, v in checked:
        adjacency[u].append(v)
    left_of_right = {v: u for u, v in matching.pairs}
    matched_left = set(matching.partner_of_left())
    start = next(u for u in range(left_size) if u not in matched_left)

    reached = {start}
    seen_right: set[int] = set()
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if v in seen_right:
                continue
            seen_right.add(v)
            w = left_of_right[v]
            if w not in reached:
                reached.add(w)
                queue.append(w)
    return frozenset(reached)
