"""Cotree recognition and optimal colouring of P4-free graphs.

A graph on two or more vertices is P4-free exactly when it or its complement is
disconnected, and the same holds for every induced subgraph. Splitting on
components and co-components therefore builds the cotree or gets stuck on a
connected, co-connected piece, which must contain an induced P4.
"""

from dataclasses import dataclass
from enum import StrEnum

from chibound.bits import full_mask, iter_bits, lowest
from chibound.graph import Graph, components_mask


class NodeKind(StrEnum):
    LEAF = "leaf"
    UNION = "union"
    JOIN = "join"


@dataclass(frozen=True, slots=True)
class Cotree:
    """A node of a cotree over the vertices in ``mask``."""

    kind: NodeKind
    mask: int
    children: tuple["Cotree", ...] = ()

    @property
    def vertex(self) -> int:
        return lowest(self.mask)

    def chromatic_number(self) -> int:
        """Colours needed: max over a union, sum over a join (cographs are perfect)."""
        if self.kind is NodeKind.LEAF:
            return 1
        values = [child.chromatic_number() for child in self.children]
        return max(values, default=0) if self.kind is NodeKind.UNION else sum(values)

    def coloring(self) -> dict[int, int]:
        """An optimal colouring with colours ``0..chromatic_number()-1``."""
        if self.kind is NodeKind.LEAF:
            return {self.vertex: 0}
        result: dict[int, int] = {}
        offset = 0
        for child in self.children:
            sub = child.coloring()
            for v, c in sub.items():
                result[v] = c + offset
            if self.kind is NodeKind.JOIN:
                offset += max(sub.values()) + 1
        return result


def _co_components(g: Graph, mask: int) -> list[int]:
    result = []
    remaining = mask
    while remaining:
        seed = remaining & -remaining
        component = seed
        frontier = seed
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= ~g.rows[v]
            frontier = reach & mask & ~component
            component |= frontier
        result.append(component)
        remaining &= ~component
    return result


def build_cotree(g: Graph, mask: int | None = None) -> Cotree | None:
    """Cotree of ``g[mask]`` (whole graph by default), or None if it has an induced P4."""
    if mask is None:
        mask = full_mask(g.n)
    if mask == 0:
        return Cotree(NodeKind.UNION, 0)
    if mask & (mask - 1) == 0:
        return Cotree(NodeKind.LEAF, mask)
    parts = components_mask(g, mask)
    kind = NodeKind.UNION
    if len(parts) == 1:
        parts = _co_components(g, mask)
        kind = NodeKind.JOIN
        if len(parts) == 1:
            return None
    children = []
    for part in parts:
        child = build_cotree(g, part)
        if child is None:
            return None
        children.append(child)
    return Cotree(kind, mask, tuple(children))


def is_cograph(g: Graph) -> bool:
    return build_cotree(g) is not None
