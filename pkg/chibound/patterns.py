"""Induced-pattern detection with explicit witnesses.

The primary detector is an ordered backtracking matcher over bitset rows: template
vertex ``i`` is mapped to the smallest graph vertex consistent with all earlier
choices, so the first embedding found is the lexicographically least one. Template
vertex orders are chosen so the search prunes early (an edge first for P2∪P4, a K4
first for HVN). When a pattern is absent, a faster specialised test answers first.
The networkx VF2 matcher is kept as an independent cross-check.
"""

from dataclasses import dataclass

import networkx as nx
from loguru import logger

from chibound.bits import full_mask, iter_bits, lowest
from chibound.cograph import is_cograph
from chibound.errors import GraphError, PatternTooLargeError, PreconditionError, StructureViolation, Violation
from chibound.graph import (
    Graph,
    anticomplete_between_masks,
    complete_graph,
    cycle_graph,
    disjoint_union,
    is_clique_mask,
    path_graph,
    to_networkx,
)

MAX_TEMPLATE = 6


@dataclass(frozen=True, slots=True)
class Pattern:
    """A named template graph; witnesses list graph vertices in template order."""

    name: str
    template: Graph


@dataclass(frozen=True, slots=True)
class Witness:
    """Vertices realising ``pattern``: ``vertices[i]`` plays template vertex ``i``."""

    pattern: str
    vertices: tuple[int, ...]


def _hvn() -> Graph:
    # K5 minus 42 and 43: 0,1 have degree 4, 2,3 degree 3, 4 degree 2; 0..3 is a K4
    edges = [(u, v) for u in range(5) for v in range(u + 1, 5) if (u, v) not in {(2, 4), (3, 4)}]
    return Graph.from_edges(5, edges)


def _diamond() -> Graph:
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


P2_P4 = Pattern("P2∪P4", disjoint_union(path_graph(2), path_graph(4)))
HVN = Pattern("HVN", _hvn())
P4 = Pattern("P4", path_graph(4))
P2_P3 = Pattern("P2∪P3", disjoint_union(path_graph(2), path_graph(3)))
DIAMOND = Pattern("diamond", _diamond())
C4 = Pattern("C4", cycle_graph(4))
C5 = Pattern("C5", cycle_graph(5))
TWO_K2 = Pattern("2K2", disjoint_union(path_graph(2), path_graph(2)))


def clique_pattern(t: int) -> Pattern:
    return Pattern(f"K{t}", complete_graph(t))


PATTERNS: dict[str, Pattern] = {
    p.name: p
    for p in (P2_P4, HVN, P4, P2_P3, DIAMOND, C4, C5, TWO_K2, *(clique_pattern(t) for t in range(1, 7)))
}


def get_pattern(name: str) -> Pattern:
    try:
        return PATTERNS[name]
    except KeyError:
        msg = f"unknown pattern {name!r}; known: {sorted(PATTERNS)}"
        raise PreconditionError(msg, kind="unknown-pattern") from None


def _lex_least_embedding(g: Graph, template: Graph, mask: int) -> tuple[int, ...] | None:
    p = template.n
    chosen = [0] * p
    t_rows = template.rows

    def extend(i: int, used: int) -> bool:
        if i == p:
            return True
        candidates = mask & ~used
        for j in range(i):
            if t_rows[i] >> j & 1:
                candidates &= g.rows[chosen[j]]
            else:
                candidates &= ~g.rows[chosen[j]]
        for v in iter_bits(candidates):
            chosen[i] = v
            if extend(i + 1, used | 1 << v):
                return True
        return False

    return tuple(chosen) if extend(0, 0) else None


def find_p4_mask(g: Graph, mask: int) -> bool:
    """Whether ``g[mask]`` has an induced P4, scanning middle edges b-c.

    a must be a private neighbour of b, d a private neighbour of c, and a≁d.
    """
    for b in iter_bits(mask):
        nb = g.rows[b] & mask
        for c in iter_bits(nb & ~((1 << (b + 1)) - 1)):
            nc = g.rows[c] & mask
            ends_b = nb & ~nc & ~(1 << c)
            ends_c = nc & ~nb & ~(1 << b)
            if not ends_b or not ends_c:
                continue
            for a in iter_bits(ends_b):
                if ends_c & ~g.rows[a]:
                    return True
    return False


def _has_p2_p4(g: Graph) -> bool:
    universe = full_mask(g.n)
    for u, v in g.edges():
        far = universe & ~(g.rows[u] | g.rows[v] | 1 << u | 1 << v)
        if far.bit_count() >= 4 and find_p4_mask(g, far):
            return True
    return False


_FAST_ABSENCE = {
    P4.name: lambda g: find_p4_mask(g, full_mask(g.n)),
    P2_P4.name: _has_p2_p4,
}


def find_induced(g: Graph, p: Pattern) -> Witness | None:
    """Lexicographically least induced copy of ``p`` in ``g``, or None.

    Raises:
        PatternTooLargeError: If the template has more than six vertices
    """
    if p.template.n > MAX_TEMPLATE:
        msg = f"template {p.name} has {p.template.n} vertices; at most {MAX_TEMPLATE} supported"
        raise PatternTooLargeError(msg)
    if g.n < p.template.n:
        return None
    fast = _FAST_ABSENCE.get(p.name)
    if fast is not None and not fast(g):
        return None
    found = _lex_least_embedding(g, p.template, full_mask(g.n))
    if found is None:
        if fast is not None:
            msg = f"fast detector and ordered matcher disagree on {p.name}"
            raise StructureViolation(Violation("detector-agreement", msg))
        return None
    return Witness(p.name, found)


def find_induced_vf2(g: Graph, p: Pattern) -> Witness | None:
    """Independent detector using networkx VF2 node-induced subgraph isomorphism."""
    if g.n < p.template.n:
        return None
    matcher = nx.isomorphism.GraphMatcher(to_networkx(g), to_networkx(p.template))
    for mapping in matcher.subgraph_isomorphisms_iter():
        inverse = {t: v for v, t in mapping.items()}
        return Witness(p.name, tuple(inverse[t] for t in range(p.template.n)))
    return None


def verify_witness(g: Graph, p: Pattern, witness: Witness) -> bool:
    """Re-check every vertex pair of the witness against the template."""
    vertices = witness.vertices
    if len(vertices) != p.template.n or len(set(vertices)) != len(vertices):
        return False
    if any(not 0 <= v < g.n for v in vertices):
        return False
    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            if g.has_edge(vertices[i], vertices[j]) != p.template.has_edge(i, j):
                return False
    return True


def is_class_member(g: Graph) -> tuple[bool, Witness | None]:
    """Whether ``g`` is (P2∪P4, HVN)-free; otherwise the first violating witness."""
    for pattern in (HVN, P2_P4):
        witness = find_induced(g, pattern)
        if witness is not None:
            logger.debug(f"{pattern.name} found at {witness.vertices}")
            return False, witness
    return True, None


def is_p4_free(g: Graph, method: str = "both") -> bool:
    """P4-freeness by template search, by cotree recognition, or both (which must agree)."""
    if method == "template":
        return find_induced(g, P4) is None
    if method == "cotree":
        return is_cograph(g)
    by_template = find_induced(g, P4) is None
    by_cotree = is_cograph(g)
    if by_template != by_cotree:
        msg = f"template search says {by_template}, cotree recognition says {by_cotree}"
        raise StructureViolation(Violation("p4-detector-agreement", msg))
    return by_template


def matching_p4_check(g: Graph, x: frozenset[int], y: frozenset[int]) -> Witness:
    """Build an induced P4 inside two cliques joined by a nonempty matching.

    With ``|y| >= 3`` (sides swapped otherwise), take a cross edge x1y1, any other
    x2 in x and a y3 in y, other than y1, not matched to x2: x2-x1-y1-y3 is induced.

    Raises:
        PreconditionError: kind ``not-cliques``, ``sizes``, ``not-matching`` or
            ``empty-matching``
    """
    xm, ym = g.mask(x), g.mask(y)
    if xm & ym:
        msg = "x and y must be disjoint"
        raise GraphError(msg)
    if not is_clique_mask(g, xm) or not is_clique_mask(g, ym):
        msg = "x and y must both be cliques"
        raise PreconditionError(msg, kind="not-cliques")
    if min(len(x), len(y)) < 2 or max(len(x), len(y)) < 3:
        msg = f"need min size >= 2 and max size >= 3, got {len(x)} and {len(y)}"
        raise PreconditionError(msg, kind="sizes")
    cross = {v: g.rows[v] & ym for v in iter_bits(xm)}
    if any(m.bit_count() > 1 for m in cross.values()) or any(
        (g.rows[w] & xm).bit_count() > 1 for w in iter_bits(ym)
    ):
        msg = "edges between x and y do not form a matching"
        raise PreconditionError(msg, kind="not-matching")
    if anticomplete_between_masks(g, xm, ym):
        msg = "the matching between x and y is empty"
        raise PreconditionError(msg, kind="empty-matching")

    small, large = (xm, ym) if ym.bit_count() >= 3 else (ym, xm)
    x1 = next(v for v in iter_bits(small) if g.rows[v] & large)
    y1 = lowest(g.rows[x1] & large)
    x2 = lowest(small & ~(1 << x1))
    y3 = lowest(large & ~(1 << y1) & ~g.rows[x2])
    witness = Witness(P4.name, (x2, x1, y1, y3))
    if not verify_witness(g, P4, witness):
        msg = f"constructed path {witness.vertices} is not induced"
        raise StructureViolation(Violation("matching-p4", msg, witness.vertices))
    return witness


__all__ = [
    "C4",
    "C5",
    "DIAMOND",
    "HVN",
    "P2_P3",
    "P2_P4",
    "P4",
    "PATTERNS",
    "TWO_K2",
    "Pattern",
    "Witness",
    "clique_pattern",
    "find_induced",
    "find_induced_vf2",
    "find_p4_mask",
    "get_pattern",
    "is_class_member",
    "is_p4_free",
    "matching_p4_check",
    "verify_witness",
]
