"""Exact ground-truth computations: clique number, k-colourability, chromatic number.

Every search counts nodes against a caller-supplied budget and raises
``BudgetExceededError`` deterministically when it runs out. Colour classes and
candidate sets are bitmasks throughout.
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from loguru import logger

from chibound.bits import full_mask, iter_bits, lowest, members
from chibound.cograph import build_cotree
from chibound.config import get_settings
from chibound.errors import BudgetExceededError, NotP4FreeError, PreconditionError
from chibound.graph import Graph, induced_subgraph
from chibound.patterns import P4, find_induced


@dataclass(frozen=True, slots=True)
class Coloring:
    """A vertex colouring with colours ``1..palette_size``.

    Attributes:
        colors: ``colors[v]`` is the colour of vertex ``v``
        palette_size: Number of colours permitted
        verified: Set once an independent check confirmed properness
    """

    colors: tuple[int, ...]
    palette_size: int
    verified: bool = False

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, int], palette_size: int | None = None) -> "Coloring":
        missing = [v for v in range(n) if v not in mapping]
        if missing:
            msg = f"vertices {missing[:10]} have no colour"
            raise PreconditionError(msg, kind="partial-coloring")
        colors = tuple(mapping[v] for v in range(n))
        return cls(colors, palette_size if palette_size is not None else max(colors, default=0))

    @property
    def assignment(self) -> dict[int, int]:
        return dict(enumerate(self.colors))

    @property
    def colors_used(self) -> int:
        return len(set(self.colors))

    def mark_verified(self) -> "Coloring":
        return Coloring(self.colors, self.palette_size, verified=True)


class _Counter:
    """Node counter shared by the calls of one search."""

    def __init__(self, what: str, budget: int | None):
        self.what = what
        self.budget = budget if budget is not None else get_settings().node_budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(self.what, self.nodes, self.budget)


def find_conflict(g: Graph, coloring: Coloring) -> tuple[int, int] | None:
    """First monochromatic edge, or None."""
    for u, v in g.edges():
        if coloring.colors[u] == coloring.colors[v]:
            return u, v
    return None


def verify_coloring(g: Graph, coloring: Coloring) -> bool:
    """Independent check: every vertex coloured from ``1..palette_size``, no edge monochromatic."""
    if len(coloring.colors) != g.n:
        return False
    if any(not 1 <= c <= coloring.palette_size for c in coloring.colors):
        return False
    return find_conflict(g, coloring) is None


def _color_classes(g: Graph, candidates: int) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of ``candidates``; vertices listed by class with bounds."""
    order: list[int] = []
    bounds: list[int] = []
    uncolored = candidates
    color = 0
    while uncolored:
        color += 1
        available = uncolored
        while available:
            v = lowest(available)
            available &= ~g.rows[v] & ~(1 << v)
            uncolored &= ~(1 << v)
            order.append(v)
            bounds.append(color)
    return order, bounds


def clique_number(
    g: Graph, within: int | None = None, node_budget: int | None = None
) -> tuple[int, frozenset[int]]:
    """Clique number and a maximum clique, by branch and bound.

    Candidates are ordered by greedy colour classes; a branch is cut when the
    current size plus its colour bound cannot beat the incumbent.

    Args:
        g: Graph to search
        within: Restrict the search to this vertex mask (default: all vertices)
        node_budget: Search node budget (default from settings)
    """
    mask = full_mask(g.n) if within is None else within
    counter = _Counter("clique_number", node_budget)
    best = [0, 0]

    def expand(size: int, current: int, candidates: int) -> None:
        counter.tick()
        order, bounds = _color_classes(g, candidates)
        for idx in range(len(order) - 1, -1, -1):
            if size + bounds[idx] <= best[0]:
                return
            v = order[idx]
            narrowed = candidates & g.rows[v]
            if narrowed:
                expand(size + 1, current | 1 << v, narrowed)
            elif size + 1 > best[0]:
                best[0] = size + 1
                best[1] = current | 1 << v
            candidates &= ~(1 << v)

    if mask:
        expand(0, 0, mask)
    logger.debug(f"clique number {best[0]} after {counter.nodes} nodes")
    return best[0], members(best[1])


def greedy_coloring(g: Graph) -> Coloring:
    """DSATUR greedy colouring: most saturated vertex first, ties by degree then index."""
    colors = [0] * g.n
    seen = [0] * g.n
    degrees = [row.bit_count() for row in g.rows]
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if not colors[u]),
            key=lambda u: (seen[u].bit_count(), degrees[u], -u),
        )
        c = 1
        while seen[v] >> c & 1:
            c += 1
        colors[v] = c
        for u in iter_bits(g.rows[v]):
            seen[u] |= 1 << c
    return Coloring(tuple(colors), max(colors, default=0), verified=False)


def is_k_colorable(
    g: Graph, k: int, node_budget: int | None = None, *, _counter: _Counter | None = None
) -> Coloring | None:
    """A proper colouring with at most ``k`` colours, or None if none exists.

    Exhaustive DSATUR backtracking with forward checking. A maximum clique is
    precoloured ``1..ω`` and further colours are introduced in order, which
    removes colour-permutation symmetry.

    Raises:
        PreconditionError: If ``k`` is negative
        BudgetExceededError: If the node budget runs out before a decision
    """
    if k < 0:
        msg = f"k must be non-negative, got {k}"
        raise PreconditionError(msg, kind="negative-k")
    if g.n == 0:
        return Coloring((), k, verified=True)
    counter = _counter or _Counter(f"is_k_colorable(k={k})", node_budget)
    omega, clique = clique_number(g, node_budget=counter.budget)
    if omega > k:
        return None

    n = g.n
    colors = [0] * n
    # counts[v][c]: colored neighbours of v with colour c
    counts = [[0] * (k + 2) for _ in range(n)]
    saturation = [0] * n
    degrees = [row.bit_count() for row in g.rows]
    neighbours = [list(iter_bits(row)) for row in g.rows]

    def assign(v: int, c: int) -> bool:
        colors[v] = c
        dead = False
        for u in neighbours[v]:
            row = counts[u]
            if row[c] == 0:
                saturation[u] += 1
                if not colors[u] and saturation[u] >= k:
                    dead = True
            row[c] += 1
        return not dead

    def unassign(v: int, c: int) -> None:
        colors[v] = 0
        for u in neighbours[v]:
            row = counts[u]
            row[c] -= 1
            if row[c] == 0:
                saturation[u] -= 1

    for color, v in enumerate(sorted(clique), start=1):
        if not assign(v, color):
            return None

    def solve(remaining: int, used: int) -> bool:
        counter.tick()
        if remaining == 0:
            return True
        best = -1
        best_key = (-1, -1)
        for u in range(n):
            if not colors[u]:
                key = (saturation[u], degrees[u])
                if key > best_key:
                    best, best_key = u, key
        row = counts[best]
        for c in range(1, min(used + 1, k) + 1):
            if row[c]:
                continue
            ok = assign(best, c)
            if ok and solve(remaining - 1, max(used, c)):
                return True
            unassign(best, c)
        return False

    if not solve(n - omega, omega):
        return None
    result = Coloring(tuple(colors), k)
    return result.mark_verified() if verify_coloring(g, result) else result


def chromatic_number(g: Graph, node_budget: int | None = None) -> tuple[int, Coloring]:
    """Chromatic number with an optimal colouring.

    Searches upward from the clique number; the greedy DSATUR colouring is the
    upper bound, so at most ``ub - ω`` decision problems are solved.
    """
    if g.n == 0:
        return 0, Coloring((), 0, verified=True)
    counter = _Counter("chromatic_number", node_budget)
    omega, _ = clique_number(g, node_budget=counter.budget)
    upper = greedy_coloring(g)
    for k in range(omega, upper.colors_used):
        found = is_k_colorable(g, k, _counter=counter)
        if found is not None:
            logger.debug(f"chromatic number {k} after {counter.nodes} nodes")
            return k, Coloring(found.colors, k, verified=verify_coloring(g, found))
        logger.debug(f"refuted {k}-colourability after {counter.nodes} nodes")
    chi = upper.colors_used
    return chi, Coloring(upper.colors, chi, verified=verify_coloring(g, upper))


def p4_free_coloring(g: Graph, mask: int, palette: Iterable[int]) -> dict[int, int]:
    """Optimal colouring of the P4-free graph ``g[mask]`` using the smallest palette colours.

    Raises:
        NotP4FreeError: If ``g[mask]`` contains an induced P4 (witness in original ids)
        PreconditionError: kind ``palette`` if the palette is smaller than ω(g[mask])
    """
    tree = build_cotree(g, mask)
    if tree is None:
        order = sorted(members(mask))
        witness = find_induced(induced_subgraph(g, order), P4)
        vertices = tuple(order[i] for i in witness.vertices) if witness is not None else ()
        msg = f"vertex set {order[:12]} contains an induced P4 {vertices}"
        raise NotP4FreeError(msg, vertices)
    needed = tree.chromatic_number()
    palette = sorted(palette)
    if needed > len(palette):
        msg = f"P4-free set needs {needed} colours, palette has {len(palette)}: {palette}"
        raise PreconditionError(msg, kind="palette")
    return {v: palette[c] for v, c in tree.coloring().items()}


def cograph_optimal_coloring(g: Graph) -> Coloring:
    """Colouring of a P4-free graph with exactly ω colours via its cotree."""
    mapping = p4_free_coloring(g, full_mask(g.n), range(1, g.n + 1))
    coloring = Coloring.from_mapping(g.n, mapping)
    return coloring.mark_verified() if verify_coloring(g, coloring) else coloring
