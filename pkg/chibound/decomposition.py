"""Structural decomposition of class members around two complete multipartite covers.

A class member with clique number ω ≥ 4 is anchored by a primary cover: an
induced complete ω-partite subgraph of maximum order. Every other vertex sees at
most one primary part, which splits the remainder into ``by_primary[0..ω]``. When
the remainder has clique number k ≥ 4, a secondary k-partite cover inside it
refines the split into a grid of cells keyed by which primary part and which
secondary part a vertex touches.

Everything the colouring relies on is checked here as an executable predicate;
failures become ``Violation`` values with the vertices that reproduce them.
"""

import random
from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import StrEnum
from itertools import combinations

from loguru import logger

from chibound.bits import full_mask, iter_bits, lowest, members
from chibound.cograph import build_cotree
from chibound.config import get_settings
from chibound.errors import (
    BudgetExceededError,
    NotAClassMemberError,
    PreconditionError,
    StructureViolation,
    Violation,
)
from chibound.graph import Graph, components_mask, induced_subgraph, is_stable_mask
from chibound.oracles import clique_number
from chibound.patterns import P4, find_induced, is_class_member


@dataclass(frozen=True, slots=True)
class PartiteCover:
    """An induced complete multipartite subgraph; parts are numbered from 1 by least vertex.

    Attributes:
        host: Graph the cover lives in
        part_masks: Bitmask of each part, ``part_masks[i - 1]`` is part ``i``
        exact: True when the search proved maximum order
        nodes: Search nodes spent
    """

    host: Graph = field(repr=False, compare=False)
    part_masks: tuple[int, ...]
    exact: bool = True
    nodes: int = 0

    @property
    def parts(self) -> tuple[frozenset[int], ...]:
        return tuple(members(m) for m in self.part_masks)

    @property
    def size(self) -> int:
        return len(self.part_masks)

    @property
    def mask(self) -> int:
        result = 0
        for m in self.part_masks:
            result |= m
        return result

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def part(self, i: int) -> int:
        """Mask of part ``i`` (1-based)."""
        return self.part_masks[i - 1]

    def part_index(self, v: int) -> int | None:
        for i, m in enumerate(self.part_masks, start=1):
            if m >> v & 1:
                return i
        return None

    def hits(self, row: int) -> tuple[int, ...]:
        """1-based indices of the parts that ``row`` intersects."""
        return tuple(i for i, m in enumerate(self.part_masks, start=1) if row & m)


def _extends(g: Graph, parts: list[int] | tuple[int, ...], v: int) -> int | None:
    """Index (0-based) of the part ``v`` can join, or None."""
    row = g.rows[v]
    target = None
    for i, m in enumerate(parts):
        if row & m == 0:
            if target is not None:
                return None
            target = i
        elif m & ~row:
            return None
    return target


def _greedy_cover(g: Graph, seed: list[int], mask: int) -> list[int]:
    parts = [1 << v for v in seed]
    changed = True
    while changed:
        changed = False
        outside = mask
        for m in parts:
            outside &= ~m
        for v in iter_bits(outside):
            target = _extends(g, parts, v)
            if target is not None:
                parts[target] |= 1 << v
                changed = True
    return sorted(parts, key=lowest)


def max_complete_multipartite(
    g: Graph,
    parts_required: int,
    *,
    within: int | None = None,
    seed: frozenset[int] | None = None,
    node_budget: int | None = None,
) -> PartiteCover:
    """Maximum-order induced complete multipartite subgraph with ``parts_required`` parts.

    A greedy cover grown from a maximum clique sets the target; the exact search
    then enumerates vertex-to-part assignments in vertex order (join part 1..m,
    open a new part, exclude) and keeps the first cover of the largest order, so
    ties resolve to the lexicographically least assignment. Past the node budget
    the greedy cover is returned with ``exact=False``; it still has no extending
    vertex.

    Args:
        g: Host graph
        parts_required: Number of parts
        within: Restrict the cover to this vertex mask
        seed: A clique of size at least ``parts_required`` inside ``within``
        node_budget: Exact-search budget (default ``cover_node_budget`` setting)

    Raises:
        PreconditionError: If the clique number is below ``parts_required``
    """
    mask = full_mask(g.n) if within is None else within
    if parts_required < 0:
        msg = f"parts_required must be non-negative, got {parts_required}"
        raise PreconditionError(msg, kind="negative-parts")
    if parts_required == 0:
        return PartiteCover(g, ())
    if seed is None:
        _, seed = clique_number(g, within=mask)
    if len(seed) < parts_required:
        msg = f"clique number {len(seed)} is below the {parts_required} parts required"
        raise PreconditionError(msg, kind="too-many-parts")

    greedy = _greedy_cover(g, sorted(seed)[:parts_required], mask)
    target = sum(m.bit_count() for m in greedy)
    budget = node_budget if node_budget is not None else get_settings().cover_node_budget
    rows = g.rows
    p = parts_required
    best: list[object] = [target - 1, None]
    nodes = [0]

    def search(ahead: int, parts: tuple[int, ...], joinable: tuple[int, ...], opener: int, size: int) -> None:
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceededError("max_complete_multipartite", nodes[0], budget)
        open_more = len(parts) < p
        pool = opener if open_more else 0
        for j in joinable:
            pool |= j
        pool &= ahead
        if size + pool.bit_count() <= best[0]:
            return
        if open_more and (opener & ahead).bit_count() < p - len(parts):
            return
        if not pool:
            if not open_more and size > best[0]:
                best[0] = size
                best[1] = parts
            return
        v = lowest(pool)
        bit = 1 << v
        rest = ahead & ~((bit << 1) - 1)
        row = rows[v]
        for i, m in enumerate(joinable):
            if m & bit:
                search(
                    rest,
                    parts[:i] + (parts[i] | bit,) + parts[i + 1 :],
                    tuple((j & ~row) if x == i else (j & row) for x, j in enumerate(joinable)),
                    opener & row,
                    size + 1,
                )
        if open_more and opener & bit:
            search(
                rest,
                (*parts, bit),
                (*(j & row for j in joinable), opener & ~row & ~bit),
                opener & row,
                size + 1,
            )
        search(rest, parts, joinable, opener, size)

    try:
        search(mask, (), (), mask, 0)
    except BudgetExceededError:
        logger.warning(
            f"cover search for {p} parts stopped at {budget} nodes; using greedy cover of order {target}"
        )
        return PartiteCover(g, tuple(greedy), exact=False, nodes=nodes[0])
    found = best[1]
    if found is None:
        msg = f"exact cover search found nothing of order {target}"
        raise StructureViolation(Violation("cover-search", msg, tuple(sorted(seed))))
    logger.debug(f"exact {p}-partite cover of order {best[0]} after {nodes[0]} nodes")
    return PartiteCover(g, tuple(found), exact=True, nodes=nodes[0])


def extending_vertices(g: Graph, cover: PartiteCover, within: int | None = None) -> frozenset[int]:
    """Vertices outside the cover that could join one part: the maximality certificate is this set being empty."""
    mask = (full_mask(g.n) if within is None else within) & ~cover.mask
    return frozenset(v for v in iter_bits(mask) if _extends(g, cover.part_masks, v) is not None)


def representatives(cover: PartiteCover, rng: random.Random | None = None) -> tuple[int, ...]:
    """One vertex per part: the least by default, uniformly random with ``rng``."""
    if rng is None:
        return tuple(lowest(m) for m in cover.part_masks)
    return tuple(rng.choice(sorted(members(m))) for m in cover.part_masks)


@dataclass(frozen=True)
class CoverPartition:
    """Classification of the non-cover vertices.

    ``by_primary[i]`` holds the remainder vertices whose primary neighbours lie in
    part ``i`` (0: none). Once a secondary cover exists, the remainder outside it is
    split further: ``touch_secondary[j]`` sees only secondary part j,
    ``touch_primary[i]`` only primary part i, ``touch_both[i, j]`` both, and
    ``untouched`` neither. Index 0 of the 1-based tuples is unused and empty.
    """

    primary: PartiteCover
    by_primary: tuple[int, ...]
    primary_reps: tuple[int, ...]
    secondary: PartiteCover | None = None
    secondary_reps: tuple[int, ...] = ()
    touch_secondary: tuple[int, ...] = ()
    touch_primary: tuple[int, ...] = ()
    touch_both: dict[tuple[int, int], int] = field(default_factory=dict)
    untouched: int = 0

    @property
    def graph(self) -> Graph:
        return self.primary.host

    @property
    def omega(self) -> int:
        return self.primary.size

    @property
    def k(self) -> int:
        return self.secondary.size if self.secondary is not None else 0

    @property
    def complete(self) -> bool:
        return self.secondary is not None

    @property
    def remainder(self) -> int:
        return full_mask(self.graph.n) & ~self.primary.mask

    @property
    def grid(self) -> int:
        """Remainder vertices outside the secondary cover."""
        if self.secondary is None:
            return 0
        return self.remainder & ~self.secondary.mask

    def both_cells(self) -> Iterator[tuple[tuple[int, int], int]]:
        yield from sorted(self.touch_both.items())

    def cells(self) -> Iterator[tuple[str, int]]:
        """Every grid cell with a readable label, in a fixed order."""
        for j in range(1, self.k + 1):
            yield f"touch_secondary[{j}]", self.touch_secondary[j]
        for (i, j), m in self.both_cells():
            yield f"touch_both[{i},{j}]", m
        for i in range(1, self.omega + 1):
            yield f"touch_primary[{i}]", self.touch_primary[i]
        yield "untouched", self.untouched

    def both_union(self) -> int:
        result = 0
        for _, m in self.both_cells():
            result |= m
        return result

    def stable_both_union(self) -> int:
        """Union of the stable ``touch_both`` cells."""
        result = 0
        for _, m in self.both_cells():
            if is_stable_mask(self.graph, m):
                result |= m
        return result


def _two_part_witness(g: Graph, v: int, cover: PartiteCover, hit: tuple[int, ...]) -> tuple[int, ...]:
    first = lowest(g.rows[v] & cover.part(hit[0]))
    second = lowest(g.rows[v] & cover.part(hit[1]))
    return (v, first, second)


def partition_by_primary(
    g: Graph, primary: PartiteCover, rng: random.Random | None = None
) -> CoverPartition:
    """Split the remainder by the single primary part each vertex sees.

    Raises:
        StructureViolation: ``primary-single-part`` if a remainder vertex sees two
            primary parts; the witness is the vertex and one neighbour in each
    """
    omega = primary.size
    by_primary = [0] * (omega + 1)
    remainder = full_mask(g.n) & ~primary.mask
    for v in iter_bits(remainder):
        hit = primary.hits(g.rows[v])
        if len(hit) > 1:
            msg = f"vertex {v} sees primary parts {list(hit)}"
            raise StructureViolation(Violation("primary-single-part", msg, _two_part_witness(g, v, primary, hit)))
        by_primary[hit[0] if hit else 0] |= 1 << v
    return CoverPartition(primary, tuple(by_primary), representatives(primary, rng))


def partition_by_secondary(
    g: Graph,
    stage: CoverPartition,
    secondary: PartiteCover,
    rng: random.Random | None = None,
) -> CoverPartition:
    """Refine a primary partition into the full grid of cells.

    Raises:
        StructureViolation: ``secondary-single-part`` if a grid vertex sees two
            secondary parts
    """
    omega, k = stage.omega, secondary.size
    touch_secondary = [0] * (k + 1)
    touch_primary = [0] * (omega + 1)
    touch_both = {(i, j): 0 for i in range(1, omega + 1) for j in range(1, k + 1)}
    untouched = 0
    grid = stage.remainder & ~secondary.mask
    for v in iter_bits(grid):
        row = g.rows[v]
        b_hit = secondary.hits(row)
        if len(b_hit) > 1:
            msg = f"vertex {v} sees secondary parts {list(b_hit)}"
            raise StructureViolation(
                Violation("secondary-single-part", msg, _two_part_witness(g, v, secondary, b_hit))
            )
        a_hit = stage.primary.hits(row)
        bit = 1 << v
        if a_hit and b_hit:
            touch_both[a_hit[0], b_hit[0]] |= bit
        elif a_hit:
            touch_primary[a_hit[0]] |= bit
        elif b_hit:
            touch_secondary[b_hit[0]] |= bit
        else:
            untouched |= bit
    return CoverPartition(
        primary=stage.primary,
        by_primary=stage.by_primary,
        primary_reps=stage.primary_reps,
        secondary=secondary,
        secondary_reps=representatives(secondary, rng),
        touch_secondary=tuple(touch_secondary),
        touch_primary=tuple(touch_primary),
        touch_both=touch_both,
        untouched=untouched,
    )


@dataclass(frozen=True, slots=True)
class SplitVertex:
    """A primary vertex whose secondary neighbours lie in two or more parts."""

    vertex: int
    primary_part: int
    secondary_parts: tuple[int, ...]


def find_split_vertex(
    g: Graph,
    primary: PartiteCover,
    secondary: PartiteCover,
    primary_reps: tuple[int, ...] | None = None,
    secondary_reps: tuple[int, ...] | None = None,
) -> SplitVertex | None:
    """The least primary vertex seeing two secondary parts, or None.

    When there is none, the edges between the two representative sets must form a
    matching; anything else raises.

    Raises:
        StructureViolation: ``representative-matching`` if a representative has two
            neighbours among the other side's representatives
    """
    for v in iter_bits(primary.mask):
        hit = secondary.hits(g.rows[v])
        if len(hit) >= 2:
            return SplitVertex(v, primary.part_index(v), hit)
    a_reps = primary_reps if primary_reps is not None else representatives(primary)
    b_reps = secondary_reps if secondary_reps is not None else representatives(secondary)
    a_mask = sum(1 << v for v in a_reps)
    b_mask = sum(1 << v for v in b_reps)
    for v, other in [(a, b_mask) for a in a_reps] + [(b, a_mask) for b in b_reps]:
        seen = g.rows[v] & other
        if seen.bit_count() > 1:
            msg = f"representative {v} has {seen.bit_count()} neighbours among the other representatives"
            raise StructureViolation(Violation("representative-matching", msg, (v, *iter_bits(seen))))
    return None


@dataclass(frozen=True, slots=True)
class SplitProfile:
    """How the classes away from a split vertex's part meet its secondary clique.

    ``clique`` holds one representative of each of the first ``k - 1`` secondary
    parts the split vertex is complete to. Every vertex of ``by_primary[i]`` with
    ``i`` other than the split vertex's part is complete to it, anticomplete to
    it, or has exactly one neighbour in it; ``mixed`` collects the exceptions.
    """

    vertex: int
    complete_parts: tuple[int, ...]
    clique: tuple[int, ...]
    complete: int
    anticomplete: int
    single: int
    mixed: int

    def violations(self, k: int) -> list[Violation]:
        found = []
        if len(self.complete_parts) < k - 1:
            msg = f"split vertex {self.vertex} is complete to {len(self.complete_parts)} of {k} secondary parts"
            found.append(Violation("split-vertex-reach", msg, (self.vertex,)))
        if self.mixed:
            v = lowest(self.mixed)
            msg = f"vertex {v} sees some but not one or all of the {len(self.clique)} clique vertices"
            found.append(
                Violation("split-vertex-trichotomy", msg, (v, *self.clique), {"clique_size": len(self.clique)})
            )
        return found


def split_vertex_d_profile(g: Graph, stage: CoverPartition, secondary: PartiteCover, split: SplitVertex) -> SplitProfile:
    """Classify the other classes against the split vertex's secondary clique."""
    complete_parts = tuple(
        j for j in range(1, secondary.size + 1) if secondary.part(j) & ~g.rows[split.vertex] == 0
    )
    reps = representatives(secondary)
    clique = tuple(reps[j - 1] for j in complete_parts[: secondary.size - 1])
    clique_mask = sum(1 << v for v in clique)
    complete = anticomplete = single = mixed = 0
    for i in range(1, stage.omega + 1):
        if i == split.primary_part:
            continue
        for v in iter_bits(stage.by_primary[i]):
            seen = (g.rows[v] & clique_mask).bit_count()
            bit = 1 << v
            if seen == 0:
                anticomplete |= bit
            elif seen == len(clique):
                complete |= bit
            elif seen == 1:
                single |= bit
            else:
                mixed |= bit
    return SplitProfile(split.vertex, complete_parts, clique, complete, anticomplete, single, mixed)


class Stage(StrEnum):
    SMALL_OMEGA = "small-omega"
    THIN_REMAINDER = "thin-remainder"
    SPLIT_VERTEX = "split-vertex"
    COMPLETE = "complete"


@dataclass(frozen=True)
class Decomposition:
    """Everything the colouring needs, computed once per graph.

    Later fields are None when an earlier stage already decides the colouring:
    ω < 4 stops after the clique, k ≤ 3 after the primary partition, and a split
    vertex before the grid is built.
    """

    graph: Graph
    omega: int
    clique: frozenset[int]
    primary: PartiteCover | None = None
    partition: CoverPartition | None = None
    k: int | None = None
    secondary: PartiteCover | None = None
    split: SplitVertex | None = None
    split_profile: SplitProfile | None = None

    @property
    def stage(self) -> Stage:
        if self.primary is None:
            return Stage.SMALL_OMEGA
        if self.secondary is None:
            return Stage.THIN_REMAINDER
        if self.split is not None:
            return Stage.SPLIT_VERTEX
        return Stage.COMPLETE


def decompose(
    g: Graph,
    *,
    node_budget: int | None = None,
    cover_node_budget: int | None = None,
    representative_seed: int | None = None,
    check_membership: bool = True,
) -> Decomposition:
    """Run the decomposition pipeline in its fixed order.

    Args:
        g: A class member
        node_budget: Budget for the clique searches
        cover_node_budget: Budget for each exact cover search
        representative_seed: Draw part representatives at random with this seed
        check_membership: Verify class membership first

    Raises:
        NotAClassMemberError: If ``check_membership`` and ``g`` has a forbidden pattern
        StructureViolation: If a structural statement fails
    """
    if check_membership:
        member, witness = is_class_member(g)
        if not member:
            msg = f"graph contains an induced {witness.pattern} at {witness.vertices}"
            raise NotAClassMemberError(msg, witness.pattern, witness.vertices)
    rng = random.Random(representative_seed) if representative_seed is not None else None

    omega, clique = clique_number(g, node_budget=node_budget)
    logger.debug(f"ω = {omega} on {g.n} vertices")
    if omega < 4:
        return Decomposition(g, omega, clique)

    primary = max_complete_multipartite(g, omega, seed=clique, node_budget=cover_node_budget)
    logger.info(f"primary cover of order {primary.order} ({'exact' if primary.exact else 'greedy'})")
    stage = partition_by_primary(g, primary, rng)

    k, k_clique = clique_number(g, within=stage.remainder, node_budget=node_budget)
    if k > omega:
        msg = f"remainder clique number {k} exceeds ω = {omega}"
        raise StructureViolation(Violation("remainder-clique-bound", msg, tuple(sorted(k_clique))))
    if k <= 3:
        return Decomposition(g, omega, clique, primary, stage, k)

    secondary = max_complete_multipartite(
        g, k, within=stage.remainder, seed=k_clique, node_budget=cover_node_budget
    )
    logger.info(f"secondary cover of order {secondary.order} with k = {k}")
    split = find_split_vertex(g, primary, secondary, stage.primary_reps, representatives(secondary, rng))
    if split is not None:
        profile = split_vertex_d_profile(g, stage, secondary, split)
        logger.info(f"split vertex {split.vertex} sees secondary parts {list(split.secondary_parts)}")
        return Decomposition(g, omega, clique, primary, stage, k, secondary, split, profile)

    partition = partition_by_secondary(g, stage, secondary, rng)
    return Decomposition(g, omega, clique, primary, partition, k, secondary)


@dataclass(frozen=True, slots=True)
class PropertyOutcome:
    name: str
    applicable: bool
    violations: tuple[Violation, ...] = ()

    @property
    def holds(self) -> bool:
        return not self.violations


@dataclass(frozen=True, slots=True)
class PropertyReport:
    outcomes: tuple[PropertyOutcome, ...]

    @property
    def ok(self) -> bool:
        return all(o.holds for o in self.outcomes)

    def outcome(self, name: str) -> PropertyOutcome:
        for o in self.outcomes:
            if o.name == name:
                return o
        msg = f"no property named {name!r}"
        raise KeyError(msg)

    def violations(self) -> list[Violation]:
        return [v for o in self.outcomes for v in o.violations]


PROPERTY_NAMES = (
    "partition-exact",
    "cells-p4-free",
    "untouched-isolated",
    "secondary-only-isolated",
    "primary-only-isolated",
    "both-cells-separated",
    "dense-cell-clearance",
    "omega4-single-crossing",
    "omega4-component-shape",
    "cross-cells-separated",
)


def _edge_between(g: Graph, xm: int, ym: int) -> tuple[int, int] | None:
    for v in iter_bits(xm):
        hit = g.rows[v] & ym
        if hit:
            return v, lowest(hit)
    return None


class _Collector:
    def __init__(self, g: Graph, name: str):
        self.g = g
        self.name = name
        self.found: list[Violation] = []

    def anticomplete(self, xm: int, ym: int, what: str) -> None:
        edge = _edge_between(self.g, xm, ym)
        if edge is not None:
            self.found.append(Violation(self.name, f"{what}: edge {edge[0]}-{edge[1]}", edge))

    def outcome(self, applicable: bool = True) -> PropertyOutcome:
        return PropertyOutcome(self.name, applicable, tuple(self.found))


def _check_partition_exact(g: Graph, p: CoverPartition) -> PropertyOutcome:
    out = _Collector(g, "partition-exact")
    seen = 0
    for i, m in enumerate(p.by_primary):
        if m & seen:
            out.found.append(Violation(out.name, f"class {i} overlaps earlier classes", tuple(iter_bits(m & seen))))
        seen |= m
        for v in iter_bits(m):
            hit = p.primary.hits(g.rows[v])
            if hit != ((i,) if i else ()):
                out.found.append(Violation(out.name, f"vertex {v} sees primary parts {list(hit)}, filed under {i}", (v,)))
    if seen != p.remainder:
        out.found.append(Violation(out.name, "primary classes do not cover the remainder", tuple(iter_bits(seen ^ p.remainder))))
    if not p.complete:
        return out.outcome()
    grid_seen = 0
    for label, m in p.cells():
        if m & grid_seen:
            out.found.append(Violation(out.name, f"{label} overlaps other cells", tuple(iter_bits(m & grid_seen))))
        grid_seen |= m
    if grid_seen != p.grid:
        out.found.append(Violation(out.name, "cells do not cover the grid", tuple(iter_bits(grid_seen ^ p.grid))))
    for i in range(p.omega + 1):
        row_cells = p.touch_primary[i] if i else p.untouched
        for j in range(1, p.k + 1):
            row_cells |= p.touch_both[i, j] if i else p.touch_secondary[j]
        if row_cells != p.by_primary[i] & p.grid:
            out.found.append(Violation(out.name, f"cells of class {i} differ from the class itself", ()))
    return out.outcome()


def _check_cells_p4_free(g: Graph, p: CoverPartition) -> PropertyOutcome:
    out = _Collector(g, "cells-p4-free")
    for label, m in p.cells():
        if m and build_cotree(g, m) is None:
            order = sorted(members(m))
            witness = find_induced(induced_subgraph(g, order), P4)
            vertices = tuple(order[i] for i in witness.vertices) if witness else ()
            out.found.append(Violation(out.name, f"{label} contains an induced P4", vertices))
    return out.outcome()


def check_properties(g: Graph, partition: CoverPartition) -> PropertyReport:
    """Evaluate every applicable separation property of the cell grid.

    Each property is a literal anticompleteness or stability test; a failure on a
    class member is a counterexample and is reported with the offending edge.
    """
    p = partition
    outcomes = [_check_partition_exact(g, p)]
    if not p.complete:
        outcomes.extend(PropertyOutcome(name, applicable=False) for name in PROPERTY_NAMES[1:])
        return PropertyReport(tuple(outcomes))

    omega, k = p.omega, p.k
    outcomes.append(_check_cells_p4_free(g, p))
    r_all = 0
    for j in range(1, k + 1):
        r_all |= p.touch_secondary[j]
    t_all = 0
    for i in range(1, omega + 1):
        t_all |= p.touch_primary[i]
    s_all = p.both_union()
    z = p.untouched

    out = _Collector(g, "untouched-isolated")
    out.anticomplete(z, r_all | s_all | t_all, "untouched vs other cells")
    outcomes.append(out.outcome())

    out = _Collector(g, "secondary-only-isolated")
    out.anticomplete(r_all, s_all | t_all | z, "touch_secondary vs other cells")
    for i, j in combinations(range(1, k + 1), 2):
        out.anticomplete(p.touch_secondary[i], p.touch_secondary[j], f"touch_secondary[{i}] vs [{j}]")
    outcomes.append(out.outcome())

    out = _Collector(g, "primary-only-isolated")
    out.anticomplete(t_all, r_all | s_all | z, "touch_primary vs other cells")
    for i, j in combinations(range(1, omega + 1), 2):
        out.anticomplete(p.touch_primary[i], p.touch_primary[j], f"touch_primary[{i}] vs [{j}]")
    outcomes.append(out.outcome())

    out = _Collector(g, "both-cells-separated")
    out.anticomplete(s_all, r_all | t_all | z, "touch_both vs other cells")
    for (i, a), (j, b) in combinations(sorted(p.touch_both), 2):
        if i == j or a == b:
            out.anticomplete(p.touch_both[i, a], p.touch_both[j, b], f"touch_both[{i},{a}] vs [{j},{b}]")
    outcomes.append(out.outcome())

    out = _Collector(g, "dense-cell-clearance")
    for (i, a), m in p.both_cells():
        if m and not is_stable_mask(g, m):
            other_primary = p.primary.mask & ~p.primary.part(i)
            other_secondary = p.secondary.mask & ~p.secondary.part(a)
            out.anticomplete(other_primary, other_secondary, f"primary outside {i} vs secondary outside {a}")
            for (j, b), other in p.both_cells():
                if j != i and b != a:
                    out.anticomplete(m, other, f"dense touch_both[{i},{a}] vs [{j},{b}]")
    outcomes.append(out.outcome())

    out = _Collector(g, "omega4-single-crossing")
    if omega == 4:
        for (i, a), (j, b) in combinations(sorted(p.touch_both), 2):
            if i == j or a == b or _edge_between(g, p.touch_both[i, a], p.touch_both[j, b]) is None:
                continue
            for x, y, q in ((i, a, b), (j, b, a)):
                for c in range(1, k + 1):
                    if c not in {a, b}:
                        other_row = j if x == i else i
                        out.anticomplete(p.touch_both[x, y], p.touch_both[other_row, c], f"crossing at [{x},{y}] vs [{other_row},{c}]")
                for r in range(1, omega + 1):
                    if r not in {i, j}:
                        out.anticomplete(p.touch_both[x, y], p.touch_both[r, q], f"crossing at [{x},{y}] vs [{r},{q}]")
    outcomes.append(out.outcome(applicable=omega == 4))

    out = _Collector(g, "omega4-component-shape")
    if omega == 4:
        stable = p.stable_both_union()
        for component in components_mask(g, stable):
            keys = [key for key, m in p.both_cells() if m & component]
            rows = [key[0] for key in keys]
            cols = [key[1] for key in keys]
            if len(keys) > 4 or len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
                msg = f"component meets cells {keys}"
                out.found.append(Violation(out.name, msg, tuple(iter_bits(component))[:12], {"cells": [list(c) for c in keys]}))
    outcomes.append(out.outcome(applicable=omega == 4))

    out = _Collector(g, "cross-cells-separated")
    if omega >= 5:
        for (i, a), (j, b) in combinations(sorted(p.touch_both), 2):
            if i != j and a != b:
                out.anticomplete(p.touch_both[i, a], p.touch_both[j, b], f"touch_both[{i},{a}] vs [{j},{b}]")
    outcomes.append(out.outcome(applicable=omega >= 5))
    return PropertyReport(tuple(outcomes))


def _span(p: CoverPartition, row: int) -> set[tuple[str, int]]:
    return {("primary", i) for i in p.primary.hits(row)} | {("secondary", j) for j in p.secondary.hits(row)}


def check_low_span_pair(g: Graph, partition: CoverPartition, x: int, y: int) -> bool:
    """True when ``x`` and ``y`` are non-adjacent, as required for grid vertices
    with different cover neighbourhoods that together touch at most three parts.

    Raises:
        PreconditionError: kind ``outside-grid``, ``same-neighbourhood`` or ``wide-span``
    """
    p = partition
    if not p.complete:
        msg = "the partition has no secondary cover"
        raise PreconditionError(msg, kind="incomplete-partition")
    for v in (x, y):
        g.check_vertex(v)
        if not p.grid >> v & 1:
            msg = f"vertex {v} is not in a grid cell"
            raise PreconditionError(msg, kind="outside-grid")
    cover = p.primary.mask | p.secondary.mask
    if x == y or g.rows[x] & cover == g.rows[y] & cover:
        msg = f"vertices {x} and {y} have the same cover neighbourhood"
        raise PreconditionError(msg, kind="same-neighbourhood")
    span = _span(p, (g.rows[x] | g.rows[y]) & cover)
    if len(span) > 3:
        msg = f"vertices {x} and {y} together touch {len(span)} parts"
        raise PreconditionError(msg, kind="wide-span")
    return not g.has_edge(x, y)


def sweep_low_span_pairs(g: Graph, partition: CoverPartition) -> list[Violation]:
    """Every adjacent grid pair that qualifies for ``check_low_span_pair``."""
    p = partition
    if not p.complete:
        return []
    cover = p.primary.mask | p.secondary.mask
    found = []
    for x in iter_bits(p.grid):
        for y in iter_bits(g.rows[x] & p.grid & ~((1 << (x + 1)) - 1)):
            if g.rows[x] & cover == g.rows[y] & cover:
                continue
            if len(_span(p, (g.rows[x] | g.rows[y]) & cover)) <= 3:
                msg = f"adjacent grid vertices {x} and {y} touch at most three parts"
                found.append(Violation("low-span-pair", msg, (x, y)))
    return found
