"""Constructive colouring of class members within the ⌈4ω/3⌉ bound.

``color_class_member`` decomposes the graph once and dispatches to exactly one
branch in a fixed order: small ω (exact oracle), thin remainder (k ≤ 3), split
vertex, ω = 4, and for ω ≥ 5 either a dense cell or all cells stable. Each branch
hands palettes to blocks of vertices; every hand-out is an assertion, and the
finished colouring is verified independently before it is returned.
"""

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum

from loguru import logger
from rich.markup import escape
from rich.tree import Tree

from chibound.bits import iter_bits, lowest
from chibound.decomposition import CoverPartition, Decomposition, Stage, decompose
from chibound.errors import (
    BranchAssertionFailure,
    BudgetExceededError,
    ColorBudgetExceededError,
    HallViolationError,
    NotAClassMemberError,
    NotP4FreeError,
    PreconditionError,
    Violation,
)
from chibound.graph import Graph, components_mask, is_stable_mask
from chibound.matching import hall_violator, max_bipartite_matching
from chibound.oracles import (
    Coloring,
    chromatic_number,
    clique_number,
    find_conflict,
    greedy_coloring,
    p4_free_coloring,
    verify_coloring,
)
from chibound.patterns import is_class_member
from chibound.records import HallStepRecord, TraceRecord, TraceStepRecord


def color_budget(omega: int) -> int:
    """Permitted palette size: ω for ω ≤ 1, 4 for ω = 2, 10 for ω = 3, ⌈4ω/3⌉ beyond.

    Raises:
        PreconditionError: If ``omega`` is negative
    """
    if omega < 0:
        msg = f"clique number cannot be negative, got {omega}"
        raise PreconditionError(msg, kind="omega")
    if omega <= 1:
        return omega
    if omega == 2:
        return 4
    if omega == 3:
        return 10
    return -(-4 * omega // 3)


@dataclass(frozen=True, slots=True)
class ColorBudget:
    omega: int
    budget: int

    @classmethod
    def for_omega(cls, omega: int) -> "ColorBudget":
        return cls(omega, color_budget(omega))


class Branch(StrEnum):
    SMALL_OMEGA = "small-omega-oracle"
    THIN_REMAINDER = "thin-remainder"
    SPLIT_VERTEX = "split-vertex"
    OMEGA_FOUR = "omega-four"
    DENSE_CELL = "dense-cell"
    STABLE_CELLS = "stable-cells"


@dataclass(frozen=True, slots=True)
class TraceStep:
    target: str
    palette: tuple[int, ...]
    colors: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class HallStep:
    cells: tuple[str, ...]
    palettes: tuple[tuple[int, ...], ...]
    assignment: tuple[int, ...]


@dataclass
class BranchTrace:
    """What a branch did: relabelings, the palette of every block, Hall assignments."""

    branch: Branch
    omega: int
    budget: int
    k: int | None = None
    colors_used: int | None = None
    relabel: dict[str, tuple[int, ...]] = field(default_factory=dict)
    steps: list[TraceStep] = field(default_factory=list)
    hall: list[HallStep] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_record(self) -> TraceRecord:
        return TraceRecord(
            branch=str(self.branch),
            omega=self.omega,
            k=self.k,
            budget=self.budget,
            colors_used=self.colors_used,
            relabel={name: list(order) for name, order in self.relabel.items()},
            steps=[TraceStepRecord(target=s.target, palette=list(s.palette), colors=list(s.colors)) for s in self.steps],
            hall=[
                HallStepRecord(cells=list(h.cells), palettes=[list(p) for p in h.palettes], assignment=list(h.assignment))
                for h in self.hall
            ],
            notes=list(self.notes),
        )

    def to_tree(self) -> Tree:
        """Rich tree for ``--explain`` output."""
        k = "-" if self.k is None else self.k
        tree = Tree(f"[bold]{self.branch}[/bold]  ω={self.omega}  k={k}  budget={self.budget}  used={self.colors_used}")
        if self.relabel:
            node = tree.add("relabel")
            for name, order in self.relabel.items():
                node.add(escape(f"{name}: {list(order)}"))
        if self.steps:
            node = tree.add("palettes")
            for step in self.steps:
                node.add(escape(f"{step.target}: colours {list(step.colors)} from {list(step.palette)}"))
        if self.hall:
            node = tree.add("hall assignments")
            for step in self.hall:
                pairs = ", ".join(f"{c}→{a}" for c, a in zip(step.cells, step.assignment, strict=True))
                node.add(escape(pairs))
        for note in self.notes:
            tree.add(escape(note))
        return tree


class _Painter:
    """Accumulates a colouring block by block, turning shortages into branch failures."""

    def __init__(self, g: Graph, trace: BranchTrace):
        self.g = g
        self.trace = trace
        self.colors = [0] * g.n

    def fail(self, name: str, message: str, vertices: Iterable[int] = (), **details: object) -> BranchAssertionFailure:
        return BranchAssertionFailure(self.trace.branch, Violation(name, message, tuple(vertices), details))

    def fill(self, label: str, mask: int, color: int) -> None:
        if not mask:
            return
        if not 1 <= color <= self.trace.budget:
            raise self.fail("palette-shortage", f"{label} needs colour {color} outside 1..{self.trace.budget}", iter_bits(mask))
        for v in iter_bits(mask):
            self.colors[v] = color
        self.trace.steps.append(TraceStep(label, (color,), (color,)))

    def split_fill(self, label: str, mask: int, marked: int, colors: tuple[int, int]) -> None:
        """Colour ``mask & marked`` with the second colour and the rest with the first."""
        self.fill(f"{label} (no conflict)", mask & ~marked, colors[0])
        self.fill(f"{label} (conflict)", mask & marked, colors[1])

    def cograph(self, label: str, mask: int, palette: Iterable[int]) -> None:
        if not mask:
            return
        allowed = sorted(c for c in set(palette) if 1 <= c <= self.trace.budget)
        try:
            mapping = p4_free_coloring(self.g, mask, allowed)
        except NotP4FreeError as e:
            raise self.fail("cells-p4-free", f"{label} contains an induced P4", e.witness) from e
        except PreconditionError as e:
            raise self.fail("palette-shortage", f"{label}: {e}", list(iter_bits(mask))[:12], palette=allowed) from e
        for v, c in mapping.items():
            self.colors[v] = c
        self.trace.steps.append(TraceStep(label, tuple(allowed), tuple(sorted(set(mapping.values())))))

    def used(self, mask: int) -> frozenset[int]:
        return frozenset(self.colors[v] for v in iter_bits(mask) if self.colors[v])

    def finish(self) -> Coloring:
        missing = [v for v, c in enumerate(self.colors) if not c]
        if missing:
            raise self.fail("uncolored", f"{len(missing)} vertices left uncoloured", missing[:12])
        return Coloring(tuple(self.colors), self.trace.budget)


def hall_assign_component(
    cells: Sequence[tuple[int, Iterable[int]]], *, branch: str = Branch.OMEGA_FOUR
) -> tuple[int, ...]:
    """Distinct colours for the cells of one component, each from its own palette.

    Args:
        cells: ``(vertex mask, allowed colours)`` per cell
        branch: Branch name reported on failure

    Returns:
        One colour per cell, in input order

    Raises:
        HallViolationError: With the cells whose joint palette is too small
    """
    palettes = [sorted(set(p)) for _, p in cells]
    universe = sorted({c for p in palettes for c in p})
    index = {c: i for i, c in enumerate(universe)}
    edges = [(t, index[c]) for t, p in enumerate(palettes) for c in p]
    matching = max_bipartite_matching(len(cells), len(universe), edges)
    if not matching.saturates_left:
        violator = hall_violator(len(cells), len(universe), edges, matching)
        joint = frozenset(c for t in violator for c in palettes[t])
        raise HallViolationError(branch, tuple(sorted(violator)), joint)
    partner = matching.partner_of_left()
    return tuple(universe[partner[t]] for t in range(len(cells)))


def _front(first: int, count: int) -> tuple[int, ...]:
    """``first`` followed by the other indices 1..count in ascending order."""
    return (first, *(i for i in range(1, count + 1) if i != first))


def _new_trace(branch: Branch, d: Decomposition, trace: BranchTrace | None) -> BranchTrace:
    if trace is not None:
        return trace
    return BranchTrace(branch, d.omega, color_budget(d.omega), d.k)


def branch_small_omega(g: Graph, *, node_budget: int | None = None, trace: BranchTrace | None = None) -> Coloring:
    """Colour a graph with ω ≤ 3 by the exact oracle.

    If the oracle runs out of nodes, the greedy colouring is accepted when it fits
    the budget.

    Raises:
        PreconditionError: If ω ≥ 4
        BranchAssertionFailure: If the oracle gave up and greedy exceeds the budget
        ColorBudgetExceededError: If χ exceeds the budget
    """
    omega, _ = clique_number(g, node_budget=node_budget)
    if omega >= 4:
        msg = f"small-ω branch needs ω ≤ 3, got {omega}"
        raise PreconditionError(msg, kind="omega")
    budget = color_budget(omega)
    if trace is None:
        trace = BranchTrace(Branch.SMALL_OMEGA, omega, budget)
    try:
        chi, found = chromatic_number(g, node_budget=node_budget)
        trace.notes.append(f"oracle χ = {chi}")
    except BudgetExceededError as e:
        logger.warning(f"chromatic number search gave up after {e.nodes} nodes; trying greedy")
        found = greedy_coloring(g)
        trace.notes.append(f"oracle budget exhausted; greedy used {found.colors_used} colours")
        if found.colors_used > budget:
            msg = f"oracle gave up and greedy needs {found.colors_used} > {budget} colours"
            raise BranchAssertionFailure(Branch.SMALL_OMEGA, Violation("oracle-budget", msg)) from e
    if found.colors_used > budget:
        raise ColorBudgetExceededError(found.colors_used, budget, omega)
    if g.n:
        trace.steps.append(TraceStep("all vertices", tuple(range(1, budget + 1)), tuple(sorted(set(found.colors)))))
    return Coloring(found.colors, budget)


def branch_thin_remainder(d: Decomposition, trace: BranchTrace | None = None) -> Coloring:
    """ω ≥ 4 and k ≤ 3: at most max(2k, ω) colours.

    Part i gets colour i. The low classes ``by_primary[0..h]`` (h = ⌊ω/2⌋) only see
    parts coloured 1..h, so they take h+1..h+k; the high classes only see parts
    h+1..ω and take 1..h topped up with colours above h+k.
    """
    trace = _new_trace(Branch.THIN_REMAINDER, d, trace)
    paint = _Painter(d.graph, trace)
    omega, k, p = d.omega, d.k, d.partition
    for i in range(1, omega + 1):
        paint.fill(f"primary[{i}]", d.primary.part(i), i)
    half = omega // 2
    low = high = 0
    for i in range(half + 1):
        low |= p.by_primary[i]
    for i in range(half + 1, omega + 1):
        high |= p.by_primary[i]
    paint.cograph(f"by_primary[0..{half}]", low, range(half + 1, half + k + 1))
    paint.cograph(f"by_primary[{half + 1}..{omega}]", high, [*range(1, half + 1), *range(half + k + 1, 2 * k + 1)])
    return paint.finish()


def _stable_union_pair(g: Graph, p: CoverPartition, trigger: int) -> tuple[int, int] | None:
    """Two classes whose removal leaves the other nonzero classes stable; pairs with the trigger first."""
    omega = p.omega
    pairs = [(trigger, j) for j in range(1, omega + 1) if j != trigger]
    pairs += [(i, j) for i in range(1, omega + 1) for j in range(i + 1, omega + 1) if trigger not in {i, j}]
    for first, second in pairs:
        rest = 0
        for i in range(1, omega + 1):
            if i not in {first, second}:
                rest |= p.by_primary[i]
        if is_stable_mask(g, rest):
            return first, second
    return None


def branch_split_vertex(d: Decomposition, trace: BranchTrace | None = None) -> Coloring:
    """A primary vertex sees two secondary parts: at most ω + 2 colours.

    All classes but ``by_primary[0]`` and two others form a stable set coloured 1;
    the two kept classes and ``by_primary[0]`` are P4-free and take ω colours from
    3..ω+2. The primary parts of the kept classes are coloured 1 and 2.
    """
    trace = _new_trace(Branch.SPLIT_VERTEX, d, trace)
    g, omega, p, split = d.graph, d.omega, d.partition, d.split
    if d.split_profile is not None:
        trace.notes.extend(v.message for v in d.split_profile.violations(d.k))
    pair = _stable_union_pair(g, p, split.primary_part)
    if pair is None:
        msg = f"no two classes leave a stable union (split vertex {split.vertex})"
        raise BranchAssertionFailure(Branch.SPLIT_VERTEX, Violation("split-vertex-stable-union", msg, (split.vertex,)))
    first, second = pair
    order = (first, second, *(i for i in range(1, omega + 1) if i not in pair))
    trace.relabel["primary"] = order
    trace.notes.append(f"split vertex {split.vertex} in primary part {split.primary_part}")

    paint = _Painter(g, trace)
    for color, i in enumerate(order, start=1):
        paint.fill(f"primary[{i}]", d.primary.part(i), color)
    kept = p.by_primary[0] | p.by_primary[first] | p.by_primary[second]
    stable = p.remainder & ~kept
    paint.cograph(f"by_primary[0,{first},{second}]", kept, range(3, omega + 3))
    paint.fill("stable classes", stable, 1)
    return paint.finish()


def _first_dense_cell(g: Graph, p: CoverPartition) -> tuple[int, int] | None:
    for key, m in p.both_cells():
        if m and not is_stable_mask(g, m):
            return key
    return None


def _assert_clearance(d: Decomposition, paint: _Painter, i: int, j: int) -> None:
    other_primary = d.primary.mask & ~d.primary.part(i)
    other_secondary = d.secondary.mask & ~d.secondary.part(j)
    for v in iter_bits(other_primary):
        hit = d.graph.rows[v] & other_secondary
        if hit:
            msg = f"dense cell ({i},{j}) but primary {v} sees secondary {lowest(hit)}"
            raise paint.fail("dense-cell-clearance", msg, (v, lowest(hit)))


def _paint_stable_components(
    d: Decomposition, paint: _Painter, mask: int, palette_of: Callable[[int, int], frozenset[int]]
) -> None:
    """One Hall assignment per component of ``g[mask]``; ``mask`` is a union of stable cells."""
    p = d.partition
    for component in components_mask(d.graph, mask):
        keys = [key for key, m in p.both_cells() if m & component]
        cells = [(component & p.touch_both[key], palette_of(*key)) for key in keys]
        colors = hall_assign_component(cells, branch=paint.trace.branch)
        labels = tuple(f"touch_both[{i},{j}]" for i, j in keys)
        paint.trace.hall.append(HallStep(labels, tuple(tuple(sorted(pal)) for _, pal in cells), colors))
        for (cell, _), color in zip(cells, colors, strict=True):
            for v in iter_bits(cell):
                paint.colors[v] = color


def _paint_outer_cells(d: Decomposition, paint: _Painter, universe: frozenset[int]) -> None:
    p = d.partition
    paint.cograph("untouched", p.untouched, universe)
    for j in range(1, p.k + 1):
        paint.cograph(f"touch_secondary[{j}]", p.touch_secondary[j], universe - paint.used(d.secondary.part(j)))
    for i in range(1, p.omega + 1):
        paint.cograph(f"touch_primary[{i}]", p.touch_primary[i], universe - paint.used(d.primary.part(i)))


def _cell_palette(d: Decomposition, paint: _Painter, universe: frozenset[int]) -> Callable[[int, int], frozenset[int]]:
    def palette_of(i: int, j: int) -> frozenset[int]:
        return universe - paint.used(d.primary.part(i)) - paint.used(d.secondary.part(j))

    return palette_of


def branch_omega_four(d: Decomposition, trace: BranchTrace | None = None) -> Coloring:
    """ω = 4 with a complete grid: six colours.

    With a dense cell (relabelled to primary 1, secondary 1) the secondary parts
    take 5, 2, 3, 4; otherwise the first two secondary parts share {1, 2} and
    {3, 4} by the conflict rule and the last two take 5 and 6. Stable cells are
    coloured per component by Hall assignment.
    """
    trace = _new_trace(Branch.OMEGA_FOUR, d, trace)
    g, p = d.graph, d.partition
    paint = _Painter(g, trace)
    if d.k != 4:
        msg = f"ω = 4 needs k = 4, got {d.k}"
        raise paint.fail("omega-four-k", msg)
    universe = frozenset(range(1, 7))
    dense = _first_dense_cell(g, p)

    if dense is not None:
        i0, j0 = dense
        _assert_clearance(d, paint, i0, j0)
        a_order, b_order = _front(i0, 4), _front(j0, 4)
        trace.relabel["primary"] = a_order
        trace.relabel["secondary"] = b_order
        trace.notes.append(f"dense cell touch_both[{i0},{j0}]")
        for color, i in enumerate(a_order, start=1):
            paint.fill(f"primary[{i}]", d.primary.part(i), color)
        paint.fill(f"secondary[{j0}]", d.secondary.part(j0), 5)
        for color, j in enumerate(b_order[1:], start=2):
            paint.fill(f"secondary[{j}]", d.secondary.part(j), color)
        palette_of = _cell_palette(d, paint, universe)
        for (i, j), m in p.both_cells():
            if m and not is_stable_mask(g, m):
                paint.cograph(f"touch_both[{i},{j}]", m, palette_of(i, j))
        _paint_stable_components(d, paint, p.stable_both_union(), palette_of)
    else:
        for i in range(1, 5):
            paint.fill(f"primary[{i}]", d.primary.part(i), i)
        for j, pair, watch in ((1, (1, 2), 1), (2, (3, 4), 3)):
            part = d.secondary.part(j)
            marked = sum(1 << v for v in iter_bits(part) if g.rows[v] & d.primary.part(watch))
            paint.split_fill(f"secondary[{j}]", part, marked, pair)
        paint.fill("secondary[3]", d.secondary.part(3), 5)
        paint.fill("secondary[4]", d.secondary.part(4), 6)
        _paint_stable_components(d, paint, p.both_union(), _cell_palette(d, paint, universe))

    _paint_outer_cells(d, paint, universe)
    return paint.finish()


def branch_dense_cell(d: Decomposition, trace: BranchTrace | None = None) -> Coloring:
    """ω ≥ 5 with a dense cell: after relabelling it to (1, 1), primary part i and
    secondary part i share colour i except secondary part 1, which takes ω + 1."""
    trace = _new_trace(Branch.DENSE_CELL, d, trace)
    g, p, omega, k = d.graph, d.partition, d.omega, d.k
    paint = _Painter(g, trace)
    dense = _first_dense_cell(g, p)
    if dense is None:
        raise paint.fail("dense-cell-missing", "every touch_both cell is stable")
    i0, j0 = dense
    _assert_clearance(d, paint, i0, j0)
    a_order, b_order = _front(i0, omega), _front(j0, k)
    trace.relabel["primary"] = a_order
    trace.relabel["secondary"] = b_order
    trace.notes.append(f"dense cell touch_both[{i0},{j0}]")
    universe = frozenset(range(1, trace.budget + 1))

    for color, i in enumerate(a_order, start=1):
        paint.fill(f"primary[{i}]", d.primary.part(i), color)
    paint.fill(f"secondary[{j0}]", d.secondary.part(j0), omega + 1)
    for color, j in enumerate(b_order[1:], start=2):
        paint.fill(f"secondary[{j}]", d.secondary.part(j), color)
    palette_of = _cell_palette(d, paint, universe)
    for (i, j), m in p.both_cells():
        paint.cograph(f"touch_both[{i},{j}]", m, palette_of(i, j))
    _paint_outer_cells(d, paint, universe)
    return paint.finish()


@dataclass(frozen=True, slots=True)
class BandPlan:
    """Palette plan of the all-cells-stable branch.

    ``primary[i]`` and ``secondary[j]`` list the colours a part may use: one
    colour, or a pair where the second goes to vertices with a neighbour in the
    part that owns the first.
    """

    omega: int
    k: int
    third: int
    budget: int
    primary: dict[int, tuple[int, ...]]
    secondary: dict[int, tuple[int, ...]]
    needed: int
    available: int

    @property
    def holds(self) -> bool:
        return self.needed <= self.available


def band_inequality_holds(omega: int) -> bool:
    """2(ω − 2⌈ω/3⌉) ≤ ω − ⌈ω/3⌉: the middle band fits in the low colours."""
    third = -(-omega // 3)
    return 2 * (omega - 2 * third) <= omega - third


def stable_band_plan(omega: int, k: int) -> BandPlan:
    """Three-band plan for ω ≥ 5 and 4 ≤ k ≤ ω, with t = ⌈ω/3⌉.

    Primary parts above ω − t whose secondary twin exists split between i and
    i + t. Secondary parts 1..t take ω + j, parts above ω − t take j, and the
    middle band takes disjoint pairs from 1..ω − t.

    Raises:
        PreconditionError: If ω < 5 or k is outside 4..ω
    """
    if omega < 5 or not 4 <= k <= omega:
        msg = f"band plan needs ω ≥ 5 and 4 ≤ k ≤ ω, got ω={omega}, k={k}"
        raise PreconditionError(msg, kind="band-plan")
    third = -(-omega // 3)
    primary = {i: (i, i + third) if omega - third < i <= k else (i,) for i in range(1, omega + 1)}
    secondary: dict[int, tuple[int, ...]] = {}
    for j in range(1, k + 1):
        if j <= third:
            secondary[j] = (omega + j,)
        elif j > omega - third:
            secondary[j] = (j,)
        else:
            m = j - third
            secondary[j] = (2 * m - 1, 2 * m)
    needed = 2 * max(0, omega - 2 * third)
    return BandPlan(omega, k, third, omega + third, primary, secondary, needed, omega - third)


def branch_stable_cells(d: Decomposition, trace: BranchTrace | None = None) -> Coloring:
    """ω ≥ 5 with every ``touch_both`` cell stable: follows ``stable_band_plan``."""
    trace = _new_trace(Branch.STABLE_CELLS, d, trace)
    g, p, omega, k = d.graph, d.partition, d.omega, d.k
    paint = _Painter(g, trace)
    dense = _first_dense_cell(g, p)
    if dense is not None:
        raise paint.fail("stable-cells-dense", f"touch_both[{dense[0]},{dense[1]}] is not stable")
    plan = stable_band_plan(omega, k)
    if not plan.holds:
        msg = f"middle band needs {plan.needed} colours, {plan.available} available"
        raise paint.fail("band-inequality", msg, omega=omega)
    trace.notes.append(f"third = {plan.third}, middle band needs {plan.needed} of {plan.available}")

    for i, colors in plan.primary.items():
        part = d.primary.part(i)
        if len(colors) == 1:
            paint.fill(f"primary[{i}]", part, colors[0])
        else:
            twin = d.secondary.part(i)
            marked = sum(1 << v for v in iter_bits(part) if g.rows[v] & twin)
            paint.split_fill(f"primary[{i}]", part, marked, colors)
    for j, colors in plan.secondary.items():
        part = d.secondary.part(j)
        if len(colors) == 1:
            paint.fill(f"secondary[{j}]", part, colors[0])
        else:
            owner = d.primary.part(colors[0])
            marked = sum(1 << v for v in iter_bits(part) if g.rows[v] & owner)
            paint.split_fill(f"secondary[{j}]", part, marked, colors)

    universe = frozenset(range(1, trace.budget + 1))
    palette_of = _cell_palette(d, paint, universe)
    for (i, j), m in p.both_cells():
        if not m:
            continue
        allowed = palette_of(i, j)
        if not allowed:
            raise paint.fail("palette-shortage", f"touch_both[{i},{j}] has no colour left", iter_bits(m))
        paint.fill(f"touch_both[{i},{j}]", m, min(allowed))
    _paint_outer_cells(d, paint, universe)
    return paint.finish()


def choose_branch(d: Decomposition) -> Branch:
    """The single branch that applies, in the fixed order."""
    if d.stage is Stage.SMALL_OMEGA:
        return Branch.SMALL_OMEGA
    if d.stage is Stage.THIN_REMAINDER:
        return Branch.THIN_REMAINDER
    if d.stage is Stage.SPLIT_VERTEX:
        return Branch.SPLIT_VERTEX
    if d.omega == 4:
        return Branch.OMEGA_FOUR
    if _first_dense_cell(d.graph, d.partition) is not None:
        return Branch.DENSE_CELL
    return Branch.STABLE_CELLS


_BRANCHES = {
    Branch.THIN_REMAINDER: branch_thin_remainder,
    Branch.SPLIT_VERTEX: branch_split_vertex,
    Branch.OMEGA_FOUR: branch_omega_four,
    Branch.DENSE_CELL: branch_dense_cell,
    Branch.STABLE_CELLS: branch_stable_cells,
}


def _run_branch(g: Graph, d: Decomposition, branch: Branch, trace: BranchTrace, node_budget: int | None) -> Coloring:
    if branch is Branch.SMALL_OMEGA:
        coloring = branch_small_omega(g, node_budget=node_budget, trace=trace)
    else:
        coloring = _BRANCHES[branch](d, trace)
    if not verify_coloring(g, coloring):
        conflict = find_conflict(g, coloring) if len(coloring.colors) == g.n else None
        msg = f"{branch} produced an improper colouring"
        raise BranchAssertionFailure(branch, Violation("verify", msg, conflict or ()))
    if coloring.colors_used > trace.budget:
        raise ColorBudgetExceededError(coloring.colors_used, trace.budget, d.omega)
    return coloring


def color_class_member(
    g: Graph,
    *,
    node_budget: int | None = None,
    cover_node_budget: int | None = None,
    representative_seed: int | None = None,
    check_membership: bool = True,
    decomposition: Decomposition | None = None,
) -> tuple[Coloring, BranchTrace]:
    """Colour a class member with at most ``color_budget(ω)`` colours.

    Args:
        g: Graph to colour
        node_budget: Budget for clique and oracle searches
        cover_node_budget: Budget for the exact cover searches
        representative_seed: Randomise part representatives
        check_membership: Verify class membership first
        decomposition: Reuse an existing decomposition of ``g``

    Returns:
        The verified colouring and the trace of the branch that produced it

    Raises:
        NotAClassMemberError: If ``g`` contains an induced P2∪P4 or HVN
        StructureViolation: If the decomposition fails a structural check
        BranchAssertionFailure: If a branch assertion fails or the result is improper
        ColorBudgetExceededError: If more than ``color_budget(ω)`` colours are used

    Both colouring failures carry the partial trace as ``e.trace``.

    Example:
        >>> coloring, trace = color_class_member(complete_graph(5))
        >>> coloring.colors_used, str(trace.branch)
        (5, 'thin-remainder')
    """
    if check_membership:
        member, witness = is_class_member(g)
        if not member:
            msg = f"graph contains an induced {witness.pattern} at {witness.vertices}"
            raise NotAClassMemberError(msg, witness.pattern, witness.vertices)
    d = decomposition or decompose(
        g,
        node_budget=node_budget,
        cover_node_budget=cover_node_budget,
        representative_seed=representative_seed,
        check_membership=False,
    )
    branch = choose_branch(d)
    trace = BranchTrace(branch, d.omega, color_budget(d.omega), d.k)
    logger.info(f"colouring n={g.n} ω={d.omega} k={d.k} via {branch}")
    try:
        coloring = _run_branch(g, d, branch, trace, node_budget)
    except (BranchAssertionFailure, ColorBudgetExceededError) as e:
        e.trace = trace
        raise
    used = coloring.colors_used
    trace.colors_used = used
    logger.info(f"{branch} used {used} of {trace.budget} colours")
    return coloring.mark_verified(), trace
