"""Batch verification: every graph goes through membership, decomposition checks,
colouring, independent verification and an optional exact oracle.

Failures become violation records on the graph's campaign record; the campaign
itself keeps going. Graphs are processed in input-order windows and each window
is emitted sorted by graph hash, so output does not depend on the worker count.
"""

import random
from collections.abc import Iterable, Iterator
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from itertools import islice, repeat

from loguru import logger

from chibound.coloring import color_class_member
from chibound.decomposition import (
    Decomposition,
    check_properties,
    decompose,
    extending_vertices,
    sweep_low_span_pairs,
)
from chibound.errors import (
    BranchAssertionFailure,
    BudgetExceededError,
    ColorBudgetExceededError,
    PreconditionError,
    StructureViolation,
    Violation,
)
from chibound.formats import violation_record, witness_record, write_graph6
from chibound.generators import enumerate_labeled_graphs, extremal, sample_class_member
from chibound.graph import Graph, graph_hash
from chibound.oracles import chromatic_number, verify_coloring
from chibound.patterns import is_class_member
from chibound.records import CampaignRecord, CampaignSummary, ViolationRecord


@dataclass(frozen=True, slots=True)
class CampaignOptions:
    """Per-graph settings; picklable so workers receive them unchanged."""

    oracle_verify_max_n: int = 40
    node_budget: int | None = None
    cover_node_budget: int | None = None
    representative_seed: int | None = None


def _structural_violations(g: Graph, d: Decomposition) -> list[ViolationRecord]:
    found: list[ViolationRecord] = []
    for cover, name in ((d.primary, "primary"), (d.secondary, "secondary")):
        if cover is None:
            continue
        within = None if name == "primary" else d.partition.remainder
        extra = extending_vertices(g, cover, within)
        if extra:
            msg = f"{name} cover extends by vertices {sorted(extra)[:12]}"
            found.append(violation_record(Violation("cover-maximality", msg, tuple(sorted(extra))), "decomposition"))
    if d.split_profile is not None:
        found.extend(violation_record(v, "decomposition") for v in d.split_profile.violations(d.k))
    if d.partition is not None:
        found.extend(violation_record(v, "properties") for v in check_properties(g, d.partition).violations())
        if d.partition.complete:
            found.extend(violation_record(v, "low-span") for v in sweep_low_span_pairs(g, d.partition))
    return found


def process_graph(g: Graph, options: CampaignOptions) -> CampaignRecord:
    """Run every check on one graph and collect the outcome."""
    base = {"graph_hash": graph_hash(g), "graph6": write_graph6(g), "n": g.n}
    member, witness = is_class_member(g)
    if not member:
        return CampaignRecord(**base, member=False, witness=witness_record(witness, g), skipped="non-member")

    try:
        d = decompose(
            g,
            node_budget=options.node_budget,
            cover_node_budget=options.cover_node_budget,
            representative_seed=options.representative_seed,
            check_membership=False,
        )
    except StructureViolation as e:
        logger.error(f"decomposition failed on {base['graph6']}: {e}")
        return CampaignRecord(**base, member=True, violations=[violation_record(e.violation, "decomposition")])
    except BudgetExceededError as e:
        logger.warning(f"decomposition gave up on {base['graph6']}: {e}")
        return CampaignRecord(**base, member=True, skipped="budget")

    violations = _structural_violations(g, d)
    record = CampaignRecord(**base, member=True, omega=d.omega, k=d.k)
    try:
        coloring, trace = color_class_member(
            g,
            node_budget=options.node_budget,
            check_membership=False,
            decomposition=d,
        )
    except BranchAssertionFailure as e:
        logger.error(f"branch failure on {base['graph6']}: {e}")
        violations.append(violation_record(e.violation, str(e.branch)))
        return record.model_copy(update={"violations": violations})
    except ColorBudgetExceededError as e:
        logger.error(f"budget exceeded on {base['graph6']}: {e}")
        violation = Violation("color-budget", str(e), details={"used": e.used, "budget": e.budget})
        violations.append(violation_record(violation))
        return record.model_copy(update={"violations": violations, "budget": e.budget})
    except BudgetExceededError as e:
        logger.warning(f"colouring gave up on {base['graph6']}: {e}")
        return record.model_copy(update={"violations": violations, "skipped": "budget"})

    proper = verify_coloring(g, coloring)
    update = {
        "branch": str(trace.branch),
        "colors_used": trace.colors_used,
        "budget": trace.budget,
        "proper": proper,
    }
    if not proper:
        violations.append(violation_record(Violation("verify", "colouring is not proper"), str(trace.branch)))
    if g.n <= options.oracle_verify_max_n:
        try:
            chi, _ = chromatic_number(g, node_budget=options.node_budget)
        except BudgetExceededError as e:
            logger.warning(f"oracle gave up on {base['graph6']} after {e.nodes} nodes")
        else:
            update["oracle_chi"] = chi
            if not d.omega <= chi <= trace.colors_used <= trace.budget:
                msg = f"expected ω={d.omega} ≤ χ={chi} ≤ used={trace.colors_used} ≤ budget={trace.budget}"
                violations.append(violation_record(Violation("oracle-sandwich", msg), str(trace.branch)))
    update["violations"] = violations
    return record.model_copy(update=update)


def _windows(graphs: Iterable[Graph], size: int) -> Iterator[list[Graph]]:
    it = iter(graphs)
    while chunk := list(islice(it, size)):
        yield chunk


def run_campaign(
    graphs: Iterable[Graph],
    options: CampaignOptions | None = None,
    *,
    jobs: int = 1,
    window: int = 256,
) -> Iterator[CampaignRecord]:
    """Stream campaign records window by window, each window sorted by graph hash.

    Args:
        graphs: Input graphs, consumed lazily
        options: Per-graph settings
        jobs: Worker processes; 1 runs inline
        window: Graphs held in memory at once
    """
    options = options or CampaignOptions()
    pool: Executor | None = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for chunk in _windows(graphs, window):
            if pool is None:
                records = [process_graph(g, options) for g in chunk]
            else:
                records = list(pool.map(process_graph, chunk, repeat(options)))
            records.sort(key=lambda r: (r.graph_hash, r.graph6))
            logger.debug(f"window of {len(records)} graphs done")
            yield from records
    finally:
        if pool is not None:
            pool.shutdown()


def summarize(records: Iterable[CampaignRecord]) -> CampaignSummary:
    summary = CampaignSummary()
    for record in records:
        summary.add(record)
    return summary


def _int_field(value: str, spec: str) -> int:
    try:
        return int(value)
    except ValueError:
        msg = f"expected an integer in generator spec {spec!r}, got {value!r}"
        raise PreconditionError(msg, kind="source") from None


def _samples(n: int, count: int, seed: int, density: float) -> Iterator[Graph]:
    rng = random.Random(seed)
    for _ in range(count):
        yield sample_class_member(n, density, rng.randrange(1 << 32))


def is_generator_spec(source: str) -> bool:
    return source.split(":", 1)[0] in {"enumerate", "sample", "extremal"}


def generator_source(spec: str) -> Iterator[Graph]:
    """Graphs for ``enumerate:N``, ``sample:N:COUNT:SEED[:DENSITY]`` or ``extremal:W``.

    Raises:
        PreconditionError: kind ``source`` for malformed specs
    """
    kind, *fields = spec.split(":")
    if kind == "enumerate" and len(fields) == 1:
        return enumerate_labeled_graphs(_int_field(fields[0], spec))
    if kind == "extremal" and len(fields) == 1:
        return iter([extremal(_int_field(fields[0], spec))])
    if kind == "sample" and len(fields) in {3, 4}:
        n, count, seed = (_int_field(f, spec) for f in fields[:3])
        try:
            density = float(fields[3]) if len(fields) == 4 else 0.5
        except ValueError:
            msg = f"expected a density in generator spec {spec!r}, got {fields[3]!r}"
            raise PreconditionError(msg, kind="source") from None
        return _samples(n, count, seed, density)
    msg = f"unknown generator spec {spec!r}; expected enumerate:N, sample:N:COUNT:SEED[:DENSITY] or extremal:W"
    raise PreconditionError(msg, kind="source")
