"""Command-line interface for chibound."""

import sys
from collections.abc import Iterable
from pathlib import Path
from typing import NoReturn

import click
from loguru import logger
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.progress import track
from rich.table import Table

from chibound import __version__, add_log_file, install_exception_hook
from chibound.campaign import (
    CampaignOptions,
    generator_source,
    is_generator_spec,
    run_campaign,
)
from chibound.coloring import color_class_member
from chibound.config import get_settings
from chibound.errors import (
    BranchAssertionFailure,
    BudgetExceededError,
    ColorBudgetExceededError,
    FormatError,
    PreconditionError,
    StructureViolation,
    Violation,
)
from chibound.formats import (
    FORMATS,
    GRAPH6,
    GraphDocument,
    read_documents,
    violation_record,
    write_coloring_json,
    write_graph,
    write_graph6,
    write_trace_json,
    write_witness_json,
)
from chibound.generators import (
    dedup_isomorphic,
    enumerate_class_members,
    enumerate_labeled_graphs,
    extremal,
)
from chibound.graph import Graph, graph_hash
from chibound.oracles import chromatic_number
from chibound.patterns import is_class_member
from chibound.records import CampaignSummary, OracleCheckRecord, ReplayBundle

EXIT_OK = 0
EXIT_NOT_MEMBER = 1
EXIT_IO = 2
EXIT_BRANCH = 3

console = Console(stderr=True)

format_option = click.option(
    "--format",
    "-f",
    "fmt",
    type=click.Choice(FORMATS),
    default=GRAPH6,
    show_default=True,
    help="Graph text format",
)
out_option = click.option(
    "--out",
    "-o",
    "out_file",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write records to this file instead of stdout",
)


def configure_verbose_logging() -> None:
    """Route INFO and above through the rich console."""
    logger.remove()
    logger.add(
        lambda msg: console.print(msg, end="", markup=False, highlight=False),
        level="INFO",
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {message}",
    )
    console.print("[dim]Verbose logging enabled[/dim]")


def configure_quiet_logging() -> None:
    """Configure quiet logging - only show errors."""
    logger.remove()
    logger.add(lambda msg: None, level="ERROR")


def fail(message: str, code: int) -> NoReturn:
    console.print(f"[bold red]Error:[/bold red] {escape(message)}")
    sys.exit(code)


def load_options_or_abort(node_budget: int | None = None) -> tuple[int, int, int]:
    """Settings-backed (node budget, oracle size cap, campaign window)."""
    try:
        settings = get_settings()
    except ValidationError as e:
        console.print("[bold red]Error:[/bold red] Invalid configuration")
        console.print("\nCheck the CHIBOUND_* environment variables or your .env file.")
        console.print(f"Details: {escape(str(e))}")
        sys.exit(EXIT_IO)
    return node_budget or settings.node_budget, settings.oracle_verify_max_n, settings.campaign_window


def read_input(source: str, fmt: str) -> list[GraphDocument]:
    """Read every graph from a path, or from stdin for ``-``."""
    try:
        if source == "-":
            text = click.get_text_stream("stdin").read()
        else:
            path = Path(source)
            if not path.is_file():
                fail(f"Graph file not found: {source}", EXIT_IO)
            text = path.read_text(encoding="utf-8")
        documents = list(read_documents(text, fmt))
    except (OSError, FormatError) as e:
        fail(f"Failed to read {source}: {e}", EXIT_IO)
    if not documents:
        fail(f"No graphs in {source}", EXIT_IO)
    logger.info(f"Read {len(documents)} graphs from {source}")
    return documents


class RecordSink:
    """Collects output lines for stdout or ``--out``."""

    def __init__(self, out_file: Path | None):
        self.out_file = out_file
        self.handle = out_file.open("w", encoding="utf-8") if out_file else None

    def write(self, line: str) -> None:
        if self.handle is not None:
            self.handle.write(line.rstrip("\n") + "\n")
        else:
            click.echo(line.rstrip("\n"))

    def close(self) -> None:
        if self.handle is not None:
            self.handle.close()
            logger.info(f"Wrote records to {self.out_file}")


def emit_graphs(graphs: Iterable[Graph], fmt: str, out_file: Path | None) -> int:
    sink = RecordSink(out_file)
    count = 0
    try:
        for g in graphs:
            sink.write(write_graph(g, fmt))
            count += 1
    finally:
        sink.close()
    return count


def write_replay_bundle(
    g: Graph, error: Exception, replay_dir: Path, representative_seed: int | None = None
) -> Path:
    """Write the graph, the violation, the partial trace and the seed of a failed colouring."""
    if isinstance(error, BudgetExceededError):
        details = {"what": error.what, "nodes": error.nodes, "budget": error.budget}
        violation = Violation("node-budget", str(error), details=details)
    else:
        violation = getattr(error, "violation", None) or Violation(type(error).__name__, str(error))
    trace = getattr(error, "trace", None)
    branch = str(error.branch) if isinstance(error, BranchAssertionFailure) else None
    if branch is None and trace is not None:
        branch = str(trace.branch)
    bundle = ReplayBundle(
        graph6=write_graph6(g),
        graph_hash=graph_hash(g),
        branch=branch,
        violation=violation_record(violation, branch),
        trace=trace.to_record() if trace is not None else None,
        representative_seed=representative_seed,
    )
    replay_dir.mkdir(parents=True, exist_ok=True)
    path = replay_dir / f"replay-{bundle.graph_hash[:12]}.json"
    path.write_text(bundle.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.error(f"Wrote replay bundle to {path}")
    return path


@click.group()
@click.version_option(__version__, prog_name="chibound")
@click.option("--verbose", "-v", is_flag=True, help="Enable info logging")
def main(verbose: bool) -> None:
    """Check, colour and stress-test (P2∪P4, HVN)-free graphs.

    Exit codes: 0 success, 1 non-member or campaign violation, 2 input or
    configuration error, 3 colouring failure or exhausted search budget
    (a replay bundle is written).
    """
    if verbose:
        configure_verbose_logging()
    else:
        configure_quiet_logging()
    attach_log_file()


def attach_log_file() -> None:
    """Mirror log records into ``CHIBOUND_LOG_FILE`` when it is set."""
    try:
        settings = get_settings()
    except ValidationError:
        # reported by the command when it loads its options
        return
    if settings.log_file:
        add_log_file(settings.log_file, settings.log_level)
        install_exception_hook()


@main.command("check")
@click.argument("source")
@format_option
@out_option
def cmd_check(source: str, fmt: str, out_file: Path | None) -> None:
    """Report whether each graph in SOURCE avoids induced P2∪P4 and HVN."""
    documents = read_input(source, fmt)
    sink = RecordSink(out_file)
    outside = 0
    try:
        for number, doc in enumerate(documents, start=1):
            label = doc.name or f"graph {number}"
            member, witness = is_class_member(doc.graph)
            if member:
                console.print(f"[green]✓ {escape(label)}:[/green] class member")
                continue
            outside += 1
            console.print(f"[red]✗ {escape(label)}:[/red] induced {witness.pattern} at {list(witness.vertices)}")
            sink.write(write_witness_json(witness, doc.graph))
    finally:
        sink.close()
    if outside:
        sys.exit(EXIT_NOT_MEMBER)


@main.command("color")
@click.argument("source")
@format_option
@out_option
@click.option("--explain", is_flag=True, help="Print the branch trace and emit it as a record")
@click.option("--oracle-verify", is_flag=True, help="Compare with the exact chromatic number")
@click.option("--node-budget", type=click.IntRange(min=1), default=None, help="Node budget of exact searches")
@click.option("--seed", type=int, default=None, help="Draw part representatives with this seed")
@click.option(
    "--replay-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path(),
    help="Directory for replay bundles of failed colourings",
)
def cmd_color(
    source: str,
    fmt: str,
    out_file: Path | None,
    explain: bool,
    oracle_verify: bool,
    node_budget: int | None,
    seed: int | None,
    replay_dir: Path,
) -> None:
    """Colour each graph in SOURCE within the ⌈4ω/3⌉ bound."""
    budget, _, _ = load_options_or_abort(node_budget)
    documents = read_input(source, fmt)
    sink = RecordSink(out_file)
    try:
        for doc in documents:
            g = doc.graph
            member, witness = is_class_member(g)
            if not member:
                console.print(f"[red]✗ not a class member:[/red] induced {witness.pattern} at {list(witness.vertices)}")
                sink.write(write_witness_json(witness, g))
                sys.exit(EXIT_NOT_MEMBER)
            try:
                coloring, trace = color_class_member(
                    g, node_budget=budget, representative_seed=seed, check_membership=False
                )
            except (BranchAssertionFailure, StructureViolation, ColorBudgetExceededError, BudgetExceededError) as e:
                path = write_replay_bundle(g, e, replay_dir, representative_seed=seed)
                console.print(f"[bold red]Error:[/bold red] {escape(str(e))}")
                console.print(f"Replay bundle: [cyan]{path}[/cyan]")
                sys.exit(EXIT_BRANCH)

            sink.write(write_coloring_json(coloring, g))
            console.print(
                f"[green]✓[/green] {coloring.colors_used} colours (budget {trace.budget}, ω={trace.omega}) via {trace.branch}"
            )
            if explain:
                sink.write(write_trace_json(trace))
                console.print(trace.to_tree())
            if oracle_verify:
                sink.write(oracle_check(g, trace.omega, coloring.colors_used, trace.budget, budget).model_dump_json())
    finally:
        sink.close()


def oracle_check(g: Graph, omega: int, used: int, budget: int, node_budget: int) -> OracleCheckRecord:
    try:
        chi, _ = chromatic_number(g, node_budget=node_budget)
    except BudgetExceededError as e:
        console.print(f"[yellow]⊘ oracle gave up after {e.nodes} nodes[/yellow]")
        return OracleCheckRecord(omega=omega, oracle_chi=None, colors_used=used, budget=budget, sandwich=None)
    sandwich = omega <= chi <= used <= budget
    marker = "[green]✓[/green]" if sandwich else "[red]✗[/red]"
    console.print(f"{marker} oracle χ = {chi}")
    return OracleCheckRecord(omega=omega, oracle_chi=chi, colors_used=used, budget=budget, sandwich=sandwich)


@main.command("extremal")
@click.argument("omega", type=int)
@format_option
@out_option
def cmd_extremal(omega: int, fmt: str, out_file: Path | None) -> None:
    """Emit the 2ω²-vertex graph whose chromatic number is ⌈4ω/3⌉."""
    try:
        g = extremal(omega)
    except PreconditionError as e:
        raise click.BadParameter(str(e), param_hint="OMEGA") from e
    emit_graphs([g], fmt, out_file)


@main.command("sample")
@click.argument("n", type=click.IntRange(min=1))
@click.option("--count", "-c", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--seed", "-s", type=int, default=0, show_default=True)
@click.option("--density", "-d", type=click.FloatRange(0.0, 1.0), default=0.5, show_default=True)
@format_option
@out_option
def cmd_sample(n: int, count: int, seed: int, density: float, fmt: str, out_file: Path | None) -> None:
    """Emit COUNT random class members on N vertices."""
    graphs = generator_source(f"sample:{n}:{count}:{seed}:{density}")
    emit_graphs(graphs, fmt, out_file)


@main.command("enumerate")
@click.argument("n", type=click.IntRange(min=0, max=7))
@click.option("--members-only", is_flag=True, help="Keep only class members")
@click.option("--dedup", is_flag=True, help="Keep one graph per isomorphism class")
@format_option
@out_option
def cmd_enumerate(n: int, members_only: bool, dedup: bool, fmt: str, out_file: Path | None) -> None:
    """Emit every labeled graph on N vertices."""
    if members_only:
        graphs = enumerate_class_members(n, dedup=dedup)
    elif dedup:
        graphs = iter(dedup_isomorphic(enumerate_labeled_graphs(n)))
    else:
        graphs = enumerate_labeled_graphs(n)
    count = emit_graphs(graphs, fmt, out_file)
    console.print(f"[green]✓[/green] {count} graphs on {n} vertices")


def print_summary(summary: CampaignSummary) -> None:
    console.print("\n[bold]Campaign Summary:[/bold]")
    console.print(f"  [blue]Graphs:[/blue] {summary.total}")
    console.print(f"  [green]✓ Coloured:[/green] {summary.colored}")
    console.print(f"  [yellow]⊘ Skipped:[/yellow] {summary.skipped}")
    console.print(f"  [red]✗ Violations:[/red] {summary.violations}")
    console.print(f"  Oracle checked: {summary.oracle_checked}")
    if summary.by_branch:
        table = Table(title="Branches")
        table.add_column("branch")
        table.add_column("graphs", justify="right")
        for branch, count in sorted(summary.by_branch.items()):
            table.add_row(branch, str(count))
        console.print(table)


@main.command("campaign")
@click.argument("source")
@format_option
@out_option
@click.option("--jobs", "-j", type=click.IntRange(min=1), default=None, help="Worker processes")
@click.option("--oracle-verify-max-n", type=click.IntRange(min=0), default=None, help="Largest n checked by the oracle")
@click.option("--node-budget", type=click.IntRange(min=1), default=None, help="Node budget of exact searches")
@click.option("--seed", type=int, default=None, help="Draw part representatives with this seed")
def cmd_campaign(
    source: str,
    fmt: str,
    out_file: Path | None,
    jobs: int | None,
    oracle_verify_max_n: int | None,
    node_budget: int | None,
    seed: int | None,
) -> None:
    """Run every check on each graph of SOURCE and report violations.

    SOURCE is a graph file, ``-`` for stdin, or a generator spec:
    enumerate:N, sample:N:COUNT:SEED[:DENSITY] or extremal:W.
    """
    budget, default_max_n, window = load_options_or_abort(node_budget)
    if is_generator_spec(source):
        try:
            graphs = generator_source(source)
        except PreconditionError as e:
            raise click.BadParameter(str(e), param_hint="SOURCE") from e
    else:
        graphs = (doc.graph for doc in read_input(source, fmt))
    options = CampaignOptions(
        oracle_verify_max_n=default_max_n if oracle_verify_max_n is None else oracle_verify_max_n,
        node_budget=budget,
        representative_seed=seed,
    )
    workers = jobs or get_settings().jobs

    sink = RecordSink(out_file)
    summary = CampaignSummary()
    try:
        records = run_campaign(graphs, options, jobs=workers, window=window)
        for record in track(records, description="Checking graphs...", console=console, transient=True):
            summary.add(record)
            sink.write(record.model_dump_json())
    except PreconditionError as e:
        fail(str(e), EXIT_IO)
    finally:
        sink.close()
    print_summary(summary)
    if summary.violations:
        sys.exit(EXIT_NOT_MEMBER)


if __name__ == "__main__":
    main()
