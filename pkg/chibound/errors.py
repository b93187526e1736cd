"""Exception hierarchy shared by every chibound module.

Violations of structural statements are values as much as errors: they carry a
``Violation`` record with the vertices that reproduce the failure, so a campaign
can log them and keep going.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from chibound.coloring import BranchTrace


def _freeze(value: object) -> object:
    if isinstance(value, list | tuple | set | frozenset):
        items = sorted(value) if isinstance(value, set | frozenset) else value
        return tuple(_freeze(v) for v in items)
    if isinstance(value, Mapping):
        return tuple((k, _freeze(v)) for k, v in value.items())
    return value


@dataclass(frozen=True, slots=True)
class Violation:
    """A replayable report of a failed structural or colouring assertion.

    ``details`` is stored as ``(key, value)`` pairs with nested sequences turned
    into tuples, so a violation is immutable and hashable; ``dict(v.details)``
    gives the mapping back.
    """

    name: str
    message: str
    vertices: tuple[int, ...] = ()
    details: Mapping[str, object] | tuple[tuple[str, object], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        pairs = self.details.items() if isinstance(self.details, Mapping) else self.details
        object.__setattr__(self, "details", tuple((str(k), _freeze(v)) for k, v in pairs))


class ChiboundError(Exception):
    """Base class for all chibound errors."""


class GraphError(ChiboundError, ValueError):
    """Invalid vertex, vertex set or adjacency data."""


class FormatError(ChiboundError, ValueError):
    """A graph or record text could not be parsed."""

    def __init__(self, message: str, *, fmt: str, line: int | None = None):
        self.detail = message
        self.fmt = fmt
        self.line = line
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"{fmt}{where}: {message}")


class PatternTooLargeError(ChiboundError, ValueError):
    """Induced-pattern search is limited to templates of at most six vertices."""


class PreconditionError(ChiboundError, ValueError):
    """An operation was called outside its documented preconditions."""

    def __init__(self, message: str, *, kind: str = "precondition"):
        self.kind = kind
        super().__init__(message)


class NotP4FreeError(PreconditionError):
    """Cograph colouring was asked for a graph containing an induced P4."""

    def __init__(self, message: str, witness: tuple[int, ...]):
        self.witness = witness
        super().__init__(message, kind="not-p4-free")


class NotAClassMemberError(PreconditionError):
    """The input contains an induced P2∪P4 or HVN."""

    def __init__(self, message: str, pattern: str, witness: tuple[int, ...]):
        self.pattern = pattern
        self.witness = witness
        super().__init__(message, kind="non-member")


class BudgetExceededError(ChiboundError, RuntimeError):
    """An exact search ran out of its node budget."""

    def __init__(self, what: str, nodes: int, budget: int):
        self.what = what
        self.nodes = nodes
        self.budget = budget
        super().__init__(f"{what}: budget exceeded after {nodes} nodes (budget {budget})")


class StructureViolation(ChiboundError, RuntimeError):
    """A structural statement that holds for every class member failed."""

    def __init__(self, violation: Violation):
        self.violation = violation
        super().__init__(f"{violation.name}: {violation.message}")


class BranchAssertionFailure(ChiboundError, RuntimeError):
    """A colouring branch met a failed precondition or palette shortage.

    ``trace`` holds the partial trace of the branch when the failure came out of
    ``color_class_member``.
    """

    def __init__(self, branch: str, violation: Violation):
        self.branch = branch
        self.violation = violation
        self.trace: "BranchTrace | None" = None
        super().__init__(f"[{branch}] {violation.name}: {violation.message}")


class HallViolationError(BranchAssertionFailure):
    """No assignment of distinct colours to the cells of a component exists."""

    def __init__(self, branch: str, violator: tuple[int, ...], palette: frozenset[int]):
        self.violator = violator
        self.palette = palette
        violation = Violation(
            name="hall-assignment",
            message=(
                f"cells {list(violator)} share only {len(palette)} colours {sorted(palette)}"
            ),
            details={"violator": list(violator), "palette": sorted(palette)},
        )
        super().__init__(branch, violation)


class ColorBudgetExceededError(ChiboundError, RuntimeError):
    """A produced colouring uses more colours than the bound permits."""

    def __init__(self, used: int, budget: int, omega: int):
        self.used = used
        self.budget = budget
        self.omega = omega
        self.trace: "BranchTrace | None" = None
        super().__init__(f"colouring uses {used} colours, budget for ω={omega} is {budget}")
