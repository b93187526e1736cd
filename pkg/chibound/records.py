"""Line-delimited JSON result records.

Each record serialises to one compact JSON object per line so campaigns can
stream them; ``model_dump_json`` output is byte-stable for equal records.
"""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_serializer


class WitnessRecord(BaseModel):
    """An induced pattern found in a graph."""

    model_config = ConfigDict(frozen=True)

    pattern: str
    vertices: list[int]
    verified: bool | None = None


class ColoringRecord(BaseModel):
    """A colouring, serialised flat: one key per vertex, then summary flags."""

    model_config = ConfigDict(frozen=True)

    colors: dict[int, int]
    colors_used: int
    proper: bool

    @model_serializer
    def serialize_flat(self) -> dict[str, Any]:
        flat: dict[str, Any] = {str(v): c for v, c in sorted(self.colors.items())}
        flat["colors_used"] = self.colors_used
        flat["proper"] = self.proper
        return flat


class TraceStepRecord(BaseModel):
    target: str
    palette: list[int]
    colors: list[int]


class HallStepRecord(BaseModel):
    cells: list[str]
    palettes: list[list[int]]
    assignment: list[int]


class TraceRecord(BaseModel):
    """Which colouring branch ran and the palettes it handed out."""

    branch: str
    omega: int
    k: int | None = None
    budget: int
    colors_used: int | None = None
    relabel: dict[str, list[int]] = Field(default_factory=dict)
    steps: list[TraceStepRecord] = Field(default_factory=list)
    hall: list[HallStepRecord] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)


class ViolationRecord(BaseModel):
    """A failed structural statement or colouring assertion, replayable from ``vertices``."""

    name: str
    message: str
    vertices: list[int] = Field(default_factory=list)
    details: dict[str, Any] = Field(default_factory=dict)
    branch: str | None = None


class CampaignRecord(BaseModel):
    """Outcome of one campaign graph."""

    graph_hash: str
    graph6: str
    n: int
    member: bool
    witness: WitnessRecord | None = None
    omega: int | None = None
    k: int | None = None
    branch: str | None = None
    colors_used: int | None = None
    budget: int | None = None
    proper: bool | None = None
    oracle_chi: int | None = None
    skipped: str | None = None
    violations: list[ViolationRecord] = Field(default_factory=list)


class CampaignSummary(BaseModel):
    """Aggregate counts over a campaign."""

    total: int = 0
    members: int = 0
    skipped: int = 0
    colored: int = 0
    oracle_checked: int = 0
    violations: int = 0
    by_branch: dict[str, int] = Field(default_factory=dict)
    by_omega: dict[int, int] = Field(default_factory=dict)

    def add(self, record: CampaignRecord) -> None:
        self.total += 1
        if record.member:
            self.members += 1
        if record.skipped:
            self.skipped += 1
        if record.colors_used is not None:
            self.colored += 1
        if record.oracle_chi is not None:
            self.oracle_checked += 1
        self.violations += len(record.violations)
        if record.branch:
            self.by_branch[record.branch] = self.by_branch.get(record.branch, 0) + 1
        if record.omega is not None:
            self.by_omega[record.omega] = self.by_omega.get(record.omega, 0) + 1


class OracleCheckRecord(BaseModel):
    """Exact χ next to the constructive colouring: ω ≤ χ ≤ colours used ≤ budget."""

    omega: int
    oracle_chi: int | None
    colors_used: int
    budget: int
    sandwich: bool | None


class ReplayBundle(BaseModel):
    """Everything needed to reproduce a failed colouring."""

    graph6: str
    graph_hash: str
    branch: str | None = None
    violation: ViolationRecord
    trace: TraceRecord | None = None
    representative_seed: int | None = None
