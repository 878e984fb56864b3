"""
Data models for workload generation and the experiment harness.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .solution import SolveStatus

Interval = tuple[int, int]

SWEEPABLE = ("slices", "sfcs", "nfs")


def _check_interval(name: str, interval: Interval) -> None:
    lo, hi = interval
    if lo > hi:
        raise ValueError(f"{name}: lower bound {lo} exceeds upper bound {hi}")


class GenParams(BaseModel):
    """Parameters of the seeded substrate/workload generator."""
    model_config = ConfigDict(frozen=True)

    n_hosts: int = Field(default=12, ge=1)
    n_connectors: int = Field(default=0, ge=0)
    connectivity: float = Field(default=0.5, gt=0, le=1, description="Edge probability of the random topology")
    resource_kinds: tuple[str, ...] = ("cpu", "ram", "disk")
    host_capacity: Interval = Field(default=(1600, 2400), description="Per-kind host capacity range")
    link_bandwidth: Interval = Field(default=(600, 1000), description="Link capacity range in Mbps")
    link_latency: Interval = Field(default=(5, 20), description="Link latency range in ms")
    demand: Interval = Field(default=(50, 100), description="NF demand, hop bandwidth and latency budget range")
    seed: int = Field(default=0, ge=0, lt=2**64)
    max_attempts: int = Field(default=50, ge=1, description="Connectivity retries before giving up")

    @field_validator('resource_kinds')
    @classmethod
    def validate_kinds(cls, v: tuple[str, ...]) -> tuple[str, ...]:
        if not v or len(set(v)) != len(v):
            raise ValueError("resource kinds must be non-empty and distinct")
        return v

    @model_validator(mode='after')
    def check_intervals(self) -> "GenParams":
        for name in ("host_capacity", "link_bandwidth", "link_latency", "demand"):
            _check_interval(name, getattr(self, name))
        if self.link_bandwidth[0] <= 0:
            raise ValueError("link bandwidth must be positive")
        if self.demand[0] <= 0:
            raise ValueError("demand interval must be positive")
        if min(self.host_capacity[0], self.link_latency[0]) < 0:
            raise ValueError("capacities and latencies must be non-negative")
        return self


class ConfigPoint(BaseModel):
    """One configuration point of an experiment sweep."""
    model_config = ConfigDict(frozen=True)

    slices: int = Field(ge=1)
    sfcs: int = Field(ge=1)
    nfs: int = Field(ge=1)
    nodes: int = Field(ge=1)
    series: str = ""


class ExperimentPlan(BaseModel):
    """A sweep: configuration points, repetitions and generator defaults."""
    model_config = ConfigDict(frozen=True)

    name: str
    swept: Literal["slices", "sfcs", "nfs"] = "slices"
    points: tuple[ConfigPoint, ...] = Field(min_length=1)
    repetitions: int = Field(default=100, ge=1)
    params: GenParams = Field(default_factory=GenParams)
    time_limit: float = Field(default=10.0, gt=0)

    def truncated(self, max_points: Optional[int] = None, repetitions: Optional[int] = None,
                  max_value: Optional[int] = None) -> "ExperimentPlan":
        """Smaller copy of the plan for quick runs."""
        points = self.points
        if max_value is not None:
            points = tuple(p for p in points if getattr(p, self.swept) <= max_value)
        if max_points is not None:
            points = points[:max_points]
        return self.model_copy(update={
            "points": points,
            "repetitions": repetitions or self.repetitions,
        })


class ExperimentRecord(BaseModel):
    """One solved repetition."""
    model_config = ConfigDict(frozen=True)

    preset: str
    slices: int
    sfcs: int
    nfs: int
    nodes: int
    seed: int
    active_nodes: int = Field(ge=0)
    solve_time_s: float = Field(ge=0)
    status: str

    @model_validator(mode='after')
    def check_active(self) -> "ExperimentRecord":
        if self.active_nodes > self.nodes:
            raise ValueError("active nodes cannot exceed substrate node count")
        return self

    def swept_value(self, swept: str) -> int:
        return getattr(self, swept)

    @property
    def placed(self) -> bool:
        """OPTIMAL, or TIMEOUT with an incumbent. Other records carry no active-node count."""
        return self.status == SolveStatus.OPTIMAL.value or (
            self.status == SolveStatus.TIMEOUT.value and self.active_nodes > 0
        )


class Regression(BaseModel):
    """Ordinary least squares y = alpha * x + beta."""
    x_label: str
    y_label: str
    alpha: float
    beta: float
    r_value: float = 0.0


class AggregateStats(BaseModel):
    """
    Summary of a group of records: mean/std/95% CI of active nodes and solve time.

    Active-node figures cover placed records only (None when there are none);
    time figures cover all `n` records.
    """
    n: int
    excluded: int = Field(default=0, ge=0, description="Records without a placement")
    mean: Optional[float] = None
    std: Optional[float] = None
    ci: Optional[float] = Field(default=None, ge=0)
    time_mean: float
    time_std: float
    time_ci: float = Field(ge=0)
    regression: Optional[Regression] = None
    regression_on_active: Optional[Regression] = None


class TrendReport(BaseModel):
    """Shape of a sweep: how active nodes and solve time move with the swept value."""
    swept: str
    points: int
    spearman_active: Optional[float] = Field(default=None, description="Spearman rho of mean active nodes vs x")
    loglog_time_slope: Optional[float] = Field(default=None, description="Slope of log median time vs log x")
    timeout_rate: float = Field(ge=0, le=1)
    infeasible_rate: float = Field(ge=0, le=1)
