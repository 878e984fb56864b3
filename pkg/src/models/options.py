"""
Per-call configuration objects for model construction and search.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from ..utils import settings


class PairMode(str, Enum):
    """Which node pairs a virtual link may be mapped to."""
    DIRECT = "direct"
    LOGICAL_MESH = "mesh"


class BuildConfig(BaseModel):
    """Options shared by the model builder, the solvers and the verifier."""
    model_config = ConfigDict(frozen=True)

    pair_mode: PairMode = PairMode.DIRECT
    pin_endpoints: bool = Field(
        default=False,
        description="Account ingress/egress nodes as fixed zero-demand chain endpoints"
    )
    max_variables: int = Field(default=2_000_000, gt=0)
    big_m_factor: float = Field(default=1.0, gt=0, description="Multiplier applied to the computed big-M")

    @classmethod
    def from_settings(cls, **overrides) -> "BuildConfig":
        values = {
            "pair_mode": PairMode(settings.pair_mode),
            "pin_endpoints": settings.pin_endpoints,
            "max_variables": settings.max_variables,
        }
        values.update(overrides)
        return cls(**values)


class SolverLimits(BaseModel):
    """Budgets for the exact search."""
    model_config = ConfigDict(frozen=True)

    time_budget: float = Field(default=10.0, gt=0, description="Wall-clock seconds")
    node_budget: int = Field(default=5_000_000, gt=0, description="Maximum search-tree nodes")
    objective_cutoff: Optional[int] = Field(
        default=None, ge=0, description="Only solutions with fewer active nodes are of interest"
    )
    tie_break_node_budget: int = Field(
        default=50_000, ge=0, description="Search nodes spent finding the lexicographically smallest optimum"
    )

    @classmethod
    def from_settings(cls, **overrides) -> "SolverLimits":
        values = {
            "time_budget": settings.time_limit_s,
            "node_budget": settings.node_budget,
            "tie_break_node_budget": settings.tie_break_node_budget,
        }
        values.update(overrides)
        return cls(**values)
