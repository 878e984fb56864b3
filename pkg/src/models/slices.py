"""
Data models for the slice layer: slice requests (SIDs), SFCs and NFs.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .substrate import ResourceVector


class ConstraintKind(str, Enum):
    """How the authorized nodes of an NF are given."""
    EXPLICIT = "explicit"
    FILTER = "filter"
    UNRESTRICTED = "unrestricted"


class PlacementConstraint(BaseModel):
    """Affinity constraint of an NF: explicit node set, characteristics filter, or none."""
    model_config = ConfigDict(frozen=True)

    nodes: Optional[tuple[str, ...]] = Field(default=None, description="Explicit authorized node ids")
    iaas: Optional[tuple[int, ...]] = Field(default=None, description="Allowed IaaS ids")
    min_security: Optional[int] = Field(default=None, ge=0, description="Minimum security level")

    @model_validator(mode='after')
    def check_exclusive(self) -> "PlacementConstraint":
        """An explicit node set cannot be combined with a characteristics filter."""
        if self.nodes is not None and (self.iaas is not None or self.min_security is not None):
            raise ValueError("explicit node set and characteristics filter are mutually exclusive")
        return self

    @property
    def kind(self) -> ConstraintKind:
        if self.nodes is not None:
            return ConstraintKind.EXPLICIT
        if self.iaas is not None or self.min_security is not None:
            return ConstraintKind.FILTER
        return ConstraintKind.UNRESTRICTED


UNRESTRICTED = PlacementConstraint()


class NFSpec(BaseModel):
    """A network function with its resource demand and authorized nodes."""
    model_config = ConfigDict(frozen=True)

    id: str = Field(description="NF id, unique within its SFC")
    demand: ResourceVector = Field(default_factory=lambda: ResourceVector({}))
    placement_constraint: PlacementConstraint = Field(default=UNRESTRICTED)


class SFCSpec(BaseModel):
    """Ordered chain of NFs with an end-to-end latency budget and per-hop bandwidth."""
    model_config = ConfigDict(frozen=True)

    id: str = Field(description="SFC id, unique within its slice")
    nfs: tuple[NFSpec, ...] = Field(min_length=1, description="NFs in chain order")
    latency_budget: float = Field(gt=0, description="End-to-end latency budget in ms")
    hop_bandwidth: float = Field(gt=0, description="Bandwidth required on every virtual link in Mbps")
    ingress_node: Optional[str] = None
    egress_node: Optional[str] = None
    # Global bandwidth requirement; accepted for forward compatibility, not modeled.
    global_bandwidth: Optional[float] = Field(default=None, ge=0)


class SliceRequest(BaseModel):
    """Slice Instance Descriptor: every SFC needed to establish one slice."""
    model_config = ConfigDict(frozen=True)

    slice_id: str = Field(description="Slice id")
    sfcs: tuple[SFCSpec, ...] = Field(min_length=1)
    revision: int = Field(default=1, ge=0, description="Increases on every update of the slice")

    def nf_count(self) -> int:
        return sum(len(sfc.nfs) for sfc in self.sfcs)
