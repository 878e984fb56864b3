"""
Data models for placement results and their verification.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field

INGRESS = "@ingress"
EGRESS = "@egress"


class SolveStatus(str, Enum):
    """Outcome of a solve."""
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    TIMEOUT = "timeout"


class NFAssignment(BaseModel):
    """NF -> node (one set Y variable)."""
    model_config = ConfigDict(frozen=True)

    slice_id: str
    sfc_id: str
    nf_id: str
    node_id: str


class HopRoute(BaseModel):
    """Virtual link between two consecutive chain stages mapped onto a node pair (one set Z variable)."""
    model_config = ConfigDict(frozen=True)

    slice_id: str
    sfc_id: str
    source: str = Field(description="Label of the upstream stage (NF id or @ingress)")
    hop: str = Field(description="Label of the downstream stage (NF id or @egress); identifies the hop")
    u: str
    v: str
    latency_budget: float = Field(ge=0, description="Per-hop latency budget phi^L in ms")
    path: tuple[str, ...] = Field(default=(), description="Physical nodes traversed from u to v")


class PlacementSolution(BaseModel):
    """Assignment, routing and active nodes of a set of slice requests."""
    model_config = ConfigDict(frozen=True)

    status: SolveStatus
    objective: int = Field(default=0, ge=0, description="Number of active nodes")
    assignments: tuple[NFAssignment, ...] = ()
    routes: tuple[HopRoute, ...] = ()
    active_nodes: tuple[str, ...] = ()
    diagnostics: tuple[str, ...] = ()
    explored_nodes: int = 0
    solve_time_s: float = Field(default=0.0, ge=0, exclude=True)

    def assignment_map(self) -> dict[tuple[str, str, str], str]:
        return {(a.slice_id, a.sfc_id, a.nf_id): a.node_id for a in self.assignments}

    def routing_map(self) -> dict[tuple[str, str, str], HopRoute]:
        return {(r.slice_id, r.sfc_id, r.hop): r for r in self.routes}

    def node_of(self, slice_id: str, sfc_id: str, nf_id: str) -> Optional[str]:
        return self.assignment_map().get((slice_id, sfc_id, nf_id))

    def for_slices(self, slice_ids: set[str]) -> "PlacementSolution":
        """Restrict assignments and routes to the given slices, recomputing active nodes."""
        assignments = tuple(a for a in self.assignments if a.slice_id in slice_ids)
        routes = tuple(r for r in self.routes if r.slice_id in slice_ids)
        active = tuple(sorted({a.node_id for a in assignments}))
        return self.model_copy(update={
            "assignments": assignments,
            "routes": routes,
            "active_nodes": active,
            "objective": len(active),
        })

    @classmethod
    def merge(cls, parts: list["PlacementSolution"]) -> "PlacementSolution":
        """Union of disjoint per-request solutions."""
        assignments = tuple(a for part in parts for a in part.assignments)
        routes = tuple(r for part in parts for r in part.routes)
        active = tuple(sorted({a.node_id for a in assignments}))
        return cls(
            status=SolveStatus.OPTIMAL,
            objective=len(active),
            assignments=assignments,
            routes=routes,
            active_nodes=active,
        )


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class ConstraintFamily(str, Enum):
    """Constraint families checked by the verifier."""
    PLACEMENT = "placement"
    RESOURCE = "resource"
    LINK = "link"
    LATENCY = "latency"
    BANDWIDTH = "bandwidth"


class FamilyVerdict(BaseModel):
    family: ConstraintFamily
    verdict: Verdict = Verdict.PASS
    first_violation: Optional[str] = None
    detail: Optional[str] = None


class VerificationReport(BaseModel):
    """Per-family verdicts of a placement; overall is their conjunction."""
    families: tuple[FamilyVerdict, ...]

    @computed_field
    @property
    def overall(self) -> bool:
        return all(f.verdict == Verdict.PASS for f in self.families)

    def verdict(self, family: ConstraintFamily) -> Verdict:
        for f in self.families:
            if f.family == family:
                return f.verdict
        raise KeyError(family)

    def failed(self) -> list[ConstraintFamily]:
        return [f.family for f in self.families if f.verdict == Verdict.FAIL]
