"""
Generic evaluation of a MILP against a variable assignment, and encoding of a
PlacementSolution as such an assignment.
"""

from dataclasses import dataclass
from typing import Sequence

from ..models import PlacementSolution, SliceRequest
from .model import FamilyTag, MilpModel, VariableIndex, VarKind

TOLERANCE = 1e-6


@dataclass(frozen=True)
class Violation:
    """A row, bound or integrality requirement the assignment breaks."""
    family: str
    ordinal: int
    lhs: float
    rhs: float
    message: str = ""


def encode_solution(
    solution: PlacementSolution,
    requests: Sequence[SliceRequest],
    index: VariableIndex,
) -> dict[int, float]:
    """
    Map a placement onto the model's variables.

    rho, Y and Z follow the assignment and routing; phiL takes the hop's latency
    budget, phiLuv copies it on the routed pair and phiBuv carries the SFC hop
    bandwidth there. Every other variable is zero. Placements that reference
    variables absent from the model leave those decisions unset, which the
    evaluator then reports as broken rows.
    """
    bandwidth = {
        (request.slice_id, sfc.id): sfc.hop_bandwidth
        for request in requests for sfc in request.sfcs
    }
    values: dict[int, float] = {}

    for node_id in solution.active_nodes:
        if node_id in index.rho:
            values[index.rho[node_id]] = 1.0
    for a in solution.assignments:
        var_id = index.y.get((a.slice_id, a.sfc_id, a.nf_id, a.node_id))
        if var_id is not None:
            values[var_id] = 1.0

    for route in solution.routes:
        hop = (route.slice_id, route.sfc_id, route.hop)
        if hop in index.phi_l:
            values[index.phi_l[hop]] = route.latency_budget
        pair = hop + (route.u, route.v)
        if pair not in index.z:
            continue
        values[index.z[pair]] = 1.0
        values[index.phi_luv[pair]] = route.latency_budget
        values[index.phi_buv[pair]] = bandwidth[(route.slice_id, route.sfc_id)]
    return values


def evaluate_constraints(
    model: MilpModel,
    values: dict[int, float],
    tolerance: float = TOLERANCE,
) -> list[Violation]:
    """Every constraint, bound and integrality requirement `values` violates."""
    violations: list[Violation] = []
    ordinals: dict[FamilyTag, int] = {}

    for constraint in model.constraints:
        ordinal = ordinals.get(constraint.family_tag, 0) + 1
        ordinals[constraint.family_tag] = ordinal
        if not constraint.satisfied(values, tolerance):
            violations.append(Violation(
                family=constraint.family_tag.value,
                ordinal=ordinal,
                lhs=constraint.lhs(values),
                rhs=constraint.rhs,
                message=f"{constraint.relation.value} violated",
            ))

    for var in model.variables:
        value = values.get(var.id, 0.0)
        if value < var.lower - tolerance or value > var.upper + tolerance:
            violations.append(Violation("BOUNDS", var.id, value, var.upper, f"{var.name} out of bounds"))
        if var.kind == VarKind.BINARY and abs(value - round(value)) > tolerance:
            violations.append(Violation("INTEGRALITY", var.id, value, round(value), f"{var.name} fractional"))
    return violations
