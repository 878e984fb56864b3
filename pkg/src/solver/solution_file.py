"""
Reader for external-solver solution dumps.

The adapter script normalizes solver output to one ``<variable name> <value>``
line per nonzero variable, optionally preceded by ``# objective <value>``.
"""

import re

from ..models import HopRoute, NFAssignment, PlacementSolution, SolveStatus
from ..milp.model import VarFamily, VariableIndex
from ..utils import logger
from ..utils.errors import NonIntegralBinary, ObjectiveMismatch, SolutionFileError, UnknownVariableName

TOLERANCE = 1e-6

OBJECTIVE_HEADER = re.compile(r"^#\s*objective(?:\s+value)?\s*[:=]?\s*(\S+)\s*$", re.IGNORECASE)

BINARY_FAMILIES = {VarFamily.RHO, VarFamily.Y, VarFamily.Z}


def _is_set(name: str, value: float) -> bool:
    if abs(value - round(value)) >= TOLERANCE:
        raise NonIntegralBinary(f"{name} = {value!r} is not integral")
    return abs(value - 1) < TOLERANCE


def parse_solution_file(text: str, index: VariableIndex) -> PlacementSolution:
    """
    Decode a solution dump into a PlacementSolution.

    Raises:
        UnknownVariableName: a line names a variable the model does not have.
        NonIntegralBinary: a binary variable has a fractional value.
        ObjectiveMismatch: the header objective differs from the decoded one.
        SolutionFileError: a line cannot be parsed.
    """
    declared = None
    values: dict[int, float] = {}
    for number, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = OBJECTIVE_HEADER.match(line)
            if match:
                try:
                    declared = float(match.group(1))
                except ValueError:
                    raise SolutionFileError(f"line {number}: bad objective value {match.group(1)!r}") from None
            continue

        parts = line.split()
        if len(parts) != 2:
            raise SolutionFileError(f"line {number}: expected '<name> <value>', got {line!r}")
        name, raw = parts
        var_id = index.by_name.get(name)
        if var_id is None:
            raise UnknownVariableName(name)
        try:
            values[var_id] = float(raw)
        except ValueError:
            raise SolutionFileError(f"line {number}: bad value {raw!r} for {name}") from None

    active: list[str] = []
    assignments: list[NFAssignment] = []
    routed: list[tuple[int, tuple]] = []
    budgets: dict[tuple[str, str, str], float] = {}
    for var_id in sorted(values):
        family, key = index.decode(var_id)
        value = values[var_id]
        name = f"{family.value}[{key if isinstance(key, str) else ','.join(key)}]"
        if family in BINARY_FAMILIES:
            if not _is_set(name, value):
                continue
            if family == VarFamily.RHO:
                active.append(key)
            elif family == VarFamily.Y:
                slice_id, sfc_id, nf_id, node_id = key
                assignments.append(NFAssignment(slice_id=slice_id, sfc_id=sfc_id, nf_id=nf_id, node_id=node_id))
            else:
                routed.append((var_id, key))
        elif family == VarFamily.PHI_L:
            budgets[key] = max(value, 0.0)

    routes = []
    for _, (slice_id, sfc_id, hop, u, v) in routed:
        routes.append(HopRoute(
            slice_id=slice_id,
            sfc_id=sfc_id,
            source=index.hop_sources[(slice_id, sfc_id, hop)],
            hop=hop,
            u=u,
            v=v,
            latency_budget=budgets.get((slice_id, sfc_id, hop), 0.0),
        ))

    objective = len(active)
    if declared is not None and abs(declared - objective) >= TOLERANCE:
        raise ObjectiveMismatch(f"declared objective {declared:g}, decoded {objective}")

    logger.debug(f"Decoded solution file: {len(assignments)} assignments, {len(routes)} routes")
    return PlacementSolution(
        status=SolveStatus.OPTIMAL,
        objective=objective,
        assignments=tuple(assignments),
        routes=tuple(routes),
        active_nodes=tuple(sorted(active)),
    )
