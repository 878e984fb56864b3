"""
Solver-agnostic mixed-integer linear program: variables, linear rows, objective,
and the index mapping placement decisions to variable ids.
"""

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional


class VarKind(str, Enum):
    BINARY = "binary"
    CONTINUOUS = "continuous"


class Relation(str, Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class FamilyTag(str, Enum):
    """Constraint families, one per equation group of the formulation."""
    PLACEMENT = "PLACEMENT"                          # each NF on exactly one node
    NODE_ACTIVE = "NODE_ACTIVE"                      # hosting node is active
    RESOURCE = "RESOURCE"                            # node capacity per resource kind
    LINK_ONEHOT = "LINK_ONEHOT"                      # each hop on exactly one pair
    LINK_COUPLING = "LINK_COUPLING"                  # pair endpoints host the hop's NFs
    LATENCY_BUDGET = "LATENCY_BUDGET"                # per-SFC end-to-end latency
    LATENCY_LINEARIZATION = "LATENCY_LINEARIZATION"  # phi^{L,u,v} = phi^L when routed
    LATENCY_LINK = "LATENCY_LINK"                    # routed pair latency within phi^L
    BW_DEMAND = "BW_DEMAND"                          # folded into the constant phi^B = w
    BW_LINEARIZATION = "BW_LINEARIZATION"            # phi^{B,u,v} = w when routed, else 0
    BW_CAPACITY = "BW_CAPACITY"                      # physical link capacity


class VarFamily(str, Enum):
    RHO = "rho"
    Y = "Y"
    Z = "Z"
    PHI_L = "phiL"
    PHI_LUV = "phiLuv"
    PHI_BUV = "phiBuv"


@dataclass(frozen=True, slots=True)
class MilpVariable:
    id: int
    name: str
    kind: VarKind
    lower: float = 0.0
    upper: float = math.inf

    def __post_init__(self):
        if self.kind == VarKind.BINARY and (self.lower, self.upper) != (0.0, 1.0):
            raise ValueError(f"binary variable {self.name} must have bounds [0, 1]")
        if self.kind == VarKind.CONTINUOUS and self.lower < 0:
            raise ValueError(f"continuous variable {self.name} must have a non-negative lower bound")


@dataclass(frozen=True, slots=True)
class LinearConstraint:
    terms: tuple[tuple[float, int], ...]
    relation: Relation
    rhs: float
    family_tag: FamilyTag

    def __post_init__(self):
        ids = [var_id for _, var_id in self.terms]
        if len(ids) != len(set(ids)):
            raise ValueError(f"duplicate variable in {self.family_tag.value} row")

    def lhs(self, values: dict[int, float]) -> float:
        return sum(coef * values.get(var_id, 0.0) for coef, var_id in self.terms)

    def satisfied(self, values: dict[int, float], tolerance: float = 1e-6) -> bool:
        lhs = self.lhs(values)
        if self.relation == Relation.LE:
            return lhs <= self.rhs + tolerance
        if self.relation == Relation.GE:
            return lhs >= self.rhs - tolerance
        return abs(lhs - self.rhs) <= tolerance


@dataclass
class MilpModel:
    """Minimization MILP."""
    variables: list[MilpVariable] = field(default_factory=list)
    constraints: list[LinearConstraint] = field(default_factory=list)
    objective: list[tuple[float, int]] = field(default_factory=list)
    big_m: float = 0.0
    sense: str = "minimize"

    def add_variable(self, name: str, kind: VarKind, lower: float = 0.0,
                     upper: Optional[float] = None) -> int:
        if upper is None:
            upper = 1.0 if kind == VarKind.BINARY else math.inf
        var = MilpVariable(id=len(self.variables), name=name, kind=kind, lower=lower, upper=upper)
        self.variables.append(var)
        return var.id

    def add_constraint(self, terms: list[tuple[float, int]], relation: Relation, rhs: float,
                       tag: FamilyTag) -> None:
        ordered = tuple(sorted(((float(c), v) for c, v in terms if c != 0), key=lambda t: t[1]))
        self.constraints.append(LinearConstraint(ordered, relation, float(rhs), tag))

    def family_counts(self) -> Counter:
        return Counter(c.family_tag for c in self.constraints)

    def binaries(self) -> list[MilpVariable]:
        return [v for v in self.variables if v.kind == VarKind.BINARY]

    def objective_value(self, values: dict[int, float]) -> float:
        return sum(coef * values.get(var_id, 0.0) for coef, var_id in self.objective)


@dataclass
class VariableIndex:
    """Bidirectional maps between placement decisions and variable ids."""
    rho: dict[str, int] = field(default_factory=dict)
    y: dict[tuple[str, str, str, str], int] = field(default_factory=dict)
    z: dict[tuple[str, str, str, str, str], int] = field(default_factory=dict)
    phi_l: dict[tuple[str, str, str], int] = field(default_factory=dict)
    phi_luv: dict[tuple[str, str, str, str, str], int] = field(default_factory=dict)
    phi_buv: dict[tuple[str, str, str, str, str], int] = field(default_factory=dict)
    hop_sources: dict[tuple[str, str, str], str] = field(default_factory=dict)
    by_name: dict[str, int] = field(default_factory=dict)
    refs: list[tuple[VarFamily, Any]] = field(default_factory=list)

    def register(self, var_id: int, name: str, family: VarFamily, key: Any) -> None:
        table = {
            VarFamily.RHO: self.rho,
            VarFamily.Y: self.y,
            VarFamily.Z: self.z,
            VarFamily.PHI_L: self.phi_l,
            VarFamily.PHI_LUV: self.phi_luv,
            VarFamily.PHI_BUV: self.phi_buv,
        }[family]
        table[key] = var_id
        self.by_name[name] = var_id
        if var_id != len(self.refs):
            raise ValueError("variables must be registered in id order")
        self.refs.append((family, key))

    def decode(self, var_id: int) -> tuple[VarFamily, Any]:
        return self.refs[var_id]

    def __len__(self) -> int:
        return len(self.refs)
