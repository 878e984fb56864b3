"""Mixed-integer linear model of the placement problem."""

from .model import (
    VarKind,
    Relation,
    FamilyTag,
    VarFamily,
    MilpVariable,
    LinearConstraint,
    MilpModel,
    VariableIndex
)
from .builder import build_model, big_m
from .lp_format import export_lp, write_lp
from .evaluator import Violation, encode_solution, evaluate_constraints

__all__ = [
    'VarKind',
    'Relation',
    'FamilyTag',
    'VarFamily',
    'MilpVariable',
    'LinearConstraint',
    'MilpModel',
    'VariableIndex',
    'build_model',
    'big_m',
    'export_lp',
    'write_lp',
    'Violation',
    'encode_solution',
    'evaluate_constraints'
]
