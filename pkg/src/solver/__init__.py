"""Exact solvers and external solution decoding."""

from .branch_and_bound import PruneRule, diagnose, solve_exact
from .brute_force import brute_force_optimum
from .solution_file import parse_solution_file

__all__ = [
    'PruneRule',
    'diagnose',
    'solve_exact',
    'brute_force_optimum',
    'parse_solution_file'
]
