"""Core substrate/slice operations."""

from .validation import IssueCode, ValidationIssue, validate, validate_graph, validate_requests
from .topology import (
    PairMetrics,
    pair_key,
    authorized_nodes,
    gamma,
    eligible_pairs,
    residual_apply
)
from .instance import PlacementInstance, Slot, Chain, ChainHop, Stage

__all__ = [
    'IssueCode',
    'ValidationIssue',
    'validate',
    'validate_graph',
    'validate_requests',
    'PairMetrics',
    'pair_key',
    'authorized_nodes',
    'gamma',
    'eligible_pairs',
    'residual_apply',
    'PlacementInstance',
    'Slot',
    'Chain',
    'ChainHop',
    'Stage'
]
