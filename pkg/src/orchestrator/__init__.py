"""Slice request control loop."""

from .control_loop import (
    ReoptMode,
    EventKind,
    PlacementEvent,
    OrchestratorState,
    Orchestrator,
    submit,
    conservation_violations
)

__all__ = [
    'ReoptMode',
    'EventKind',
    'PlacementEvent',
    'OrchestratorState',
    'Orchestrator',
    'submit',
    'conservation_violations'
]
