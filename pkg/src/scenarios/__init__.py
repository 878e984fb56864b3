"""Seeded scenario generation and experiment presets."""

from .generator import gen_substrate, gen_requests, gen_instance
from .presets import PRESETS, preset, scale_compare_nodes

__all__ = [
    'gen_substrate',
    'gen_requests',
    'gen_instance',
    'PRESETS',
    'preset',
    'scale_compare_nodes'
]
