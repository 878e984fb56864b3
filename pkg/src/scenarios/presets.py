"""Experiment presets: the four sweeps of the evaluation."""

from typing import Optional

from ..models import ConfigPoint, ExperimentPlan, GenParams
from ..utils import settings
from ..utils.errors import UnknownPreset

BASE_NODES = 12


def scale_compare_nodes(slices: int) -> int:
    """Substrate size of the growing series: 12 nodes plus 2 per additional slice."""
    return BASE_NODES + 2 * (slices - 1)


def _vary_slices() -> tuple[str, tuple[ConfigPoint, ...]]:
    return "slices", tuple(ConfigPoint(slices=s, sfcs=2, nfs=4, nodes=BASE_NODES) for s in range(1, 51))


def _vary_sfcs() -> tuple[str, tuple[ConfigPoint, ...]]:
    return "sfcs", tuple(ConfigPoint(slices=1, sfcs=f, nfs=4, nodes=BASE_NODES) for f in range(2, 21))


def _vary_nfs() -> tuple[str, tuple[ConfigPoint, ...]]:
    return "nfs", tuple(ConfigPoint(slices=5, sfcs=2, nfs=n, nodes=BASE_NODES) for n in range(2, 21))


def _scale_compare() -> tuple[str, tuple[ConfigPoint, ...]]:
    points = []
    for s in range(1, 51):
        points.append(ConfigPoint(slices=s, sfcs=2, nfs=4, nodes=BASE_NODES, series="fixed"))
        points.append(ConfigPoint(slices=s, sfcs=2, nfs=4, nodes=scale_compare_nodes(s), series="growing"))
    return "slices", tuple(points)


PRESETS = {
    "VARY_SLICES": _vary_slices,
    "VARY_SFCS": _vary_sfcs,
    "VARY_NFS": _vary_nfs,
    "SCALE_COMPARE": _scale_compare,
}


def preset(name: str, params: Optional[GenParams] = None, repetitions: Optional[int] = None) -> ExperimentPlan:
    """
    Build one of the named experiment plans.

    Raises:
        UnknownPreset: if `name` is not a known preset.
    """
    factory = PRESETS.get(name.upper())
    if factory is None:
        raise UnknownPreset(f"unknown preset {name!r}; choose one of {', '.join(PRESETS)}")
    swept, points = factory()
    return ExperimentPlan(
        name=name.upper(),
        swept=swept,
        points=points,
        repetitions=repetitions or settings.repetitions,
        params=params or GenParams(),
        time_limit=settings.time_limit_s,
    )
