"""
Experiment runner: generate and solve every repetition of every configuration
point, on a bounded process pool.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ..models import (
    AggregateStats,
    BuildConfig,
    ConfigPoint,
    ExperimentPlan,
    ExperimentRecord,
    SolverLimits,
)
from ..scenarios import gen_requests, gen_substrate
from ..solver import solve_exact
from ..utils import logger, settings
from ..utils.errors import GenerationFailed
from .stats import aggregate

GENERATION_FAILED = "generation_failed"


def repetition_seed(master_seed: int, point_index: int, repetition: int) -> int:
    """63-bit seed of one repetition, independent of execution order."""
    words = np.random.SeedSequence([master_seed, point_index, repetition]).generate_state(2, dtype=np.uint32)
    return (int(words[0]) << 32 | int(words[1])) & (2**63 - 1)


def record_label(plan: ExperimentPlan, point: ConfigPoint) -> str:
    return f"{plan.name}:{point.series}" if point.series else plan.name


def run_repetition(plan: ExperimentPlan, point_index: int, repetition: int, master_seed: int,
                   config: Optional[BuildConfig] = None) -> ExperimentRecord:
    """Generate and solve one instance; a pure function of its arguments apart from timing."""
    point = plan.points[point_index]
    seed = repetition_seed(master_seed, point_index, repetition)
    hosts = max(point.nodes - plan.params.n_connectors, 1)
    params = plan.params.model_copy(update={"n_hosts": hosts, "seed": seed})
    record = dict(preset=record_label(plan, point), slices=point.slices, sfcs=point.sfcs, nfs=point.nfs,
                  nodes=hosts + plan.params.n_connectors, seed=seed)
    try:
        graph = gen_substrate(params)
    except GenerationFailed as e:
        logger.warning(str(e))
        return ExperimentRecord(**record, active_nodes=0, solve_time_s=0.0, status=GENERATION_FAILED)

    requests = gen_requests(point.slices, point.sfcs, point.nfs, params)
    limits = SolverLimits.from_settings(time_budget=plan.time_limit)
    solution = solve_exact(graph, requests, config, limits)
    return ExperimentRecord(
        **record,
        active_nodes=solution.objective if solution.assignments else 0,
        solve_time_s=solution.solve_time_s,
        status=solution.status.value,
    )


@dataclass
class PointSummary:
    point: ConfigPoint
    label: str
    stats: AggregateStats


@dataclass
class ExperimentResult:
    plan: ExperimentPlan
    records: list[ExperimentRecord] = field(default_factory=list)
    summaries: list[PointSummary] = field(default_factory=list)


def run_experiment(
    plan: ExperimentPlan,
    master_seed: Optional[int] = None,
    parallelism: Optional[int] = None,
    config: Optional[BuildConfig] = None,
    progress: Optional[Callable[[int, int], None]] = None,
) -> ExperimentResult:
    """
    Run every (point, repetition) of a plan.

    Records come back ordered by (point, repetition) whatever the completion
    order, and their contents other than solve_time_s depend only on the plan
    and the master seed.
    """
    master_seed = settings.master_seed if master_seed is None else master_seed
    parallelism = parallelism or settings.workers
    config = config or BuildConfig.from_settings()
    jobs = [(i, rep) for i in range(len(plan.points)) for rep in range(plan.repetitions)]
    logger.info(f"Running {plan.name}: {len(plan.points)} point(s) x {plan.repetitions} repetition(s), "
                f"{parallelism} worker(s), master seed {master_seed}")

    records: list[ExperimentRecord] = []
    if parallelism <= 1:
        for done, (i, rep) in enumerate(jobs, 1):
            records.append(run_repetition(plan, i, rep, master_seed, config))
            if progress:
                progress(done, len(jobs))
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            futures = [pool.submit(run_repetition, plan, i, rep, master_seed, config) for i, rep in jobs]
            for done, future in enumerate(futures, 1):
                records.append(future.result())
                if progress:
                    progress(done, len(jobs))

    result = ExperimentResult(plan=plan, records=records)
    for i, point in enumerate(plan.points):
        group = records[i * plan.repetitions:(i + 1) * plan.repetitions]
        result.summaries.append(PointSummary(point=point, label=record_label(plan, point), stats=aggregate(group)))
    logger.info(f"{plan.name} finished: {len(records)} records")
    return result
