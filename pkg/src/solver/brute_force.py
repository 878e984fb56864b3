"""
Exhaustive reference solver for tiny instances.

Enumerates every assignment vector, lets the verifier decide feasibility and
keeps the one with the fewest active nodes (lexicographically smallest among
ties). Vectors that overload a host are dropped before verification. Shares
no pruning logic with the branch-and-bound search.
"""

import itertools
import time
from typing import Optional, Sequence

from ..models import BuildConfig, PlacementSolution, SliceRequest, SolveStatus, SolverLimits, SubstrateGraph
from ..network.instance import PlacementInstance
from ..network.topology import EPSILON, gamma
from ..utils import logger
from ..utils.errors import EmptyAuthorizedSet, InstanceTooLarge
from ..verifier import verify

MAX_NFS = 6
MAX_NODES = 6


def _overloaded(instance: PlacementInstance, vector: Sequence[str]) -> bool:
    use: dict[str, list[float]] = {}
    for slot, node in zip(instance.slots, vector):
        amounts = use.setdefault(node, [0.0] * len(instance.kinds))
        for r, demand in enumerate(slot.demand):
            amounts[r] += demand
    return any(
        amount > capacity + EPSILON
        for node, amounts in use.items()
        for amount, capacity in zip(amounts, instance.capacity[node])
    )


def brute_force_optimum(
    graph: SubstrateGraph,
    requests: Sequence[SliceRequest],
    config: Optional[BuildConfig] = None,
    limits: Optional[SolverLimits] = None,
) -> PlacementSolution:
    """
    Minimum active-node placement by plain enumeration.

    `limits` is accepted for symmetry with solve_exact; enumeration is never
    cut short.

    Raises:
        InstanceTooLarge: if there are more than 6 NFs or more than 6 nodes.
    """
    nf_count = gamma(requests)
    if nf_count > MAX_NFS or len(graph.nodes) > MAX_NODES:
        raise InstanceTooLarge(
            f"brute force handles at most {MAX_NFS} NFs and {MAX_NODES} nodes, got {nf_count} and {len(graph.nodes)}"
        )

    config = config or BuildConfig()
    started = time.perf_counter()
    try:
        instance = PlacementInstance.build(graph, requests, config)
    except EmptyAuthorizedSet as e:
        return PlacementSolution(status=SolveStatus.INFEASIBLE, diagnostics=(f"EmptyAuthorizedSet: {e}",))

    best: Optional[tuple[int, tuple[str, ...]]] = None
    checked = 0
    for vector in itertools.product(*(slot.candidates for slot in instance.slots)):
        key = (len(set(vector)), vector)
        if best is not None and key >= best:
            continue
        if _overloaded(instance, vector):
            continue
        checked += 1
        if verify(graph, requests, instance.to_solution(vector), config).overall:
            best = key

    elapsed = time.perf_counter() - started
    logger.debug(f"Brute force verified {checked} candidate vectors in {elapsed:.3f}s")
    if best is None:
        return PlacementSolution(status=SolveStatus.INFEASIBLE, diagnostics=("no feasible assignment vector",),
                                 explored_nodes=checked, solve_time_s=elapsed)
    return instance.to_solution(best[1], SolveStatus.OPTIMAL, explored_nodes=checked, solve_time_s=elapsed)
