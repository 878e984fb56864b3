"""
Re-optimization control loop for slice requests.

Every new or updated request triggers a solve. In FULL_REOPT mode all active
requests are re-planned together on the base substrate; in INCREMENTAL mode only
the new request is placed, on the residual substrate left by the others.
"""

import asyncio
from enum import Enum
from typing import Iterable, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from ..models import (
    BuildConfig,
    PlacementSolution,
    SliceRequest,
    SolveStatus,
    SolverLimits,
    SubstrateGraph,
)
from ..network.io import TimedRequest
from ..network.topology import EPSILON, pair_key, residual_apply
from ..network.validation import validate
from ..solver import solve_exact
from ..utils import logger
from ..utils.errors import InvalidInstance, PlacementError, StaleRevision


class ReoptMode(str, Enum):
    FULL_REOPT = "full"
    INCREMENTAL = "incremental"


class EventKind(str, Enum):
    REQUEST_ACCEPTED = "REQUEST_ACCEPTED"
    PLACED = "PLACED"
    REPLANNED = "REPLANNED"
    REJECTED_INFEASIBLE = "REJECTED_INFEASIBLE"
    REJECTED_INVALID = "REJECTED_INVALID"


class PlacementEvent(BaseModel):
    """One entry of the append-only event log."""
    model_config = ConfigDict(frozen=True)

    seq: int = Field(ge=0, description="Position in the log")
    kind: EventKind
    slice_id: str
    revision: int
    at: Optional[float] = Field(default=None, description="Arrival time of the request in seconds")
    objective: Optional[int] = Field(default=None, description="Active nodes of the consolidated placement")
    detail: str = ""


class OrchestratorState(BaseModel):
    """Base substrate, active requests and their placements. Never mutated; submit returns a copy."""
    model_config = ConfigDict(frozen=True)

    graph: SubstrateGraph
    mode: ReoptMode = ReoptMode.FULL_REOPT
    requests: dict[str, SliceRequest] = Field(default_factory=dict)
    placements: dict[str, PlacementSolution] = Field(default_factory=dict)
    solution: PlacementSolution = Field(default_factory=lambda: PlacementSolution(status=SolveStatus.OPTIMAL))
    events: tuple[PlacementEvent, ...] = ()

    def active_requests(self) -> list[SliceRequest]:
        return list(self.requests.values())

    def residual(self, exclude: Optional[str] = None) -> SubstrateGraph:
        """Base substrate minus the consumption of every placement except `exclude`'s."""
        graph = self.graph
        for slice_id, placement in self.placements.items():
            if slice_id != exclude:
                graph = residual_apply(graph, [self.requests[slice_id]], placement)
        return graph

    def with_events(self, *events: PlacementEvent) -> "OrchestratorState":
        return self.model_copy(update={"events": self.events + events})

    def event(self, kind: EventKind, request: SliceRequest, at: Optional[float], detail: str = "",
              objective: Optional[int] = None) -> PlacementEvent:
        return PlacementEvent(seq=len(self.events), kind=kind, slice_id=request.slice_id,
                              revision=request.revision, at=at, objective=objective, detail=detail)


def _placed(solution: PlacementSolution) -> bool:
    return solution.status == SolveStatus.OPTIMAL or (
        solution.status == SolveStatus.TIMEOUT and bool(solution.assignments)
    )


def submit(
    state: OrchestratorState,
    request: SliceRequest,
    config: Optional[BuildConfig] = None,
    limits: Optional[SolverLimits] = None,
    at: Optional[float] = None,
) -> tuple[OrchestratorState, PlacementEvent]:
    """
    Apply one new or updated request.

    An update (same slice_id, higher revision) releases the previous
    placement before solving. An infeasible request is rejected and the
    previous placements stay as they were.

    Raises:
        StaleRevision: if the revision is not newer than the stored one.
        InvalidInstance: if the request does not validate against the base graph.
    """
    stored = state.requests.get(request.slice_id)
    if stored is not None and request.revision <= stored.revision:
        raise StaleRevision(request.slice_id, request.revision, stored.revision)
    issues = validate(state.graph, [request])
    if issues:
        raise InvalidInstance(issues)

    accepted = state.event(EventKind.REQUEST_ACCEPTED, request, at)
    state = state.with_events(accepted)

    if state.mode == ReoptMode.FULL_REOPT:
        others = [r for slice_id, r in state.requests.items() if slice_id != request.slice_id]
        solution = solve_exact(state.graph, others + [request], config, limits)
    else:
        solution = solve_exact(state.residual(exclude=request.slice_id), [request], config, limits)

    if not _placed(solution):
        reason = "; ".join(solution.diagnostics) or solution.status.value
        logger.warning(f"Rejected slice {request.slice_id} r{request.revision}: {reason}")
        event = state.event(EventKind.REJECTED_INFEASIBLE, request, at, detail=reason,
                            objective=state.solution.objective)
        return state.with_events(event), event

    requests = {slice_id: r for slice_id, r in state.requests.items() if slice_id != request.slice_id}
    requests[request.slice_id] = request
    if state.mode == ReoptMode.FULL_REOPT:
        placements = {slice_id: solution.for_slices({slice_id}) for slice_id in requests}
        consolidated = solution
    else:
        placements = {slice_id: p for slice_id, p in state.placements.items() if slice_id != request.slice_id}
        placements[request.slice_id] = solution
        consolidated = PlacementSolution.merge(list(placements.values()))

    kind = EventKind.REPLANNED if stored is not None else EventKind.PLACED
    event = state.event(kind, request, at, objective=consolidated.objective,
                        detail=f"status {solution.status.value}, {solution.objective} node(s) for this request")
    logger.info(f"{kind.value} slice {request.slice_id} r{request.revision}: "
                f"{consolidated.objective} active node(s) overall")
    state = state.model_copy(update={
        "requests": requests,
        "placements": placements,
        "solution": consolidated,
    })
    return state.with_events(event), event


def conservation_violations(state: OrchestratorState) -> list[str]:
    """
    Consumption that exceeds the base substrate.

    Sums placed NF demands per node and routed hop bandwidth per physical link
    (following each route's path) over all placements.
    """
    problems = []
    nodes = state.graph.node_map()
    used: dict[str, dict[str, float]] = {}
    link_used: dict[tuple[str, str], float] = {}
    for slice_id, placement in state.placements.items():
        request = state.requests[slice_id]
        demand = {(sfc.id, nf.id): nf.demand for sfc in request.sfcs for nf in sfc.nfs}
        bandwidth = {sfc.id: sfc.hop_bandwidth for sfc in request.sfcs}
        for a in placement.assignments:
            per_kind = used.setdefault(a.node_id, {})
            for kind in demand[(a.sfc_id, a.nf_id)].kinds:
                per_kind[kind] = per_kind.get(kind, 0.0) + demand[(a.sfc_id, a.nf_id)].get(kind)
        for route in placement.routes:
            path = route.path or ((route.u,) if route.u == route.v else (route.u, route.v))
            for a, b in zip(path, path[1:]):
                key = pair_key(a, b)
                link_used[key] = link_used.get(key, 0.0) + bandwidth[route.sfc_id]

    for node_id, per_kind in sorted(used.items()):
        for kind, amount in sorted(per_kind.items()):
            capacity = nodes[node_id].capacity.get(kind)
            if amount > capacity + EPSILON:
                problems.append(f"node {node_id} {kind}: {amount:g} > {capacity:g}")
    links = state.graph.link_map()
    for key, amount in sorted(link_used.items()):
        capacity = links[key].bandwidth_capacity if key in links else 0.0
        if amount > capacity + EPSILON:
            problems.append(f"link {key[0]}-{key[1]}: {amount:g} > {capacity:g}")
    return problems


RequestItem = Union[SliceRequest, TimedRequest, None]


class Orchestrator:
    """
    Owns one OrchestratorState and serializes requests into it.

    Errors never escape: stale or invalid requests become REJECTED_INVALID events.
    """

    def __init__(
        self,
        graph: SubstrateGraph,
        mode: ReoptMode = ReoptMode.FULL_REOPT,
        config: Optional[BuildConfig] = None,
        limits: Optional[SolverLimits] = None,
    ):
        self.state = OrchestratorState(graph=graph, mode=mode)
        self.config = config
        self.limits = limits
        logger.info(f"Orchestrator initialized ({mode.value} mode, {len(graph.nodes)} substrate nodes)")

    def submit(self, request: SliceRequest, at: Optional[float] = None) -> PlacementEvent:
        try:
            self.state, event = submit(self.state, request, self.config, self.limits, at)
        except PlacementError as e:
            logger.warning(f"Rejected slice {request.slice_id} r{request.revision}: {e}")
            event = self.state.event(EventKind.REJECTED_INVALID, request, at, detail=str(e),
                                     objective=self.state.solution.objective)
            self.state = self.state.with_events(event)
        return event

    def submit_item(self, item: Union[SliceRequest, TimedRequest]) -> PlacementEvent:
        if isinstance(item, TimedRequest):
            return self.submit(item.request(), item.at)
        return self.submit(item)

    async def run_loop(self, source: "asyncio.Queue[RequestItem]", stop: asyncio.Event) -> OrchestratorState:
        """
        Apply requests from `source` in arrival order until `stop` is set or a
        None sentinel arrives. Solving runs off the event loop thread.
        """
        while not stop.is_set():
            getter = asyncio.ensure_future(source.get())
            stopper = asyncio.ensure_future(stop.wait())
            done, pending = await asyncio.wait({getter, stopper}, return_when=asyncio.FIRST_COMPLETED)
            for task in pending:
                task.cancel()
            if getter not in done:
                break
            item = getter.result()
            if item is None:
                break
            event = await asyncio.to_thread(self.submit_item, item)
            logger.debug(f"Event {event.seq}: {event.kind.value} {event.slice_id}")
        return self.state

    def replay(self, items: Iterable[Union[SliceRequest, TimedRequest]]) -> OrchestratorState:
        """Run the loop over a finite request sequence."""

        async def _run() -> OrchestratorState:
            queue: asyncio.Queue[RequestItem] = asyncio.Queue()
            for item in items:
                queue.put_nowait(item)
            queue.put_nowait(None)
            return await self.run_loop(queue, asyncio.Event())

        return asyncio.run(_run())
