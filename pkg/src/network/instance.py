"""
Flattened view of a placement problem shared by the model builder and the search.

NFs become numbered slots in deterministic order (slices, then SFCs, then chain
position); every SFC becomes a chain of stages joined by hops. With pinned
endpoints, ingress/egress nodes appear as fixed anchor stages.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..models import (
    EGRESS,
    INGRESS,
    BuildConfig,
    HopRoute,
    NFAssignment,
    PlacementSolution,
    SliceRequest,
    SolveStatus,
    SubstrateGraph,
)
from ..utils.errors import EmptyAuthorizedSet
from .topology import PairMetrics, authorized_nodes, eligible_pairs


@dataclass(frozen=True)
class Stage:
    """A chain position: an NF slot or a fixed anchor node."""
    label: str
    slot: Optional[int] = None
    anchor: Optional[str] = None


@dataclass(frozen=True)
class ChainHop:
    """Virtual link between two consecutive stages of a chain."""
    chain: int
    label: str
    source: Stage
    target: Stage
    bandwidth: float


@dataclass(frozen=True)
class Slot:
    """One NF to place."""
    index: int
    slice_id: str
    sfc_id: str
    nf_id: str
    chain: int
    demand: tuple[float, ...]
    candidates: tuple[str, ...]


@dataclass(frozen=True)
class Chain:
    index: int
    slice_id: str
    sfc_id: str
    latency_budget: float
    bandwidth: float
    stages: tuple[Stage, ...]
    hops: tuple[ChainHop, ...]


@dataclass
class PlacementInstance:
    graph: SubstrateGraph
    requests: list[SliceRequest]
    config: BuildConfig
    kinds: tuple[str, ...]
    node_ids: tuple[str, ...]
    capacity: dict[str, tuple[float, ...]]
    pairs: dict[tuple[str, str], PairMetrics]
    link_capacity: dict[tuple[str, str], float] = field(default_factory=dict)
    slots: tuple[Slot, ...] = ()
    chains: tuple[Chain, ...] = ()
    hops: tuple[ChainHop, ...] = field(default=())

    @classmethod
    def build(cls, graph: SubstrateGraph, requests: Sequence[SliceRequest],
              config: BuildConfig) -> "PlacementInstance":
        """
        Flatten a validated instance.

        Raises:
            EmptyAuthorizedSet: if some NF has no authorized host.
        """
        kinds = graph.resource_kinds()
        anchors = set()
        if config.pin_endpoints:
            for request in requests:
                for sfc in request.sfcs:
                    anchors.update(n for n in (sfc.ingress_node, sfc.egress_node) if n is not None)
        pairs = eligible_pairs(graph, config.pair_mode, extra_endpoints=anchors)

        slots: list[Slot] = []
        chains: list[Chain] = []
        hops: list[ChainHop] = []
        for request in requests:
            for sfc in request.sfcs:
                chain_index = len(chains)
                stages: list[Stage] = []
                if config.pin_endpoints and sfc.ingress_node is not None:
                    stages.append(Stage(label=INGRESS, anchor=sfc.ingress_node))
                for nf in sfc.nfs:
                    try:
                        candidates = tuple(sorted(authorized_nodes(nf, graph)))
                    except EmptyAuthorizedSet:
                        raise EmptyAuthorizedSet(nf.id, sfc.id, request.slice_id) from None
                    slot = Slot(
                        index=len(slots),
                        slice_id=request.slice_id,
                        sfc_id=sfc.id,
                        nf_id=nf.id,
                        chain=chain_index,
                        demand=nf.demand.as_tuple(kinds),
                        candidates=candidates,
                    )
                    slots.append(slot)
                    stages.append(Stage(label=nf.id, slot=slot.index))
                if config.pin_endpoints and sfc.egress_node is not None:
                    stages.append(Stage(label=EGRESS, anchor=sfc.egress_node))

                chain_hops = tuple(
                    ChainHop(chain=chain_index, label=target.label, source=source,
                             target=target, bandwidth=sfc.hop_bandwidth)
                    for source, target in zip(stages, stages[1:])
                )
                hops.extend(chain_hops)
                chains.append(Chain(
                    index=chain_index,
                    slice_id=request.slice_id,
                    sfc_id=sfc.id,
                    latency_budget=sfc.latency_budget,
                    bandwidth=sfc.hop_bandwidth,
                    stages=tuple(stages),
                    hops=chain_hops,
                ))

        return cls(
            graph=graph,
            requests=list(requests),
            config=config,
            kinds=kinds,
            node_ids=tuple(graph.node_ids()),
            capacity={node.id: node.capacity.as_tuple(kinds) for node in graph.nodes},
            pairs=pairs,
            link_capacity={link.key: link.bandwidth_capacity for link in graph.links},
            slots=tuple(slots),
            chains=tuple(chains),
            hops=tuple(hops),
        )

    @property
    def size(self) -> int:
        """Gamma, the number of NFs."""
        return len(self.slots)

    def stage_candidates(self, stage: Stage) -> tuple[str, ...]:
        if stage.anchor is not None:
            return (stage.anchor,)
        return self.slots[stage.slot].candidates

    def stage_node(self, stage: Stage, vector: Sequence[Optional[str]]) -> Optional[str]:
        return stage.anchor if stage.anchor is not None else vector[stage.slot]

    def to_solution(
        self,
        vector: Sequence[str],
        status: SolveStatus = SolveStatus.OPTIMAL,
        **extra,
    ) -> PlacementSolution:
        """
        Decode an assignment vector (one node per slot) into a PlacementSolution.

        Each hop is routed on the pair hosting its two stages; the per-hop
        latency budget is that pair's effective latency. Pairs that are not
        eligible are still reported (with their direct endpoints) so that an
        independent check can reject them.
        """
        assignments = tuple(
            NFAssignment(slice_id=slot.slice_id, sfc_id=slot.sfc_id, nf_id=slot.nf_id, node_id=node)
            for slot, node in zip(self.slots, vector)
        )
        routes = []
        for hop in self.hops:
            chain = self.chains[hop.chain]
            u = self.stage_node(hop.source, vector)
            v = self.stage_node(hop.target, vector)
            metrics = self.pairs.get((u, v))
            routes.append(HopRoute(
                slice_id=chain.slice_id,
                sfc_id=chain.sfc_id,
                source=hop.source.label,
                hop=hop.label,
                u=u,
                v=v,
                latency_budget=metrics.latency if metrics else 0.0,
                path=metrics.path if metrics else ((u,) if u == v else (u, v)),
            ))
        active = tuple(sorted(set(vector)))
        return PlacementSolution(
            status=status,
            objective=len(active),
            assignments=assignments,
            routes=tuple(routes),
            active_nodes=active,
            **extra,
        )
