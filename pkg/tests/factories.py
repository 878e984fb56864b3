"""Small builders for hand-written test instances."""

from typing import Optional

from src.models import (
    NFSpec,
    NodeCharacteristics,
    NodeKind,
    PlacementConstraint,
    ResourceVector,
    SFCSpec,
    SliceRequest,
    SubstrateGraph,
    SubstrateLink,
    SubstrateNode,
)


def host(node_id: str, cpu: float = 100, security: int = 1, iaas: int = 1) -> SubstrateNode:
    return SubstrateNode(
        id=node_id,
        kind=NodeKind.HOST,
        capacity=ResourceVector({"cpu": cpu}),
        characteristics=NodeCharacteristics(security_level=security, iaas_id=iaas),
    )


def connector(node_id: str) -> SubstrateNode:
    return SubstrateNode(id=node_id, kind=NodeKind.CONNECTOR, capacity=ResourceVector({"cpu": 0}))


def link(u: str, v: str, bandwidth: float = 100, latency: float = 1) -> SubstrateLink:
    return SubstrateLink(endpoints=(u, v), bandwidth_capacity=bandwidth, latency=latency)


def graph(nodes, links=()) -> SubstrateGraph:
    return SubstrateGraph(nodes=tuple(nodes), links=tuple(links))


def nf(nf_id: str, cpu: float = 10, nodes: Optional[tuple[str, ...]] = None,
       iaas: Optional[tuple[int, ...]] = None, min_security: Optional[int] = None) -> NFSpec:
    return NFSpec(
        id=nf_id,
        demand=ResourceVector({"cpu": cpu}),
        placement_constraint=PlacementConstraint(nodes=nodes, iaas=iaas, min_security=min_security),
    )


def sfc(sfc_id: str, nfs, budget: float = 100, bandwidth: float = 10,
        ingress: Optional[str] = None, egress: Optional[str] = None) -> SFCSpec:
    return SFCSpec(id=sfc_id, nfs=tuple(nfs), latency_budget=budget, hop_bandwidth=bandwidth,
                   ingress_node=ingress, egress_node=egress)


def request(slice_id: str, *sfcs: SFCSpec, revision: int = 1) -> SliceRequest:
    return SliceRequest(slice_id=slice_id, sfcs=tuple(sfcs), revision=revision)


def line_graph(n: int = 3, cpu: float = 100, bandwidth: float = 100, latency: float = 1) -> SubstrateGraph:
    """Hosts A, B, C, ... joined in a path."""
    ids = [chr(ord("A") + i) for i in range(n)]
    return graph([host(i, cpu) for i in ids],
                 [link(u, v, bandwidth, latency) for u, v in zip(ids, ids[1:])])
