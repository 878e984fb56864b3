"""
Substrate queries: authorized nodes, NF counting, eligible node pairs and
residual-resource accounting.
"""

import math
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from ..models import (
    ConstraintKind,
    NFSpec,
    PairMode,
    PlacementSolution,
    ResourceVector,
    SliceRequest,
    SubstrateGraph,
)
from ..utils.errors import EmptyAuthorizedSet, NegativeResidual, PlacementError

EPSILON = 1e-9


@dataclass(frozen=True)
class PairMetrics:
    """Effective latency/bandwidth of a node pair a virtual link can be mapped to."""
    latency: float
    bandwidth: float
    path: tuple[str, ...]

    @property
    def is_self(self) -> bool:
        return len(self.path) == 1

    @property
    def links(self) -> tuple[tuple[str, str], ...]:
        """Physical links the path traverses, as unordered keys."""
        return tuple(pair_key(a, b) for a, b in zip(self.path, self.path[1:]))


def pair_key(u: str, v: str) -> tuple[str, str]:
    """Unordered pair key; both directions share one capacity."""
    return (u, v) if u <= v else (v, u)


def authorized_nodes(nf: NFSpec, graph: SubstrateGraph) -> frozenset[str]:
    """
    Resolve the set of nodes an NF may be deployed on (y_j).

    Raises:
        EmptyAuthorizedSet: if no host qualifies.
    """
    hosts = [node for node in graph.nodes if node.is_host]
    constraint = nf.placement_constraint

    if constraint.kind == ConstraintKind.EXPLICIT:
        allowed = set(constraint.nodes or ())
        result = frozenset(node.id for node in hosts if node.id in allowed)
    elif constraint.kind == ConstraintKind.FILTER:
        iaas = set(constraint.iaas) if constraint.iaas is not None else None
        min_security = constraint.min_security or 0
        result = frozenset(
            node.id for node in hosts
            if node.characteristics is not None
            and (iaas is None or node.characteristics.iaas_id in iaas)
            and node.characteristics.security_level >= min_security
        )
    else:
        result = frozenset(node.id for node in hosts)

    if not result:
        raise EmptyAuthorizedSet(nf.id)
    return result


def gamma(requests: Iterable[SliceRequest]) -> int:
    """Number of NFs over all slices and SFCs."""
    return sum(len(sfc.nfs) for request in requests for sfc in request.sfcs)


def _bottleneck(graph: nx.Graph, path: list[str]) -> float:
    return min((graph[a][b]["bandwidth"] for a, b in zip(path, path[1:])), default=math.inf)


def eligible_pairs(
    graph: SubstrateGraph,
    mode: PairMode = PairMode.DIRECT,
    extra_endpoints: Iterable[str] = (),
) -> dict[tuple[str, str], PairMetrics]:
    """
    Node pairs a virtual link may be mapped to, with effective latency and bandwidth.

    DIRECT: physical links (both orientations) plus self-pairs of every node.
    LOGICAL_MESH: every pair of hosts (and of `extra_endpoints`), weighted by the
    latency-shortest path and that path's bottleneck bandwidth, plus self-pairs.
    Self-pairs have zero latency and unbounded bandwidth.
    """
    nx_graph = graph.to_networkx()
    pairs: dict[tuple[str, str], PairMetrics] = {}

    if mode == PairMode.DIRECT:
        for node_id in graph.node_ids():
            pairs[(node_id, node_id)] = PairMetrics(0.0, math.inf, (node_id,))
        for link in sorted(graph.links, key=lambda l: l.key):
            u, v = link.key
            pairs[(u, v)] = PairMetrics(link.latency, link.bandwidth_capacity, (u, v))
            pairs[(v, u)] = PairMetrics(link.latency, link.bandwidth_capacity, (v, u))
        return pairs

    endpoints = sorted(set(graph.host_ids()) | set(extra_endpoints))
    for source in endpoints:
        pairs[(source, source)] = PairMetrics(0.0, math.inf, (source,))
        distances, paths = nx.single_source_dijkstra(nx_graph, source, weight="latency")
        for target in endpoints:
            if target <= source or target not in distances:
                continue
            path = paths[target]
            metrics = PairMetrics(float(distances[target]), _bottleneck(nx_graph, path), tuple(path))
            pairs[(source, target)] = metrics
            pairs[(target, source)] = PairMetrics(metrics.latency, metrics.bandwidth, tuple(reversed(path)))
    return pairs


def _nf_index(requests: Iterable[SliceRequest]) -> tuple[dict, dict]:
    demands = {}
    bandwidths = {}
    for request in requests:
        for sfc in request.sfcs:
            bandwidths[(request.slice_id, sfc.id)] = sfc.hop_bandwidth
            for nf in sfc.nfs:
                demands[(request.slice_id, sfc.id, nf.id)] = nf.demand
    return demands, bandwidths


def residual_apply(
    graph: SubstrateGraph,
    requests: list[SliceRequest],
    solution: PlacementSolution,
) -> SubstrateGraph:
    """
    Remove the resources a placement consumes from the substrate.

    Node capacities lose the demands of the NFs assigned to them; every physical
    link a routed virtual link traverses loses that SFC's hop bandwidth.
    Latencies are unchanged.

    Raises:
        NegativeResidual: if a capacity would drop below zero.
    """
    demands, bandwidths = _nf_index(requests)
    kinds = graph.resource_kinds()

    node_use: dict[str, dict[str, float]] = {}
    for assignment in solution.assignments:
        demand: ResourceVector = demands[(assignment.slice_id, assignment.sfc_id, assignment.nf_id)]
        use = node_use.setdefault(assignment.node_id, {})
        for kind in demand.kinds:
            use[kind] = use.get(kind, 0.0) + demand.get(kind)

    link_use: dict[tuple[str, str], float] = {}
    for route in solution.routes:
        path = route.path or ((route.u,) if route.u == route.v else (route.u, route.v))
        for a, b in zip(path, path[1:]):
            key = pair_key(a, b)
            link_use[key] = link_use.get(key, 0.0) + bandwidths[(route.slice_id, route.sfc_id)]

    nodes = []
    for node in graph.nodes:
        use = node_use.get(node.id)
        if not use:
            nodes.append(node)
            continue
        remaining = {}
        for kind in kinds or node.capacity.kinds:
            left = node.capacity.get(kind) - use.get(kind, 0.0)
            if left < -EPSILON:
                raise NegativeResidual(f"node {node.id} ({kind})", left)
            remaining[kind] = max(left, 0.0)
        nodes.append(node.model_copy(update={"capacity": ResourceVector(remaining)}))

    links_by_key = graph.link_map()
    missing = set(link_use) - set(links_by_key)
    if missing:
        u, v = sorted(missing)[0]
        raise PlacementError(f"route uses {u}-{v}, which is not a physical link")

    links = []
    for link in graph.links:
        used = link_use.get(link.key)
        if not used:
            links.append(link)
            continue
        left = link.bandwidth_capacity - used
        if left < -EPSILON:
            raise NegativeResidual(f"link {link.key[0]}-{link.key[1]}", left)
        links.append(link.model_copy(update={"bandwidth_capacity": max(left, 0.0)}))

    return graph.model_copy(update={"nodes": tuple(nodes), "links": tuple(links)})
