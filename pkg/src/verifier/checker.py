"""
Independent feasibility check of a placement.

Works on domain quantities only (assignments, routed pairs, capacities) and
re-derives chain structure from the requests, so a bug in the linearized
model or in the search cannot hide behind shared code.
"""

from collections import Counter
from typing import Optional, Sequence

from ..models import (
    EGRESS,
    INGRESS,
    BuildConfig,
    ConstraintFamily,
    FamilyVerdict,
    PlacementSolution,
    SFCSpec,
    SliceRequest,
    SubstrateGraph,
    Verdict,
    VerificationReport,
)
from ..network.topology import authorized_nodes, eligible_pairs
from ..utils import logger
from ..utils.errors import EmptyAuthorizedSet

TOLERANCE = 1e-6


class _Family:
    """Collects the first violation of one constraint family."""

    def __init__(self, family: ConstraintFamily):
        self.family = family
        self.first: Optional[str] = None
        self.detail: Optional[str] = None

    def fail(self, subject: str, detail: str) -> None:
        if self.first is None:
            self.first = subject
            self.detail = detail

    def verdict(self) -> FamilyVerdict:
        return FamilyVerdict(
            family=self.family,
            verdict=Verdict.PASS if self.first is None else Verdict.FAIL,
            first_violation=self.first,
            detail=self.detail,
        )


def _chain_labels(sfc: SFCSpec, pin_endpoints: bool) -> list[tuple[str, Optional[str]]]:
    """(label, fixed node) per chain position; NFs have no fixed node."""
    labels: list[tuple[str, Optional[str]]] = []
    if pin_endpoints and sfc.ingress_node is not None:
        labels.append((INGRESS, sfc.ingress_node))
    labels.extend((nf.id, None) for nf in sfc.nfs)
    if pin_endpoints and sfc.egress_node is not None:
        labels.append((EGRESS, sfc.egress_node))
    return labels


def verify(
    graph: SubstrateGraph,
    requests: Sequence[SliceRequest],
    solution: PlacementSolution,
    config: Optional[BuildConfig] = None,
) -> VerificationReport:
    """
    Check a placement against every constraint family.

    Failures are verdicts: the report names the first violating index of each
    failed family and never raises.
    """
    config = config or BuildConfig()
    placement = _Family(ConstraintFamily.PLACEMENT)
    resource = _Family(ConstraintFamily.RESOURCE)
    link = _Family(ConstraintFamily.LINK)
    latency = _Family(ConstraintFamily.LATENCY)
    bandwidth = _Family(ConstraintFamily.BANDWIDTH)

    nodes = graph.node_map()
    anchors = {
        node for request in requests for sfc in request.sfcs
        for node in (sfc.ingress_node, sfc.egress_node) if node is not None
    } if config.pin_endpoints else set()
    pairs = eligible_pairs(graph, config.pair_mode, extra_endpoints=anchors)
    active = set(solution.active_nodes)

    # Placement: exactly one authorized, active node per NF
    counts = Counter((a.slice_id, a.sfc_id, a.nf_id) for a in solution.assignments)
    where_placed = {(a.slice_id, a.sfc_id, a.nf_id): a.node_id for a in solution.assignments}
    known = set()
    for request in requests:
        for sfc in request.sfcs:
            for nf in sfc.nfs:
                key = (request.slice_id, sfc.id, nf.id)
                known.add(key)
                subject = "/".join(key)
                if counts[key] != 1:
                    placement.fail(subject, f"assigned {counts[key]} times")
                    continue
                node = where_placed[key]
                try:
                    allowed = authorized_nodes(nf, graph)
                except EmptyAuthorizedSet:
                    allowed = frozenset()
                if node not in allowed:
                    placement.fail(subject, f"node {node} is not authorized")
                elif node not in active:
                    placement.fail(subject, f"node {node} is not flagged active")
    for key in sorted(set(counts) - known):
        placement.fail("/".join(key), "assignment for an unknown NF")

    # Resources: per node and kind, demand within capacity
    demand_of = {
        (request.slice_id, sfc.id, nf.id): nf.demand
        for request in requests for sfc in request.sfcs for nf in sfc.nfs
    }
    usage: dict[str, dict[str, float]] = {}
    for key, node in sorted(where_placed.items()):
        if key not in demand_of:
            continue
        per_kind = usage.setdefault(node, {})
        for kind in demand_of[key].kinds:
            per_kind[kind] = per_kind.get(kind, 0.0) + demand_of[key].get(kind)
    for node_id in sorted(usage):
        node = nodes.get(node_id)
        for kind, amount in sorted(usage[node_id].items()):
            capacity = node.capacity.get(kind) if node is not None else 0.0
            if amount > capacity + TOLERANCE:
                resource.fail(node_id, f"{kind}: {amount:g} used of {capacity:g}")

    # Links, latency and bandwidth, per chain
    routes = Counter((r.slice_id, r.sfc_id, r.hop) for r in solution.routes)
    route_of = {(r.slice_id, r.sfc_id, r.hop): r for r in solution.routes}
    expected_hops = set()
    link_load: dict[tuple[str, str], float] = {}
    for request in requests:
        for sfc in request.sfcs:
            labels = _chain_labels(sfc, config.pin_endpoints)
            where = f"{request.slice_id}/{sfc.id}"
            if sfc.hop_bandwidth <= 0:
                bandwidth.fail(where, "hop bandwidth demand is not positive")

            budget_used = 0.0
            for (source, source_node), (target, target_node) in zip(labels, labels[1:]):
                key = (request.slice_id, sfc.id, target)
                expected_hops.add(key)
                subject = f"{where}/{source}->{target}"
                if routes[key] != 1:
                    link.fail(subject, f"routed {routes[key]} times")
                    continue
                route = route_of[key]
                u = source_node or where_placed.get((request.slice_id, sfc.id, source))
                v = target_node or where_placed.get((request.slice_id, sfc.id, target))
                if route.source != source:
                    link.fail(subject, f"route starts at stage {route.source}")
                if (route.u, route.v) != (u, v):
                    link.fail(subject, f"routed on ({route.u},{route.v}) but stages sit on ({u},{v})")
                metrics = pairs.get((route.u, route.v))
                if metrics is None:
                    link.fail(subject, f"({route.u},{route.v}) is not an eligible pair")
                    continue

                budget_used += route.latency_budget
                if metrics.latency > route.latency_budget + TOLERANCE:
                    latency.fail(subject, f"pair latency {metrics.latency:g} exceeds hop budget {route.latency_budget:g}")
                for key in metrics.links:
                    link_load[key] = link_load.get(key, 0.0) + sfc.hop_bandwidth
            if budget_used > sfc.latency_budget + TOLERANCE:
                latency.fail(where, f"{budget_used:g} ms of hop budgets exceed {sfc.latency_budget:g} ms")
    for key in sorted(set(routes) - expected_hops):
        link.fail("/".join(key), "route for an unknown hop")

    # Shared physical links are capacitated jointly, whatever the pair mode
    capacities = {key: physical.bandwidth_capacity for key, physical in graph.link_map().items()}
    for key in sorted(link_load):
        capacity = capacities.get(key, 0.0)
        if link_load[key] > capacity + TOLERANCE:
            bandwidth.fail(f"{key[0]}-{key[1]}", f"{link_load[key]:g} Mbps routed over {capacity:g} Mbps")

    report = VerificationReport(families=tuple(
        family.verdict() for family in (placement, resource, link, latency, bandwidth)
    ))
    if not report.overall:
        logger.debug(f"Verification failed: {[f.value for f in report.failed()]}")
    return report
