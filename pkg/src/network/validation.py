"""
Cross-object validation of a substrate graph and a list of slice requests.
"""

from enum import Enum

import networkx as nx
from pydantic import BaseModel, ConfigDict

from ..models import IDENTIFIER, ConstraintKind, NodeKind, SliceRequest, SubstrateGraph
from ..utils import logger


class IssueCode(str, Enum):
    """Machine-readable validation issue codes."""
    EMPTY_GRAPH = "EmptyGraph"
    INVALID_IDENTIFIER = "InvalidIdentifier"
    DUPLICATE_NODE = "DuplicateNode"
    CONNECTOR_CAPACITY = "ConnectorCapacity"
    MISSING_CHARACTERISTICS = "MissingCharacteristics"
    RESOURCE_KINDS_MISMATCH = "ResourceKindsMismatch"
    DANGLING_LINK = "DanglingLink"
    SELF_LOOP = "SelfLoop"
    DUPLICATE_LINK = "DuplicateLink"
    NON_POSITIVE_BANDWIDTH = "NonPositiveBandwidth"
    DISCONNECTED = "Disconnected"
    DUPLICATE_SLICE = "DuplicateSlice"
    DUPLICATE_SFC = "DuplicateSFC"
    DUPLICATE_NF = "DuplicateNF"
    UNKNOWN_AUTHORIZED_NODE = "UnknownAuthorizedNode"
    AUTHORIZED_CONNECTOR = "AuthorizedConnector"
    UNKNOWN_ENDPOINT_NODE = "UnknownEndpointNode"


class ValidationIssue(BaseModel):
    """One violated invariant and the id it concerns."""
    model_config = ConfigDict(frozen=True)

    code: IssueCode
    subject: str
    message: str = ""

    def __str__(self) -> str:
        return f'{self.code.value}("{self.subject}")'


def _check_kinds(kinds: tuple[str, ...], vector_kinds: tuple[str, ...]) -> bool:
    # Empty vectors read as zero in every kind.
    return not vector_kinds or vector_kinds == kinds


def validate_graph(graph: SubstrateGraph) -> list[ValidationIssue]:
    """Check the substrate invariants."""
    issues: list[ValidationIssue] = []

    if not graph.nodes:
        issues.append(ValidationIssue(code=IssueCode.EMPTY_GRAPH, subject="", message="graph has no nodes"))
        return issues

    kinds = graph.resource_kinds()
    seen: set[str] = set()
    for node in graph.nodes:
        if not IDENTIFIER.match(node.id):
            issues.append(ValidationIssue(code=IssueCode.INVALID_IDENTIFIER, subject=node.id,
                                          message="node ids may only use letters, digits, '_' and '.'"))
        if node.id in seen:
            issues.append(ValidationIssue(code=IssueCode.DUPLICATE_NODE, subject=node.id))
        seen.add(node.id)

        if node.kind == NodeKind.CONNECTOR and not node.capacity.is_zero():
            issues.append(ValidationIssue(code=IssueCode.CONNECTOR_CAPACITY, subject=node.id,
                                          message="connector nodes must have zero capacity"))
        if node.kind == NodeKind.HOST and node.characteristics is None:
            issues.append(ValidationIssue(code=IssueCode.MISSING_CHARACTERISTICS, subject=node.id))
        if not _check_kinds(kinds, node.capacity.kinds):
            issues.append(ValidationIssue(code=IssueCode.RESOURCE_KINDS_MISMATCH, subject=node.id,
                                          message=f"expected kinds {list(kinds)}, got {list(node.capacity.kinds)}"))

    pairs: set[tuple[str, str]] = set()
    for link in graph.links:
        u, v = link.endpoints
        for end in (u, v):
            if end not in seen:
                issues.append(ValidationIssue(code=IssueCode.DANGLING_LINK, subject=end,
                                              message=f"link {u}-{v} references a missing node"))
        if u == v:
            issues.append(ValidationIssue(code=IssueCode.SELF_LOOP, subject=u))
        if link.key in pairs:
            issues.append(ValidationIssue(code=IssueCode.DUPLICATE_LINK, subject=f"{link.key[0]}-{link.key[1]}"))
        pairs.add(link.key)
        if link.bandwidth_capacity <= 0:
            issues.append(ValidationIssue(code=IssueCode.NON_POSITIVE_BANDWIDTH, subject=f"{u}-{v}"))

    # Connectivity is only meaningful once every link resolves.
    if not any(issue.code == IssueCode.DANGLING_LINK for issue in issues):
        nx_graph = graph.to_networkx()
        if not nx.is_connected(nx_graph):
            components = sorted(sorted(c) for c in nx.connected_components(nx_graph))
            issues.append(ValidationIssue(code=IssueCode.DISCONNECTED, subject=components[-1][0],
                                          message=f"{len(components)} connected components"))
    return issues


def validate_requests(graph: SubstrateGraph, requests: list[SliceRequest]) -> list[ValidationIssue]:
    """Check slice-layer invariants and references into the substrate."""
    issues: list[ValidationIssue] = []
    nodes = graph.node_map()
    kinds = graph.resource_kinds()

    slice_ids: set[str] = set()
    for request in requests:
        if not IDENTIFIER.match(request.slice_id):
            issues.append(ValidationIssue(code=IssueCode.INVALID_IDENTIFIER, subject=request.slice_id))
        if request.slice_id in slice_ids:
            issues.append(ValidationIssue(code=IssueCode.DUPLICATE_SLICE, subject=request.slice_id))
        slice_ids.add(request.slice_id)

        sfc_ids: set[str] = set()
        for sfc in request.sfcs:
            where = f"{request.slice_id}/{sfc.id}"
            if not IDENTIFIER.match(sfc.id):
                issues.append(ValidationIssue(code=IssueCode.INVALID_IDENTIFIER, subject=where))
            if sfc.id in sfc_ids:
                issues.append(ValidationIssue(code=IssueCode.DUPLICATE_SFC, subject=where))
            sfc_ids.add(sfc.id)

            for endpoint in (sfc.ingress_node, sfc.egress_node):
                if endpoint is not None and endpoint not in nodes:
                    issues.append(ValidationIssue(code=IssueCode.UNKNOWN_ENDPOINT_NODE, subject=endpoint,
                                                  message=f"endpoint of {where}"))

            nf_ids: set[str] = set()
            for nf in sfc.nfs:
                nf_where = f"{where}/{nf.id}"
                if not IDENTIFIER.match(nf.id):
                    issues.append(ValidationIssue(code=IssueCode.INVALID_IDENTIFIER, subject=nf_where))
                if nf.id in nf_ids:
                    issues.append(ValidationIssue(code=IssueCode.DUPLICATE_NF, subject=nf_where))
                nf_ids.add(nf.id)
                if not _check_kinds(kinds, nf.demand.kinds):
                    issues.append(ValidationIssue(code=IssueCode.RESOURCE_KINDS_MISMATCH, subject=nf_where,
                                                  message=f"expected kinds {list(kinds)}, got {list(nf.demand.kinds)}"))
                if nf.placement_constraint.kind != ConstraintKind.EXPLICIT:
                    continue
                for node_id in nf.placement_constraint.nodes or ():
                    node = nodes.get(node_id)
                    if node is None:
                        issues.append(ValidationIssue(code=IssueCode.UNKNOWN_AUTHORIZED_NODE, subject=node_id,
                                                      message=f"authorized for {nf_where}"))
                    elif not node.is_host:
                        issues.append(ValidationIssue(code=IssueCode.AUTHORIZED_CONNECTOR, subject=node_id,
                                                      message=f"authorized for {nf_where}"))
    return issues


def validate(graph: SubstrateGraph, requests: list[SliceRequest]) -> list[ValidationIssue]:
    """
    Validate a problem instance.

    Returns:
        Every violated invariant; empty iff the instance is well-formed.
    """
    issues = validate_graph(graph) + validate_requests(graph, requests)
    if issues:
        logger.debug(f"Validation found {len(issues)} issue(s): {', '.join(map(str, issues[:5]))}")
    return issues
