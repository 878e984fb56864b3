import pytest

from src.models import NodeKind, ResourceVector, SubstrateNode
from src.network import IssueCode, validate

from factories import connector, graph, host, line_graph, link, nf, request, sfc


def codes(issues):
    return {issue.code for issue in issues}


def test_walkthrough_instance_is_valid(walkthrough):
    assert validate(*walkthrough) == []


def test_empty_graph():
    assert codes(validate(graph([]), [])) == {IssueCode.EMPTY_GRAPH}


def test_dangling_link_is_reported_without_connectivity_check():
    issues = validate(graph([host("A")], [link("A", "Z")]), [])
    assert codes(issues) == {IssueCode.DANGLING_LINK}
    assert issues[0].subject == "Z"


def test_disconnected_substrate():
    issues = validate(graph([host("A"), host("B")]), [])
    assert codes(issues) == {IssueCode.DISCONNECTED}


@pytest.mark.parametrize("links, expected", [
    ([link("A", "A")], IssueCode.SELF_LOOP),
    ([link("A", "B"), link("B", "A")], IssueCode.DUPLICATE_LINK),
    ([link("A", "B", bandwidth=0)], IssueCode.NON_POSITIVE_BANDWIDTH),
])
def test_link_invariants(links, expected):
    assert expected in codes(validate(graph([host("A"), host("B")], links), []))


def test_connector_must_have_zero_capacity():
    bad = SubstrateNode(id="R", kind=NodeKind.CONNECTOR, capacity=ResourceVector({"cpu": 5}))
    issues = validate(graph([host("A"), bad], [link("A", "R")]), [])
    assert codes(issues) == {IssueCode.CONNECTOR_CAPACITY}


def test_host_needs_characteristics():
    bare = SubstrateNode(id="A", capacity=ResourceVector({"cpu": 5}))
    assert codes(validate(graph([bare]), [])) == {IssueCode.MISSING_CHARACTERISTICS}


def test_resource_kinds_must_agree():
    other = SubstrateNode(id="B", capacity=ResourceVector({"ram": 5}), characteristics=host("A").characteristics)
    assert IssueCode.RESOURCE_KINDS_MISMATCH in codes(validate(graph([host("A"), other], [link("A", "B")]), []))


def test_identifiers_must_be_lp_safe():
    issues = validate(line_graph(2), [request("s 1", sfc("f1", [nf("n1")]))])
    assert codes(issues) == {IssueCode.INVALID_IDENTIFIER}


def test_duplicate_ids_in_requests():
    g = line_graph(2)
    duplicate_nf = request("s1", sfc("f1", [nf("n1"), nf("n1")]))
    duplicate_sfc = request("s2", sfc("f1", [nf("n1")]), sfc("f1", [nf("n1")]))
    issues = validate(g, [duplicate_nf, duplicate_sfc, request("s1", sfc("f1", [nf("n1")]))])
    assert {IssueCode.DUPLICATE_NF, IssueCode.DUPLICATE_SFC, IssueCode.DUPLICATE_SLICE} <= codes(issues)


def test_authorized_nodes_must_be_known_hosts():
    g = graph([host("A"), connector("R")], [link("A", "R")])
    issues = validate(g, [request("s1", sfc("f1", [nf("n1", nodes=("R", "Q"))]))])
    assert codes(issues) == {IssueCode.AUTHORIZED_CONNECTOR, IssueCode.UNKNOWN_AUTHORIZED_NODE}


def test_endpoints_must_exist():
    issues = validate(line_graph(2), [request("s1", sfc("f1", [nf("n1")], ingress="Q"))])
    assert codes(issues) == {IssueCode.UNKNOWN_ENDPOINT_NODE}
