import pytest

from src.models import BuildConfig, ConstraintFamily, NFAssignment, Verdict
from src.network import PlacementInstance
from src.solver import solve_exact
from src.verifier import verify

from factories import line_graph, nf, request, sfc


@pytest.fixture
def placed(walkthrough):
    g, requests = walkthrough
    return g, requests, solve_exact(g, requests)


def replace_assignment(solution, nf_id, node_id):
    return tuple(
        a.model_copy(update={"node_id": node_id}) if a.nf_id == nf_id else a
        for a in solution.assignments
    )


def test_optimum_passes_every_family(placed):
    g, requests, solution = placed
    report = verify(g, requests, solution)
    assert report.overall
    assert [f.family for f in report.families] == list(ConstraintFamily)
    assert report.failed() == []


def test_missing_assignment(placed):
    g, requests, solution = placed
    report = verify(g, requests, solution.model_copy(update={"assignments": solution.assignments[:-1]}))
    assert ConstraintFamily.PLACEMENT in report.failed()
    assert report.families[0].first_violation == "S2/monitoring/NF_r"


def test_duplicate_assignment(placed):
    g, requests, solution = placed
    extra = solution.assignments + (solution.assignments[0],)
    assert verify(g, requests, solution.model_copy(update={"assignments": extra})).verdict(
        ConstraintFamily.PLACEMENT) == Verdict.FAIL


def test_unauthorized_node(placed):
    g, requests, solution = placed
    moved = solution.model_copy(update={
        "assignments": replace_assignment(solution, "a", "A"),
        "active_nodes": ("A",) + solution.active_nodes,
    })
    report = verify(g, requests, moved)
    assert ConstraintFamily.PLACEMENT in report.failed()
    assert "not authorized" in report.families[0].detail


def test_host_not_flagged_active(placed):
    g, requests, solution = placed
    report = verify(g, requests, solution.model_copy(update={"active_nodes": ("D", "F", "G")}))
    assert report.failed() == [ConstraintFamily.PLACEMENT]
    assert "not flagged active" in report.families[0].detail


def test_unknown_assignment(placed):
    g, requests, solution = placed
    ghost = NFAssignment(slice_id="S9", sfc_id="x", nf_id="y", node_id="A")
    report = verify(g, requests, solution.model_copy(update={"assignments": solution.assignments + (ghost,)}))
    assert ConstraintFamily.PLACEMENT in report.failed()


def test_resource_overload():
    g = line_graph(2, cpu=100)
    requests = [request("s1", sfc("f1", [nf("a", cpu=60), nf("b", cpu=60)]))]
    solution = solve_exact(g, requests)
    crowded = solution.model_copy(update={
        "assignments": tuple(a.model_copy(update={"node_id": "A"}) for a in solution.assignments),
        "routes": tuple(r.model_copy(update={"u": "A", "v": "A", "path": ("A",), "latency_budget": 0})
                        for r in solution.routes),
        "active_nodes": ("A",),
    })
    report = verify(g, requests, crowded)
    assert report.failed() == [ConstraintFamily.RESOURCE]
    assert report.families[1].first_violation == "A"


def test_missing_route(placed):
    g, requests, solution = placed
    report = verify(g, requests, solution.model_copy(update={"routes": solution.routes[1:]}))
    assert report.failed() == [ConstraintFamily.LINK]
    assert report.families[2].first_violation == "S1/video/a->b"


def test_route_on_wrong_pair(placed):
    g, requests, solution = placed
    routes = tuple(r.model_copy(update={"u": "G", "v": "F"}) if r.hop == "b" else r for r in solution.routes)
    assert ConstraintFamily.LINK in verify(g, requests, solution.model_copy(update={"routes": routes})).failed()


def test_non_eligible_pair():
    g = line_graph(3)
    requests = [request("s1", sfc("f1", [nf("a", nodes=("A",)), nf("b", nodes=("C",))]))]
    solution = solve_exact(g, requests, BuildConfig(pair_mode="mesh"))
    report = verify(g, requests, solution, BuildConfig())
    assert report.failed() == [ConstraintFamily.LINK]
    assert "not an eligible pair" in report.families[2].detail
    assert verify(g, requests, solution, BuildConfig(pair_mode="mesh")).overall


def test_hop_budget_below_pair_latency(placed):
    g, requests, solution = placed
    routes = tuple(r.model_copy(update={"latency_budget": 1}) if r.hop == "b" else r for r in solution.routes)
    report = verify(g, requests, solution.model_copy(update={"routes": routes}))
    assert report.failed() == [ConstraintFamily.LATENCY]


def test_hop_budgets_exceed_chain_budget(placed):
    g, requests, solution = placed
    routes = tuple(r.model_copy(update={"latency_budget": 20}) if r.sfc_id == "video" else r for r in solution.routes)
    report = verify(g, requests, solution.model_copy(update={"routes": routes}))
    assert report.failed() == [ConstraintFamily.LATENCY]
    assert report.families[3].first_violation == "S1/video"


def test_bandwidth_shared_by_both_directions():
    g = line_graph(2, bandwidth=100)
    requests = [
        request("s1", sfc("f1", [nf("a", cpu=60, nodes=("A",)), nf("b", cpu=30, nodes=("B",))], bandwidth=60)),
        request("s2", sfc("f1", [nf("a", cpu=30, nodes=("B",)), nf("b", cpu=30, nodes=("A",))], bandwidth=60)),
    ]
    instance = PlacementInstance.build(g, requests, BuildConfig())
    solution = instance.to_solution(["A", "B", "B", "A"])
    report = verify(g, requests, solution)
    assert report.failed() == [ConstraintFamily.BANDWIDTH]
    assert report.families[4].first_violation == "A-B"


def test_report_serializes(placed):
    g, requests, solution = placed
    assert '"overall":true' in verify(g, requests, solution).model_dump_json()


def test_mesh_routes_load_every_link_on_their_path():
    g = line_graph(3, bandwidth=15)
    config = BuildConfig(pair_mode="mesh")
    requests = [request("s1", sfc("f1", [nf("a", nodes=("A",)), nf("b", nodes=("C",)), nf("c", nodes=("B",))],
                                  bandwidth=10))]
    solution = PlacementInstance.build(g, requests, config).to_solution(["A", "C", "B"])
    report = verify(g, requests, solution, config)
    assert report.failed() == [ConstraintFamily.BANDWIDTH]
    assert report.families[4].first_violation == "B-C"
