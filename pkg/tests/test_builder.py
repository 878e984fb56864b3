import itertools

import pytest

from src.milp import (
    FamilyTag,
    VarFamily,
    VarKind,
    big_m,
    build_model,
    encode_solution,
    evaluate_constraints,
    export_lp,
)
from src.models import BuildConfig, PairMode
from src.network import PlacementInstance, validate
from src.network.io import load_instance
from src.solver import solve_exact
from src.utils.errors import EmptyAuthorizedSet, ModelTooLarge
from src.verifier import verify

from factories import line_graph, nf, request, sfc

GOLDEN = {
    "single_nf": BuildConfig(),
    "two_nf_link": BuildConfig(),
    "pinned_ingress": BuildConfig(pin_endpoints=True),
}


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_lp_export_matches_golden_file(golden_dir, name):
    g, requests = load_instance(golden_dir / f"{name}.json")
    assert validate(g, requests) == []
    model, _ = build_model(g, requests, GOLDEN[name])
    assert export_lp(model) == (golden_dir / f"{name}.lp").read_text()


def test_export_is_byte_stable(walkthrough):
    first, _ = build_model(*walkthrough)
    second, _ = build_model(*walkthrough)
    assert export_lp(first) == export_lp(second)


def test_walkthrough_variable_counts(walkthrough):
    model, index = build_model(*walkthrough)
    # 10 rho, 8 Y, 3 phiL and 5 eligible (hop, pair) triples
    assert len(model.variables) == 36
    assert len(index.rho) == 10
    assert len(index.y) == 8
    assert len(index.phi_l) == 3
    assert len(index.z) == len(index.phi_luv) == len(index.phi_buv) == 5
    assert len(model.binaries()) == 10 + 8 + 5
    assert set(index.z) >= {("S2", "monitoring", "NF_r", "D", "F"), ("S1", "video", "b", "F", "G")}


def test_two_nf_family_counts(golden_dir):
    model, _ = build_model(*load_instance(golden_dir / "two_nf_link.json"))
    counts = model.family_counts()
    assert counts[FamilyTag.PLACEMENT] == 2
    assert counts[FamilyTag.NODE_ACTIVE] == 4
    assert counts[FamilyTag.RESOURCE] == 2
    assert counts[FamilyTag.LINK_ONEHOT] == 1
    assert counts[FamilyTag.LINK_COUPLING] == 12
    assert counts[FamilyTag.LATENCY_BUDGET] == 1
    assert counts[FamilyTag.LATENCY_LINEARIZATION] == 8
    assert counts[FamilyTag.LATENCY_LINK] == 4
    assert counts[FamilyTag.BW_LINEARIZATION] == 12
    assert counts[FamilyTag.BW_CAPACITY] == 1
    assert counts[FamilyTag.BW_DEMAND] == 0


def test_phi_l_bounded_by_chain_budget(walkthrough):
    model, index = build_model(*walkthrough)
    video = model.variables[index.phi_l[("S1", "video", "b")]]
    assert video.kind == VarKind.CONTINUOUS
    assert video.upper == 31


def test_variable_names_decode(walkthrough):
    model, index = build_model(*walkthrough)
    var_id = index.by_name["Y[S2,monitoring,NF_g,D]"]
    assert index.decode(var_id) == (VarFamily.Y, ("S2", "monitoring", "NF_g", "D"))
    assert model.variables[var_id].name == "Y[S2,monitoring,NF_g,D]"


def test_big_m_walkthrough(walkthrough):
    # Largest term is the 1000 Mbps connector links
    assert big_m(*walkthrough) == 2000
    assert big_m(*walkthrough, mode=PairMode.LOGICAL_MESH) == 2000


def test_big_m_from_total_hop_bandwidth():
    g = line_graph(2, bandwidth=10, latency=1)
    requests = [request("s1", sfc("f1", [nf("a"), nf("b"), nf("c")], budget=5, bandwidth=20))]
    assert big_m(g, requests) == 80


def test_big_m_counts_pinned_hops():
    g = line_graph(2, bandwidth=10, latency=1)
    requests = [request("s1", sfc("f1", [nf("a")], budget=5, bandwidth=20, ingress="A", egress="B"))]
    assert big_m(g, requests) == 20
    assert big_m(g, requests, pin_endpoints=True) == 80


def test_big_m_factor_scales_coefficients(walkthrough):
    model, _ = build_model(*walkthrough, BuildConfig(big_m_factor=2.0))
    assert model.big_m == 4000


def test_model_too_large(walkthrough):
    with pytest.raises(ModelTooLarge):
        build_model(*walkthrough, BuildConfig(max_variables=10))


def test_empty_authorized_set_propagates():
    requests = [request("s1", sfc("f1", [nf("a", iaas=(42,))]))]
    with pytest.raises(EmptyAuthorizedSet):
        build_model(line_graph(2), requests)


def test_walkthrough_optimum_satisfies_every_row(walkthrough):
    g, requests = walkthrough
    solution = solve_exact(g, requests)
    for factor in (1.0, 2.0):
        model, index = build_model(g, requests, BuildConfig(big_m_factor=factor))
        values = encode_solution(solution, requests, index)
        assert evaluate_constraints(model, values) == []
        assert model.objective_value(values) == solution.objective


def test_unassigned_nf_breaks_placement_row(walkthrough):
    g, requests = walkthrough
    solution = solve_exact(g, requests)
    model, index = build_model(g, requests)
    partial = solution.model_copy(update={"assignments": solution.assignments[1:]})
    families = {v.family for v in evaluate_constraints(model, encode_solution(partial, requests, index))}
    assert FamilyTag.PLACEMENT.value in families


def test_fractional_binary_is_reported(walkthrough):
    model, index = build_model(*walkthrough)
    values = {index.rho["A"]: 0.5}
    assert any(v.family == "INTEGRALITY" for v in evaluate_constraints(model, values))


@pytest.mark.parametrize("mode", [PairMode.DIRECT, PairMode.LOGICAL_MESH])
def test_model_and_verifier_agree_on_every_vector(corpus, mode):
    config = BuildConfig(pair_mode=mode)
    checked = 0
    for _, (g, requests) in corpus[:48]:
        instance = PlacementInstance.build(g, requests, config)
        vectors = list(itertools.product(*(slot.candidates for slot in instance.slots)))
        if len(vectors) > 300:
            continue
        model, index = build_model(g, requests, config)
        for vector in vectors:
            solution = instance.to_solution(vector)
            accepted = verify(g, requests, solution, config).overall
            violations = evaluate_constraints(model, encode_solution(solution, requests, index))
            assert accepted == (violations == []), (vector, violations[:3])
            checked += 1
    assert checked > 0


def test_unrestricted_nfs_get_one_y_per_host():
    requests = [request("s1", sfc("f1", [nf(f"n{i}") for i in range(4)]))]
    model, index = build_model(line_graph(12), requests)
    assert len(index.rho) == 12
    assert len(index.y) == 48
    assert model.family_counts()[FamilyTag.PLACEMENT] == 4


def test_mesh_pairs_share_physical_link_rows():
    g = line_graph(3, bandwidth=15)
    config = BuildConfig(pair_mode=PairMode.LOGICAL_MESH)
    requests = [request("s1", sfc("f1", [nf("a", nodes=("A",)), nf("b", nodes=("C",)), nf("c", nodes=("B",))],
                                  bandwidth=10))]
    model, index = build_model(g, requests, config)
    # one row per physical link, not per eligible pair
    assert model.family_counts()[FamilyTag.BW_CAPACITY] == 2
    solution = PlacementInstance.build(g, requests, config).to_solution(["A", "C", "B"])
    violations = evaluate_constraints(model, encode_solution(solution, requests, index))
    assert [v.family for v in violations] == [FamilyTag.BW_CAPACITY.value]
    assert not verify(g, requests, solution, config).overall
