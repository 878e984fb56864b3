import networkx as nx
import pytest

from src.models import GenParams, NodeKind
from src.network import validate
from src.scenarios import PRESETS, gen_instance, gen_requests, gen_substrate, preset, scale_compare_nodes
from src.utils.errors import GenerationFailed, UnknownPreset


def test_same_seed_same_instance():
    params = GenParams(n_hosts=6, n_connectors=2, seed=11)
    assert gen_instance(params, 2, 2, 3) == gen_instance(params, 2, 2, 3)


def test_different_seed_different_instance():
    first = gen_substrate(GenParams(seed=1))
    second = gen_substrate(GenParams(seed=2))
    assert first != second


def test_generated_substrate_is_valid_and_connected():
    params = GenParams(n_hosts=8, n_connectors=2, connectivity=0.3, seed=5)
    g, requests = gen_instance(params, 3, 2, 4)
    assert validate(g, requests) == []
    assert nx.is_connected(g.to_networkx())
    assert [n.id for n in g.nodes if n.kind == NodeKind.CONNECTOR] == ["R00", "R01"]
    assert all(n.capacity.is_zero() for n in g.nodes if n.kind == NodeKind.CONNECTOR)


def test_values_within_intervals():
    params = GenParams(n_hosts=5, seed=3, host_capacity=(10, 20), link_bandwidth=(30, 40),
                       link_latency=(1, 2), demand=(5, 6))
    g, requests = gen_instance(params, 2, 2, 2)
    for node in g.nodes:
        assert all(10 <= node.capacity.get(k) <= 20 for k in params.resource_kinds)
    for link in g.links:
        assert 30 <= link.bandwidth_capacity <= 40
        assert 1 <= link.latency <= 2
    for request in requests:
        for sfc in request.sfcs:
            assert 5 <= sfc.hop_bandwidth <= 6
            assert 5 <= sfc.latency_budget <= 6
            assert all(5 <= nf.demand.get(k) <= 6 for nf in sfc.nfs for k in params.resource_kinds)


def test_request_shape_and_ids():
    requests = gen_requests(3, 2, 4, GenParams(seed=9))
    assert [r.slice_id for r in requests] == ["s1", "s2", "s3"]
    assert [s.id for s in requests[0].sfcs] == ["f1", "f2"]
    assert [n.id for n in requests[0].sfcs[0].nfs] == ["n1", "n2", "n3", "n4"]


def test_request_counts_must_be_positive():
    with pytest.raises(ValueError):
        gen_requests(0, 1, 1, GenParams())


def test_generation_gives_up_on_sparse_graphs():
    with pytest.raises(GenerationFailed):
        gen_substrate(GenParams(n_hosts=30, connectivity=0.001, max_attempts=3))


@pytest.mark.parametrize("name, swept, count, first", [
    ("VARY_SLICES", "slices", 50, (1, 2, 4)),
    ("VARY_SFCS", "sfcs", 19, (1, 2, 4)),
    ("VARY_NFS", "nfs", 19, (5, 2, 2)),
])
def test_presets(name, swept, count, first):
    plan = preset(name, repetitions=3)
    assert plan.swept == swept
    assert len(plan.points) == count
    point = plan.points[0]
    assert (point.slices, point.sfcs, point.nfs) == first
    assert point.nodes == 12
    assert plan.repetitions == 3


def test_scale_compare_series():
    plan = preset("scale_compare")
    assert plan.name == "SCALE_COMPARE"
    growing = [p for p in plan.points if p.series == "growing"]
    assert [p.nodes for p in growing[:3]] == [12, 14, 16]
    assert scale_compare_nodes(50) == 110
    assert {p.nodes for p in plan.points if p.series == "fixed"} == {12}


def test_unknown_preset():
    with pytest.raises(UnknownPreset):
        preset("VARY_LINKS")
    assert set(PRESETS) == {"VARY_SLICES", "VARY_SFCS", "VARY_NFS", "SCALE_COMPARE"}


def test_full_connectivity_gives_complete_graph():
    g = gen_substrate(GenParams(connectivity=1.0, n_connectors=0, seed=7))
    topology = g.to_networkx()
    assert topology.number_of_nodes() == 12
    assert topology.number_of_edges() == 66


def test_demand_draws_center_on_interval_midpoint():
    draws = [
        nf.demand.get(kind)
        for seed in range(1000)
        for request in gen_requests(1, 1, 1, GenParams(seed=seed))
        for sfc in request.sfcs
        for nf in sfc.nfs
        for kind in GenParams().resource_kinds
    ]
    assert all(50 <= d <= 100 for d in draws)
    assert abs(sum(draws) / len(draws) - 75) <= 0.03 * 75


@pytest.mark.parametrize("slices", [20, 30])
def test_default_capacity_needs_six_to_eleven_hosts(slices):
    # Aggregate per-kind lower bound on active hosts for VARY_SLICES workloads
    point = preset("VARY_SLICES").points[slices - 1]
    for seed in range(5):
        g, requests = gen_instance(GenParams(seed=seed), point.slices, point.sfcs, point.nfs)
        needed = 0
        for kind in g.resource_kinds():
            total = sum(nf.demand.get(kind) for r in requests for s in r.sfcs for nf in s.nfs)
            capacities = sorted((n.capacity.get(kind) for n in g.nodes), reverse=True)
            covered = 0.0
            for count, capacity in enumerate(capacities, start=1):
                covered += capacity
                if covered >= total:
                    needed = max(needed, count)
                    break
        assert 6 <= needed <= 11, (slices, seed, needed)
