"""
Seeded random substrates and slice workloads.

All randomness flows from numpy SeedSequences derived from GenParams.seed, so a
seed reproduces every capacity, link weight and demand bit for bit.
"""

import networkx as nx
import numpy as np

from ..models import (
    GenParams,
    NFSpec,
    NodeCharacteristics,
    NodeKind,
    ResourceVector,
    SFCSpec,
    SliceRequest,
    SubstrateGraph,
    SubstrateLink,
    SubstrateNode,
)
from ..utils import logger
from ..utils.errors import GenerationFailed

SUBSTRATE_STREAM = 0
REQUEST_STREAM = 1

SECURITY_LEVELS = (0, 3)
IAAS_IDS = (1, 8)


def _draw(rng: np.random.Generator, interval: tuple[int, int], size=None):
    lo, hi = interval
    return rng.integers(lo, hi + 1, size=size)


def gen_substrate(params: GenParams) -> SubstrateGraph:
    """
    Random connected substrate: hosts H00.., connectors R00.. on a G(n, p) topology.

    Disconnected draws are retried with sub-seeds (seed, 0, attempt).

    Raises:
        GenerationFailed: if no connected topology appears within max_attempts.
    """
    n = params.n_hosts + params.n_connectors
    width = max(2, len(str(n - 1)))
    kinds = params.resource_kinds

    for attempt in range(params.max_attempts):
        rng = np.random.default_rng(np.random.SeedSequence([params.seed, SUBSTRATE_STREAM, attempt]))
        topology = nx.gnp_random_graph(n, params.connectivity, seed=int(rng.integers(2**32)))
        if not nx.is_connected(topology):
            logger.debug(f"Seed {params.seed}: attempt {attempt} disconnected, retrying")
            continue

        ids = [f"H{i:0{width}d}" for i in range(params.n_hosts)]
        ids += [f"R{i:0{width}d}" for i in range(params.n_connectors)]
        capacities = _draw(rng, params.host_capacity, size=(params.n_hosts, len(kinds)))
        security = _draw(rng, SECURITY_LEVELS, size=params.n_hosts)
        iaas = _draw(rng, IAAS_IDS, size=params.n_hosts)

        nodes = []
        for i, node_id in enumerate(ids):
            if i < params.n_hosts:
                nodes.append(SubstrateNode(
                    id=node_id,
                    kind=NodeKind.HOST,
                    capacity=ResourceVector({k: float(c) for k, c in zip(kinds, capacities[i])}),
                    characteristics=NodeCharacteristics(security_level=int(security[i]), iaas_id=int(iaas[i])),
                ))
            else:
                nodes.append(SubstrateNode(id=node_id, kind=NodeKind.CONNECTOR, capacity=ResourceVector.zeros(kinds)))

        edges = sorted(topology.edges())
        bandwidths = _draw(rng, params.link_bandwidth, size=len(edges))
        latencies = _draw(rng, params.link_latency, size=len(edges))
        links = tuple(
            SubstrateLink(endpoints=(ids[u], ids[v]), bandwidth_capacity=float(b), latency=float(l))
            for (u, v), b, l in zip(edges, bandwidths, latencies)
        )
        return SubstrateGraph(nodes=tuple(nodes), links=links)

    raise GenerationFailed(
        f"no connected topology for seed {params.seed} after {params.max_attempts} attempts "
        f"(n={n}, p={params.connectivity})"
    )


def gen_requests(n_slices: int, n_sfcs_per_slice: int, n_nfs_per_sfc: int, params: GenParams) -> list[SliceRequest]:
    """
    Random slice requests with UNRESTRICTED NFs.

    NF demands (per resource kind), hop bandwidths and latency budgets are
    drawn uniformly from params.demand.
    """
    if min(n_slices, n_sfcs_per_slice, n_nfs_per_sfc) < 1:
        raise ValueError("slice, SFC and NF counts must be at least 1")

    rng = np.random.default_rng(np.random.SeedSequence([params.seed, REQUEST_STREAM]))
    kinds = params.resource_kinds
    requests = []
    for s in range(1, n_slices + 1):
        sfcs = []
        for f in range(1, n_sfcs_per_slice + 1):
            demands = _draw(rng, params.demand, size=(n_nfs_per_sfc, len(kinds)))
            nfs = tuple(
                NFSpec(id=f"n{j + 1}", demand=ResourceVector({k: float(d) for k, d in zip(kinds, demands[j])}))
                for j in range(n_nfs_per_sfc)
            )
            bandwidth, budget = _draw(rng, params.demand, size=2)
            sfcs.append(SFCSpec(id=f"f{f}", nfs=nfs, latency_budget=float(budget), hop_bandwidth=float(bandwidth)))
        requests.append(SliceRequest(slice_id=f"s{s}", sfcs=tuple(sfcs)))
    return requests


def gen_instance(params: GenParams, n_slices: int, n_sfcs_per_slice: int,
                 n_nfs_per_sfc: int) -> tuple[SubstrateGraph, list[SliceRequest]]:
    return gen_substrate(params), gen_requests(n_slices, n_sfcs_per_slice, n_nfs_per_sfc, params)
