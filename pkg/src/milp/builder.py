"""
MILP construction for the slice placement problem.

The model minimizes the number of active nodes. Binary variables decide NF
placement (Y), node activation (rho) and the node pair each virtual link is
mapped to (Z); continuous variables carry per-hop latency budgets and the
big-M linearizations of the latency and bandwidth products. The per-hop
bandwidth demand is folded into the constant w of its SFC.
"""

import math
from typing import Sequence

from ..models import BuildConfig, PairMode, SliceRequest, SubstrateGraph
from ..network.instance import ChainHop, PlacementInstance, Stage
from ..network.topology import PairMetrics, eligible_pairs
from ..utils import logger
from ..utils.errors import ModelTooLarge
from .model import FamilyTag, MilpModel, Relation, VarFamily, VariableIndex, VarKind


def _finite_max(values) -> float:
    return max((value for value in values if math.isfinite(value)), default=0.0)


def _hop_bandwidth_total(requests: Sequence[SliceRequest], pin_endpoints: bool) -> float:
    total = 0.0
    for request in requests:
        for sfc in request.sfcs:
            hops = len(sfc.nfs) - 1
            if pin_endpoints:
                hops += (sfc.ingress_node is not None) + (sfc.egress_node is not None)
            total += hops * sfc.hop_bandwidth
    return total


def _big_m(pairs: dict[tuple[str, str], PairMetrics], requests: Sequence[SliceRequest],
           pin_endpoints: bool) -> float:
    budgets = max((sfc.latency_budget for request in requests for sfc in request.sfcs), default=0.0)
    return 2.0 * max(
        budgets,
        _finite_max(metrics.latency for metrics in pairs.values()),
        _hop_bandwidth_total(requests, pin_endpoints),
        _finite_max(metrics.bandwidth for metrics in pairs.values()),
    )


def big_m(graph: SubstrateGraph, requests: Sequence[SliceRequest],
          mode: PairMode = PairMode.DIRECT, pin_endpoints: bool = False) -> float:
    """
    Instance-scaled big-M constant.

    Twice the largest of: any SFC latency budget, any finite pair latency, the
    total hop bandwidth over all virtual links, any finite pair bandwidth.
    """
    return _big_m(eligible_pairs(graph, mode), requests, pin_endpoints)


def _name(family: VarFamily, *parts: str) -> str:
    return f"{family.value}[{','.join(parts)}]"


def _hop_pairs(instance: PlacementInstance, hop: ChainHop) -> list[tuple[str, str]]:
    sources = instance.stage_candidates(hop.source)
    targets = instance.stage_candidates(hop.target)
    return [(u, v) for u in sources for v in targets if (u, v) in instance.pairs]


def _variable_count(instance: PlacementInstance, hop_pairs: list[list[tuple[str, str]]]) -> int:
    return (
        len(instance.node_ids)
        + sum(len(slot.candidates) for slot in instance.slots)
        + len(instance.hops)
        + 3 * sum(len(pairs) for pairs in hop_pairs)
    )


def build_model(
    graph: SubstrateGraph,
    requests: Sequence[SliceRequest],
    config: BuildConfig | None = None,
) -> tuple[MilpModel, VariableIndex]:
    """
    Build the placement MILP for validated inputs.

    Variables are created in a fixed order: rho per node, then per chain the
    Y variables of its NFs followed by, per hop, phiL and the (Z, phiLuv,
    phiBuv) triple of every eligible pair. Node ids are visited in sorted order.

    Raises:
        EmptyAuthorizedSet: if some NF has no authorized host.
        ModelTooLarge: if the variable count exceeds config.max_variables.
    """
    config = config or BuildConfig()
    instance = PlacementInstance.build(graph, requests, config)
    hop_pairs = [_hop_pairs(instance, hop) for hop in instance.hops]

    count = _variable_count(instance, hop_pairs)
    if count > config.max_variables:
        raise ModelTooLarge(f"{count} variables exceed the ceiling of {config.max_variables}")

    M = _big_m(instance.pairs, requests, config.pin_endpoints) * config.big_m_factor
    model = MilpModel(big_m=M)
    index = VariableIndex()

    def add(family: VarFamily, key, kind: VarKind, upper: float | None = None) -> int:
        name = _name(family, *key) if isinstance(key, tuple) else _name(family, key)
        var_id = model.add_variable(name, kind, upper=upper)
        index.register(var_id, name, family, key)
        return var_id

    for node_id in instance.node_ids:
        add(VarFamily.RHO, node_id, VarKind.BINARY)
    model.objective = [(1.0, index.rho[node_id]) for node_id in instance.node_ids]

    # Y/Z ids per slot and per hop, in chain order
    slot_y: dict[int, dict[str, int]] = {}
    hop_vars: list[tuple[int, list[tuple[str, str, int, int, int]]]] = []
    hop_iter = iter(zip(instance.hops, hop_pairs))
    for chain in instance.chains:
        for stage in chain.stages:
            if stage.slot is None:
                continue
            slot = instance.slots[stage.slot]
            slot_y[slot.index] = {
                v: add(VarFamily.Y, (slot.slice_id, slot.sfc_id, slot.nf_id, v), VarKind.BINARY)
                for v in slot.candidates
            }
        for _ in chain.hops:
            hop, pairs = next(hop_iter)
            key = (chain.slice_id, chain.sfc_id, hop.label)
            index.hop_sources[key] = hop.source.label
            phi_l = add(VarFamily.PHI_L, key, VarKind.CONTINUOUS, upper=chain.latency_budget)
            triples = []
            for u, v in pairs:
                pair = key + (u, v)
                z = add(VarFamily.Z, pair, VarKind.BINARY)
                phi_luv = add(VarFamily.PHI_LUV, pair, VarKind.CONTINUOUS)
                phi_buv = add(VarFamily.PHI_BUV, pair, VarKind.CONTINUOUS)
                triples.append((u, v, z, phi_luv, phi_buv))
            hop_vars.append((phi_l, triples))

    def y_term(stage: Stage, node_id: str) -> int | None:
        # Anchors are fixed: their Y is the constant 1
        return None if stage.anchor is not None else slot_y[stage.slot][node_id]

    # Placement and activation
    for slot in instance.slots:
        ys = slot_y[slot.index]
        model.add_constraint([(1, y) for y in ys.values()], Relation.EQ, 1, FamilyTag.PLACEMENT)
    for slot in instance.slots:
        for v, y in slot_y[slot.index].items():
            model.add_constraint([(1, index.rho[v]), (-1, y)], Relation.GE, 0, FamilyTag.NODE_ACTIVE)

    # Node capacity per resource kind
    for node_id in instance.node_ids:
        for r, kind in enumerate(instance.kinds):
            terms = [
                (slot.demand[r], slot_y[slot.index][node_id])
                for slot in instance.slots
                if node_id in slot_y[slot.index] and slot.demand[r] != 0
            ]
            if terms:
                model.add_constraint(terms, Relation.LE, instance.capacity[node_id][r], FamilyTag.RESOURCE)

    # Link arrangement
    for hop, (phi_l, triples) in zip(instance.hops, hop_vars):
        model.add_constraint([(1, z) for _, _, z, _, _ in triples], Relation.EQ, 1, FamilyTag.LINK_ONEHOT)
    for hop, (phi_l, triples) in zip(instance.hops, hop_vars):
        for u, v, z, _, _ in triples:
            y_u = y_term(hop.source, u)
            y_v = y_term(hop.target, v)
            for y in (y_u, y_v):
                if y is None:
                    model.add_constraint([(1, z)], Relation.LE, 1, FamilyTag.LINK_COUPLING)
                else:
                    model.add_constraint([(1, z), (-1, y)], Relation.LE, 0, FamilyTag.LINK_COUPLING)
            fixed = [y for y in (y_u, y_v) if y is not None]
            rhs = -1 + (2 - len(fixed))
            model.add_constraint([(1, z)] + [(-1, y) for y in fixed], Relation.GE, rhs, FamilyTag.LINK_COUPLING)

    # Latency
    offset = 0
    for chain in instance.chains:
        phis = [phi_l for phi_l, _ in hop_vars[offset:offset + len(chain.hops)]]
        offset += len(chain.hops)
        if phis:
            model.add_constraint([(1, phi) for phi in phis], Relation.LE, chain.latency_budget,
                                 FamilyTag.LATENCY_BUDGET)
    for hop, (phi_l, triples) in zip(instance.hops, hop_vars):
        for u, v, z, phi_luv, _ in triples:
            model.add_constraint([(1, phi_luv), (-1, phi_l), (M, z)], Relation.LE, M, FamilyTag.LATENCY_LINEARIZATION)
            model.add_constraint([(1, phi_l), (-1, phi_luv), (M, z)], Relation.LE, M, FamilyTag.LATENCY_LINEARIZATION)
    for hop, (phi_l, triples) in zip(instance.hops, hop_vars):
        for u, v, z, phi_luv, _ in triples:
            latency = instance.pairs[(u, v)].latency
            model.add_constraint([(1, phi_luv), (-M, z)], Relation.GE, latency - M, FamilyTag.LATENCY_LINK)

    # Bandwidth
    # One capacity row per physical link; a mesh pair loads every link on its path
    link_loads: dict[tuple[str, str], list[int]] = {}
    for hop, (phi_l, triples) in zip(instance.hops, hop_vars):
        w = hop.bandwidth
        for u, v, z, _, phi_buv in triples:
            model.add_constraint([(1, phi_buv), (M, z)], Relation.LE, w + M, FamilyTag.BW_LINEARIZATION)
            model.add_constraint([(1, phi_buv), (-M, z)], Relation.GE, w - M, FamilyTag.BW_LINEARIZATION)
            model.add_constraint([(1, phi_buv), (-M, z)], Relation.LE, 0, FamilyTag.BW_LINEARIZATION)
            for key in instance.pairs[(u, v)].links:
                link_loads.setdefault(key, []).append(phi_buv)
    for key in sorted(link_loads):
        capacity = instance.link_capacity[key]
        model.add_constraint([(1, phi) for phi in link_loads[key]], Relation.LE, capacity, FamilyTag.BW_CAPACITY)

    logger.info(
        f"Built MILP: {len(model.variables)} variables, {len(model.constraints)} constraints, M={M:g}"
    )
    return model, index
