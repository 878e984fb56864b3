"""
Exact depth-first branch-and-bound over NF assignments.

The only decisions that matter to the model are the Y assignments: once every
NF has a node, activation, routing and per-hop budgets follow. The search
assigns NFs in chain order, keeps residual node capacities, physical link
bandwidths and per-chain latency incrementally, and prunes with an active-node
lower bound.

Before searching, a packing heuristic fills the smallest host sets whose
aggregate capacity covers the workload. If it reaches the covering bound the
incumbent is optimal and the search is skipped. A second, lexicographically
ordered pass picks the smallest assignment vector among the optima.
"""

import math
import time
from enum import Enum
from itertools import accumulate
from typing import Callable, Iterable, Optional, Sequence

from ..models import BuildConfig, PlacementSolution, SliceRequest, SolveStatus, SolverLimits, SubstrateGraph
from ..network.instance import PlacementInstance
from ..network.topology import EPSILON, pair_key
from ..utils import logger
from ..utils.errors import EmptyAuthorizedSet

CLOCK_CHECK_INTERVAL = 1024
COVER_NODE_LIMIT = 20_000
COVER_COLLECT = 32
SETS_PER_SIZE = 4


class PruneRule(str, Enum):
    """Partial-state checks the search applies before reaching a leaf."""
    CAPACITY = "capacity"
    LATENCY = "latency"
    BANDWIDTH = "bandwidth"
    ACTIVE_BOUND = "active_bound"
    SYMMETRY = "symmetry"


PATH_RULES = frozenset({PruneRule.CAPACITY, PruneRule.LATENCY, PruneRule.BANDWIDTH})


class _BudgetExhausted(Exception):
    pass


class _Converged(Exception):
    pass


def _interchangeable_hosts(instance: PlacementInstance) -> dict[str, str]:
    """
    Map hosts to the smallest host they can be swapped with.

    Two hosts are interchangeable when they have equal capacity, appear in the
    same candidate sets, anchor no chain, and swapping them maps every pair,
    route and physical link onto one with the same latency and capacity.
    """
    anchors = {stage.anchor for chain in instance.chains for stage in chain.stages if stage.anchor is not None}
    membership: dict[str, list[int]] = {v: [] for v in instance.node_ids}
    for slot in instance.slots:
        for v in slot.candidates:
            membership[v].append(slot.index)

    groups: dict[tuple, list[str]] = {}
    for v in instance.node_ids:
        if v not in anchors and membership[v]:
            groups.setdefault((instance.capacity[v], tuple(membership[v])), []).append(v)

    routes: dict[str, list[tuple[str, str]]] = {v: [] for v in instance.node_ids}
    for key, metrics in instance.pairs.items():
        for node in set(metrics.path) | set(key):
            routes[node].append(key)
    links: dict[str, list[tuple[str, str]]] = {v: [] for v in instance.node_ids}
    for key in instance.link_capacity:
        for node in key:
            links[node].append(key)

    def swappable(u: str, v: str) -> bool:
        def swap(x: str) -> str:
            return v if x == u else u if x == v else x

        for key in routes[u] + routes[v]:
            metrics = instance.pairs[key]
            image = instance.pairs.get((swap(key[0]), swap(key[1])))
            if (image is None or image.latency != metrics.latency
                    or image.path != tuple(swap(x) for x in metrics.path)):
                return False
        for key in links[u] + links[v]:
            if instance.link_capacity.get(pair_key(swap(key[0]), swap(key[1]))) != instance.link_capacity[key]:
                return False
        return True

    twins: dict[str, str] = {}
    for members in groups.values():
        for i, v in enumerate(members):
            if v in twins:
                continue
            twins[v] = v
            for w in members[i + 1:]:
                if w not in twins and swappable(v, w):
                    twins[w] = v
    return twins


class _Search:
    """One DFS over a flattened instance. Mutable; discarded after use."""

    def __init__(self, instance: PlacementInstance, rules: frozenset[PruneRule],
                 deadline: float, node_budget: int):
        self.instance = instance
        self.rules = rules
        self.deadline = deadline
        self.node_budget = node_budget
        self.explored = 0

        slots = instance.slots
        self.n = len(slots)
        self.kinds = len(instance.kinds)
        self.residual = {v: list(instance.capacity[v]) for v in instance.node_ids}
        self.bandwidth = dict(instance.link_capacity)
        self.latency_used = [0.0] * len(instance.chains)
        self.load = {v: 0 for v in instance.node_ids}
        self.active = 0
        self.remaining = [sum(slot.demand[r] for slot in slots) for r in range(self.kinds)]
        self.vector: list[Optional[str]] = [None] * self.n
        self.hosts = sorted({v for slot in slots for v in slot.candidates})
        self.by_capacity = [
            sorted(self.hosts, key=lambda v, r=r: -instance.capacity[v][r]) for r in range(self.kinds)
        ]
        # Componentwise smallest demand among slots j..n-1
        self.smallest = [[math.inf] * self.kinds for _ in range(self.n + 1)]
        for j in range(self.n - 1, -1, -1):
            self.smallest[j] = [min(a, b) for a, b in zip(self.smallest[j + 1], slots[j].demand)]

        # A hop is charged once both its stages have a node
        self.touching: list[list[int]] = [[] for _ in slots]
        for h, hop in enumerate(instance.hops):
            for stage in (hop.source, hop.target):
                if stage.slot is not None:
                    self.touching[stage.slot].append(h)
        self.charged: list = [None] * len(instance.hops)
        self.twins = _interchangeable_hosts(instance) if PruneRule.SYMMETRY in rules else {}

        self.best: float = math.inf
        self.best_vector: Optional[tuple[str, ...]] = None
        self.stop_at: float = -math.inf

    def _tick(self):
        self.explored += 1
        if self.explored > self.node_budget:
            raise _BudgetExhausted()
        if self.explored % CLOCK_CHECK_INTERVAL == 0 and time.perf_counter() > self.deadline:
            raise _BudgetExhausted()

    def _charge(self, h: int) -> bool:
        hop = self.instance.hops[h]
        u = self.instance.stage_node(hop.source, self.vector)
        x = self.instance.stage_node(hop.target, self.vector)
        metrics = self.instance.pairs.get((u, x))
        if metrics is None:
            return False
        if PruneRule.BANDWIDTH in self.rules and any(
                self.bandwidth[key] < hop.bandwidth - EPSILON for key in metrics.links):
            return False
        for key in metrics.links:
            self.bandwidth[key] -= hop.bandwidth
        self.latency_used[hop.chain] += metrics.latency
        self.charged[h] = metrics
        return True

    def _discharge(self, h: int):
        metrics = self.charged[h]
        if metrics is None:
            return
        hop = self.instance.hops[h]
        for key in metrics.links:
            self.bandwidth[key] += hop.bandwidth
        self.latency_used[hop.chain] -= metrics.latency
        self.charged[h] = None

    def _place(self, j: int, v: str) -> bool:
        """Tentatively assign slot j to v; leaves the state untouched if a check fails."""
        slot = self.instance.slots[j]
        residual = self.residual[v]
        if PruneRule.CAPACITY in self.rules:
            for r, demand in enumerate(slot.demand):
                if demand > residual[r] + EPSILON:
                    return False

        self.vector[j] = v
        charged = []
        for h in self.touching[j]:
            hop = self.instance.hops[h]
            other = hop.target if hop.source.slot == j else hop.source
            if self.instance.stage_node(other, self.vector) is None:
                continue
            if not self._charge(h):
                break
            charged.append(h)
        else:
            chain = self.instance.chains[slot.chain]
            if not (PruneRule.LATENCY in self.rules
                    and self.latency_used[slot.chain] > chain.latency_budget + EPSILON):
                for r, demand in enumerate(slot.demand):
                    residual[r] -= demand
                    self.remaining[r] -= demand
                if self.load[v] == 0:
                    self.active += 1
                self.load[v] += 1
                return True

        for h in charged:
            self._discharge(h)
        self.vector[j] = None
        return False

    def _try(self, j: int, v: str) -> bool:
        self._tick()
        return self._place(j, v)

    def _unplace(self, j: int):
        v = self.vector[j]
        for h in self.touching[j]:
            self._discharge(h)
        residual = self.residual[v]
        for r, demand in enumerate(self.instance.slots[j].demand):
            residual[r] += demand
            self.remaining[r] += demand
        self.load[v] -= 1
        if self.load[v] == 0:
            self.active -= 1
        self.vector[j] = None

    def lower_bound(self, j: int) -> float:
        """
        Admissible bound on the active-node count of any completion.

        Per resource kind, remaining demand beyond what active hosts can still
        absorb must be covered by idle hosts, largest first. Active hosts too
        full for the smallest remaining NF absorb nothing.
        """
        if PruneRule.ACTIVE_BOUND not in self.rules or j >= self.n:
            return self.active
        extra = 0
        if all(self.load[v] == 0 for v in self.instance.slots[j].candidates):
            extra = 1
        smallest = self.smallest[j]
        usable = [
            self.residual[v] for v in self.hosts
            if self.load[v] > 0 and all(left >= need - EPSILON for left, need in zip(self.residual[v], smallest))
        ]
        for r in range(self.kinds):
            excess = self.remaining[r] - sum(left[r] for left in usable)
            if excess <= EPSILON:
                continue
            opened = 0
            for v in self.by_capacity[r]:
                if self.load[v] == 0:
                    excess -= self.instance.capacity[v][r]
                    opened += 1
                    if excess <= EPSILON:
                        break
            else:
                return math.inf
            extra = max(extra, opened)
        return self.active + extra

    def _feasible_leaf(self) -> bool:
        # Re-check from scratch what disabled rules skipped on the way down
        if self.rules >= PATH_RULES:
            return True
        return _complete_check(self.instance, self.vector)

    def _distinct(self, candidates: Iterable[str]) -> list[str]:
        """Drop idle candidates interchangeable with an idle one listed before them."""
        if not self.twins:
            return list(candidates)
        seen = set()
        kept = []
        for v in candidates:
            if self.load[v] == 0:
                twin = self.twins.get(v, v)
                if twin in seen:
                    continue
                seen.add(twin)
            kept.append(v)
        return kept

    def _order(self, j: int) -> list[str]:
        slot = self.instance.slots[j]
        previous = self.vector[j - 1] if j > 0 and self.instance.slots[j - 1].chain == slot.chain else None
        first = [previous] if previous in slot.candidates else []
        active = [v for v in slot.candidates if self.load[v] > 0 and v != previous]
        idle = [v for v in slot.candidates if self.load[v] == 0 and v != previous]
        return self._distinct(first + active + idle)

    def improve(self, j: int = 0) -> None:
        """Find assignments with strictly fewer active nodes than the incumbent."""
        self._tick()
        if j == self.n:
            if self.active < self.best and self._feasible_leaf():
                self.best = self.active
                self.best_vector = tuple(self.vector)
                logger.debug(f"Incumbent {self.best} after {self.explored} nodes")
                if self.best <= self.stop_at:
                    raise _Converged()
            return
        for v in self._order(j):
            if not self._place(j, v):
                continue
            if self.lower_bound(j + 1) < self.best:
                self.improve(j + 1)
            self._unplace(j)

    def first_within(self, target: float, j: int = 0) -> bool:
        """Lexicographic DFS for the first assignment with at most `target` active nodes."""
        self._tick()
        if j == self.n:
            if self.active <= target and self._feasible_leaf():
                self.best = self.active
                self.best_vector = tuple(self.vector)
                return True
            return False
        for v in self._distinct(self.instance.slots[j].candidates):
            if not self._place(j, v):
                continue
            found = self.lower_bound(j + 1) <= target and self.first_within(target, j + 1)
            self._unplace(j)
            if found:
                return True
        return False

    def pack(self, hosts: Sequence[str]) -> Optional[tuple[str, ...]]:
        """
        Best-fit decreasing packing restricted to `hosts`.

        Chains go largest first, each onto a single host when one fits it,
        else NF by NF starting on the host of its predecessor. NFs left over
        get a slot by moving one NF out of the way.
        """
        instance = self.instance
        allowed = set(hosts)
        totals = [sum(instance.capacity[v][r] for v in hosts) for r in range(self.kinds)]
        weight = [1.0 / total if total > EPSILON else 0.0 for total in totals]

        def best_fit(options: Iterable[str], demand: Sequence[float]) -> list[str]:
            fitting = [
                v for v in options
                if all(d <= left + EPSILON for d, left in zip(demand, self.residual[v]))
            ]
            return sorted(fitting, key=lambda v: (
                self.load[v] == 0,
                sum((left - d) * w for left, d, w in zip(self.residual[v], demand, weight)),
                v,
            ))

        members = {
            chain.index: [stage.slot for stage in chain.stages if stage.slot is not None]
            for chain in instance.chains
        }
        need = {
            index: [sum(instance.slots[j].demand[r] for j in slots) for r in range(self.kinds)]
            for index, slots in members.items()
        }
        order = sorted(instance.chains, key=lambda chain: (
            -sum(d * w for d, w in zip(need[chain.index], weight)), chain.index
        ))

        stranded = []
        for chain in order:
            slots = members[chain.index]
            common = allowed.intersection(*(instance.slots[j].candidates for j in slots))
            if not self._place_together(slots, best_fit(common, need[chain.index])):
                stranded.extend(self._place_apart(slots, allowed, best_fit))
        for j in stranded:
            if not self._eject_into(j, allowed, best_fit):
                return None
        if None in self.vector or not _complete_check(instance, self.vector):
            return None
        return tuple(self.vector)

    def _place_together(self, slots: list[int], options: list[str]) -> bool:
        for v in options:
            placed = []
            for j in slots:
                if not self._try(j, v):
                    break
                placed.append(j)
            else:
                return True
            for j in reversed(placed):
                self._unplace(j)
        return False

    def _place_apart(self, slots: list[int], allowed: set[str], best_fit: Callable) -> list[int]:
        stranded = []
        previous = None
        for j in slots:
            slot = self.instance.slots[j]
            options = best_fit(allowed.intersection(slot.candidates), slot.demand)
            if previous in options:
                options.remove(previous)
                options.insert(0, previous)
            for v in options:
                if self._try(j, v):
                    previous = v
                    break
            else:
                stranded.append(j)
        return stranded

    def _eject_into(self, j: int, allowed: set[str], best_fit: Callable) -> bool:
        """Place slot j on a host after moving one of that host's NFs elsewhere."""
        slot = self.instance.slots[j]
        for v in sorted(allowed.intersection(slot.candidates)):
            for x in [k for k, host in enumerate(self.vector) if host == v]:
                moved = self.instance.slots[x]
                freed = [left + d for left, d in zip(self.residual[v], moved.demand)]
                if any(need > free + EPSILON for need, free in zip(slot.demand, freed)):
                    continue
                self._unplace(x)
                if self._try(j, v):
                    for w in best_fit(allowed.intersection(moved.candidates) - {v}, moved.demand):
                        if self._try(x, w):
                            return True
                    self._unplace(j)
                if not self._try(x, v):
                    return False
        return False


class _HostSets:
    """Host sets whose aggregate capacity covers the total demand in every kind."""

    def __init__(self, instance: PlacementInstance, hosts: Sequence[str]):
        self.instance = instance
        kinds = range(len(instance.kinds))
        self.demand = [sum(slot.demand[r] for slot in instance.slots) for r in kinds]
        self.kinds = [r for r in kinds if self.demand[r] > EPSILON]

        def share(v: str) -> float:
            return sum(instance.capacity[v][r] / self.demand[r] for r in self.kinds)

        self.order = sorted(hosts, key=lambda v: (-share(v), v))
        # top[i][r][m]: sum of the m largest kind-r capacities among order[i:]
        self.top = [
            {
                r: list(accumulate(sorted((instance.capacity[v][r] for v in self.order[i:]), reverse=True),
                                   initial=0.0))
                for r in self.kinds
            }
            for i in range(len(self.order) + 1)
        ]
        self.floor = max(
            (next((m for m, total in enumerate(self.top[0][r]) if total >= self.demand[r] - EPSILON),
                  len(self.order))
             for r in self.kinds),
            default=0,
        )
        self._cache: dict[int, tuple[list[tuple[str, ...]], bool]] = {}

    def of_size(self, size: int) -> tuple[list[tuple[str, ...]], bool]:
        """Up to SETS_PER_SIZE covering sets, roomiest first, and whether the enumeration was exhaustive."""
        if size in self._cache:
            return self._cache[size]
        capacity = self.instance.capacity
        order = self.order
        found: list[tuple[str, ...]] = []
        nodes = 0
        exhaustive = True

        def extend(i: int, chosen: list[str], sums: dict[int, float]) -> bool:
            nonlocal nodes, exhaustive
            nodes += 1
            if nodes > COVER_NODE_LIMIT:
                exhaustive = False
                return True
            m = size - len(chosen)
            if m == 0:
                if all(sums[r] >= self.demand[r] - EPSILON for r in self.kinds):
                    found.append(tuple(chosen))
                return len(found) >= COVER_COLLECT
            if len(order) - i < m:
                return False
            if any(sums[r] + self.top[i][r][m] < self.demand[r] - EPSILON for r in self.kinds):
                return False
            for k in range(i, len(order) - m + 1):
                v = order[k]
                chosen.append(v)
                stop = extend(k + 1, chosen, {r: sums[r] + capacity[v][r] for r in self.kinds})
                chosen.pop()
                if stop:
                    return True
            return False

        extend(0, [], {r: 0.0 for r in self.kinds})

        def slack(hosts: tuple[str, ...]) -> float:
            return min(
                (sum(capacity[v][r] for v in hosts) - self.demand[r]) / self.demand[r] for r in self.kinds
            ) if self.kinds else 0.0

        result = (sorted(found, key=lambda hosts: (-slack(hosts), hosts))[:SETS_PER_SIZE], exhaustive)
        self._cache[size] = result
        return result

    def bound(self) -> int:
        """Smallest set size not proven to fall short of the demand."""
        size = self.floor
        while size < len(self.order):
            sets, exhaustive = self.of_size(size)
            if sets or not exhaustive:
                break
            size += 1
        return size


def _incumbent(instance: PlacementInstance, cover: _HostSets, start: int, cutoff: float,
               deadline: float, node_budget: int) -> tuple[Optional[tuple[str, ...]], int, int]:
    """First heuristic packing below `cutoff`, trying covering sets from size `start` upward."""
    explored = 0
    for size in range(start, len(cover.order) + 1):
        sets, _ = cover.of_size(size)
        for hosts in sets:
            if time.perf_counter() > deadline or explored >= node_budget:
                return None, 0, explored
            packer = _Search(instance, PATH_RULES, deadline, node_budget - explored)
            try:
                vector = packer.pack(hosts)
            except _BudgetExhausted:
                return None, 0, explored + packer.explored
            explored += packer.explored
            if vector is not None and packer.active < cutoff:
                return vector, packer.active, explored
    return None, 0, explored


def _complete_check(instance: PlacementInstance, vector: Sequence[Optional[str]]) -> bool:
    """Full feasibility of a complete assignment vector."""
    use = {v: [0.0] * len(instance.kinds) for v in instance.node_ids}
    for slot, v in zip(instance.slots, vector):
        for r, demand in enumerate(slot.demand):
            use[v][r] += demand
    for v, amounts in use.items():
        if any(amount > capacity + EPSILON for amount, capacity in zip(amounts, instance.capacity[v])):
            return False

    latency = [0.0] * len(instance.chains)
    load: dict[tuple[str, str], float] = {}
    for hop in instance.hops:
        u = instance.stage_node(hop.source, vector)
        x = instance.stage_node(hop.target, vector)
        metrics = instance.pairs.get((u, x))
        if metrics is None:
            return False
        latency[hop.chain] += metrics.latency
        for key in metrics.links:
            load[key] = load.get(key, 0.0) + hop.bandwidth
    if any(used > chain.latency_budget + EPSILON for used, chain in zip(latency, instance.chains)):
        return False
    return all(amount <= instance.link_capacity.get(key, 0.0) + EPSILON for key, amount in load.items())


def _cheapest_route(instance: PlacementInstance, chain_index: int, min_bandwidth: bool) -> float:
    """Least total latency over the chain's stages, ignoring node capacities."""
    chain = instance.chains[chain_index]
    distance = {v: 0.0 for v in instance.stage_candidates(chain.stages[0])}
    for hop in chain.hops:
        step: dict[str, float] = {}
        for x in instance.stage_candidates(hop.target):
            best = math.inf
            for u, base in distance.items():
                metrics = instance.pairs.get((u, x))
                if metrics is None or (min_bandwidth and metrics.bandwidth < hop.bandwidth - EPSILON):
                    continue
                best = min(best, base + metrics.latency)
            if best < math.inf:
                step[x] = best
        distance = step
    return min(distance.values(), default=math.inf)


def diagnose(instance: PlacementInstance) -> list[str]:
    """Root causes of infeasibility that are visible without searching."""
    reasons = []
    for slot in instance.slots:
        fits = [
            v for v in slot.candidates
            if all(d <= c + EPSILON for d, c in zip(slot.demand, instance.capacity[v]))
        ]
        if not fits:
            reasons.append(f"capacity: NF {slot.slice_id}/{slot.sfc_id}/{slot.nf_id} fits on no authorized node")

    hosts = sorted({v for slot in instance.slots for v in slot.candidates})
    for r, kind in enumerate(instance.kinds):
        demand = sum(slot.demand[r] for slot in instance.slots)
        supply = sum(instance.capacity[v][r] for v in hosts)
        if demand > supply + EPSILON:
            reasons.append(f"capacity: total {kind} demand {demand:g} exceeds host capacity {supply:g}")

    for chain in instance.chains:
        where = f"{chain.slice_id}/{chain.sfc_id}"
        shortest = _cheapest_route(instance, chain.index, min_bandwidth=False)
        if shortest == math.inf:
            reasons.append(f"latency: SFC {where} has no eligible route between its authorized nodes")
        elif shortest > chain.latency_budget + EPSILON:
            reasons.append(f"latency: SFC {where} needs at least {shortest:g} ms, budget {chain.latency_budget:g} ms")
        elif _cheapest_route(instance, chain.index, min_bandwidth=True) > chain.latency_budget + EPSILON:
            reasons.append(f"bandwidth: SFC {where} has no route within budget offering {chain.bandwidth:g} Mbps per hop")
    return reasons


def solve_exact(
    graph: SubstrateGraph,
    requests: Sequence[SliceRequest],
    config: Optional[BuildConfig] = None,
    limits: Optional[SolverLimits] = None,
    disabled_rules: Iterable[PruneRule] = (),
) -> PlacementSolution:
    """
    Minimize the number of active nodes.

    Returns an OPTIMAL solution (lexicographically smallest assignment vector
    among the optima; a diagnostics entry says so when the tie-break budget
    ran out first), INFEASIBLE with diagnostics, or TIMEOUT carrying the best
    incumbent if one was found.
    """
    config = config or BuildConfig()
    limits = limits or SolverLimits()
    started = time.perf_counter()
    deadline = started + limits.time_budget

    def elapsed() -> float:
        return time.perf_counter() - started

    try:
        instance = PlacementInstance.build(graph, requests, config)
    except EmptyAuthorizedSet as e:
        logger.warning(f"Infeasible: {e}")
        return PlacementSolution(status=SolveStatus.INFEASIBLE, diagnostics=(f"EmptyAuthorizedSet: {e}",),
                                 solve_time_s=elapsed())

    reasons = diagnose(instance)
    if reasons:
        logger.info(f"Infeasible before search: {reasons[0]}")
        return PlacementSolution(status=SolveStatus.INFEASIBLE, diagnostics=tuple(reasons), solve_time_s=elapsed())

    rules = frozenset(PruneRule) - frozenset(disabled_rules)
    cutoff = math.inf if limits.objective_cutoff is None else limits.objective_cutoff
    heuristic_nodes = 0
    incumbent: Optional[tuple[str, ...]] = None
    floor = 0
    if instance.size:
        root = _Search(instance, rules, deadline, limits.node_budget)
        cover = _HostSets(instance, root.hosts)
        start = cover.bound()
        if PruneRule.ACTIVE_BOUND in rules:
            floor = max(root.lower_bound(0), start)
        incumbent, value, heuristic_nodes = _incumbent(
            instance, cover, start, cutoff, deadline, limits.node_budget
        )
        if incumbent is not None:
            logger.debug(f"Packing incumbent {value} active node(s), covering bound {floor}")
            cutoff = value

    search = _Search(instance, rules, deadline, max(limits.node_budget - heuristic_nodes, 0))
    search.best = cutoff
    search.best_vector = incumbent
    search.stop_at = floor

    timed_out = False
    if search.best > floor:
        try:
            search.improve()
        except _Converged:
            pass
        except _BudgetExhausted:
            timed_out = True

    explored = heuristic_nodes + search.explored
    if search.best_vector is None:
        if timed_out:
            logger.warning(f"Search budget exhausted without a placement after {explored} nodes")
            return PlacementSolution(status=SolveStatus.TIMEOUT, explored_nodes=explored, solve_time_s=elapsed(),
                                     diagnostics=("budget exhausted before any feasible placement",))
        reason = "search exhausted: no assignment satisfies all constraints jointly"
        if limits.objective_cutoff is not None:
            reason = f"search exhausted: no placement with fewer than {limits.objective_cutoff} active nodes"
        logger.info(f"Infeasible after {explored} nodes")
        return PlacementSolution(status=SolveStatus.INFEASIBLE, explored_nodes=explored, solve_time_s=elapsed(),
                                 diagnostics=(reason,))

    vector = search.best_vector
    if timed_out:
        logger.warning(f"Search budget exhausted; returning incumbent with {search.best} active nodes")
        return instance.to_solution(vector, SolveStatus.TIMEOUT, explored_nodes=explored, solve_time_s=elapsed())

    notes: tuple[str, ...] = ()
    if instance.size and limits.tie_break_node_budget == 0:
        notes = ("tie-break skipped: optimal, but not necessarily the lexicographically smallest optimum",)
    elif instance.size:
        tie_break = _Search(instance, rules, deadline, limits.tie_break_node_budget)
        try:
            if tie_break.first_within(search.best):
                vector = tie_break.best_vector
        except _BudgetExhausted:
            logger.warning("Tie-break budget exhausted; keeping the first optimum found")
            notes = (
                f"tie-break incomplete after {tie_break.explored} nodes: optimal, "
                "but not necessarily the lexicographically smallest optimum",
            )
        explored += tie_break.explored

    solution = instance.to_solution(vector, SolveStatus.OPTIMAL, explored_nodes=explored,
                                    solve_time_s=elapsed(), diagnostics=notes)
    logger.info(f"Solved: {solution.objective} active node(s), {explored} search nodes, {solution.solve_time_s:.3f}s")
    return solution
