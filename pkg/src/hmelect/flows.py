"""Graph subroutines the control solvers reduce to.

Min-cost flow runs successive shortest augmenting paths with potentials and
big-integer arithmetic.  The degree-constrained edge problems (capacitated
b-edge matching / b-edge cover) are exact on *general* multigraphs, which a
plain flow gadget cannot deliver (odd cycles make the flow relaxation
half-integral), so they are backed by the exact ILP solver; the cover is the
classical capacity complement of the matching.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Hashable, Optional, Sequence

from hmelect import ilp

Node = Hashable


class FlowError(ValueError):
    """Raised for malformed networks or graphs."""


@dataclass(frozen=True)
class FlowNetwork:
    """Directed network with arc capacities/costs and a required flow value."""

    nodes: tuple[Node, ...]
    arcs: tuple[tuple[Node, Node, int, int], ...]  # (tail, head, capacity, cost)
    source: Node
    sink: Node
    required: int

    def __post_init__(self) -> None:
        nodeset = set(self.nodes)
        if self.source == self.sink:
            raise FlowError("source and sink must differ")
        if self.source not in nodeset or self.sink not in nodeset:
            raise FlowError("source/sink must be listed among the nodes")
        for tail, head, cap, cost in self.arcs:
            if tail not in nodeset or head not in nodeset:
                raise FlowError(f"arc ({tail!r}, {head!r}) uses an unknown node")
            if cap < 0:
                raise FlowError("arc capacities must be nonnegative")
            if cost < 0:
                raise FlowError("this solver requires nonnegative arc costs")
        if self.required < 0:
            raise FlowError("required flow value must be nonnegative")


@dataclass
class FlowResult:
    cost: int
    flows: dict[int, int]           # arc index -> flow
    augmentations: list[tuple[int, int]]  # (amount, unit path cost), audit trail


def min_cost_flow(network: FlowNetwork) -> Optional[FlowResult]:
    """Minimum-cost integral flow of the required value, or None if the
    network cannot carry that much flow.

    The witness is re-verified (conservation, capacities, value) before
    being returned; per-augmentation path costs are recorded and are
    nondecreasing.
    """
    index = {v: i for i, v in enumerate(network.nodes)}
    n = len(network.nodes)
    # Residual arcs as parallel arrays; arc 2k is forward for input arc k.
    to: list[int] = []
    cap: list[int] = []
    cost: list[int] = []
    adj: list[list[int]] = [[] for _ in range(n)]

    def add(u: int, v: int, c: int, w: int) -> None:
        adj[u].append(len(to))
        to.append(v)
        cap.append(c)
        cost.append(w)
        adj[v].append(len(to))
        to.append(u)
        cap.append(0)
        cost.append(-w)

    for tail, head, c, w in network.arcs:
        add(index[tail], index[head], c, w)

    s, t = index[network.source], index[network.sink]
    need = network.required
    potential = [0] * n
    total_cost = 0
    audit: list[tuple[int, int]] = []
    INF = None
    while need > 0:
        dist: list[Optional[int]] = [INF] * n
        dist[s] = 0
        prev_arc = [-1] * n
        heap = [(0, s)]
        while heap:
            d, u = heapq.heappop(heap)
            if dist[u] is None or d > dist[u]:
                continue
            for a in adj[u]:
                if cap[a] <= 0:
                    continue
                v = to[a]
                nd = d + cost[a] + potential[u] - potential[v]
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    prev_arc[v] = a
                    heapq.heappush(heap, (nd, v))
        if dist[t] is None:
            return None
        for v in range(n):
            if dist[v] is not None:
                potential[v] += dist[v]
        # Bottleneck along the shortest path.
        amount = need
        v = t
        while v != s:
            a = prev_arc[v]
            amount = min(amount, cap[a])
            v = to[a ^ 1]
        path_cost = 0
        v = t
        while v != s:
            a = prev_arc[v]
            cap[a] -= amount
            cap[a ^ 1] += amount
            path_cost += cost[a]
            v = to[a ^ 1]
        total_cost += amount * path_cost
        audit.append((amount, path_cost))
        need -= amount

    flows = {k: cap[2 * k + 1] for k in range(len(network.arcs))}
    _check_flow(network, flows, total_cost)
    assert all(audit[i][1] <= audit[i + 1][1] for i in range(len(audit) - 1))
    return FlowResult(total_cost, flows, audit)


def _check_flow(network: FlowNetwork, flows: dict[int, int], claimed_cost: int) -> None:
    balance: dict[Node, int] = {v: 0 for v in network.nodes}
    cost = 0
    for k, (tail, head, capacity, unit_cost) in enumerate(network.arcs):
        f = flows[k]
        if not (0 <= f <= capacity):
            raise AssertionError("flow violates a capacity")
        balance[tail] -= f
        balance[head] += f
        cost += f * unit_cost
    for v in network.nodes:
        if v in (network.source, network.sink):
            continue
        if balance[v] != 0:
            raise AssertionError(f"flow not conserved at {v!r}")
    if balance[network.sink] != network.required or cost != claimed_cost:
        raise AssertionError("flow value or cost mismatch")


# ---------------------------------------------------------------------------
# Capacitated b-edge matching and b-edge cover
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CapacitatedMultigraph:
    """Undirected multigraph; parallel edges appear as separate entries."""

    b: tuple[tuple[Node, int], ...]                 # per-vertex bound/demand
    edges: tuple[tuple[Node, Node, int], ...]       # (u, v, capacity)

    def __post_init__(self) -> None:
        vertices = {v for v, _ in self.b}
        if len(vertices) != len(self.b):
            raise FlowError("duplicate vertex in b-values")
        for u, v, capacity in self.edges:
            if u == v:
                raise FlowError("self-loops are not supported")
            if u not in vertices or v not in vertices:
                raise FlowError(f"edge ({u!r}, {v!r}) uses an unknown vertex")
            if capacity < 0:
                raise FlowError("edge capacities must be nonnegative")

    def b_of(self) -> dict[Node, int]:
        return dict(self.b)


def max_b_matching(graph: CapacitatedMultigraph) -> tuple[int, dict[int, int]]:
    """Max total edge multiplicity with every vertex's incidence <= b(v).

    b(v) may be any integer; negative values make the vertex unusable (its
    incident edges are forced to zero), matching the all-or-nothing reading
    used by the control reductions.
    """
    bmap = graph.b_of()
    nedges = len(graph.edges)
    if nedges == 0:
        return 0, {}
    variables = []
    for k, (u, v, capacity) in enumerate(graph.edges):
        hi = min(capacity, max(bmap[u], 0), max(bmap[v], 0))
        variables.append((f"e{k}", 0, hi))
    constraints = []
    for vertex, bound in graph.b:
        coeffs = tuple(
            1 if vertex in (u, v) else 0 for u, v, _ in graph.edges
        )
        if any(coeffs):
            constraints.append(ilp.Constraint(coeffs, ilp.LE, max(bound, 0)))
    objective = (tuple([1] * nedges), "max")
    inst = ilp.ILPInstance(tuple(variables), tuple(constraints), objective)
    res = ilp.solve(inst)
    assert res.status == "optimal"
    mult = {k: x for k, x in enumerate(res.assignment)}
    _check_matching(graph, mult)
    return res.objective_value, mult


def _check_matching(graph: CapacitatedMultigraph, mult: dict[int, int]) -> None:
    bmap = graph.b_of()
    load: dict[Node, int] = {v: 0 for v in bmap}
    for k, (u, v, capacity) in enumerate(graph.edges):
        x = mult.get(k, 0)
        if not (0 <= x <= capacity):
            raise AssertionError("matching violates an edge capacity")
        load[u] += x
        load[v] += x
    for v, bound in bmap.items():
        if load[v] > max(bound, 0):
            raise AssertionError(f"matching overloads vertex {v!r}")


def min_b_cover(graph: CapacitatedMultigraph) -> Optional[tuple[int, dict[int, int]]]:
    """Min total edge multiplicity with every vertex's incidence >= b(v).

    Solved through the classical complement: x(e) = cap(e) - x'(e) turns the
    cover into a b'-matching with b'(v) = (incident capacity) - b(v).
    Returns None when the capacities cannot meet some demand.
    """
    bmap = graph.b_of()
    incident_cap: dict[Node, int] = {v: 0 for v in bmap}
    for u, v, capacity in graph.edges:
        incident_cap[u] += capacity
        incident_cap[v] += capacity
    complement_b = []
    for vertex, bound in graph.b:
        slack = incident_cap[vertex] - max(bound, 0)
        if slack < 0:
            return None
        complement_b.append((vertex, slack))
    complement = CapacitatedMultigraph(tuple(complement_b), graph.edges)
    match_value, match = max_b_matching(complement)
    total_cap = sum(capacity for _, _, capacity in graph.edges)
    cover = {
        k: capacity - match.get(k, 0)
        for k, (_, _, capacity) in enumerate(graph.edges)
    }
    value = total_cap - match_value
    load: dict[Node, int] = {v: 0 for v in bmap}
    for k, (u, v, _) in enumerate(graph.edges):
        load[u] += cover[k]
        load[v] += cover[k]
    for vertex, bound in graph.b:
        if load[vertex] < bound:
            # The complement maximum leaves some demand unmet, so no cover exists.
            return None
    return value, cover
