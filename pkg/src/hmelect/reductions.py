"""Executable instance transformations for the winner-hardness chain.

The chain goes: compare-minimal-satisfying-assignments (two 3cnf formulas)
-> compare minimum-weight vertex covers -> membership in a minimum-weight
vertex cover -> membership of the entering arcs in a minimum-weight feedback
arc set -> Kemeny winner of the election realizing the digraph as its
weighted majority graph.  Every transformation is a total function on its
instance type; answer preservation is checked end to end at desk scale by
:func:`verify_chain` with exact solvers at every link.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from hmelect.control import ApprovalElection
from hmelect.core import HMProfile, Vote
from hmelect.hardwinners import (
    RelationVote,
    _best_order,
    kemeny_winner,
    pairwise_tallies,
    profile_relation_entries,
    BINARY_RELATION,
    PARTIAL_ORDER,
)


class ReductionError(ValueError):
    """Raised for malformed formulas, graphs, or inapplicable inputs."""


# ---------------------------------------------------------------------------
# 3cnf formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CNF3Formula:
    """3cnf over variables 1..n; literals are signed 1-based indices.

    Shorter clauses are padded by repeating their first literal.
    """

    n: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ReductionError("need at least one variable")
        fixed = []
        for clause in self.clauses:
            lits = tuple(clause)
            if not 1 <= len(lits) <= 3:
                raise ReductionError(f"clause {lits!r} is not a 3cnf clause")
            while len(lits) < 3:
                lits = lits + (lits[0],)
            for lit in lits:
                if lit == 0 or abs(lit) > self.n:
                    raise ReductionError(f"literal {lit} out of range")
            fixed.append(lits)
        object.__setattr__(self, "clauses", tuple(fixed))

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: int) -> bool:
        """Assignment bits: variable i takes bit (n - i), so the n-bit string
        alpha_1 ... alpha_n reads as the binary number ``assignment``."""
        for clause in self.clauses:
            ok = False
            for lit in clause:
                var = abs(lit)
                value = (assignment >> (self.n - var)) & 1
                if bool(value) == (lit > 0):
                    ok = True
                    break
            if not ok:
                return False
        return True

    def minimal_satisfying_assignment(self) -> Optional[int]:
        for a in range(1 << self.n):
            if self.satisfied_by(a):
                return a
        return None

    def padded_to(self, m: int) -> "CNF3Formula":
        """Pad to m clauses by repeating the first clause (no semantic change)."""
        if m < self.m:
            raise ReductionError("cannot pad downward")
        if not self.clauses:
            raise ReductionError("cannot pad a formula with no clauses")
        extra = (self.clauses[0],) * (m - self.m)
        return CNF3Formula(self.n, self.clauses + extra)


def parse_dimacs(text: str) -> CNF3Formula:
    """DIMACS cnf reader; clauses must have at most three literals."""
    n = None
    expected = None
    lits: list[int] = []
    clauses: list[tuple[int, ...]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ReductionError(f"bad problem line: {line!r}")
            n, expected = int(parts[2]), int(parts[3])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                if not lits:
                    raise ReductionError("empty clause in DIMACS input")
                clauses.append(tuple(lits))
                lits = []
            else:
                lits.append(lit)
    if lits:
        raise ReductionError("clause not terminated by 0")
    if n is None:
        raise ReductionError("missing 'p cnf' header")
    if expected is not None and expected != len(clauses):
        raise ReductionError("clause count does not match the header")
    return CNF3Formula(n, tuple(clauses))


# ---------------------------------------------------------------------------
# Graph carriers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VertexWeightedGraph:
    """Undirected graph with nonnegative vertex weights."""

    weights: tuple[tuple[str, int], ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        names = [v for v, _w in self.weights]
        if len(set(names)) != len(names):
            raise ReductionError("duplicate vertex")
        if any(w < 0 for _v, w in self.weights):
            raise ReductionError("vertex weights must be nonnegative")
        known = set(names)
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise ReductionError("self-loops are not allowed")
            if u not in known or v not in known:
                raise ReductionError(f"edge ({u!r}, {v!r}) uses an unknown vertex")
            normalized.add((u, v) if u <= v else (v, u))
        object.__setattr__(self, "edges", tuple(sorted(normalized)))
        object.__setattr__(self, "weights", tuple(self.weights))

    def weight_of(self) -> dict[str, int]:
        return dict(self.weights)

    @property
    def total_weight(self) -> int:
        return sum(w for _v, w in self.weights)


@dataclass(frozen=True)
class EdgeWeightedDigraph:
    """Irreflexive, antisymmetric digraph with nonnegative arc weights."""

    vertices: tuple[str, ...]
    arcs: tuple[tuple[str, str, int], ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ReductionError("duplicate vertex")
        known = set(self.vertices)
        seen = set()
        for u, v, w in self.arcs:
            if u == v:
                raise ReductionError("arcs must be irreflexive")
            if u not in known or v not in known:
                raise ReductionError(f"arc ({u!r}, {v!r}) uses an unknown vertex")
            if w < 0:
                raise ReductionError("arc weights must be nonnegative")
            if (v, u) in seen or (u, v) in seen:
                raise ReductionError("arcs must be antisymmetric and simple")
            seen.add((u, v))
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))


# ---------------------------------------------------------------------------
# Exact solvers used at the chain links
# ---------------------------------------------------------------------------


def min_weight_vertex_cover(
    graph: VertexWeightedGraph, forced: Sequence[str] = ()
) -> tuple[int, frozenset[str]]:
    """Exact branch and bound; ``forced`` vertices must be in the cover.

    Branches on the endpoints of the first uncovered edge; excluding a vertex
    forces all its neighbors in, which collapses the dense join graphs the
    chain produces quickly.
    """
    wmap = graph.weight_of()
    vertices = sorted(wmap)
    neighbors: dict[str, set[str]] = {v: set() for v in vertices}
    for u, v in graph.edges:
        neighbors[u].add(v)
        neighbors[v].add(u)
    best_weight = sum(wmap[v] for v in vertices)
    best_cover = frozenset(vertices)

    def matching_bound(in_set: set[str], out_set: set[str]) -> int:
        used = set()
        bound = 0
        for u, v in graph.edges:
            if u in in_set or v in in_set:
                continue
            if u in used or v in used:
                continue
            bound += min(wmap[u], wmap[v])
            used.add(u)
            used.add(v)
        return bound

    def dfs(in_set: set[str], out_set: set[str], weight: int) -> None:
        nonlocal best_weight, best_cover
        if weight + matching_bound(in_set, out_set) >= best_weight:
            return
        uncovered = None
        for u, v in graph.edges:
            if u not in in_set and v not in in_set:
                uncovered = (u, v)
                break
        if uncovered is None:
            best_weight = weight
            best_cover = frozenset(in_set)
            return
        u, v = uncovered
        # Branch 1: u in the cover.
        if u not in out_set:
            in_set.add(u)
            dfs(in_set, out_set, weight + wmap[u])
            in_set.remove(u)
        # Branch 2: u excluded, so every neighbor of u must be covered.
        need = [x for x in sorted(neighbors[u]) if x not in in_set]
        if any(x in out_set for x in need):
            return
        out_set.add(u)
        for x in need:
            in_set.add(x)
        dfs(in_set, out_set, weight + sum(wmap[x] for x in need))
        for x in need:
            in_set.remove(x)
        out_set.remove(u)

    start_in = set(forced)
    if any(v not in wmap for v in start_in):
        raise ReductionError("forced vertex not in the graph")
    dfs(start_in, set(), sum(wmap[v] for v in start_in))
    return best_weight, best_cover


def vertex_in_some_min_cover(graph: VertexWeightedGraph, vertex: str) -> bool:
    base, _cover = min_weight_vertex_cover(graph)
    forced, _cover = min_weight_vertex_cover(graph, forced=[vertex])
    return forced == base


def min_weight_fas(digraph: EdgeWeightedDigraph, max_vertices: int = 24) -> int:
    """Exact minimum-weight feedback arc set via order minimization."""
    verts = sorted(digraph.vertices)
    n = len(verts)
    if n > max_vertices:
        raise ReductionError(f"{n} vertices exceed the exact FAS limit {max_vertices}")
    index = {v: i for i, v in enumerate(verts)}
    # cost[a][b] = weight paid for ranking a above b = weight of arc b -> a.
    cost = [[0] * n for _ in range(n)]
    for u, v, w in digraph.arcs:
        cost[index[v]][index[u]] += w
    value, _order = _best_order(cost, range(n))
    return value


def fas_membership(
    digraph: EdgeWeightedDigraph, target: str, max_vertices: int = 24
) -> bool:
    """Does some minimum-weight FAS contain every arc entering ``target``?

    Holds iff w(entering) + minFAS(G - entering) == minFAS(G), because FASes
    containing a fixed arc set are exactly FASes of the digraph without it.
    """
    if target not in digraph.vertices:
        raise ReductionError("target vertex not in the digraph")
    entering = [(u, v, w) for u, v, w in digraph.arcs if v == target]
    rest = tuple(a for a in digraph.arcs if a[1] != target)
    stripped = EdgeWeightedDigraph(digraph.vertices, rest)
    full = min_weight_fas(digraph, max_vertices)
    forced = sum(w for _u, _v, w in entering) + min_weight_fas(stripped, max_vertices)
    return forced == full


# ---------------------------------------------------------------------------
# The reductions
# ---------------------------------------------------------------------------


def karp_3sat_to_wvc(formula: CNF3Formula) -> VertexWeightedGraph:
    """Karp's 3SAT-to-vertex-cover graph with assignment-encoding weights.

    Vertices x_i / nx_i per variable and a_j, b_j, c_j per clause; weights
    2^n + 2^(n-i) on the positive literals and 2^n elsewhere, so a
    minimum-weight cover has weight (n + 2m) * 2^n + (minimal satisfying
    assignment) for satisfiable formulas.
    """
    n = formula.n
    weights: list[tuple[str, int]] = []
    for i in range(1, n + 1):
        weights.append((f"x{i}", (1 << n) + (1 << (n - i))))
        weights.append((f"nx{i}", 1 << n))
    for j in range(1, formula.m + 1):
        for tag in ("a", "b", "c"):
            weights.append((f"{tag}{j}", 1 << n))
    edges: list[tuple[str, str]] = []
    for i in range(1, n + 1):
        edges.append((f"x{i}", f"nx{i}"))
    for j, clause in enumerate(formula.clauses, start=1):
        edges.append((f"a{j}", f"b{j}"))
        edges.append((f"a{j}", f"c{j}"))
        edges.append((f"b{j}", f"c{j}"))
        for tag, lit in zip(("a", "b", "c"), clause):
            lit_name = f"x{abs(lit)}" if lit > 0 else f"nx{abs(lit)}"
            edges.append((f"{tag}{j}", lit_name))
    return VertexWeightedGraph(tuple(weights), tuple(edges))


def minsatasg_to_mwvcc(
    phi: CNF3Formula, psi: CNF3Formula
) -> tuple[VertexWeightedGraph, VertexWeightedGraph]:
    """Equal-weight pair of Karp graphs comparing minimal assignments."""
    if phi.n != psi.n:
        raise ReductionError("formulas must share the variable set")
    m = max(phi.m, psi.m)
    g = karp_3sat_to_wvc(phi.padded_to(m))
    h = karp_3sat_to_wvc(psi.padded_to(m))
    assert g.total_weight == h.total_weight
    return g, h


_ISO_LEFT = "L.__iso__"
_ISO_RIGHT = "R.__iso__"


def mwvcc_to_wvcm(
    g: VertexWeightedGraph, h: VertexWeightedGraph
) -> tuple[VertexWeightedGraph, str]:
    """Join (G + isolated left) x (H + isolated right); answer vertex is the
    right isolated vertex, which sits in a minimum-weight cover of the join
    iff mvc(G) <= mvc(H)."""
    if g.total_weight != h.total_weight:
        raise ReductionError("graphs must have equal total weight")
    weights: list[tuple[str, int]] = []
    left = [f"L.{v}" for v, _w in g.weights] + [_ISO_LEFT]
    right = [f"R.{v}" for v, _w in h.weights] + [_ISO_RIGHT]
    weights += [(f"L.{v}", w) for v, w in g.weights] + [(_ISO_LEFT, 1)]
    weights += [(f"R.{v}", w) for v, w in h.weights] + [(_ISO_RIGHT, 1)]
    edges = [(f"L.{u}", f"L.{v}") for u, v in g.edges]
    edges += [(f"R.{u}", f"R.{v}") for u, v in h.edges]
    edges += [(a, b) for a in left for b in right]
    return VertexWeightedGraph(tuple(weights), tuple(edges)), _ISO_RIGHT


def wvcm_to_wfasm(
    graph: VertexWeightedGraph, vertex: str
) -> tuple[EdgeWeightedDigraph, str]:
    """Split digraph: arc (v, v') of weight w(v) per vertex, and heavy arcs
    (u', w), (w', u) of weight w(G) per edge; the query becomes membership of
    the arcs entering v' in some minimum-weight feedback arc set."""
    wmap = graph.weight_of()
    if vertex not in wmap:
        raise ReductionError("query vertex not in the graph")
    total = graph.total_weight
    vertices = []
    for v in sorted(wmap):
        vertices.extend([v, v + "'"])
    if len(set(vertices)) != len(vertices):
        raise ReductionError("vertex names collide under priming")
    arcs = [(v, v + "'", wmap[v]) for v in sorted(wmap)]
    for u, v in graph.edges:
        arcs.append((u + "'", v, total))
        arcs.append((v + "'", u, total))
    return EdgeWeightedDigraph(tuple(vertices), tuple(arcs)), vertex + "'"


def doubled(digraph: EdgeWeightedDigraph) -> EdgeWeightedDigraph:
    return EdgeWeightedDigraph(
        digraph.vertices, tuple((u, v, 2 * w) for u, v, w in digraph.arcs)
    )


def wfasm_to_kemeny(
    digraph: EdgeWeightedDigraph, vertex: str
) -> tuple[HMProfile, int]:
    """McGarvey election whose weighted majority graph is the doubled input.

    Each arc (a, b) of doubled weight 2t yields t copies of the vote pair
    a > b > rest and reversed-rest > a > b over a fixed order of the other
    candidates; all pair margins cancel except a over b, which gets 2t.
    Returns the profile (candidate ids = sorted vertex order) and the
    candidate index of the query vertex.
    """
    names = tuple(sorted(digraph.vertices))
    index = {v: i for i, v in enumerate(names)}
    if vertex not in index:
        raise ReductionError("query vertex not in the digraph")
    m = len(names)
    counts: dict[Vote, int] = {}
    for u, v, w in doubled(digraph).arcs:
        t, odd = divmod(w, 2)
        assert odd == 0
        if t == 0:
            continue
        a, b = index[u], index[v]
        rest = [c for c in range(m) if c not in (a, b)]
        fwd = tuple([a, b] + rest)
        rev = tuple(list(reversed(rest)) + [a, b])
        counts[fwd] = counts.get(fwd, 0) + t
        counts[rev] = counts.get(rev, 0) + t
    profile = HMProfile(m, tuple(counts.items()), names)
    return profile, index[vertex]


def weighted_majority_arcs(profile: HMProfile) -> dict[tuple[int, int], int]:
    """Positive pairwise margins of a profile, as arcs (a, b) -> margin."""
    t = pairwise_tallies(profile)
    out = {}
    for a in range(profile.m):
        for b in range(profile.m):
            if a != b and t[a][b] > t[b][a]:
                out[(a, b)] = t[a][b] - t[b][a]
    return out


# ---------------------------------------------------------------------------
# Few-voter Kemeny constructions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubdividedDigraph:
    """Arc-subdivision of a digraph: one new vertex per arc."""

    digraph: EdgeWeightedDigraph
    originals: tuple[str, ...]
    arc_nodes: tuple[str, ...]
    arc_of: tuple[tuple[str, tuple[str, str]], ...]


def dwork_expand(digraph: EdgeWeightedDigraph) -> SubdividedDigraph:
    """Subdivide every arc (u, v) into u -> [uv] -> v, both halves keeping
    the arc's weight; FAS values and membership queries are preserved."""
    arc_nodes = []
    arc_of = []
    arcs = []
    for u, v, w in digraph.arcs:
        node = f"{u}->{v}"
        if node in digraph.vertices:
            raise ReductionError(f"vertex name {node!r} collides with an arc node")
        arc_nodes.append(node)
        arc_of.append((node, (u, v)))
        arcs.append((u, node, w))
        arcs.append((node, v, w))
    vertices = tuple(digraph.vertices) + tuple(arc_nodes)
    return SubdividedDigraph(
        EdgeWeightedDigraph(vertices, tuple(arcs)),
        tuple(digraph.vertices),
        tuple(arc_nodes),
        tuple(arc_of),
    )


def fas_to_kemeny_two_voter_partial(
    expanded: SubdividedDigraph, vertex: str
) -> tuple[list[tuple[RelationVote, int]], int, tuple[str, ...]]:
    """Two partial-order voters: one ranks x above [xy] for every arc, the
    other ranks [xy] above y; indifferent elsewhere."""
    names = tuple(sorted(expanded.digraph.vertices))
    index = {v: i for i, v in enumerate(names)}
    if vertex not in index:
        raise ReductionError("query vertex not in the digraph")
    m = len(names)
    first = set()
    second = set()
    for node, (u, v) in expanded.arc_of:
        first.add((index[u], index[node]))
        second.add((index[node], index[v]))
    votes = [
        (RelationVote(PARTIAL_ORDER, m, frozenset(first)), 1),
        (RelationVote(PARTIAL_ORDER, m, frozenset(second)), 1),
    ]
    return votes, index[vertex], names


def fas_to_kemeny_one_voter_relation(
    expanded: SubdividedDigraph, vertex: str
) -> tuple[list[tuple[RelationVote, int]], int, tuple[str, ...]]:
    """One binary-relation voter whose pairs are exactly the expanded arcs."""
    names = tuple(sorted(expanded.digraph.vertices))
    index = {v: i for i, v in enumerate(names)}
    if vertex not in index:
        raise ReductionError("query vertex not in the digraph")
    m = len(names)
    pairs = frozenset(
        (index[u], index[v]) for u, v, _w in expanded.digraph.arcs
    )
    return [(RelationVote(BINARY_RELATION, m, pairs), 1)], index[vertex], names


# ---------------------------------------------------------------------------
# Partition -> ExactlyHalfApproval CCAC
# ---------------------------------------------------------------------------


def partition_to_eha_ccac(values: Sequence[int]) -> tuple[ApprovalElection, int, int]:
    """K approvals for the registered p, one singleton bloc per value for the
    unregistered candidates, add limit = number of values; a subset summing
    to K exists iff p can be made an ExactlyHalfApproval winner."""
    values = [int(v) for v in values]
    if not values or any(v <= 0 for v in values):
        raise ReductionError("partition values must be positive")
    total = sum(values)
    if total % 2:
        raise ReductionError("partition values must have an even sum")
    half = total // 2
    m = len(values)
    ballots = [(frozenset([0]), half)]
    for i, v in enumerate(values, start=1):
        ballots.append((frozenset([i]), v))
    election = ApprovalElection((0,), tuple(range(1, m + 1)), tuple(ballots))
    return election, m, 0


# ---------------------------------------------------------------------------
# End-to-end verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainLink:
    name: str
    answer: Optional[bool]
    agrees: Optional[bool]
    note: str = ""


@dataclass(frozen=True)
class ChainReport:
    expected: bool
    links: tuple[ChainLink, ...]

    @property
    def all_agree(self) -> bool:
        return all(link.agrees is not False for link in self.links)

    def divergences(self) -> list[ChainLink]:
        return [link for link in self.links if link.agrees is False]


def verify_chain(
    phi: CNF3Formula,
    psi: CNF3Formula,
    fas_limit: int = 12,
    kemeny_limit: int = 0,
) -> ChainReport:
    """Push (phi, psi) through the whole chain and compare each link's answer
    with the one before it.

    The first two links always run (SAT enumeration, exact vertex-cover
    branch and bound).  The feedback-arc-set and Kemeny links run only when
    the derived instance fits the given vertex/candidate limits, since their
    exact solvers are exponential; skipped links are reported as such rather
    than silently trusted.
    """
    a_phi = phi.minimal_satisfying_assignment()
    a_psi = psi.minimal_satisfying_assignment()
    if a_phi is None or a_psi is None:
        raise ReductionError("chain verification needs satisfiable formulas")
    expected = a_phi <= a_psi
    links: list[ChainLink] = []

    g, h = minsatasg_to_mwvcc(phi, psi)
    mvc_g, _ = min_weight_vertex_cover(g)
    mvc_h, _ = min_weight_vertex_cover(h)
    ans_vcc = mvc_g <= mvc_h
    links.append(
        ChainLink(
            "min-weight-vc-compare",
            ans_vcc,
            ans_vcc == expected,
            f"mvc weights {mvc_g} vs {mvc_h}",
        )
    )

    f, w = mwvcc_to_wvcm(g, h)
    ans_wvcm = vertex_in_some_min_cover(f, w)
    links.append(
        ChainLink("weighted-vc-member", ans_wvcm, ans_wvcm == ans_vcc)
    )

    digraph, wprime = wvcm_to_wfasm(f, w)
    prev = ans_wvcm
    if len(digraph.vertices) <= fas_limit:
        ans_fas = fas_membership(digraph, wprime, fas_limit)
        links.append(
            ChainLink("weighted-fas-member", ans_fas, ans_fas == ans_wvcm)
        )
        prev = ans_fas
    else:
        links.append(
            ChainLink(
                "weighted-fas-member",
                None,
                None,
                f"skipped: {len(digraph.vertices)} vertices exceed the limit {fas_limit}",
            )
        )

    profile, target = wfasm_to_kemeny(digraph, wprime)
    majority = weighted_majority_arcs(profile)
    doubled_arcs = {
        (profile.names.index(u), profile.names.index(v)): w
        for u, v, w in doubled(digraph).arcs
        if w > 0
    }
    links.append(
        ChainLink(
            "mcgarvey-majority-graph",
            majority == doubled_arcs,
            majority == doubled_arcs,
            "weighted majority graph reconstruction",
        )
    )
    if profile.m <= kemeny_limit:
        entries = profile_relation_entries(profile)
        ans_kw = kemeny_winner(entries, target, m=profile.m, max_candidates=kemeny_limit)
        links.append(
            ChainLink(
                "kemeny-winner",
                ans_kw,
                ans_kw == prev and ans_kw == expected,
                "end-to-end",
            )
        )
    else:
        links.append(
            ChainLink(
                "kemeny-winner",
                None,
                None,
                f"skipped: {profile.m} candidates exceed the limit {kemeny_limit}",
            )
        )
    return ChainReport(expected, tuple(links))


# ---------------------------------------------------------------------------
# JSON carriers
# ---------------------------------------------------------------------------


def graph_to_json(graph: VertexWeightedGraph) -> dict:
    return {
        "vertices": [{"name": v, "weight": str(w)} for v, w in graph.weights],
        "edges": [[u, v] for u, v in graph.edges],
    }


def graph_from_json(data: Mapping) -> VertexWeightedGraph:
    return VertexWeightedGraph(
        tuple((v["name"], int(v["weight"])) for v in data["vertices"]),
        tuple((u, v) for u, v in data["edges"]),
    )


def digraph_to_json(digraph: EdgeWeightedDigraph) -> dict:
    return {
        "vertices": list(digraph.vertices),
        "arcs": [[u, v, str(w)] for u, v, w in digraph.arcs],
    }


def digraph_from_json(data: Mapping) -> EdgeWeightedDigraph:
    return EdgeWeightedDigraph(
        tuple(data["vertices"]),
        tuple((u, v, int(w)) for u, v, w in data["arcs"]),
    )
