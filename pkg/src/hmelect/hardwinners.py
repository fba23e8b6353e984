"""Exact winner determination for Kemeny, Young, and Dodgson elections.

Kemeny distances are kept in doubled units so the half-point penalty for
indifferent pairs in generalized (partial-order / binary-relation) votes
stays integral; total-order profiles therefore always produce even doubled
scores.  Consensus search runs branch and bound over prefix orders for small
candidate sets and an exact subset dynamic program (Held-Karp style, numpy)
up to 24 candidates; both return the lexicographically smallest optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from hmelect import ilp
from hmelect.core import HMProfile, Vote


class WinnerError(ValueError):
    """Raised for malformed votes or out-of-range queries."""


class CandidateLimitError(RuntimeError):
    """Raised when an exact search would exceed its candidate limit."""


TOTAL_ORDER = "total-order"
PARTIAL_ORDER = "partial-order"
BINARY_RELATION = "binary-relation"

BY_VOTER = "by-voter"
BY_VOTER_WEIGHT = "by-voter-weight"

MAX_BNB_CANDIDATES = 12
MAX_DP_CANDIDATES = 24


@dataclass(frozen=True)
class RelationVote:
    """A vote given as a set of ordered pairs (a, b) meaning a is preferred.

    ``total-order`` votes must be complete antisymmetric transitive;
    ``partial-order`` votes irreflexive antisymmetric transitive;
    ``binary-relation`` votes only irreflexive.
    """

    kind: str
    m: int
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.kind not in (TOTAL_ORDER, PARTIAL_ORDER, BINARY_RELATION):
            raise WinnerError(f"unknown vote kind {self.kind!r}")
        pairs = frozenset((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for a, b in pairs:
            if not (0 <= a < self.m and 0 <= b < self.m):
                raise WinnerError("pair mentions an unknown candidate")
            if a == b:
                raise WinnerError("relation must be irreflexive")
        if self.kind in (TOTAL_ORDER, PARTIAL_ORDER):
            for a, b in pairs:
                if (b, a) in pairs:
                    raise WinnerError("relation must be antisymmetric")
            for a, b in pairs:
                for c, d in pairs:
                    if b == c and (a, d) not in pairs:
                        raise WinnerError("relation must be transitive")
        if self.kind == TOTAL_ORDER:
            if len(pairs) != self.m * (self.m - 1) // 2:
                raise WinnerError("total order must relate every pair")

    @classmethod
    def from_vote(cls, m: int, vote: Vote) -> "RelationVote":
        pairs = frozenset(
            (vote[i], vote[j]) for i in range(m) for j in range(i + 1, m)
        )
        return cls(TOTAL_ORDER, m, pairs)


RelationEntries = Sequence[tuple[RelationVote, int]]


def profile_relation_entries(profile: HMProfile) -> list[tuple[RelationVote, int]]:
    return [
        (RelationVote.from_vote(profile.m, vote), count)
        for vote, count in profile.entries
    ]


@dataclass(frozen=True)
class KemenyResult:
    consensus: Vote
    doubled_score: int


def _extent(entries: RelationEntries, m: Optional[int]) -> int:
    sizes = {vote.m for vote, _count in entries}
    if len(sizes) > 1:
        raise WinnerError("votes are over different candidate sets")
    if sizes:
        found = sizes.pop()
        if m is not None and m != found:
            raise WinnerError("explicit m contradicts the votes")
        return found
    if m is None:
        raise WinnerError("empty entries need an explicit candidate count")
    return m


def pair_cost_matrix(entries: RelationEntries, m: int) -> list[list[int]]:
    """cost[a][b]: doubled cost of ranking a above b (2 per opposing voter,
    1 per indifferent voter)."""
    cost = [[0] * m for _ in range(m)]
    for vote, count in entries:
        pairs = vote.pairs
        for a in range(m):
            for b in range(m):
                if a == b:
                    continue
                if (b, a) in pairs:
                    cost[a][b] += 2 * count
                elif (a, b) not in pairs:
                    cost[a][b] += count
    return cost


def kemeny_distance(entries: RelationEntries, order: Vote, m: Optional[int] = None) -> int:
    """Doubled Kendall tau distance of a total order to the votes."""
    m = _extent(entries, m if m is not None else len(order))
    if sorted(order) != list(range(m)):
        raise WinnerError("order must be a permutation of the candidates")
    cost = pair_cost_matrix(entries, m)
    return sum(
        cost[order[i]][order[j]] for i in range(m) for j in range(i + 1, m)
    )


def _bnb_minimum(cost: list[list[int]], items: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Best order of ``items``; returns the lexicographically first optimum."""
    items = sorted(items)
    n = len(items)
    if n == 0:
        return 0, ()
    pair_lb = {}

    def lower_bound(rest: frozenset) -> int:
        if rest not in pair_lb:
            rl = sorted(rest)
            pair_lb[rest] = sum(
                min(cost[x][y], cost[y][x])
                for i, x in enumerate(rl)
                for y in rl[i + 1:]
            )
        return pair_lb[rest]

    best_score = None
    best_order: tuple[int, ...] = ()
    prefix: list[int] = []

    def dfs(rest: frozenset, acc: int) -> None:
        nonlocal best_score, best_order
        if best_score is not None and acc + lower_bound(rest) >= best_score:
            return
        if not rest:
            best_score = acc
            best_order = tuple(prefix)
            return
        for x in sorted(rest):
            nxt = rest - {x}
            step = sum(cost[x][y] for y in nxt)
            prefix.append(x)
            dfs(nxt, acc + step)
            prefix.pop()

    dfs(frozenset(items), 0)
    assert best_score is not None
    return best_score, best_order


def _subset_dp_minimum(cost: list[list[int]], items: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Exact Held-Karp order minimization over up to 24 items (numpy)."""
    import numpy as np

    items = sorted(items)
    n = len(items)
    if n == 0:
        return 0, ()
    if n > MAX_DP_CANDIDATES:
        raise CandidateLimitError(f"{n} candidates exceed the exact-search limit")
    # W(v, X) = sum over u in X of cost[v][u], via low/high half tables.
    h = n // 2
    lo_bits, hi_bits = h, n - h
    wlo = np.zeros((n, 1 << lo_bits), dtype=np.int64)
    whi = np.zeros((n, 1 << hi_bits), dtype=np.int64)
    for v in range(n):
        for mask in range(1, 1 << lo_bits):
            low = mask & -mask
            wlo[v][mask] = wlo[v][mask ^ low] + cost[items[v]][items[low.bit_length() - 1]]
        for mask in range(1, 1 << hi_bits):
            low = mask & -mask
            whi[v][mask] = whi[v][mask ^ low] + cost[items[v]][items[h + low.bit_length() - 1]]
    size = 1 << n
    full = size - 1
    INF = np.int64(2**62)
    C = np.full(size, INF, dtype=np.int64)
    C[0] = 0
    masks = np.arange(size, dtype=np.int64)
    pc = np.zeros(size, dtype=np.int8)
    for b in range(n):
        pc += ((masks >> b) & 1).astype(np.int8)
    order = np.argsort(pc, kind="stable")
    bounds = np.searchsorted(pc[order], np.arange(n + 2))
    lo_mask = (1 << lo_bits) - 1
    for level in range(1, n + 1):
        level_masks = order[bounds[level]:bounds[level + 1]]
        for v in range(n):
            bit = 1 << v
            has = level_masks[(level_masks & bit) != 0]
            if has.size == 0:
                continue
            prev = has ^ bit
            cand = C[prev] + wlo[v][prev & lo_mask] + whi[v][prev >> lo_bits]
            np.minimum.at(C, has, cand)
    total = int(C[full])
    # Reconstruct top-down, choosing the smallest candidate at each position.
    order_out: list[int] = []
    S = full
    while S:
        for v in range(n):
            bit = 1 << v
            if not S & bit:
                continue
            prev = S ^ bit
            w = int(wlo[v][prev & lo_mask] + whi[v][prev >> lo_bits])
            if int(C[S]) == int(C[prev]) + w:
                order_out.append(items[v])
                S = prev
                break
        else:  # pragma: no cover - C is exact, a predecessor always exists
            raise AssertionError("subset DP reconstruction failed")
    return total, tuple(order_out)


def _best_order(cost: list[list[int]], items: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    if len(items) <= MAX_BNB_CANDIDATES:
        return _bnb_minimum(cost, items)
    return _subset_dp_minimum(cost, items)


def kemeny_consensus(
    entries: RelationEntries,
    m: Optional[int] = None,
    max_candidates: int = 16,
) -> KemenyResult:
    """Total order minimizing the doubled distance; lexicographic tie-break."""
    m = _extent(entries, m)
    if m > max_candidates:
        raise CandidateLimitError(f"{m} candidates exceed the limit {max_candidates}")
    cost = pair_cost_matrix(entries, m)
    score, order = _best_order(cost, range(m))
    return KemenyResult(order, score)


def kemeny_winner(
    entries: RelationEntries,
    candidate: int,
    m: Optional[int] = None,
    max_candidates: int = 16,
) -> bool:
    """True iff the candidate tops at least one minimum-distance order."""
    m = _extent(entries, m)
    if not (0 <= candidate < m):
        raise WinnerError("candidate out of range")
    if m > max_candidates:
        raise CandidateLimitError(f"{m} candidates exceed the limit {max_candidates}")
    cost = pair_cost_matrix(entries, m)
    best, _order = _best_order(cost, range(m))
    rest = [c for c in range(m) if c != candidate]
    top_cost = sum(cost[candidate][u] for u in rest)
    forced, _order = _best_order(cost, rest)
    return top_cost + forced == best


def kemeny_score_lattice(counts: Sequence[int], m: int) -> set[int]:
    """All values l1*k1 + ... + l4*k4 with 0 <= l_i <= m(m-1)/2."""
    if len(counts) != 4:
        raise WinnerError("the four-vote lattice needs exactly four counts")
    top = m * (m - 1) // 2
    values = {0}
    for k in counts:
        values = {v + l * k for v in values for l in range(top + 1)}
    return values


# ---------------------------------------------------------------------------
# Pairwise comparisons, Condorcet, Young, Dodgson
# ---------------------------------------------------------------------------


def pairwise_tallies(profile: HMProfile) -> list[list[int]]:
    """tallies[a][b]: total count of voters ranking a above b."""
    m = profile.m
    t = [[0] * m for _ in range(m)]
    for vote, count in profile.entries:
        for i in range(m):
            for j in range(i + 1, m):
                t[vote[i]][vote[j]] += count
    return t


CONDORCET = "condorcet"
WEAK_CONDORCET = "weak-condorcet"
NEITHER = "neither"


def condorcet_status(profile: HMProfile, candidate: int) -> str:
    if not (0 <= candidate < profile.m):
        raise WinnerError("candidate out of range")
    t = pairwise_tallies(profile)
    strict = all(
        t[candidate][a] > t[a][candidate]
        for a in range(profile.m)
        if a != candidate
    )
    if strict:
        return CONDORCET
    weak = all(
        t[candidate][a] >= t[a][candidate]
        for a in range(profile.m)
        if a != candidate
    )
    return WEAK_CONDORCET if weak else NEITHER


def young_score(profile: HMProfile, candidate: int) -> int:
    """Largest kept subcollection for which the candidate is a weak Condorcet
    winner; binary search over the target size with one exact ILP per probe.
    The empty subcollection always qualifies, so the score is at least 0."""
    if not (0 <= candidate < profile.m):
        raise WinnerError("candidate out of range")
    entries = profile.entries
    n = profile.n

    def feasible(target: int) -> bool:
        variables = tuple(
            (f"keep_{i}", 0, count) for i, (_v, count) in enumerate(entries)
        )
        constraints = [
            ilp.Constraint(tuple([1] * len(entries)), ilp.GE, target)
        ] if entries else []
        for a in range(profile.m):
            if a == candidate:
                continue
            coeffs = tuple(
                1 if vote.index(candidate) < vote.index(a) else -1
                for vote, _count in entries
            )
            constraints.append(ilp.Constraint(coeffs, ilp.GE, 0))
        if not entries:
            return target <= 0
        return bool(ilp.solve(ilp.ILPInstance(variables, tuple(constraints))))

    lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if feasible(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def young_winner(profile: HMProfile, candidate: int) -> bool:
    target = young_score(profile, candidate)
    return all(
        young_score(profile, other) <= target
        for other in range(profile.m)
        if other != candidate
    )


def dodgson_score(
    voters: Sequence[Vote],
    candidate: int,
    charge_model: str = BY_VOTER,
    weights: Optional[Sequence[int]] = None,
    max_voters: int = 9,
    m: Optional[int] = None,
) -> Optional[int]:
    """Minimum total lift charge making the candidate a strict Condorcet
    winner; only lifts of the candidate are considered.  Weights always count
    in the pairwise tallies; the charge model decides whether they also
    multiply the swap charges.  Returns None when no lift tuple works, which
    only happens for degenerate electorates (no voters but several
    candidates)."""
    if charge_model not in (BY_VOTER, BY_VOTER_WEIGHT):
        raise WinnerError(f"unknown charge model {charge_model!r}")
    if len(voters) > max_voters:
        raise CandidateLimitError(f"{len(voters)} voters exceed the limit {max_voters}")
    if weights is None:
        weights = [1] * len(voters)
    if len(weights) != len(voters):
        raise WinnerError("one weight per voter is required")
    if not voters:
        if m is None:
            raise WinnerError("an empty electorate needs an explicit candidate count")
        return 0 if m <= 1 else None
    m = len(voters[0])
    if not (0 <= candidate < m):
        raise WinnerError("candidate out of range")
    positions = [v.index(candidate) for v in voters]
    others = [a for a in range(m) if a != candidate]
    n = len(voters)
    # above[i][a] is True when voter i ranks the candidate above a after the
    # lift; precompute per-voter, per-lift pairwise rows.
    rows = []
    for vote, pos in zip(voters, positions):
        per_lift = []
        for lift in range(pos + 1):
            new_pos = pos - lift
            row = {}
            for a in others:
                a_pos = vote.index(a)
                if new_pos <= a_pos < pos:
                    a_pos += 1
                row[a] = new_pos < a_pos
            per_lift.append(row)
        rows.append(per_lift)

    best: Optional[int] = None

    def charge_of(i: int, lift: int) -> int:
        return lift * weights[i] if charge_model == BY_VOTER_WEIGHT else lift

    def dfs(i: int, charge: int, margins: dict[int, int]) -> None:
        nonlocal best
        if best is not None and charge >= best:
            return
        if i == n:
            if all(v > 0 for v in margins.values()):
                best = charge
            return
        # Optimistic check: even lifting everyone remaining to the top cannot
        # fix a rival whose margin deficit exceeds the remaining weight.
        remaining = sum(weights[i:])
        if any(v + remaining <= 0 for v in margins.values()):
            return
        for lift in range(positions[i] + 1):
            row = rows[i][lift]
            nm = {
                a: margins[a] + (weights[i] if row[a] else -weights[i])
                for a in others
            }
            dfs(i + 1, charge + charge_of(i, lift), nm)

    dfs(0, 0, {a: 0 for a in others})
    return best


def dodgson_score_profile(
    profile: HMProfile,
    candidate: int,
    charge_model: str = BY_VOTER,
    max_voters: int = 9,
) -> Optional[int]:
    """Dodgson score of a small high-multiplicity profile (expanded)."""
    voters: list[Vote] = []
    for vote, count in profile.entries:
        voters.extend([vote] * count)
    return dodgson_score(
        voters, candidate, charge_model, max_voters=max_voters, m=profile.m
    )
