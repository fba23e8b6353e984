"""Brute-force reference implementations in standard representation.

These are deliberately naive transcriptions of the problem definitions and
share no scoring or search code with the fast solvers; agreement between the
two sides is the evidence the equivalence suites collect.  Every oracle is
deterministic and total within its budget.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from hmelect.core import HMProfile, Vote, all_votes
from hmelect.control import ApprovalElection, CCAVInstance, CCDVInstance
from hmelect.scheduling import ManipulationInstance, ScheduleInstance


class BudgetExceededError(RuntimeError):
    """The instance is too large for brute force under the given budget."""


@dataclass(frozen=True)
class OracleBudget:
    max_expanded_voters: int = 10**6
    max_subsets: int = 5 * 10**6
    max_permutations: int = 5 * 10**6
    max_seconds: float = 600.0

    def check_subsets(self, count: int) -> None:
        if count > self.max_subsets:
            raise BudgetExceededError(f"{count} subsets exceed the oracle budget")

    def check_permutations(self, count: int) -> None:
        if count > self.max_permutations:
            raise BudgetExceededError(f"{count} permutations exceed the oracle budget")


DEFAULT_BUDGET = OracleBudget()


def _scores(m: int, entries, vector) -> list[int]:
    scores = [0] * m
    for vote, count in entries:
        for pos, cand in enumerate(vote):
            scores[cand] += count * vector[pos]
    return scores


def _is_winner(scores: Sequence[int], p: int) -> bool:
    return scores[p] == max(scores)


def oracle_ccav(
    inst: CCAVInstance, vector, budget: OracleBudget = DEFAULT_BUDGET
) -> bool:
    """Try every sub-multiset of unregistered voters of size at most k."""
    entries = inst.unregistered.entries
    caps = [min(count, inst.add_limit) for _v, count in entries]
    total = 1
    for c in caps:
        total *= c + 1
    budget.check_subsets(total)
    base = _scores(inst.m, inst.registered.entries, vector)
    for combo in itertools.product(*(range(c + 1) for c in caps)):
        if sum(combo) > inst.add_limit:
            continue
        scores = list(base)
        for (vote, _count), taken in zip(entries, combo):
            for pos, cand in enumerate(vote):
                scores[cand] += taken * vector[pos]
        if _is_winner(scores, inst.preferred):
            return True
    return False


def oracle_ccdv(
    inst: CCDVInstance, vector, budget: OracleBudget = DEFAULT_BUDGET
) -> bool:
    entries = inst.profile.entries
    caps = [min(count, inst.delete_limit) for _v, count in entries]
    total = 1
    for c in caps:
        total *= c + 1
    budget.check_subsets(total)
    base = _scores(inst.profile.m, entries, vector)
    for combo in itertools.product(*(range(c + 1) for c in caps)):
        if sum(combo) > inst.delete_limit:
            continue
        scores = list(base)
        for (vote, _count), removed in zip(entries, combo):
            for pos, cand in enumerate(vote):
                scores[cand] -= removed * vector[pos]
        if _is_winner(scores, inst.preferred):
            return True
    return False


def oracle_cucm(mi: ManipulationInstance, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Try every multiset of k manipulator ballots."""
    m = mi.nonmanipulators.m
    vector = mi.rule.vector(m)
    orders = all_votes(m)
    count = 1
    for i in range(mi.k):
        count = count * (len(orders) + i) // (i + 1)
    budget.check_subsets(count)
    base = _scores(m, mi.nonmanipulators.entries, vector)
    for ballots in itertools.combinations_with_replacement(orders, mi.k):
        scores = list(base)
        for vote in ballots:
            for pos, cand in enumerate(vote):
                scores[cand] += vector[pos]
        if _is_winner(scores, mi.preferred):
            return True
    return False


def oracle_schedule(inst: ScheduleInstance, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Exhaustive distribution of jobs over machines, honoring the cap."""
    lengths = inst.lengths
    C = len(lengths)
    seen: dict[tuple[int, tuple[int, ...]], bool] = {}
    counter = [0]

    def options(deadline: int, remaining: tuple[int, ...]):
        outs = []

        def rec(j: int, load: int, used: int, acc: list[int]):
            if j == C:
                outs.append(tuple(acc))
                return
            top = remaining[j]
            if lengths[j] > 0:
                top = min(top, (deadline - load) // lengths[j])
            if inst.cap is not None:
                top = min(top, inst.cap - used)
            for t in range(top + 1):
                acc.append(t)
                rec(j + 1, load + t * lengths[j], used + t, acc)
                acc.pop()

        if deadline >= 0:
            rec(0, 0, 0, [])
        return outs

    def feasible(i: int, remaining: tuple[int, ...]) -> bool:
        if i == inst.num_machines:
            return all(r == 0 for r in remaining)
        key = (i, remaining)
        if key in seen:
            return seen[key]
        counter[0] += 1
        if counter[0] > budget.max_subsets:
            raise BudgetExceededError("scheduling oracle budget exceeded")
        out = False
        for pick in options(inst.deadlines[i], remaining):
            rest = tuple(r - t for r, t in zip(remaining, pick))
            if feasible(i + 1, rest):
                out = True
                break
        seen[key] = out
        return out

    return feasible(0, tuple(inst.counts))


# ---------------------------------------------------------------------------
# Hard winner rules
# ---------------------------------------------------------------------------


def _pair_cost(vote_pairs: frozenset, a: int, b: int) -> int:
    """Doubled cost of placing a above b against one relation vote."""
    if (b, a) in vote_pairs:
        return 2
    if (a, b) in vote_pairs:
        return 0
    return 1


@dataclass(frozen=True)
class KemenyOracleResult:
    doubled_score: int
    consensus: Vote
    winners: frozenset[int]


def oracle_kemeny(
    entries: Sequence[tuple[frozenset, int]],
    m: int,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> KemenyOracleResult:
    """Enumerate all m! orders; votes are relation pair-sets with counts."""
    fact = 1
    for i in range(2, m + 1):
        fact *= i
    budget.check_permutations(fact)
    best: Optional[int] = None
    best_order: Optional[Vote] = None
    tops: set[int] = set()
    for perm in itertools.permutations(range(m)):
        score = 0
        for i in range(m):
            for j in range(i + 1, m):
                a, b = perm[i], perm[j]
                for pairs, count in entries:
                    score += count * _pair_cost(pairs, a, b)
        if best is None or score < best:
            best = score
            best_order = perm
            tops = {perm[0]}
        elif score == best:
            tops.add(perm[0])
    assert best is not None and best_order is not None
    return KemenyOracleResult(best, best_order, frozenset(tops))


def oracle_young(
    profile: HMProfile, candidate: int, budget: OracleBudget = DEFAULT_BUDGET
) -> int:
    """Largest kept subcollection making the candidate a weak Condorcet winner."""
    entries = profile.entries
    total = 1
    for _v, count in entries:
        total *= count + 1
    budget.check_subsets(total)
    m = profile.m
    best = 0
    for combo in itertools.product(*(range(c + 1) for _v, c in entries)):
        kept = sum(combo)
        if kept <= best:
            continue
        ok = True
        for a in range(m):
            if a == candidate or not ok:
                continue
            for_c = 0
            against = 0
            for (vote, _count), taken in zip(entries, combo):
                if vote.index(candidate) < vote.index(a):
                    for_c += taken
                else:
                    against += taken
            if for_c < against:
                ok = False
        if ok:
            best = kept
    return best


def oracle_dodgson(
    voters: Sequence[Vote],
    candidate: int,
    charge_by_weight: bool = False,
    weights: Optional[Sequence[int]] = None,
    budget: OracleBudget = DEFAULT_BUDGET,
    m: Optional[int] = None,
) -> Optional[int]:
    """Minimum lift charge making the candidate beat everyone strictly.

    Only swaps moving the candidate up matter, so each voter contributes one
    lift distance from {0, ..., pos}.  Returns None when no lift tuple yields
    a strict Condorcet winner (possible only for degenerate electorates).
    """
    if weights is None:
        weights = [1] * len(voters)
    if voters:
        m = len(voters[0])
    elif m is None:
        raise ValueError("an empty electorate needs an explicit candidate count")
    else:
        return 0 if m <= 1 else None
    positions = [v.index(candidate) for v in voters]
    total = 1
    for pos in positions:
        total *= pos + 1
    budget.check_subsets(total)
    others = [a for a in range(m) if a != candidate]
    best: Optional[int] = None
    for lifts in itertools.product(*(range(pos + 1) for pos in positions)):
        charge = sum(
            (lift * w) if charge_by_weight else lift
            for lift, w in zip(lifts, weights)
        )
        if best is not None and charge >= best:
            continue
        ok = True
        for a in others:
            for_c = 0
            against = 0
            for vote, pos, lift, w in zip(voters, positions, lifts, weights):
                c_pos = pos - lift
                a_pos = vote.index(a)
                if a_pos >= pos - lift and a_pos < pos:
                    a_pos += 1  # the lift shifts candidates it passes down one
                if c_pos < a_pos:
                    for_c += w
                else:
                    against += w
            if not for_c > against:
                ok = False
                break
        if ok and (best is None or charge < best):
            best = charge
    return best


def oracle_eha_ccac(election: ApprovalElection, add_limit: int, preferred: int) -> bool:
    """Try every subset of unregistered candidates of size at most the limit."""
    scores = election.approval_scores()
    reg_total = sum(scores[c] for c in election.registered)
    unreg = sorted(election.unregistered)
    if len(unreg) > 22:
        raise BudgetExceededError("too many unregistered candidates for subsets")
    for mask in range(1 << len(unreg)):
        chosen = [unreg[i] for i in range(len(unreg)) if mask >> i & 1]
        if len(chosen) > add_limit:
            continue
        total = reg_total + sum(scores[c] for c in chosen)
        if 2 * scores[preferred] == total:
            return True
    return False


# ---------------------------------------------------------------------------
# Graph problems for the reduction chain
# ---------------------------------------------------------------------------


def oracle_min_weight_vc(
    weights: Mapping, edges: Sequence[tuple], budget: OracleBudget = DEFAULT_BUDGET
) -> tuple[int, frozenset]:
    """Minimum-weight vertex cover by subset enumeration."""
    vertices = sorted(weights)
    budget.check_subsets(1 << len(vertices))
    best: Optional[int] = None
    best_cover: Optional[frozenset] = None
    for mask in range(1 << len(vertices)):
        cover = {vertices[i] for i in range(len(vertices)) if mask >> i & 1}
        if all(u in cover or v in cover for u, v in edges):
            w = sum(weights[v] for v in cover)
            if best is None or w < best:
                best = w
                best_cover = frozenset(cover)
    assert best is not None
    return best, best_cover


def oracle_min_fas(
    vertices: Sequence, arcs: Sequence[tuple], budget: OracleBudget = DEFAULT_BUDGET
) -> int:
    """Minimum-weight feedback arc set: minimize backward weight over orders."""
    verts = sorted(vertices)
    fact = 1
    for i in range(2, len(verts) + 1):
        fact *= i
    budget.check_permutations(fact)
    best: Optional[int] = None
    for perm in itertools.permutations(verts):
        rank = {v: i for i, v in enumerate(perm)}
        w = sum(weight for u, v, weight in arcs if rank[u] > rank[v])
        if best is None or w < best:
            best = w
    return best if best is not None else 0


def oracle_fas_membership(
    vertices: Sequence, arcs: Sequence[tuple], target, budget: OracleBudget = DEFAULT_BUDGET
) -> bool:
    """Does some minimum-weight FAS contain every arc entering ``target``?

    Uses minFAS(G) == w(entering) + minFAS(G - entering), which holds because
    FASes containing a fixed arc set correspond exactly to FASes of the
    digraph with that set removed.
    """
    entering = [(u, v, w) for u, v, w in arcs if v == target]
    rest = [(u, v, w) for u, v, w in arcs if v != target]
    full = oracle_min_fas(vertices, arcs, budget)
    forced = sum(w for _u, _v, w in entering) + oracle_min_fas(vertices, rest, budget)
    return forced == full
