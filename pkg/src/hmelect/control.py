"""Constructive control by adding/deleting voters and adding candidates.

Each solver is a pure decision procedure over immutable instances and
returns a ControlOutcome whose witness has been replayed through the
scoring machinery before being handed back: on a yes-answer the witness
really makes the preferred candidate a winner within the stated budget.

The specialized solvers (greedy, one-variable feasibility, b-matching,
b-cover, min-cost flow) all agree with the generic per-vote-type ILP on
their applicable scoring vectors; the test suites enforce this three-way
against brute force.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from hmelect import ilp
from hmelect.core import (
    HMProfile,
    ProfileError,
    ScoringVector,
    Vote,
    merge_profiles,
    score_profile,
    winners,
)
from hmelect.flows import CapacitatedMultigraph, FlowNetwork, max_b_matching, min_b_cover, min_cost_flow


class ControlError(ValueError):
    """Raised for malformed control instances or inapplicable solvers."""


@dataclass(frozen=True)
class CCAVInstance:
    """Add at most ``add_limit`` unregistered voters to make p a winner."""

    registered: HMProfile
    unregistered: HMProfile
    add_limit: int
    preferred: int

    def __post_init__(self) -> None:
        if self.registered.m != self.unregistered.m:
            raise ControlError("registered/unregistered candidate sets differ")
        if self.add_limit < 0:
            raise ControlError("add limit must be nonnegative")
        if not (0 <= self.preferred < self.registered.m):
            raise ControlError("preferred candidate out of range")

    @property
    def m(self) -> int:
        return self.registered.m


@dataclass(frozen=True)
class CCDVInstance:
    """Delete at most ``delete_limit`` voters to make p a winner."""

    profile: HMProfile
    delete_limit: int
    preferred: int

    def __post_init__(self) -> None:
        if self.delete_limit < 0:
            raise ControlError("delete limit must be nonnegative")
        if not (0 <= self.preferred < self.profile.m):
            raise ControlError("preferred candidate out of range")


@dataclass(frozen=True)
class ControlOutcome:
    decision: bool
    added: Optional[tuple[tuple[Vote, int], ...]] = None
    deleted: Optional[tuple[tuple[Vote, int], ...]] = None
    added_candidates: Optional[tuple[int, ...]] = None


def _apply_added(inst: CCAVInstance, added: Sequence[tuple[Vote, int]]) -> HMProfile:
    if not added:
        return inst.registered
    return merge_profiles(inst.registered, HMProfile(inst.m, tuple(added)))


def _check_ccav_witness(
    inst: CCAVInstance, vector: ScoringVector, added: Sequence[tuple[Vote, int]]
) -> None:
    total = sum(c for _, c in added)
    assert total <= inst.add_limit, "witness exceeds the add limit"
    available = inst.unregistered.counts()
    for vote, count in added:
        assert 0 < count <= available.get(vote, 0), "witness exceeds a type count"
    final = score_profile(_apply_added(inst, added), vector)
    assert inst.preferred in winners(final), "witness does not make p a winner"


def _check_ccdv_witness(
    inst: CCDVInstance, vector: ScoringVector, deleted: Sequence[tuple[Vote, int]]
) -> None:
    total = sum(c for _, c in deleted)
    assert total <= inst.delete_limit, "witness exceeds the delete limit"
    counts = inst.profile.counts()
    for vote, count in deleted:
        assert 0 < count <= counts.get(vote, 0), "witness exceeds a type count"
        counts[vote] -= count
    remaining = tuple((v, c) for v, c in counts.items() if c > 0)
    profile = HMProfile(inst.profile.m, remaining)
    final = score_profile(profile, vector)
    assert inst.preferred in winners(final), "witness does not make p a winner"


def _vector_points(vector: ScoringVector, vote: Vote, candidate: int) -> int:
    return vector[vote.index(candidate)]


# ---------------------------------------------------------------------------
# Generic fixed-candidate ILP (one variable per distinct vote type)
# ---------------------------------------------------------------------------


def ccav_generic_ilp(inst: CCAVInstance, vector: ScoringVector) -> ControlOutcome:
    """CCAV for an arbitrary scoring vector via an exact ILP.

    Variables count the added voters of each distinct unregistered type, so
    the instance size follows the input rather than m! preference orders.
    """
    if len(vector) != inst.m:
        raise ControlError("scoring vector does not match the candidate count")
    base = score_profile(inst.registered, vector)
    p = inst.preferred
    entries = inst.unregistered.entries
    variables = tuple(
        (f"add_{i}", 0, min(count, inst.add_limit)) for i, (_v, count) in enumerate(entries)
    )
    constraints = [
        ilp.Constraint(tuple([1] * len(entries)), ilp.LE, inst.add_limit)
    ] if entries else []
    for c in range(inst.m):
        if c == p:
            continue
        coeffs = tuple(
            _vector_points(vector, vote, c) - _vector_points(vector, vote, p)
            for vote, _count in entries
        )
        constraints.append(ilp.Constraint(coeffs, ilp.LE, base[p] - base[c]))
    res = ilp.solve(ilp.ILPInstance(variables, tuple(constraints)))
    if not res:
        return ControlOutcome(False)
    added = tuple(
        (vote, x) for (vote, _c), x in zip(entries, res.assignment) if x > 0
    )
    _check_ccav_witness(inst, vector, added)
    return ControlOutcome(True, added=added)


def ccdv_generic_ilp(inst: CCDVInstance, vector: ScoringVector) -> ControlOutcome:
    """CCDV analogue of :func:`ccav_generic_ilp` (delete up to k voters)."""
    if len(vector) != inst.profile.m:
        raise ControlError("scoring vector does not match the candidate count")
    base = score_profile(inst.profile, vector)
    p = inst.preferred
    entries = inst.profile.entries
    variables = tuple(
        (f"del_{i}", 0, min(count, inst.delete_limit))
        for i, (_v, count) in enumerate(entries)
    )
    constraints = [
        ilp.Constraint(tuple([1] * len(entries)), ilp.LE, inst.delete_limit)
    ] if entries else []
    for c in range(inst.profile.m):
        if c == p:
            continue
        coeffs = tuple(
            _vector_points(vector, vote, p) - _vector_points(vector, vote, c)
            for vote, _count in entries
        )
        constraints.append(ilp.Constraint(coeffs, ilp.LE, base[p] - base[c]))
    res = ilp.solve(ilp.ILPInstance(variables, tuple(constraints)))
    if not res:
        return ControlOutcome(False)
    deleted = tuple(
        (vote, x) for (vote, _c), x in zip(entries, res.assignment) if x > 0
    )
    _check_ccdv_witness(inst, vector, deleted)
    return ControlOutcome(True, deleted=deleted)


# ---------------------------------------------------------------------------
# (alpha, beta, 0, ..., 0) rules
# ---------------------------------------------------------------------------


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _one_var_feasible(
    alpha: int,
    beta: int,
    s_p: int,
    rivals: Mapping[int, int],
    supply: Mapping[int, int],
    k: int,
) -> Optional[tuple[int, dict[int, int]]]:
    """Largest-slack point of the one-variable feasibility check.

    Decides whether some j <= k voters giving p alpha points each (and beta
    to a per-voter partner from ``supply``) keep every rival at or below
    p's final score.  Exploits that the slack function is unimodal in j:
    nondecreasing while any partner pool is uncapped, then strictly falling.
    Returns (j, per-partner additions) or None.
    """
    j_lo = 0
    for c, s_c in rivals.items():
        if s_c > s_p:
            j_lo = max(j_lo, _ceil_div(s_c - s_p, alpha))
    if j_lo > k:
        return None
    if beta == 0:
        total = sum(supply.values())
        if total < j_lo:
            return None
        j = j_lo
    else:
        j_peak = j_lo
        for c, v_c in supply.items():
            s_c = rivals[c]
            need = beta * v_c + s_c - s_p
            if need > 0:
                j_peak = max(j_peak, _ceil_div(need, alpha))
        j = min(j_peak, k)
        fs = s_p + j * alpha
        slack = sum(min((fs - rivals[c]) // beta, supply[c]) for c in supply)
        if slack < j:
            return None
    # Build per-partner additions totaling exactly j.
    fs = s_p + j * alpha
    grants: dict[int, int] = {}
    for c in sorted(supply):
        v_c = supply[c]
        if beta == 0:
            grants[c] = v_c
        else:
            grants[c] = min((fs - rivals[c]) // beta, v_c)
    excess = sum(grants.values()) - j
    for c in sorted(grants):
        if excess <= 0:
            break
        cut = min(excess, grants[c])
        grants[c] -= cut
        excess -= cut
    grants = {c: g for c, g in grants.items() if g > 0}
    assert sum(grants.values()) == j
    return j, grants


def _split_over_types(
    entries: Sequence[tuple[Vote, int]], grants: Mapping[int, int], key_pos: int
) -> list[tuple[Vote, int]]:
    """Distribute per-candidate grant counts over concrete vote types."""
    taken: list[tuple[Vote, int]] = []
    left = dict(grants)
    for vote, count in entries:
        c = vote[key_pos]
        want = left.get(c, 0)
        if want > 0:
            take = min(want, count)
            taken.append((vote, take))
            left[c] -= take
    assert all(v == 0 for v in left.values())
    return taken


def ccav_alpha_beta(
    inst: CCAVInstance, alpha: int, beta: int, ell: Optional[int] = None
) -> ControlOutcome:
    """CCAV under (alpha, beta, 0, ..., 0) with alpha > beta >= 0.

    Case 1 brute-forces up to ``ell`` added p-second voters, then runs the
    one-variable feasibility check over p-first voters.  Case 2 loops over
    candidate sets S of size < ell that may retain unused p-first voters and
    solves a small ILP with one unused-count variable per member of S plus
    per-type variables for the p-second voters.  ``ell`` defaults to m + 1;
    the brute-force equivalence suite guards this choice.
    """
    if not alpha > beta >= 0:
        raise ControlError("need alpha > beta >= 0")
    m = inst.m
    vector = ScoringVector((alpha, beta) + (0,) * (m - 2))
    if ell is None:
        ell = m + 1
    base = score_profile(inst.registered, vector)
    p = inst.preferred
    rivals = {c: base[c] for c in range(m) if c != p}
    k = inst.add_limit

    v1 = [(v, c) for v, c in inst.unregistered.entries if v[0] == p]
    v2 = [(v, c) for v, c in inst.unregistered.entries if m >= 2 and v[1] == p]

    v1_supply: dict[int, int] = {}
    for vote, count in v1:
        v1_supply[vote[1]] = v1_supply.get(vote[1], 0) + count
    v2_supply: dict[int, int] = {}
    for vote, count in v2:
        v2_supply[vote[0]] = v2_supply.get(vote[0], 0) + count

    # Case 1: at most ell added p-second voters, then p-first voters greedily.
    v2_caps = [min(count, ell, k) for _v, count in v2]
    for combo in itertools.product(*(range(c + 1) for c in v2_caps)):
        t = sum(combo)
        if t > min(ell, k):
            continue
        cur = dict(rivals)
        sp = base[p]
        for (vote, _count), taken in zip(v2, combo):
            sp += beta * taken
            cur[vote[0]] += alpha * taken
        out = _one_var_feasible(alpha, beta, sp, cur, v1_supply, k - t)
        if out is None:
            continue
        _j, grants = out
        added = [(vote, c) for (vote, _n), c in zip(v2, combo) if c > 0]
        added += _split_over_types(v1, grants, 1)
        merged: dict[Vote, int] = {}
        for vote, count in added:
            merged[vote] = merged.get(vote, 0) + count
        witness = tuple(sorted(merged.items()))
        _check_ccav_witness(inst, vector, witness)
        return ControlOutcome(True, added=witness)

    # Case 2: nearly all p-first voters are used; S collects the second-place
    # candidates of the unused ones.
    second_cands = sorted(v1_supply)
    v2_types = sorted(v2_supply)
    for size in range(0, min(ell - 1, len(second_cands)) + 1):
        for S in itertools.combinations(second_cands, size):
            outcome = _alpha_beta_case2(
                inst, vector, alpha, beta, base, S, v1, v1_supply, v2_types, v2_supply
            )
            if outcome is not None:
                return outcome
    return ControlOutcome(False)


def _alpha_beta_case2(
    inst: CCAVInstance,
    vector: ScoringVector,
    alpha: int,
    beta: int,
    base: Mapping[int, int],
    S: tuple[int, ...],
    v1: Sequence[tuple[Vote, int]],
    v1_supply: Mapping[int, int],
    v2_types: Sequence[int],
    v2_supply: Mapping[int, int],
) -> Optional[ControlOutcome]:
    m, p, k = inst.m, inst.preferred, inst.add_limit
    sset = set(S)
    full_added = sum(v for c, v in v1_supply.items() if c not in sset)
    names: list[tuple[str, int, int]] = []
    u_index = {c: i for i, c in enumerate(S)}
    for c in S:
        names.append((f"unused_{c}", 0, v1_supply[c]))
    z_base = len(names)
    z_index = {a: z_base + i for i, a in enumerate(v2_types)}
    for a in v2_types:
        names.append((f"second_{a}", 0, v2_supply[a]))
    nvars = len(names)

    constraints = []
    # Budget: (full_added - sum unused) + sum z <= k.
    coeffs = [0] * nvars
    for c in S:
        coeffs[u_index[c]] = -1
    for a in v2_types:
        coeffs[z_index[a]] = 1
    constraints.append(ilp.Constraint(tuple(coeffs), ilp.LE, k - full_added))
    # Rivals stay at or below p's final score (all terms moved left).
    # final_r = base_r + beta*(added p-first with r second) + alpha*z_r
    # fs_p    = base_p + alpha*(full_added - sum unused) + beta*sum z
    for r in range(m):
        if r == p:
            continue
        coeffs = [0] * nvars
        rhs = base[p] - base[r] + alpha * full_added
        if r in sset:
            coeffs[u_index[r]] -= beta
            rhs -= beta * v1_supply[r]
        elif r in v1_supply:
            rhs -= beta * v1_supply[r]
        if r in z_index:
            coeffs[z_index[r]] += alpha
        for c in S:
            coeffs[u_index[c]] += alpha
        for a in v2_types:
            coeffs[z_index[a]] -= beta
        constraints.append(ilp.Constraint(tuple(coeffs), ilp.LE, rhs))
    res = ilp.solve(ilp.ILPInstance(tuple(names), tuple(constraints)))
    if not res:
        return None
    sol = res.assignment
    grants = {c: v for c, v in v1_supply.items() if c not in sset}
    for c in S:
        grants[c] = v1_supply[c] - sol[u_index[c]]
    grants = {c: g for c, g in grants.items() if g > 0}
    added = _split_over_types(v1, grants, 1)
    z_grants = {a: sol[z_index[a]] for a in v2_types if sol[z_index[a]] > 0}
    v2_entries = [(v, c) for v, c in inst.unregistered.entries if m >= 2 and v[1] == p]
    added += _split_over_types(v2_entries, z_grants, 0)
    merged: dict[Vote, int] = {}
    for vote, count in added:
        merged[vote] = merged.get(vote, 0) + count
    witness = tuple(sorted(merged.items()))
    _check_ccav_witness(inst, vector, witness)
    return ControlOutcome(True, added=witness)


# ---------------------------------------------------------------------------
# t-approval / t-veto
# ---------------------------------------------------------------------------


def _approvers(vote: Vote, t: int) -> frozenset[int]:
    return frozenset(vote[:t])


def ccav_t_approval(inst: CCAVInstance, t: int) -> ControlOutcome:
    """CCAV under t-approval for t in {1, 2, 3}.

    Only voters approving p are worth adding, and topping a winning addition
    up to j* = min(k, all p-approvers) keeps it winning, so a single query at
    j* decides: a greedy check (t=1), the one-variable feasibility check
    (t=2), or capacitated b-edge matching with b(c) = fs_p - s_c (t=3).
    """
    if t not in (1, 2, 3):
        raise ControlError("t-approval control is implemented for t in {1,2,3}")
    m = inst.m
    if t > m:
        raise ControlError("t exceeds the number of candidates")
    vector = ScoringVector((1,) * t + (0,) * (m - t))
    base = score_profile(inst.registered, vector)
    p = inst.preferred
    k = inst.add_limit
    helpers = [(v, c) for v, c in inst.unregistered.entries if p in v[:t]]
    total = sum(c for _, c in helpers)
    j_star = min(k, total)

    if t == 1:
        if any(base[c] > base[p] + j_star for c in range(m) if c != p):
            return ControlOutcome(False)
        grants: dict[Vote, int] = {}
        left = j_star
        for vote, count in helpers:
            take = min(left, count)
            if take:
                grants[vote] = take
            left -= take
        witness = tuple(sorted(grants.items()))
        _check_ccav_witness(inst, vector, witness)
        return ControlOutcome(True, added=witness)

    if t == 2:
        rivals = {c: base[c] for c in range(m) if c != p}
        supply: dict[int, int] = {}
        for vote, count in helpers:
            partner = next(c for c in vote[:2] if c != p)
            supply[partner] = supply.get(partner, 0) + count
        out = _one_var_feasible(1, 1, base[p], rivals, supply, k)
        if out is None:
            return ControlOutcome(False)
        _j, grants = out
        taken: list[tuple[Vote, int]] = []
        left = dict(grants)
        for vote, count in helpers:
            partner = next(c for c in vote[:2] if c != p)
            want = left.get(partner, 0)
            take = min(want, count)
            if take:
                taken.append((vote, take))
                left[partner] -= take
        witness = tuple(sorted(taken))
        _check_ccav_witness(inst, vector, witness)
        return ControlOutcome(True, added=witness)

    # t == 3: capacitated b-edge matching on the rival pairs.
    b = []
    for c in range(m):
        if c == p:
            continue
        bound = base[p] + j_star - base[c]
        if bound < 0:
            return ControlOutcome(False)
        b.append((c, bound))
    edge_types: dict[tuple[int, int], int] = {}
    for vote, count in helpers:
        x, y = sorted(c for c in vote[:3] if c != p)
        edge_types[(x, y)] = edge_types.get((x, y), 0) + count
    edges = tuple((x, y, cap) for (x, y), cap in sorted(edge_types.items()))
    value, mult = max_b_matching(CapacitatedMultigraph(tuple(b), edges))
    if value < j_star:
        return ControlOutcome(False)
    # Trim the matching to exactly j* units, then realize it with vote types.
    excess = value - j_star
    chosen = dict(mult)
    for idx in sorted(chosen):
        if excess <= 0:
            break
        cut = min(excess, chosen[idx])
        chosen[idx] -= cut
        excess -= cut
    pair_need = {edges[idx][:2]: x for idx, x in chosen.items() if x > 0}
    taken = []
    for vote, count in helpers:
        key = tuple(sorted(c for c in vote[:3] if c != p))
        want = pair_need.get(key, 0)
        take = min(want, count)
        if take:
            taken.append((vote, take))
            pair_need[key] -= take
    witness = tuple(sorted(taken))
    _check_ccav_witness(inst, vector, witness)
    return ControlOutcome(True, added=witness)


def ccav_t_veto(inst: CCAVInstance, t: int) -> ControlOutcome:
    """CCAV under t-veto for t in {1, 2}: per-candidate deficits are met
    greedily (t=1) or by a capacitated b-edge cover over vetoed pairs (t=2)."""
    if t not in (1, 2):
        raise ControlError("t-veto control is implemented for t in {1,2}")
    m = inst.m
    if t > m - 1:
        raise ControlError("t-veto needs at least t+1 candidates")
    vector = ScoringVector((1,) * (m - t) + (0,) * t)
    base = score_profile(inst.registered, vector)
    p = inst.preferred
    k = inst.add_limit
    helpers = [(v, c) for v, c in inst.unregistered.entries if p not in v[m - t:]]
    need = {c: max(0, base[c] - base[p]) for c in range(m) if c != p}

    if t == 1:
        supply: dict[int, int] = {}
        for vote, count in helpers:
            supply[vote[-1]] = supply.get(vote[-1], 0) + count
        if sum(need.values()) > k:
            return ControlOutcome(False)
        if any(need[c] > supply.get(c, 0) for c in need):
            return ControlOutcome(False)
        taken = _split_over_types(helpers, {c: n for c, n in need.items() if n > 0}, -1)
        witness = tuple(sorted(taken))
        _check_ccav_witness(inst, vector, witness)
        return ControlOutcome(True, added=witness)

    # t == 2: cover each rival's deficit by voters vetoing it.
    edge_types: dict[tuple[int, int], int] = {}
    for vote, count in helpers:
        x, y = sorted(vote[m - 2:])
        edge_types[(x, y)] = edge_types.get((x, y), 0) + count
    edges = tuple((x, y, cap) for (x, y), cap in sorted(edge_types.items()))
    b = tuple((c, need[c]) for c in sorted(need))
    res = min_b_cover(CapacitatedMultigraph(b, edges))
    if res is None:
        return ControlOutcome(False)
    value, cover = res
    if value > k:
        return ControlOutcome(False)
    pair_need = {edges[idx][:2]: x for idx, x in cover.items() if x > 0}
    taken = []
    for vote, count in helpers:
        key = tuple(sorted(vote[m - 2:]))
        want = pair_need.get(key, 0)
        take = min(want, count)
        if take:
            taken.append((vote, take))
            pair_need[key] -= take
    witness = tuple(sorted(taken))
    _check_ccav_witness(inst, vector, witness)
    return ControlOutcome(True, added=witness)


# ---------------------------------------------------------------------------
# (2, 1, ..., 1, 0) via min-cost flow
# ---------------------------------------------------------------------------


def ccav_two_ones_zero(inst: CCAVInstance) -> ControlOutcome:
    """CCAV under (2, 1, ..., 1, 0) through a min-cost-flow feasibility model.

    Voters ranking p first are always worth adding (each relaxes every rival
    constraint), so exactly j* = min(k, their total) of them go in and the
    flow chooses their last-place composition plus any helpful middle voters.
    Writing first_c / last_c for the added voters putting rival c first /
    last, feasibility is  s_c + first_c - last_c <= s_p + j*  per rival; in
    the credit network this is a lower bound of max(0, -(s_p + j* - s_c)) on
    rival c's slack arc, eliminated by the standard excess transformation.
    The generic ILP remains the authoritative semantics; the suites pin the
    two to each other.
    """
    m = inst.m
    if m < 2:
        raise ControlError("rule needs at least two candidates")
    vector = ScoringVector((2,) + (1,) * (m - 2) + (0,))
    base = score_profile(inst.registered, vector)
    p = inst.preferred
    k = inst.add_limit

    first_types: dict[int, int] = {}   # last candidate -> count, for p-first votes
    middle_types: dict[tuple[int, int], int] = {}  # (first, last) -> count
    for vote, count in inst.unregistered.entries:
        if vote[0] == p:
            first_types[vote[-1]] = first_types.get(vote[-1], 0) + count
        elif vote[-1] != p:
            key = (vote[0], vote[-1])
            middle_types[key] = middle_types.get(key, 0) + count

    j_star = min(k, sum(first_types.values()))
    budget = k - j_star
    rivals = [c for c in range(m) if c != p]
    slack_lb = {}
    base_credit = {}
    for c in rivals:
        r_c = base[p] + j_star - base[c]
        slack_lb[c] = max(0, -r_c)
        base_credit[c] = max(0, r_c)

    nodes: list = ["SRC*", "SNK*", "S", "P", "T"]
    nodes += [("c", c) for c in rivals]
    arcs: list[tuple] = []
    middle_arc_index: dict[int, tuple[int, int]] = {}
    sum_credit = sum(base_credit.values())
    sum_lb = sum(slack_lb.values())
    value = j_star + sum_credit  # original required S -> T value
    big = value + sum(middle_types.values()) + sum_lb + 1

    arcs.append(("S", "P", j_star, 0))
    for c in sorted(first_types):
        if c == p:
            continue
        arcs.append(("P", ("c", c), first_types[c], 0))
    for c in rivals:
        if base_credit[c] > 0:
            arcs.append(("S", ("c", c), base_credit[c], 0))
    for (f, l), cnt in sorted(middle_types.items()):
        middle_arc_index[len(arcs)] = (f, l)
        arcs.append((("c", f), ("c", l), cnt, 1))
    for c in rivals:
        arcs.append((("c", c), "T", big, 0))  # slack, lower bound slack_lb[c]
    # Excess transformation for the lower bounds (slack arcs and the value
    # arc T -> S with bounds [value, value]).
    for c in rivals:
        if slack_lb[c] > 0:
            arcs.append(("SRC*", "T", slack_lb[c], 0))
            arcs.append((("c", c), "SNK*", slack_lb[c], 0))
    arcs.append(("SRC*", "S", value, 0))
    arcs.append(("T", "SNK*", value, 0))

    required = value + sum_lb
    net = FlowNetwork(tuple(nodes), tuple(arcs), "SRC*", "SNK*", required)
    res = min_cost_flow(net)
    if res is None or res.cost > budget:
        return ControlOutcome(False)

    # Extract added voters: p-first composition plus chosen middle voters.
    first_grants: dict[int, int] = {}
    middle_grants: dict[tuple[int, int], int] = {}
    for idx, (tail, head, _cap, _cost) in enumerate(net.arcs):
        f = res.flows[idx]
        if f <= 0:
            continue
        if tail == "P":
            first_grants[head[1]] = f
        elif idx in middle_arc_index:
            middle_grants[middle_arc_index[idx]] = f
    taken: list[tuple[Vote, int]] = []
    left_first = dict(first_grants)
    left_mid = dict(middle_grants)
    for vote, count in inst.unregistered.entries:
        if vote[0] == p:
            want = left_first.get(vote[-1], 0)
            take = min(want, count)
            if take:
                taken.append((vote, take))
                left_first[vote[-1]] -= take
        elif vote[-1] != p:
            key = (vote[0], vote[-1])
            want = left_mid.get(key, 0)
            take = min(want, count)
            if take:
                taken.append((vote, take))
                left_mid[key] -= take
    assert all(v == 0 for v in left_first.values())
    assert all(v == 0 for v in left_mid.values())
    witness = tuple(sorted(taken))
    _check_ccav_witness(inst, vector, witness)
    return ControlOutcome(True, added=witness)


# ---------------------------------------------------------------------------
# ExactlyHalfApproval control by adding candidates
# ---------------------------------------------------------------------------


class UnaryBoundError(RuntimeError):
    """The DP solver refused an instance whose scores are not unary-scale."""


class ControlLimitError(RuntimeError):
    """An exact control solver refused an instance above its size limit."""


@dataclass(frozen=True)
class ApprovalElection:
    """Approval ballots over registered plus unregistered candidates."""

    registered: tuple[int, ...]
    unregistered: tuple[int, ...]
    ballots: tuple[tuple[frozenset[int], int], ...]

    def __post_init__(self) -> None:
        cands = set(self.registered) | set(self.unregistered)
        if len(self.registered) + len(self.unregistered) != len(cands):
            raise ControlError("candidate listed twice")
        for approve, count in self.ballots:
            if not approve <= cands:
                raise ControlError("ballot approves an unknown candidate")
            if count < 1:
                raise ControlError("ballot counts must be positive")

    def approval_scores(self) -> dict[int, int]:
        cands = set(self.registered) | set(self.unregistered)
        scores = {c: 0 for c in cands}
        for approve, count in self.ballots:
            for c in approve:
                scores[c] += count
        return scores


def eha_winner(election: ApprovalElection, candidate: int) -> bool:
    """True iff the candidate's approvals are exactly half of all approvals
    cast for the registered candidates."""
    if candidate not in election.registered:
        raise ControlError("winner queries are about registered candidates")
    scores = election.approval_scores()
    total = sum(scores[c] for c in election.registered)
    return 2 * scores[candidate] == total


def eha_ccac_standard(
    election: ApprovalElection,
    add_limit: int,
    preferred: int,
    unary_bound: int = 100_000,
) -> ControlOutcome:
    """Unary-scale CCAC by dynamic programming over (candidate, total, used).

    Refuses instances whose total approval mass exceeds ``unary_bound``;
    those must go through :func:`eha_ccac_hm`.
    """
    scores = election.approval_scores()
    grand_total = sum(scores.values())
    if grand_total > unary_bound:
        raise UnaryBoundError(
            f"total approvals {grand_total} exceed the unary bound {unary_bound}"
        )
    if preferred not in election.registered:
        raise ControlError("preferred candidate must be registered")
    target = 2 * scores[preferred] - sum(scores[c] for c in election.registered)
    # reachable[t] = minimal subset size reaching added total t, with traceback.
    reachable: dict[int, tuple[int, Optional[tuple[int, int]]]] = {0: (0, None)}
    for c in sorted(election.unregistered):
        s = scores[c]
        for t, (size, _trace) in sorted(reachable.items()):
            nt = t + s
            if nt > grand_total:
                continue
            if nt not in reachable or reachable[nt][0] > size + 1:
                reachable[nt] = (size + 1, (t, c))
    if target < 0 or target not in reachable or reachable[target][0] > add_limit:
        return ControlOutcome(False)
    chosen = []
    t = target
    while True:
        _size, trace = reachable[t]
        if trace is None:
            break
        t, c = trace
        chosen.append(c)
    chosen.sort()
    _check_ccac_witness(election, add_limit, preferred, chosen)
    return ControlOutcome(True, added_candidates=tuple(chosen))


def eha_ccac_hm(
    election: ApprovalElection,
    add_limit: int,
    preferred: int,
    max_unregistered: int = 24,
) -> ControlOutcome:
    """Big-integer CCAC by meet-in-the-middle over the unregistered side."""
    if preferred not in election.registered:
        raise ControlError("preferred candidate must be registered")
    unreg = sorted(election.unregistered)
    if len(unreg) > max_unregistered:
        raise ControlLimitError(
            f"{len(unreg)} unregistered candidates exceed the limit {max_unregistered}"
        )
    scores = election.approval_scores()
    target = 2 * scores[preferred] - sum(scores[c] for c in election.registered)
    half = len(unreg) // 2
    left, right = unreg[:half], unreg[half:]

    def enumerate_side(side: list[int]) -> list[tuple[int, int, int]]:
        out = []
        for mask in range(1 << len(side)):
            total = 0
            size = 0
            mm = mask
            i = 0
            while mm:
                if mm & 1:
                    total += scores[side[i]]
                    size += 1
                mm >>= 1
                i += 1
            out.append((total, size, mask))
        return out

    right_entries = sorted(enumerate_side(right))
    best_right: dict[int, tuple[int, int]] = {}
    for total, size, mask in right_entries:
        cur = best_right.get(total)
        if cur is None or (size, mask) < cur:
            best_right[total] = (size, mask)
    for total, size, mask in sorted(enumerate_side(left)):
        want = target - total
        hit = best_right.get(want)
        if hit is None:
            continue
        rsize, rmask = hit
        if size + rsize > add_limit:
            continue
        chosen = [left[i] for i in range(len(left)) if mask >> i & 1]
        chosen += [right[i] for i in range(len(right)) if rmask >> i & 1]
        chosen.sort()
        _check_ccac_witness(election, add_limit, preferred, chosen)
        return ControlOutcome(True, added_candidates=tuple(chosen))
    return ControlOutcome(False)


def _check_ccac_witness(
    election: ApprovalElection, add_limit: int, preferred: int, chosen: Sequence[int]
) -> None:
    assert len(chosen) <= add_limit, "witness exceeds the candidate add limit"
    assert set(chosen) <= set(election.unregistered)
    final = ApprovalElection(
        tuple(election.registered) + tuple(chosen),
        tuple(c for c in election.unregistered if c not in set(chosen)),
        election.ballots,
    )
    assert eha_winner(final, preferred), "witness does not make p an EHA winner"
