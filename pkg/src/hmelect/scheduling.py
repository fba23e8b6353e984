"""High-multiplicity scheduling with machine-dependent deadlines, and the
manipulation problems that reduce to it.

Job counts and deadlines are big integers (binary encoding); only the set of
job lengths is fixed.  The core decision procedure groups jobs into full
blocks of lcm-length work plus bounded leftovers, which keeps the dynamic
program polynomial in the bit length of the input.  Every feasible answer
carries a complete per-machine witness that is re-verified before return.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from hmelect import ilp
from hmelect.core import (
    HMProfile,
    ProfileError,
    ScoringRuleFamily,
    Vote,
    merge_profiles,
    score_profile,
    winners,
)
from hmelect.flows import FlowNetwork, min_cost_flow


class ScheduleError(ValueError):
    """Raised for malformed scheduling or manipulation instances."""


@dataclass(frozen=True)
class ScheduleInstance:
    """n_j jobs of length lengths[j]; machine i must finish by deadlines[i].

    A negative deadline makes the instance trivially infeasible (the
    corresponding load constraint cannot hold even with zero jobs); the
    manipulation bridge uses this to mark rivals that p can never catch.
    """

    lengths: tuple[int, ...]
    counts: tuple[int, ...]
    deadlines: tuple[int, ...]
    cap: Optional[int] = None

    def __post_init__(self) -> None:
        if not self.lengths:
            raise ScheduleError("need at least one job length")
        if any(l <= 0 for l in self.lengths):
            raise ScheduleError("job lengths must be positive")
        if any(
            self.lengths[i] >= self.lengths[i + 1] for i in range(len(self.lengths) - 1)
        ):
            raise ScheduleError("job lengths must be strictly increasing")
        if len(self.counts) != len(self.lengths):
            raise ScheduleError("one job count per length is required")
        if any(n < 0 for n in self.counts):
            raise ScheduleError("job counts must be nonnegative")
        if self.cap is not None and self.cap < 0:
            raise ScheduleError("per-machine cap must be nonnegative")

    @property
    def num_machines(self) -> int:
        return len(self.deadlines)

    def without_cap(self) -> "ScheduleInstance":
        return ScheduleInstance(self.lengths, self.counts, self.deadlines, None)


@dataclass(frozen=True)
class ScheduleAssignment:
    """x[i][j] = number of length-lengths[j] jobs on machine i."""

    x: tuple[tuple[int, ...], ...]

    def verify(self, inst: ScheduleInstance) -> bool:
        if len(self.x) != inst.num_machines:
            return False
        C = len(inst.lengths)
        for j in range(C):
            if sum(row[j] for row in self.x) != inst.counts[j]:
                return False
        for row, deadline in zip(self.x, inst.deadlines):
            if len(row) != C or any(v < 0 for v in row):
                return False
            if sum(l * v for l, v in zip(inst.lengths, row)) > deadline:
                return False
            if inst.cap is not None and sum(row) > inst.cap:
                return False
        return True


def _patterns(lengths: Sequence[int], budget: int, caps: Sequence[int]) -> list[tuple[int, ...]]:
    """All leftover vectors (t_1..t_C) with sum t_j * l_j <= budget, t_j <= caps[j]."""
    out: list[tuple[int, ...]] = []

    def rec(j: int, left: int, acc: list[int]) -> None:
        if j == len(lengths):
            out.append(tuple(acc))
            return
        top = min(caps[j], left // lengths[j])
        for t in range(top + 1):
            acc.append(t)
            rec(j + 1, left - t * lengths[j], acc)
            acc.pop()

    rec(0, budget, [])
    return out


def _decomposition(lengths: Sequence[int], deadlines: Sequence[int]):
    """Per-machine split D_i = D'_i + residual, D'_i a multiple of the lcm.

    D'_i is the largest multiple of ell = lcm(lengths) that leaves room for a
    worst-case leftover load of sum_j (ell/l_j - 1) * l_j; machines whose
    deadline cannot accommodate that are all residual.
    """
    ell = math.lcm(*lengths)
    leftover_load = sum(ell - l for l in lengths)
    dprime = []
    residuals = []
    for d in deadlines:
        dp = ((d - leftover_load) // ell) * ell if d >= leftover_load else 0
        dp = max(dp, 0)
        r = d - dp
        assert r <= leftover_load + ell - 1
        dprime.append(dp)
        residuals.append(r)
    return ell, leftover_load, dprime, residuals


def hm_schedule(inst: ScheduleInstance) -> Optional[ScheduleAssignment]:
    """Decide the uncapped problem and build a witness, or return None.

    Leftover placement is found by dynamic programming over machines; full
    blocks are then filled greedily (machine order, longest length first)
    into the block-aligned part of each deadline.
    """
    if inst.cap is not None:
        raise ScheduleError("hm_schedule does not handle per-machine caps")
    if any(d < 0 for d in inst.deadlines):
        return None
    lengths, counts = inst.lengths, inst.counts
    C = len(lengths)
    m = inst.num_machines
    if m == 0:
        return ScheduleAssignment(()) if all(n == 0 for n in counts) else None
    ell, _leftover_load, dprime, residuals = _decomposition(lengths, inst.deadlines)
    block_jobs = [ell // l for l in lengths]
    total_slots = sum(dprime) // ell

    # DP over machines: which leftover totals (a_1..a_C) fit in the residuals.
    layers: list[dict[tuple[int, ...], Optional[tuple[tuple[int, ...], tuple[int, ...]]]]]
    layers = [{(0,) * C: None}]
    for r in residuals:
        caps = [min(counts[j], r // lengths[j]) for j in range(C)]
        pats = _patterns(lengths, r, caps)
        new: dict = {}
        for state in sorted(layers[-1]):
            for pat in pats:
                ns = tuple(state[j] + pat[j] for j in range(C))
                if any(ns[j] > counts[j] for j in range(C)):
                    continue
                if ns not in new:
                    new[ns] = (state, pat)
        layers.append(new)

    chosen = None
    for a in sorted(layers[-1]):
        if any((counts[j] - a[j]) % block_jobs[j] for j in range(C)):
            continue
        if sum((counts[j] - a[j]) // block_jobs[j] for j in range(C)) > total_slots:
            continue
        chosen = a
        break
    if chosen is None:
        return None

    # Trace leftover patterns back through the DP layers.
    leftover_rows: list[tuple[int, ...]] = []
    state = chosen
    for i in range(m, 0, -1):
        prev, pat = layers[i][state]
        leftover_rows.append(pat)
        state = prev
    leftover_rows.reverse()

    rows = [list(pat) for pat in leftover_rows]
    blocks = [(counts[j] - chosen[j]) // block_jobs[j] for j in range(C)]
    for i in range(m):
        slots = dprime[i] // ell
        for j in reversed(range(C)):
            take = min(blocks[j], slots)
            rows[i][j] += take * block_jobs[j]
            blocks[j] -= take
            slots -= take
    assert all(b == 0 for b in blocks)
    assignment = ScheduleAssignment(tuple(tuple(row) for row in rows))
    assert assignment.verify(inst)
    return assignment


def hm_schedule_ilp(inst: ScheduleInstance) -> ilp.ILPInstance:
    """Fixed-variable-count ILP deciding exactly the same set as hm_schedule.

    Machines are grouped into classes by residual value; one variable per
    (class, leftover pattern) counts the machines of that class scheduled
    with that pattern, and per-length quotient variables encode the
    divisibility of the remaining jobs into full blocks.
    """
    if inst.cap is not None:
        raise ScheduleError("hm_schedule_ilp does not handle per-machine caps")
    lengths, counts = inst.lengths, inst.counts
    C = len(lengths)
    if any(d < 0 for d in inst.deadlines):
        return ilp.ILPInstance(
            (("infeasible_marker", 0, 0),),
            (ilp.Constraint((1,), ilp.EQ, 1),),
        )
    ell, _leftover_load, dprime, residuals = _decomposition(lengths, inst.deadlines)
    block_jobs = [ell // l for l in lengths]
    total_slots = sum(dprime) // ell

    class_count: dict[int, int] = {}
    for r in residuals:
        class_count[r] = class_count.get(r, 0) + 1

    variables: list[tuple[str, int, int]] = []
    pattern_vars: list[tuple[int, tuple[int, ...]]] = []  # (class residual, pattern)
    for rho in sorted(class_count):
        caps = [rho // lengths[j] for j in range(C)]
        for pat in _patterns(lengths, rho, caps):
            variables.append((f"y_r{rho}_" + "_".join(map(str, pat)), 0, class_count[rho]))
            pattern_vars.append((rho, pat))
    q_base = len(variables)
    for j in range(C):
        variables.append((f"q_{j}", 0, counts[j] // block_jobs[j]))
    nvars = len(variables)

    constraints: list[ilp.Constraint] = []
    for rho in sorted(class_count):
        coeffs = [0] * nvars
        for idx, (r, _pat) in enumerate(pattern_vars):
            if r == rho:
                coeffs[idx] = 1
        constraints.append(ilp.Constraint(tuple(coeffs), ilp.EQ, class_count[rho]))
    for j in range(C):
        coeffs = [0] * nvars
        for idx, (_r, pat) in enumerate(pattern_vars):
            coeffs[idx] = pat[j]
        coeffs[q_base + j] = block_jobs[j]
        constraints.append(ilp.Constraint(tuple(coeffs), ilp.EQ, counts[j]))
    coeffs = [0] * nvars
    for j in range(C):
        coeffs[q_base + j] = 1
    constraints.append(ilp.Constraint(tuple(coeffs), ilp.LE, total_slots))
    return ilp.ILPInstance(tuple(variables), tuple(constraints))


def _greedy_capped(inst: ScheduleInstance, clamped: list[int]) -> Optional[ScheduleAssignment]:
    """Verified longest-first greedy attempt; a cheap but sound fast path."""
    C = len(inst.lengths)
    order = sorted(range(inst.num_machines), key=lambda i: (-clamped[i], i))
    remaining = list(inst.counts)
    rows = [[0] * C for _ in range(inst.num_machines)]
    for i in order:
        load_left = clamped[i]
        cap_left = inst.cap
        for j in reversed(range(C)):
            take = min(remaining[j], load_left // inst.lengths[j], cap_left)
            rows[i][j] = take
            remaining[j] -= take
            load_left -= take * inst.lengths[j]
            cap_left -= take
    if any(remaining):
        return None
    assignment = ScheduleAssignment(tuple(tuple(r) for r in rows))
    return assignment if assignment.verify(inst) else None


def hm_schedule_capped(inst: ScheduleInstance) -> Optional[ScheduleAssignment]:
    """Decide scheduling with at most ``cap`` jobs per machine.

    Deadlines are clamped to (max length) * cap.  Machines with deadline at
    most (min length) * cap satisfy the cap automatically and go through the
    block/leftover encoding; the remaining machines get explicit per-machine
    job-count variables.  The combined system is one exact ILP.
    """
    if inst.cap is None:
        raise ScheduleError("hm_schedule_capped requires a per-machine cap")
    if any(d < 0 for d in inst.deadlines):
        return None
    cap = inst.cap
    lengths, counts = inst.lengths, inst.counts
    C = len(lengths)
    m = inst.num_machines
    total_jobs = sum(counts)
    if cap >= total_jobs:
        base = hm_schedule(inst.without_cap())
        if base is None:
            return None
        assert base.verify(inst)
        return base
    if cap == 0:
        if total_jobs == 0:
            return ScheduleAssignment(tuple((0,) * C for _ in range(m)))
        return None
    clamped = [min(d, lengths[-1] * cap) for d in inst.deadlines]
    greedy = _greedy_capped(inst, clamped)
    if greedy is not None:
        return greedy

    big = [i for i in range(m) if clamped[i] > lengths[0] * cap]
    small = [i for i in range(m) if clamped[i] <= lengths[0] * cap]
    small_deadlines = [clamped[i] for i in small]
    ell, _leftover_load, dprime, residuals = _decomposition(lengths, small_deadlines)
    block_jobs = [ell // l for l in lengths]
    total_slots = sum(dprime) // ell
    class_count: dict[int, int] = {}
    for r in residuals:
        class_count[r] = class_count.get(r, 0) + 1

    variables: list[tuple[str, int, int]] = []
    big_var: dict[tuple[int, int], int] = {}
    for i in big:
        for j in range(C):
            big_var[(i, j)] = len(variables)
            variables.append((f"x_{i}_{j}", 0, min(cap, clamped[i] // lengths[j])))
    pattern_vars: list[tuple[int, tuple[int, ...]]] = []
    pat_base = len(variables)
    for rho in sorted(class_count):
        caps = [rho // lengths[j] for j in range(C)]
        for pat in _patterns(lengths, rho, caps):
            variables.append((f"y_r{rho}_" + "_".join(map(str, pat)), 0, class_count[rho]))
            pattern_vars.append((rho, pat))
    q_base = len(variables)
    for j in range(C):
        variables.append((f"q_{j}", 0, counts[j] // block_jobs[j]))
    nvars = len(variables)

    constraints: list[ilp.Constraint] = []
    for i in big:
        coeffs = [0] * nvars
        for j in range(C):
            coeffs[big_var[(i, j)]] = lengths[j]
        constraints.append(ilp.Constraint(tuple(coeffs), ilp.LE, clamped[i]))
        coeffs = [0] * nvars
        for j in range(C):
            coeffs[big_var[(i, j)]] = 1
        constraints.append(ilp.Constraint(tuple(coeffs), ilp.LE, cap))
    for rho in sorted(class_count):
        coeffs = [0] * nvars
        for idx, (r, _pat) in enumerate(pattern_vars):
            if r == rho:
                coeffs[pat_base + idx] = 1
        constraints.append(ilp.Constraint(tuple(coeffs), ilp.EQ, class_count[rho]))
    for j in range(C):
        coeffs = [0] * nvars
        for i in big:
            coeffs[big_var[(i, j)]] = 1
        for idx, (_r, pat) in enumerate(pattern_vars):
            coeffs[pat_base + idx] = pat[j]
        coeffs[q_base + j] = block_jobs[j]
        constraints.append(ilp.Constraint(tuple(coeffs), ilp.EQ, counts[j]))
    coeffs = [0] * nvars
    for j in range(C):
        coeffs[q_base + j] = 1
    constraints.append(ilp.Constraint(tuple(coeffs), ilp.LE, total_slots))

    res = ilp.solve(ilp.ILPInstance(tuple(variables), tuple(constraints)))
    if not res:
        return None
    sol = res.assignment

    rows = [[0] * C for _ in range(m)]
    for (i, j), vidx in big_var.items():
        rows[i][j] = sol[vidx]
    # Distribute class patterns over the machines of each class, in order.
    pattern_pool: dict[int, list[tuple[int, ...]]] = {rho: [] for rho in class_count}
    for idx, (rho, pat) in enumerate(pattern_vars):
        pattern_pool[rho].extend([pat] * sol[pat_base + idx])
    taken: dict[int, int] = {rho: 0 for rho in class_count}
    leftover_rows = []
    for pos, i in enumerate(small):
        rho = residuals[pos]
        pat = pattern_pool[rho][taken[rho]]
        taken[rho] += 1
        leftover_rows.append((i, pos, pat))
        for j in range(C):
            rows[i][j] += pat[j]
    blocks = [sol[q_base + j] for j in range(C)]
    for i, pos, _pat in leftover_rows:
        slots = dprime[pos] // ell
        for j in reversed(range(C)):
            take = min(blocks[j], slots)
            rows[i][j] += take * block_jobs[j]
            blocks[j] -= take
            slots -= take
    assert all(b == 0 for b in blocks)
    assignment = ScheduleAssignment(tuple(tuple(r) for r in rows))
    assert assignment.verify(inst)
    return assignment


# ---------------------------------------------------------------------------
# Manipulation via scheduling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ManipulationInstance:
    """Can k manipulators make ``preferred`` win under a block scoring rule?"""

    rule: ScoringRuleFamily
    nonmanipulators: HMProfile
    k: int
    preferred: int

    def __post_init__(self) -> None:
        if self.rule.kind != "block":
            raise ScheduleError("manipulation solver needs a block-pattern rule")
        if self.k < 0:
            raise ScheduleError("manipulator count must be nonnegative")
        m = self.nonmanipulators.m
        if not (0 <= self.preferred < m):
            raise ScheduleError("preferred candidate out of range")
        self.rule.vector(m)  # applicability check


@dataclass(frozen=True)
class ManipulationOutcome:
    decision: bool
    ballots: tuple[tuple[Vote, int], ...] = ()


def manipulation_to_scheduling(mi: ManipulationInstance) -> ScheduleInstance:
    """Jobs: k*m_j of each block coefficient; machine per rival with deadline
    s_p + alpha0*k - s_rival; at most k jobs per machine."""
    m = mi.nonmanipulators.m
    vector = mi.rule.vector(m)
    scores = score_profile(mi.nonmanipulators, vector)
    alpha0 = mi.rule.alphas[0]
    blocks = mi.rule.blocks
    lengths = tuple(a for a, _ in reversed(blocks))
    counts = tuple(mult * mi.k for _, mult in reversed(blocks))
    rivals = [c for c in range(m) if c != mi.preferred]
    p_final = scores[mi.preferred] + alpha0 * mi.k
    deadlines = tuple(p_final - scores[c] for c in rivals)
    return ScheduleInstance(lengths, counts, deadlines, cap=mi.k)


def _pattern_from_flow(
    cells: list[list[int]], zeros: list[int], quotas: list[int]
) -> list[int]:
    """One ballot pattern (rival -> group) consistent with the remaining cell
    counts; exists whenever row/column margins are consistent."""
    nriv = len(cells)
    ngroups = len(quotas)
    nodes: list = ["src", "snk"]
    nodes += [("r", i) for i in range(nriv)]
    nodes += [("g", g) for g in range(ngroups)]
    arcs = []
    for i in range(nriv):
        arcs.append(("src", ("r", i), 1, 0))
        for g in range(ngroups - 1):
            if cells[i][g] > 0:
                arcs.append((("r", i), ("g", g), 1, 0))
        if zeros[i] > 0:
            arcs.append((("r", i), ("g", ngroups - 1), 1, 0))
    for g in range(ngroups):
        arcs.append((("g", g), "snk", quotas[g], 0))
    net = FlowNetwork(tuple(nodes), tuple(arcs), "src", "snk", nriv)
    res = min_cost_flow(net)
    assert res is not None, "ballot pattern must exist while margins are consistent"
    pattern = [-1] * nriv
    for k, (tail, head, _c, _w) in enumerate(net.arcs):
        if res.flows[k] == 1 and isinstance(tail, tuple) and tail[0] == "r":
            pattern[tail[1]] = head[1]
    assert all(g >= 0 for g in pattern)
    return pattern


def _assignment_to_ballots(
    mi: ManipulationInstance, rivals: list[int], assignment: ScheduleAssignment
) -> tuple[tuple[Vote, int], ...]:
    """Turn per-rival slot counts into k complete manipulator ballots.

    Peels one ballot pattern at a time (Birkhoff style): each peel zeroes at
    least one cell, so the number of distinct ballots stays polynomial even
    though k is a binary integer.
    """
    C = len(mi.rule.blocks)
    nriv = len(rivals)
    quotas = [mult for _a, mult in mi.rule.blocks]
    zero_quota = nriv - sum(quotas)
    quotas = quotas + [zero_quota]
    # cells[i][g]: slots of block g still owed to rival i (block order = rule order).
    cells = [[assignment.x[i][C - 1 - g] for g in range(C)] for i in range(nriv)]
    remaining = mi.k
    ballots: dict[Vote, int] = {}
    while remaining > 0:
        zeros = [remaining - sum(cells[i]) for i in range(nriv)]
        assert all(z >= 0 for z in zeros)
        pattern = _pattern_from_flow(cells, zeros, quotas)
        t = remaining
        for i, g in enumerate(pattern):
            t = min(t, zeros[i] if g == C else cells[i][g])
        assert t >= 1
        groups: list[list[int]] = [[] for _ in range(C + 1)]
        for i, g in enumerate(pattern):
            groups[g].append(rivals[i])
        ranking = [mi.preferred]
        for g in range(C + 1):
            ranking.extend(sorted(groups[g]))
        vote = tuple(ranking)
        ballots[vote] = ballots.get(vote, 0) + t
        for i, g in enumerate(pattern):
            if g != C:
                cells[i][g] -= t
        remaining -= t
    return tuple(sorted(ballots.items()))


def cucm_pure_scoring(mi: ManipulationInstance) -> ManipulationOutcome:
    """Constructive unweighted coalitional manipulation for block scoring
    rules, decided through the capped scheduler; on yes-instances the
    returned ballots replay to a win for the preferred candidate."""
    m = mi.nonmanipulators.m
    rivals = [c for c in range(m) if c != mi.preferred]
    sched = manipulation_to_scheduling(mi)
    assignment = hm_schedule_capped(sched)
    if assignment is None:
        return ManipulationOutcome(False)
    if mi.k == 0:
        return ManipulationOutcome(True, ())
    ballots = _assignment_to_ballots(mi, rivals, assignment)
    assert sum(count for _, count in ballots) == mi.k
    vector = mi.rule.vector(m)
    manip_profile = HMProfile(m, ballots)
    final = merge_profiles(mi.nonmanipulators, manip_profile)
    assert mi.preferred in winners(score_profile(final, vector)), (
        "schedule witness did not replay to a win"
    )
    return ManipulationOutcome(True, ballots)


# ---------------------------------------------------------------------------
# JSON schema
# ---------------------------------------------------------------------------


def schedule_to_json(inst: ScheduleInstance) -> dict:
    data: dict = {
        "lengths": list(inst.lengths),
        "counts": [str(c) for c in inst.counts],
        "deadlines": [str(d) for d in inst.deadlines],
    }
    data["cap"] = str(inst.cap) if inst.cap is not None else None
    return data


def schedule_from_json(data) -> ScheduleInstance:
    try:
        cap = data.get("cap")
        return ScheduleInstance(
            tuple(int(l) for l in data["lengths"]),
            tuple(int(c) for c in data["counts"]),
            tuple(int(d) for d in data["deadlines"]),
            int(cap) if cap is not None else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ScheduleError(f"malformed schedule JSON: {exc}") from exc
