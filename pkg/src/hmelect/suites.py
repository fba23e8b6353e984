"""Seeded equivalence suites: fast solvers against brute-force oracles.

Each suite draws a reproducible batch of random instances, runs every
applicable solver next to its oracle, and returns one row per comparison.
The CLI surfaces these through ``hmelect verify``; the acceptance tests run
larger, criterion-specific versions of the same checks.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from hmelect import oracles, reductions
from hmelect.control import (
    CCAVInstance,
    CCDVInstance,
    ccav_alpha_beta,
    ccav_generic_ilp,
    ccav_t_approval,
    ccav_t_veto,
    ccav_two_ones_zero,
    ccdv_generic_ilp,
)
from hmelect.core import HMProfile, ScoringVector, all_votes
from hmelect.hardwinners import (
    RelationVote,
    kemeny_consensus,
    kemeny_winner,
    profile_relation_entries,
    young_score,
)
from hmelect.scheduling import ScheduleInstance, hm_schedule, hm_schedule_capped, hm_schedule_ilp
from hmelect import ilp


@dataclass
class CheckRow:
    index: int
    case: str
    comparator: str
    expected: str
    got: str
    agree: bool


@dataclass
class SuiteResult:
    suite: str
    seed: int
    instances: int
    rows: list[CheckRow] = field(default_factory=list)
    runtimes: list[float] = field(default_factory=list)

    @property
    def agreements(self) -> int:
        return sum(1 for row in self.rows if row.agree)

    @property
    def disagreements(self) -> int:
        return sum(1 for row in self.rows if not row.agree)

    def per_comparator(self) -> dict[str, tuple[int, int]]:
        out: dict[str, list[int]] = {}
        for row in self.rows:
            pair = out.setdefault(row.comparator, [0, 0])
            pair[0] += row.agree
            pair[1] += 1
        return {k: (a, t) for k, (a, t) in sorted(out.items())}

    def summary(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "instances": self.instances,
            "checks": len(self.rows),
            "agreements": self.agreements,
            "disagreements": self.disagreements,
            "per_comparator": {
                k: {"agree": a, "total": t} for k, (a, t) in self.per_comparator().items()
            },
        }


def random_profile(rng: random.Random, m: int, max_types: int, max_count: int) -> HMProfile:
    votes = all_votes(m)
    chosen = rng.sample(votes, rng.randint(0, min(max_types, len(votes))))
    return HMProfile(m, tuple((v, rng.randint(1, max_count)) for v in chosen))


def run_control_suite(seed: int, instances: int) -> SuiteResult:
    rng = random.Random(seed)
    result = SuiteResult("control", seed, instances)
    for idx in range(instances):
        m = rng.choice([2, 3, 4])
        inst = CCAVInstance(
            random_profile(rng, m, 4, 5),
            random_profile(rng, m, 4, 5),
            rng.randint(0, 8),
            rng.randrange(m),
        )
        start = time.perf_counter()
        cases: list[tuple[str, ScoringVector, Callable[[], bool]]] = []
        alpha, beta = rng.choice([(2, 1), (3, 1), (2, 0), (4, 2)])
        cases.append(
            (
                "alpha-beta",
                ScoringVector((alpha, beta) + (0,) * (m - 2)),
                lambda a=alpha, b=beta: ccav_alpha_beta(inst, a, b).decision,
            )
        )
        cases.append(
            (
                "two-ones-zero",
                ScoringVector((2,) + (1,) * (m - 2) + (0,)),
                lambda: ccav_two_ones_zero(inst).decision,
            )
        )
        for t in (1, 2, 3):
            if t <= m:
                cases.append(
                    (
                        f"{t}-approval",
                        ScoringVector((1,) * t + (0,) * (m - t)),
                        lambda t=t: ccav_t_approval(inst, t).decision,
                    )
                )
        for t in (1, 2):
            if t <= m - 1:
                cases.append(
                    (
                        f"{t}-veto",
                        ScoringVector((1,) * (m - t) + (0,) * t),
                        lambda t=t: ccav_t_veto(inst, t).decision,
                    )
                )
        for name, vector, solver in cases:
            want = oracles.oracle_ccav(inst, vector.alphas)
            got = solver()
            generic = ccav_generic_ilp(inst, vector).decision
            result.rows.append(
                CheckRow(idx, name, f"{name}-vs-oracle", str(want), str(got), got == want)
            )
            result.rows.append(
                CheckRow(idx, name, "generic-ilp-vs-oracle", str(want), str(generic), generic == want)
            )
        dinst = CCDVInstance(random_profile(rng, m, 4, 5), rng.randint(0, 6), rng.randrange(m))
        vec = ScoringVector(tuple(sorted((rng.randint(0, 4) for _ in range(m)), reverse=True)))
        want = oracles.oracle_ccdv(dinst, vec.alphas)
        got = ccdv_generic_ilp(dinst, vec).decision
        result.rows.append(
            CheckRow(idx, "ccdv", "ccdv-ilp-vs-oracle", str(want), str(got), got == want)
        )
        result.runtimes.append(time.perf_counter() - start)
    return result


def run_scheduling_suite(seed: int, instances: int) -> SuiteResult:
    rng = random.Random(seed)
    result = SuiteResult("scheduling", seed, instances)
    for idx in range(instances):
        start = time.perf_counter()
        if idx % 3 == 2:
            lengths = (2, 3, 5)
            counts = tuple(rng.randint(0, 6) for _ in range(3))
            deadlines = tuple(rng.randint(0, 40) for _ in range(rng.randint(1, 3)))
        else:
            lengths = (2, 3)
            counts = (rng.randint(0, 10), rng.randint(0, 10))
            deadlines = tuple(rng.randint(0, 30) for _ in range(rng.randint(0, 4)))
        inst = ScheduleInstance(lengths, counts, deadlines)
        want = oracles.oracle_schedule(inst)
        witness = hm_schedule(inst)
        got = witness is not None
        ilp_ans = bool(ilp.solve(hm_schedule_ilp(inst)))
        result.rows.append(
            CheckRow(idx, "uncapped", "dp-vs-oracle", str(want), str(got), got == want)
        )
        result.rows.append(
            CheckRow(idx, "uncapped", "ilp-vs-oracle", str(want), str(ilp_ans), ilp_ans == want)
        )
        if witness is not None:
            result.rows.append(
                CheckRow(idx, "uncapped", "witness-verifies", "True", str(witness.verify(inst)), witness.verify(inst))
            )
        cap = rng.randint(0, 6)
        capped = ScheduleInstance(lengths, counts, deadlines, cap)
        want_c = oracles.oracle_schedule(capped)
        wit_c = hm_schedule_capped(capped)
        result.rows.append(
            CheckRow(idx, "capped", "capped-vs-oracle", str(want_c), str(wit_c is not None), (wit_c is not None) == want_c)
        )
        result.runtimes.append(time.perf_counter() - start)
    return result


def run_young_suite(seed: int, instances: int) -> SuiteResult:
    rng = random.Random(seed)
    result = SuiteResult("young", seed, instances)
    for idx in range(instances):
        start = time.perf_counter()
        m = rng.randint(1, 4)
        votes = all_votes(m)
        entries = []
        left = 12
        for v in rng.sample(votes, rng.randint(0, min(3, len(votes)))):
            c = rng.randint(1, min(4, left))
            entries.append((v, c))
            left -= c
        profile = HMProfile(m, tuple(entries))
        for c in range(m):
            want = oracles.oracle_young(profile, c)
            got = young_score(profile, c)
            result.rows.append(
                CheckRow(idx, f"candidate-{c}", "young-vs-oracle", str(want), str(got), got == want)
            )
        result.runtimes.append(time.perf_counter() - start)
    return result


def run_kemeny_chain_suite(seed: int, instances: int) -> SuiteResult:
    """Link checks for the hardness chain plus Kemeny-vs-oracle agreement."""
    rng = random.Random(seed)
    result = SuiteResult("kemeny-chain", seed, instances)
    for idx in range(instances):
        start = time.perf_counter()
        m = rng.randint(1, 5)
        profile = random_profile(rng, m, 5, 4)
        entries = profile_relation_entries(profile)
        want = oracles.oracle_kemeny([(rv.pairs, c) for rv, c in entries], m)
        got = kemeny_consensus(entries, m=m)
        result.rows.append(
            CheckRow(
                idx,
                "consensus",
                "kemeny-vs-oracle",
                str(want.doubled_score),
                str(got.doubled_score),
                want.doubled_score == got.doubled_score and want.consensus == got.consensus,
            )
        )
        # McGarvey reconstruction on a random digraph.
        nv = rng.randint(1, 5)
        verts = tuple(f"v{i}" for i in range(nv))
        used = set()
        arcs = []
        for _ in range(rng.randint(0, 6)):
            if nv < 2:
                break
            u, v = rng.sample(verts, 2)
            if (u, v) in used or (v, u) in used:
                continue
            used.add((u, v))
            arcs.append((u, v, rng.randint(1, 6)))
        digraph = reductions.EdgeWeightedDigraph(verts, tuple(arcs))
        prof, target = reductions.wfasm_to_kemeny(digraph, verts[0])
        majority = reductions.weighted_majority_arcs(prof)
        expected_arcs = {
            (prof.names.index(u), prof.names.index(v)): w
            for u, v, w in reductions.doubled(digraph).arcs
            if w > 0
        }
        result.rows.append(
            CheckRow(idx, "mcgarvey", "majority-graph-exact", "exact", "exact", majority == expected_arcs)
        )
        # Answer preservation of the FAS -> Kemeny link on small digraphs.
        if nv <= 4:
            want_member = oracles.oracle_fas_membership(digraph.vertices, digraph.arcs, verts[0])
            got_member = kemeny_winner(profile_relation_entries(prof), target, m=prof.m)
            result.rows.append(
                CheckRow(idx, "fas-to-kemeny", "membership-preserved", str(want_member), str(got_member), want_member == got_member)
            )
        result.runtimes.append(time.perf_counter() - start)
    return result


SUITES: dict[str, Callable[[int, int], SuiteResult]] = {
    "control": run_control_suite,
    "scheduling": run_scheduling_suite,
    "young": run_young_suite,
    "kemeny-chain": run_kemeny_chain_suite,
}
