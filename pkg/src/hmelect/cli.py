"""Command-line front end: winner queries, control, manipulation, scheduling,
reductions, and the verification suites.

All numeric values in the JSON payloads are decimal strings so big integers
survive any consumer; identical inputs and flags produce byte-identical
stdout.  Exit codes: 0 computed (regardless of the yes/no answer), 1 usage
error, 2 malformed input, 3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from hmelect import ilp, oracles, reductions, suites
from hmelect import control as ctl
from hmelect import hardwinners as hw
from hmelect import scheduling as sched
from hmelect.core import (
    HMProfile,
    ProfileError,
    ScoringRuleFamily,
    ScoringVector,
    merge_profiles,
    parse_preflib,
    profile_from_json,
    profile_to_json,
    score_profile,
    winners,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D102 - argparse hook
        raise UsageError(message)


def _stringify(value):
    """Render all integers (except booleans) as decimal strings."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_stringify(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _stringify(v) for k, v in value.items()}
    return value


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(_stringify(payload), sort_keys=True, separators=(",", ":")) + "\n")


def _log(message: str) -> None:
    print(message, file=sys.stderr)


# ---------------------------------------------------------------------------
# Input loading
# ---------------------------------------------------------------------------


def _load_profile(path: str, fmt: Optional[str]) -> HMProfile:
    text = Path(path).read_text()
    if fmt is None:
        fmt = "json" if path.endswith(".json") else "soc"
    if fmt == "soc":
        return parse_preflib(text)
    if fmt == "json":
        return profile_from_json(json.loads(text))
    raise UsageError(f"unknown profile format {fmt!r}")


def _load_json(path: str) -> dict:
    return json.loads(Path(path).read_text())


def parse_rule(spec: str) -> ScoringRuleFamily:
    """Rule grammar: plurality | borda | veto | approval:T | veto:T |
    alpha-beta:A,B | two-ones-zero | vector:a1,a2,... | block:A0;a1xM1,a2xM2"""
    spec = spec.strip()
    if spec == "plurality":
        return ScoringRuleFamily.t_approval(1)
    if spec == "veto":
        return ScoringRuleFamily.t_veto(1)
    if spec == "two-ones-zero":
        return ScoringRuleFamily.two_ones_zero()
    if spec == "borda":
        return ScoringRuleFamily("borda")
    kind, _, arg = spec.partition(":")
    try:
        if kind == "approval":
            return ScoringRuleFamily.t_approval(int(arg))
        if kind == "veto":
            return ScoringRuleFamily.t_veto(int(arg))
        if kind == "alpha-beta":
            a, b = (int(x) for x in arg.split(","))
            return ScoringRuleFamily.alpha_beta(a, b)
        if kind == "vector":
            return ScoringRuleFamily.explicit(int(x) for x in arg.split(","))
        if kind == "block":
            head, _, blocks = arg.partition(";")
            pairs = []
            for item in blocks.split(","):
                coeff, _, mult = item.partition("x")
                pairs.append((int(coeff), int(mult)))
            return ScoringRuleFamily.block(int(head), pairs)
    except (ValueError, ProfileError) as exc:
        raise UsageError(f"bad rule {spec!r}: {exc}") from exc
    raise UsageError(f"unknown rule {spec!r}")


def _rule_vector(rule: ScoringRuleFamily, m: int) -> ScoringVector:
    if rule.kind == "borda":
        return ScoringVector(tuple(range(m - 1, -1, -1)))
    return rule.vector(m)


# ---------------------------------------------------------------------------
# winner
# ---------------------------------------------------------------------------

_SCORING_KINDS = {"explicit", "t-approval", "t-veto", "alpha-beta", "two-ones-zero", "borda"}


def cmd_winner(args) -> int:
    profile = _load_profile(args.profile, args.format)
    candidate = args.candidate
    if not (0 <= candidate < profile.m):
        raise ProfileError(f"candidate {candidate} out of range for m={profile.m}")
    if args.rule == "kemeny":
        entries = hw.profile_relation_entries(profile)
        decision = hw.kemeny_winner(entries, candidate, m=profile.m, max_candidates=args.max_candidates)
        consensus = hw.kemeny_consensus(entries, m=profile.m, max_candidates=args.max_candidates)
        _emit(
            {
                "query": "kemeny-winner",
                "candidate": candidate,
                "decision": decision,
                "consensus": list(consensus.consensus),
                "doubled_score": consensus.doubled_score,
            }
        )
        return 0
    if args.rule == "young":
        score = hw.young_score(profile, candidate)
        scores = {c: hw.young_score(profile, c) for c in range(profile.m)}
        decision = all(score >= s for s in scores.values())
        _emit(
            {
                "query": "young-winner",
                "candidate": candidate,
                "decision": decision,
                "scores": scores,
            }
        )
        return 0
    if args.rule in ("dodgson", "dodgson-by-weight"):
        model = hw.BY_VOTER_WEIGHT if args.rule.endswith("weight") else hw.BY_VOTER
        scores = {
            c: hw.dodgson_score_profile(profile, c, model, max_voters=args.max_voters)
            for c in range(profile.m)
        }
        if any(s is None for s in scores.values()):
            decision = scores[candidate] is not None
        else:
            decision = scores[candidate] == min(scores.values())
        _emit(
            {
                "query": "dodgson-winner",
                "candidate": candidate,
                "charge_model": model,
                "decision": decision,
                "scores": {c: (s if s is not None else "unattainable") for c, s in scores.items()},
            }
        )
        return 0
    if args.rule == "condorcet":
        status = hw.condorcet_status(profile, candidate)
        _emit({"query": "condorcet-status", "candidate": candidate, "status": status})
        return 0
    rule = parse_rule(args.rule)
    vector = _rule_vector(rule, profile.m)
    scores = score_profile(profile, vector)
    winning = winners(scores)
    _emit(
        {
            "query": "scoring-winner",
            "rule": args.rule,
            "vector": list(vector.alphas),
            "candidate": candidate,
            "decision": candidate in winning,
            "scores": scores,
            "winners": sorted(winning),
        }
    )
    return 0


# ---------------------------------------------------------------------------
# control
# ---------------------------------------------------------------------------


def _ccav_from_json(data: dict) -> ctl.CCAVInstance:
    return ctl.CCAVInstance(
        profile_from_json(data["registered"]),
        profile_from_json(data["unregistered"]),
        int(data["add_limit"]),
        int(data["preferred"]),
    )


def _ccdv_from_json(data: dict) -> ctl.CCDVInstance:
    return ctl.CCDVInstance(
        profile_from_json(data["profile"]),
        int(data["delete_limit"]),
        int(data["preferred"]),
    )


def _ccac_from_json(data: dict) -> tuple[ctl.ApprovalElection, int, int]:
    election = ctl.ApprovalElection(
        tuple(int(c) for c in data["registered"]),
        tuple(int(c) for c in data["unregistered"]),
        tuple(
            (frozenset(int(c) for c in ballot["approve"]), int(ballot["count"]))
            for ballot in data["ballots"]
        ),
    )
    return election, int(data["add_limit"]), int(data["preferred"])


def _classify_vector(vector: ScoringVector) -> tuple[str, int]:
    alphas = vector.alphas
    m = len(alphas)
    ones = sum(1 for a in alphas if a == 1)
    zeros = sum(1 for a in alphas if a == 0)
    if ones and ones + zeros == m and alphas[0] == 1:
        t = ones
        if t <= 3:
            return "t-approval", t
    if alphas[0] == 1 and zeros and ones + zeros == m:
        t = zeros
        if t <= 2:
            return "t-veto", t
    if m >= 2 and alphas[0] > alphas[1] and all(a == 0 for a in alphas[2:]):
        return "alpha-beta", 0
    if m >= 2 and alphas == (2,) + (1,) * (m - 2) + (0,):
        return "two-ones-zero", 0
    return "generic", 0


def _solve_ccav(inst: ctl.CCAVInstance, vector: ScoringVector, solver: str) -> ctl.ControlOutcome:
    kind, t = _classify_vector(vector)
    if solver == "auto":
        if kind == "t-approval":
            return ctl.ccav_t_approval(inst, t)
        if kind == "t-veto":
            return ctl.ccav_t_veto(inst, t)
        if kind == "two-ones-zero":
            return ctl.ccav_two_ones_zero(inst)
        if kind == "alpha-beta":
            return ctl.ccav_alpha_beta(inst, vector[0], vector[1])
        return ctl.ccav_generic_ilp(inst, vector)
    if solver == "ilp":
        return ctl.ccav_generic_ilp(inst, vector)
    if solver == "oracle":
        return ctl.ControlOutcome(oracles.oracle_ccav(inst, vector.alphas))
    if solver in ("greedy", "matching"):
        if kind != "t-approval":
            raise UsageError(f"solver {solver!r} needs a t-approval vector (t <= 3)")
        return ctl.ccav_t_approval(inst, t)
    if solver == "cover":
        if kind != "t-veto":
            raise UsageError("solver 'cover' needs a t-veto vector (t <= 2)")
        return ctl.ccav_t_veto(inst, t)
    if solver == "flow":
        if kind != "two-ones-zero":
            raise UsageError("solver 'flow' needs the (2,1,...,1,0) vector")
        return ctl.ccav_two_ones_zero(inst)
    raise UsageError(f"unknown solver {solver!r}")


def cmd_control(args) -> int:
    data = _load_json(args.instance)
    if args.kind == "ccav":
        inst = _ccav_from_json(data)
        rule = parse_rule(args.rule)
        vector = _rule_vector(rule, inst.m)
        outcome = _solve_ccav(inst, vector, args.solver)
        payload = {
            "query": "ccav",
            "rule": args.rule,
            "solver": args.solver,
            "decision": outcome.decision,
        }
        if outcome.decision and outcome.added is not None:
            final = merge_profiles(
                inst.registered, HMProfile(inst.m, outcome.added)
            ) if outcome.added else inst.registered
            scores = score_profile(final, vector)
            if inst.preferred not in winners(scores):
                raise RuntimeError("internal error: witness failed re-verification")
            if sum(c for _v, c in outcome.added) > inst.add_limit:
                raise RuntimeError("internal error: witness exceeds the add limit")
            payload["added"] = [
                {"ranking": list(v), "count": c} for v, c in outcome.added
            ]
        _emit(payload)
        return 0
    if args.kind == "ccdv":
        inst = _ccdv_from_json(data)
        rule = parse_rule(args.rule)
        vector = _rule_vector(rule, inst.profile.m)
        if args.solver == "oracle":
            outcome = ctl.ControlOutcome(oracles.oracle_ccdv(inst, vector.alphas))
        elif args.solver in ("auto", "ilp"):
            outcome = ctl.ccdv_generic_ilp(inst, vector)
        else:
            raise UsageError("ccdv supports solvers auto, ilp, oracle")
        payload = {
            "query": "ccdv",
            "rule": args.rule,
            "solver": args.solver,
            "decision": outcome.decision,
        }
        if outcome.decision and outcome.deleted is not None:
            counts = inst.profile.counts()
            removed = 0
            for vote, count in outcome.deleted:
                counts[vote] -= count
                removed += count
            if removed > inst.delete_limit or any(c < 0 for c in counts.values()):
                raise RuntimeError("internal error: witness failed re-verification")
            rest = HMProfile(inst.profile.m, tuple((v, c) for v, c in counts.items() if c > 0))
            if inst.preferred not in winners(score_profile(rest, vector)):
                raise RuntimeError("internal error: witness failed re-verification")
            payload["deleted"] = [
                {"ranking": list(v), "count": c} for v, c in outcome.deleted
            ]
        _emit(payload)
        return 0
    # ccac: ExactlyHalfApproval control by adding candidates.
    election, add_limit, preferred = _ccac_from_json(data)
    if args.solver == "oracle":
        outcome = ctl.ControlOutcome(oracles.oracle_eha_ccac(election, add_limit, preferred))
    elif args.solver in ("auto", "ilp"):
        try:
            outcome = ctl.eha_ccac_standard(election, add_limit, preferred)
        except ctl.UnaryBoundError:
            outcome = ctl.eha_ccac_hm(election, add_limit, preferred)
    else:
        raise UsageError("ccac supports solvers auto and oracle")
    payload = {"query": "eha-ccac", "solver": args.solver, "decision": outcome.decision}
    if outcome.decision and outcome.added_candidates is not None:
        final = ctl.ApprovalElection(
            election.registered + outcome.added_candidates,
            tuple(c for c in election.unregistered if c not in set(outcome.added_candidates)),
            election.ballots,
        )
        if not ctl.eha_winner(final, preferred):
            raise RuntimeError("internal error: witness failed re-verification")
        payload["added_candidates"] = list(outcome.added_candidates)
    _emit(payload)
    return 0


# ---------------------------------------------------------------------------
# manipulate / schedule
# ---------------------------------------------------------------------------


def _manipulation_from_json(data: dict) -> sched.ManipulationInstance:
    rule_data = data["rule"]
    rule = ScoringRuleFamily.block(
        int(rule_data["alpha0"]),
        [(int(a), int(m)) for a, m in rule_data["blocks"]],
    )
    return sched.ManipulationInstance(
        rule,
        profile_from_json(data["nonmanipulators"]),
        int(data["manipulators"]),
        int(data["preferred"]),
    )


def cmd_manipulate(args) -> int:
    mi = _manipulation_from_json(_load_json(args.instance))
    outcome = sched.cucm_pure_scoring(mi)
    payload = {"query": "cucm", "decision": outcome.decision, "manipulators": mi.k}
    if outcome.decision:
        vector = mi.rule.vector(mi.nonmanipulators.m)
        final = mi.nonmanipulators
        if outcome.ballots:
            final = merge_profiles(final, HMProfile(mi.nonmanipulators.m, outcome.ballots))
        if mi.preferred not in winners(score_profile(final, vector)):
            raise RuntimeError("internal error: ballots failed re-verification")
        payload["ballots"] = [
            {"ranking": list(v), "count": c} for v, c in outcome.ballots
        ]
    _emit(payload)
    return 0


def cmd_schedule(args) -> int:
    inst = sched.schedule_from_json(_load_json(args.instance))
    if args.cap is not None:
        inst = sched.ScheduleInstance(inst.lengths, inst.counts, inst.deadlines, int(args.cap))
    assignment = (
        sched.hm_schedule_capped(inst) if inst.cap is not None else sched.hm_schedule(inst)
    )
    payload = {"query": "schedule", "feasible": assignment is not None}
    if assignment is not None:
        if not assignment.verify(inst):
            raise RuntimeError("internal error: assignment failed re-verification")
        payload["assignment"] = [list(row) for row in assignment.x]
    _emit(payload)
    return 0


# ---------------------------------------------------------------------------
# reduce
# ---------------------------------------------------------------------------


def cmd_reduce(args) -> int:
    step = args.step
    out: dict
    if step == "karp-wvc":
        formula = reductions.parse_dimacs(Path(args.input).read_text())
        graph = reductions.karp_3sat_to_wvc(formula)
        out = reductions.graph_to_json(graph)
    elif step == "vcc-wvcm":
        g = reductions.graph_from_json(_load_json(args.input))
        h = reductions.graph_from_json(_load_json(args.input2))
        f, w = reductions.mwvcc_to_wvcm(g, h)
        out = {"graph": reductions.graph_to_json(f), "query_vertex": w}
    elif step == "wvcm-wfasm":
        data = _load_json(args.input)
        g = reductions.graph_from_json(data["graph"])
        digraph, vprime = reductions.wvcm_to_wfasm(g, data["query_vertex"])
        out = {"digraph": reductions.digraph_to_json(digraph), "query_vertex": vprime}
    elif step == "wfasm-kemeny":
        data = _load_json(args.input)
        dg = reductions.digraph_from_json(data["digraph"])
        profile, target = reductions.wfasm_to_kemeny(dg, data["query_vertex"])
        out = {"profile": profile_to_json(profile), "candidate": target}
    elif step == "dwork-expand":
        dg = reductions.digraph_from_json(_load_json(args.input))
        expanded = reductions.dwork_expand(dg)
        out = {
            "digraph": reductions.digraph_to_json(expanded.digraph),
            "originals": list(expanded.originals),
            "arc_nodes": list(expanded.arc_nodes),
        }
    elif step in ("fas-kemeny-2", "fas-kemeny-1"):
        data = _load_json(args.input)
        dg = reductions.digraph_from_json(data["digraph"] if "digraph" in data else data)
        expanded = reductions.dwork_expand(dg)
        builder = (
            reductions.fas_to_kemeny_two_voter_partial
            if step.endswith("2")
            else reductions.fas_to_kemeny_one_voter_relation
        )
        votes, target, names = builder(expanded, args.vertex)
        out = {
            "votes": [
                {"kind": rv.kind, "m": rv.m, "pairs": sorted(map(list, rv.pairs)), "count": c}
                for rv, c in votes
            ],
            "candidate": target,
            "names": list(names),
        }
    elif step == "partition-eha":
        values = [int(v) for v in _load_json(args.input)["values"]]
        election, add_limit, preferred = reductions.partition_to_eha_ccac(values)
        out = {
            "registered": list(election.registered),
            "unregistered": list(election.unregistered),
            "ballots": [
                {"approve": sorted(b), "count": c} for b, c in election.ballots
            ],
            "add_limit": add_limit,
            "preferred": preferred,
        }
    else:
        raise UsageError(f"unknown reduction step {step!r}")
    text = json.dumps(_stringify(out), sort_keys=True, separators=(",", ":")) + "\n"
    if args.output:
        Path(args.output).write_text(text)
        _log(f"wrote {args.output}")
        _emit({"query": "reduce", "step": step, "written": args.output})
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.suite not in suites.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(suites.SUITES)}")
    result = suites.SUITES[args.suite](args.seed, args.budget)
    if args.out_dir:
        from hmelect import report

        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        rows = [
            (row.index, row.case, row.comparator, row.expected, row.got, row.agree)
            for row in result.rows
        ]
        report.write_rows_csv(
            out / f"{args.suite}_results.csv",
            ["instance", "case", "comparator", "expected", "got", "agree"],
            rows,
        )
        per = result.per_comparator()
        report.agreement_figure(
            out / f"{args.suite}_agreement.png",
            f"{args.suite} suite, seed {args.seed}",
            list(per.keys()),
            [a for a, _t in per.values()],
            [t for _a, t in per.values()],
        )
        report.runtime_figure(
            out / f"{args.suite}_runtimes.png",
            f"{args.suite} per-instance runtime",
            result.runtimes,
        )
        _log(f"wrote CSV and figures under {out}")
    _emit(result.summary())
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="hmelect", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    w = sub.add_parser("winner", help="winner queries (scoring, kemeny, young, dodgson)")
    w.add_argument("--rule", required=True)
    w.add_argument("--profile", required=True)
    w.add_argument("--format", choices=["soc", "json"], default=None)
    w.add_argument("--candidate", type=int, required=True)
    w.add_argument("--max-candidates", type=int, default=16)
    w.add_argument("--max-voters", type=int, default=9)
    w.set_defaults(func=cmd_winner)

    c = sub.add_parser("control", help="constructive control (ccav, ccdv, ccac)")
    c.add_argument("--kind", choices=["ccav", "ccdv", "ccac"], required=True)
    c.add_argument("--rule", default="plurality")
    c.add_argument("--instance", required=True)
    c.add_argument(
        "--solver",
        choices=["auto", "ilp", "greedy", "matching", "cover", "flow", "oracle"],
        default="auto",
    )
    c.set_defaults(func=cmd_control)

    m = sub.add_parser("manipulate", help="coalitional manipulation via scheduling")
    m.add_argument("--instance", required=True)
    m.set_defaults(func=cmd_manipulate)

    s = sub.add_parser("schedule", help="high-multiplicity scheduling decision")
    s.add_argument("--instance", required=True)
    s.add_argument("--cap", default=None)
    s.set_defaults(func=cmd_schedule)

    r = sub.add_parser("reduce", help="run one reduction step")
    r.add_argument(
        "--step",
        required=True,
        choices=[
            "karp-wvc",
            "vcc-wvcm",
            "wvcm-wfasm",
            "wfasm-kemeny",
            "dwork-expand",
            "fas-kemeny-2",
            "fas-kemeny-1",
            "partition-eha",
        ],
    )
    r.add_argument("--input", required=True)
    r.add_argument("--input2", default=None)
    r.add_argument("--vertex", default=None)
    r.add_argument("--output", default=None)
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="run an equivalence suite against the oracles")
    v.add_argument("--suite", required=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--budget", type=int, default=25)
    v.add_argument("--out-dir", default=None)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        _log(f"usage error: {exc}")
        return 1
    except (
        ProfileError,
        ctl.ControlError,
        sched.ScheduleError,
        reductions.ReductionError,
        hw.WinnerError,
        ilp.ILPError,
        json.JSONDecodeError,
        OSError,
        KeyError,
        ValueError,
    ) as exc:
        _log(f"input error: {exc}")
        return 2
    except (
        ilp.ResourceLimitError,
        oracles.BudgetExceededError,
        hw.CandidateLimitError,
        ctl.UnaryBoundError,
        ctl.ControlLimitError,
    ) as exc:
        _log(f"resource limit: {exc}")
        return 3


if __name__ == "__main__":
    sys.exit(main())
