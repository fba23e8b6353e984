"""Election data model: standard, weighted, and high-multiplicity profiles.

An electorate in high-multiplicity representation is stored as a list of
distinct total-order votes together with positive integer counts.  Counts,
weights, and scores are arbitrary-precision integers throughout; all profile
types are immutable values and every operation here is a pure function.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

#: A vote is a permutation of the candidate ids 0..m-1, most-preferred first.
Vote = tuple[int, ...]

DEFAULT_EXPANSION_LIMIT = 10**6


class ProfileError(ValueError):
    """Raised for malformed profiles, rankings, or profile files."""


class ExpansionLimitError(ProfileError):
    """Raised when expanding a profile would exceed the configured limit."""


class Candidate(NamedTuple):
    id: int
    name: Optional[str] = None


def validate_ranking(m: int, ranking: Sequence[int]) -> Vote:
    """Check that ``ranking`` is a total order over candidates 0..m-1."""
    vote = tuple(ranking)
    if sorted(vote) != list(range(m)):
        raise ProfileError(f"not a total order over 0..{m - 1}: {vote!r}")
    return vote


@dataclass(frozen=True)
class HMProfile:
    """High-multiplicity profile: distinct votes with positive counts.

    Entries are kept in canonical order (lexicographic by ranking) so that
    equal electorates compare equal and all derived output is reproducible.
    """

    m: int
    entries: tuple[tuple[Vote, int], ...]
    names: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ProfileError("candidate count must be nonnegative")
        if self.names is not None and len(self.names) != self.m:
            raise ProfileError("names must have one entry per candidate")
        seen = set()
        checked = []
        for vote, count in self.entries:
            vote = validate_ranking(self.m, vote)
            if not isinstance(count, int) or count < 1:
                raise ProfileError(f"count for {vote!r} must be a positive integer")
            if vote in seen:
                raise ProfileError(f"duplicate vote {vote!r} in profile")
            seen.add(vote)
            checked.append((vote, count))
        checked.sort(key=lambda e: e[0])
        object.__setattr__(self, "entries", tuple(checked))

    @property
    def n(self) -> int:
        """Total number of voters."""
        return sum(count for _, count in self.entries)

    def candidates(self) -> list[Candidate]:
        if self.names is None:
            return [Candidate(i) for i in range(self.m)]
        return [Candidate(i, self.names[i]) for i in range(self.m)]

    def counts(self) -> dict[Vote, int]:
        return dict(self.entries)

    def scaled(self, factor: int) -> "HMProfile":
        if factor < 1:
            raise ProfileError("scale factor must be positive")
        return HMProfile(self.m, tuple((v, c * factor) for v, c in self.entries), self.names)


@dataclass(frozen=True)
class WeightedProfile:
    """Weighted election: voters with indivisible positive integer weights.

    Unlike :class:`HMProfile`, votes may repeat; each entry is one voter
    acting as an unsplittable bloc of the given weight.
    """

    m: int
    entries: tuple[tuple[Vote, int], ...]

    def __post_init__(self) -> None:
        checked = []
        for vote, weight in self.entries:
            vote = validate_ranking(self.m, vote)
            if not isinstance(weight, int) or weight < 1:
                raise ProfileError(f"weight for {vote!r} must be a positive integer")
            checked.append((vote, weight))
        object.__setattr__(self, "entries", tuple(checked))

    def total_weight(self) -> int:
        return sum(w for _, w in self.entries)

    def as_hm(self) -> HMProfile:
        """Merge equal votes; valid whenever only vote tallies matter."""
        merged: dict[Vote, int] = {}
        for vote, weight in self.entries:
            merged[vote] = merged.get(vote, 0) + weight
        return HMProfile(self.m, tuple(merged.items()))


@dataclass(frozen=True)
class StandardProfile:
    """Standard representation: a plain list of voters."""

    m: int
    votes: tuple[Vote, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "votes", tuple(validate_ranking(self.m, v) for v in self.votes)
        )

    @property
    def n(self) -> int:
        return len(self.votes)


def compress(profile: StandardProfile) -> HMProfile:
    """Convert a standard profile to canonical high-multiplicity form."""
    counts: dict[Vote, int] = {}
    for vote in profile.votes:
        counts[vote] = counts.get(vote, 0) + 1
    return HMProfile(profile.m, tuple(counts.items()))


def expand(profile: HMProfile, limit: int = DEFAULT_EXPANSION_LIMIT) -> StandardProfile:
    """Materialize a high-multiplicity profile as a vote list.

    This is oracle-only machinery: it refuses profiles whose voter count
    exceeds ``limit`` since the whole point of the compact representation is
    that expansion may be exponentially large.
    """
    total = profile.n
    if total > limit:
        raise ExpansionLimitError(
            f"profile has {total} voters, above the expansion limit {limit}"
        )
    votes = []
    for vote, count in profile.entries:
        votes.extend([vote] * count)
    return StandardProfile(profile.m, tuple(votes))


@dataclass(frozen=True)
class ScoringVector:
    """Nonincreasing vector of per-position scores."""

    alphas: tuple[int, ...]

    def __post_init__(self) -> None:
        alphas = tuple(int(a) for a in self.alphas)
        if any(a < 0 for a in alphas):
            raise ProfileError("scoring coefficients must be nonnegative")
        if any(alphas[i] < alphas[i + 1] for i in range(len(alphas) - 1)):
            raise ProfileError(f"scoring vector must be nonincreasing: {alphas}")
        object.__setattr__(self, "alphas", alphas)

    def __len__(self) -> int:
        return len(self.alphas)

    def __getitem__(self, i: int) -> int:
        return self.alphas[i]


@dataclass(frozen=True)
class ScoringRuleFamily:
    """A pure scoring rule: a family descriptor generating per-m vectors.

    Supported kinds:

    * ``explicit`` -- a fixed vector, usable only for its own length.
    * ``t-approval`` -- 1 in the first ``t`` positions, 0 elsewhere.
    * ``t-veto`` -- 0 in the last ``t`` positions, 1 elsewhere.
    * ``alpha-beta`` -- ``(alpha, beta, 0, ..., 0)`` with alpha > beta >= 0.
    * ``two-ones-zero`` -- ``(2, 1, ..., 1, 0)``.
    * ``block`` -- ``(alpha0, alpha1^m1, ..., alphaC^mC, 0, ..., 0)`` with
      ``alpha0 >= alpha1 > ... > alphaC > 0``; trailing zeros pad to length m.
    """

    kind: str
    alphas: tuple[int, ...] = ()
    t: int = 0
    blocks: tuple[tuple[int, int], ...] = ()

    @classmethod
    def explicit(cls, alphas: Iterable[int]) -> "ScoringRuleFamily":
        return cls("explicit", alphas=ScoringVector(tuple(alphas)).alphas)

    @classmethod
    def t_approval(cls, t: int) -> "ScoringRuleFamily":
        if t < 1:
            raise ProfileError("t-approval needs t >= 1")
        return cls("t-approval", t=t)

    @classmethod
    def t_veto(cls, t: int) -> "ScoringRuleFamily":
        if t < 1:
            raise ProfileError("t-veto needs t >= 1")
        return cls("t-veto", t=t)

    @classmethod
    def alpha_beta(cls, alpha: int, beta: int) -> "ScoringRuleFamily":
        if not alpha > beta >= 0:
            raise ProfileError("alpha-beta rule needs alpha > beta >= 0")
        return cls("alpha-beta", alphas=(alpha, beta))

    @classmethod
    def two_ones_zero(cls) -> "ScoringRuleFamily":
        return cls("two-ones-zero")

    @classmethod
    def block(cls, alpha0: int, blocks: Iterable[tuple[int, int]]) -> "ScoringRuleFamily":
        blocks = tuple((int(a), int(mult)) for a, mult in blocks)
        coeffs = [a for a, _ in blocks]
        if not blocks:
            raise ProfileError("block rule needs at least one block")
        if any(mult < 1 for _, mult in blocks):
            raise ProfileError("block multiplicities must be positive")
        if coeffs[-1] <= 0:
            raise ProfileError("block coefficients must be positive")
        if any(coeffs[i] <= coeffs[i + 1] for i in range(len(coeffs) - 1)):
            raise ProfileError("block coefficients must be strictly decreasing")
        if alpha0 < coeffs[0]:
            raise ProfileError("leading coefficient must be >= first block coefficient")
        return cls("block", alphas=(int(alpha0),), blocks=blocks)

    def min_candidates(self) -> int:
        if self.kind == "explicit":
            return len(self.alphas)
        if self.kind == "t-approval":
            return self.t
        if self.kind == "t-veto":
            return self.t
        if self.kind in ("alpha-beta", "two-ones-zero"):
            return 2
        if self.kind == "block":
            return 1 + sum(mult for _, mult in self.blocks)
        raise ProfileError(f"unknown rule kind {self.kind!r}")

    def vector(self, m: int) -> ScoringVector:
        """Generate the m-candidate scoring vector of this family."""
        if m < 1:
            raise ProfileError("need at least one candidate")
        if m < self.min_candidates():
            raise ProfileError(f"{self.kind} rule is not applicable to m={m}")
        if self.kind == "explicit":
            if m != len(self.alphas):
                raise ProfileError(
                    f"explicit vector has length {len(self.alphas)}, not {m}"
                )
            return ScoringVector(self.alphas)
        if self.kind == "t-approval":
            return ScoringVector((1,) * self.t + (0,) * (m - self.t))
        if self.kind == "t-veto":
            return ScoringVector((1,) * (m - self.t) + (0,) * self.t)
        if self.kind == "alpha-beta":
            alpha, beta = self.alphas
            return ScoringVector((alpha, beta) + (0,) * (m - 2))
        if self.kind == "two-ones-zero":
            return ScoringVector((2,) + (1,) * (m - 2) + (0,))
        if self.kind == "block":
            coeffs: list[int] = [self.alphas[0]]
            for a, mult in self.blocks:
                coeffs.extend([a] * mult)
            coeffs.extend([0] * (m - len(coeffs)))
            return ScoringVector(tuple(coeffs))
        raise ProfileError(f"unknown rule kind {self.kind!r}")


def vector_for_m(rule: ScoringRuleFamily, m: int) -> ScoringVector:
    return rule.vector(m)


def score_profile(profile: HMProfile, vector: ScoringVector) -> dict[int, int]:
    """Score every candidate: count * coefficient at the candidate's rank."""
    if len(vector) != profile.m:
        raise ProfileError(
            f"scoring vector length {len(vector)} does not match m={profile.m}"
        )
    scores = {c: 0 for c in range(profile.m)}
    for vote, count in profile.entries:
        for pos, cand in enumerate(vote):
            scores[cand] += count * vector[pos]
    return scores


def score_weighted(profile: WeightedProfile, vector: ScoringVector) -> dict[int, int]:
    return score_profile(profile.as_hm(), vector)


def winners(scores: Mapping[int, int]) -> set[int]:
    """All candidates attaining the maximum score (nonunique winner model)."""
    if not scores:
        raise ProfileError("winners of an empty candidate set are undefined")
    best = max(scores.values())
    return {c for c, s in scores.items() if s == best}


def merge_profiles(a: HMProfile, b: HMProfile) -> HMProfile:
    """Union of two electorates over the same candidate set."""
    if a.m != b.m:
        raise ProfileError("profiles are over different candidate sets")
    counts = dict(a.entries)
    for vote, count in b.entries:
        counts[vote] = counts.get(vote, 0) + count
    return HMProfile(a.m, tuple(counts.items()), a.names or b.names)


def all_votes(m: int) -> list[Vote]:
    """All m! total orders in lexicographic order."""
    return [tuple(p) for p in itertools.permutations(range(m))]


# ---------------------------------------------------------------------------
# PrefLib .soc ingestion
# ---------------------------------------------------------------------------


def parse_preflib(text: str) -> HMProfile:
    """Parse a PrefLib strict-order-complete (.soc) file.

    Recognized header lines are ``# NUMBER ALTERNATIVES: m`` and
    ``# ALTERNATIVE NAME i: label``; other ``#`` lines are ignored.  Vote
    lines have the form ``count: id1,id2,...`` with 1-based candidate ids.
    Duplicate orders are merged by summing their counts.
    """
    m: Optional[int] = None
    names: dict[int, str] = {}
    counts: dict[Vote, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            key, _, value = body.partition(":")
            key = key.strip().upper()
            if key == "NUMBER ALTERNATIVES":
                try:
                    m = int(value.strip())
                except ValueError:
                    raise ProfileError(f"line {lineno}: bad candidate count {value!r}")
            elif key.startswith("ALTERNATIVE NAME"):
                try:
                    idx = int(key.rsplit(None, 1)[1])
                except (IndexError, ValueError):
                    raise ProfileError(f"line {lineno}: bad alternative-name header")
                names[idx] = value.strip()
            continue
        count_part, sep, order_part = line.partition(":")
        if not sep:
            raise ProfileError(f"line {lineno}: expected 'count: ranking'")
        try:
            count = int(count_part.strip())
        except ValueError:
            raise ProfileError(f"line {lineno}: bad count {count_part.strip()!r}")
        if count <= 0:
            raise ProfileError(f"line {lineno}: count must be positive")
        if m is None:
            raise ProfileError("missing '# NUMBER ALTERNATIVES' header before votes")
        try:
            ids = [int(tok.strip()) for tok in order_part.split(",")]
        except ValueError:
            raise ProfileError(f"line {lineno}: bad ranking {order_part.strip()!r}")
        if any(i < 1 or i > m for i in ids):
            raise ProfileError(f"line {lineno}: unknown candidate id in {ids}")
        try:
            vote = validate_ranking(m, tuple(i - 1 for i in ids))
        except ProfileError:
            raise ProfileError(f"line {lineno}: ranking is not a total order")
        counts[vote] = counts.get(vote, 0) + count
    if m is None:
        raise ProfileError("missing '# NUMBER ALTERNATIVES' header")
    name_tuple: Optional[tuple[str, ...]] = None
    if names:
        name_tuple = tuple(names.get(i + 1, f"c{i + 1}") for i in range(m))
    return HMProfile(m, tuple(counts.items()), name_tuple)


# ---------------------------------------------------------------------------
# JSON profile schema (counts as decimal strings to preserve big integers)
# ---------------------------------------------------------------------------


def profile_to_json(profile: HMProfile) -> dict:
    data: dict = {
        "m": profile.m,
        "entries": [
            {"count": str(count), "ranking": list(vote)}
            for vote, count in profile.entries
        ],
    }
    if profile.names is not None:
        data["names"] = list(profile.names)
    return data


def profile_from_json(data: Mapping) -> HMProfile:
    try:
        m = int(data["m"])
        entries = tuple(
            (tuple(int(c) for c in entry["ranking"]), int(entry["count"]))
            for entry in data["entries"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ProfileError(f"malformed profile JSON: {exc}") from exc
    names = data.get("names")
    return HMProfile(m, entries, tuple(names) if names is not None else None)
