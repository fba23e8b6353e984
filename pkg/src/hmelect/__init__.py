"""Exact algorithms for elections in high-multiplicity representation."""

from hmelect.core import (
    Candidate,
    HMProfile,
    ProfileError,
    ScoringRuleFamily,
    ScoringVector,
    StandardProfile,
    Vote,
    WeightedProfile,
    compress,
    expand,
    parse_preflib,
    score_profile,
    vector_for_m,
    winners,
)

__version__ = "0.1.0"

__all__ = [
    "Candidate",
    "HMProfile",
    "ProfileError",
    "ScoringRuleFamily",
    "ScoringVector",
    "StandardProfile",
    "Vote",
    "WeightedProfile",
    "compress",
    "expand",
    "parse_preflib",
    "score_profile",
    "vector_for_m",
    "winners",
    "__version__",
]
