"""Redundancy measurements: bag-of-words entropy and shortest-unique-prefix
entropy.

Both run over normalized tokens, punctuation included.  The
shortest-unique-prefix estimator has two interchangeable implementations: a
quadratic exhaustive scan that serves as the oracle, and a suffix-index
implementation for long documents.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateHorizon, SequenceTooShort
from .textcore import TokenSequence


class LogBase(enum.Enum):
    BASE2 = "2"
    NATURAL = "e"

    def log(self, value: float) -> float:
        if self is LogBase.BASE2:
            return math.log2(value)
        return math.log(value)


@dataclass(frozen=True)
class BowDistribution:
    """Token frequency distribution over normalized tokens."""

    counts: dict[str, int]
    n: int

    @classmethod
    def from_sequence(cls, seq: TokenSequence) -> "BowDistribution":
        return cls(counts=dict(Counter(seq.normalized)), n=len(seq))

    def entropy_bits(self) -> float:
        if self.n <= 1:
            return 0.0
        # Summing over sorted counts keeps the result exactly
        # permutation-invariant (same addition order for any token order).
        total = 0.0
        n = float(self.n)
        for c in sorted(self.counts.values()):
            p = c / n
            total += p * -math.log2(p)
        return total


@dataclass(frozen=True)
class MatchLengthProfile:
    """Per-position shortest-unique-prefix lengths l_1..l_N.

    ``m`` is the sequence length + 1 and ``n`` the evaluation horizon
    ``m // 2``.
    """

    match_lengths: tuple[int, ...]
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.n != self.m // 2:
            raise ValueError(f"horizon {self.n} != floor({self.m}/2)")
        if len(self.match_lengths) != self.n:
            raise ValueError("profile length does not match horizon")
        for i, l in enumerate(self.match_lengths, start=1):
            if not 1 <= l <= (self.m - 1 - i) + 1:
                raise ValueError(f"l_{i}={l} outside [1, {self.m - i}]")


@dataclass(frozen=True)
class EntropyResult:
    bow_bits: float
    sup_value: float
    log_base: LogBase


def bow_entropy(seq: TokenSequence) -> float:
    """Shannon entropy in bits of the token frequency distribution."""
    return BowDistribution.from_sequence(seq).entropy_bits()


def _token_ids(seq: TokenSequence) -> np.ndarray:
    ids = np.empty(len(seq), np.int64)
    table: dict[str, int] = {}
    for i, tok in enumerate(seq.normalized):
        ids[i] = table.setdefault(tok, len(table))
    return ids


def _profile(seq: TokenSequence, indexed: bool) -> MatchLengthProfile:
    t = len(seq)
    if t < 2:
        raise SequenceTooShort(f"need at least 2 tokens, got {t}")
    m = t + 1
    n = m // 2
    ids = _token_ids(seq)
    if indexed:
        lengths = _kernels.indexed_match_lengths(ids, n)
    else:
        lengths = _kernels.naive_match_lengths(ids, n)
    return MatchLengthProfile(tuple(int(l) for l in lengths), m=m, n=n)


def sup_match_lengths_naive(seq: TokenSequence) -> MatchLengthProfile:
    """Oracle implementation: exhaustive O(T^2) scan over previous starts."""
    return _profile(seq, indexed=False)


def sup_match_lengths_indexed(seq: TokenSequence) -> MatchLengthProfile:
    """Suffix-index implementation; identical output to the naive scan."""
    return _profile(seq, indexed=True)


def sup_entropy(
    profile: MatchLengthProfile, log_base: LogBase = LogBase.BASE2
) -> float:
    """Inverse of the mean of l_i / log(i+1) over the profile."""
    if profile.n < 1:
        raise DegenerateHorizon("evaluation horizon is empty")
    acc = 0.0
    for i, l in enumerate(profile.match_lengths, start=1):
        acc += l / log_base.log(i + 1)
    return 1.0 / (acc / profile.n)


def score_entropy(
    seq: TokenSequence, log_base: LogBase = LogBase.BASE2
) -> EntropyResult:
    """Both entropy readings for one document."""
    profile = sup_match_lengths_indexed(seq)
    return EntropyResult(
        bow_bits=bow_entropy(seq),
        sup_value=sup_entropy(profile, log_base),
        log_base=log_base,
    )
