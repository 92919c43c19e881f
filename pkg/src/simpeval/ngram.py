"""BLEU and ROUGE-L F1 over token sequences, scored document-level.

Each (hypothesis, reference) pair is one segment; there is exactly one
reference per hypothesis.  BLEU defaults to the 0-100 scale, ROUGE-L to
[0, 1].
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import EmptyReference
from .textcore import TokenSequence


@dataclass(frozen=True)
class BleuConfig:
    max_order: int = 4
    smoothing_epsilon: float | None = None  # None = no smoothing
    scale: str = "percent"  # "percent" or "unit"

    def __post_init__(self) -> None:
        if self.max_order < 1:
            raise ValueError("max_order must be >= 1")
        if self.smoothing_epsilon is not None and self.smoothing_epsilon <= 0:
            raise ValueError("smoothing epsilon must be > 0")
        if self.scale not in ("percent", "unit"):
            raise ValueError(f"unknown scale {self.scale!r}")


@dataclass(frozen=True)
class OverlapResult:
    score: float
    precisions: tuple[float, ...] = ()
    brevity_penalty: float | None = None
    lcs_length: int | None = None
    degenerate: bool = False


def _ngram_counts(tokens: tuple[str, ...], order: int) -> Counter:
    return Counter(
        tokens[i : i + order] for i in range(len(tokens) - order + 1)
    )


def bleu(
    hypothesis: TokenSequence,
    reference: TokenSequence,
    config: BleuConfig = BleuConfig(),
) -> OverlapResult:
    """Clipped n-gram precision geometric mean with brevity penalty."""
    if len(reference) == 0:
        raise EmptyReference("reference must be non-empty")
    top = 100.0 if config.scale == "percent" else 1.0
    if len(hypothesis) == 0:
        return OverlapResult(
            score=0.0,
            precisions=(0.0,) * config.max_order,
            brevity_penalty=0.0,
            degenerate=True,
        )

    hyp = hypothesis.normalized
    ref = reference.normalized
    precisions: list[float] = []
    for order in range(1, config.max_order + 1):
        hyp_counts = _ngram_counts(hyp, order)
        denom = sum(hyp_counts.values())
        if denom == 0:
            precisions.append(0.0)
            continue
        ref_counts = _ngram_counts(ref, order)
        clipped = sum(
            min(c, ref_counts[g]) for g, c in hyp_counts.items() if g in ref_counts
        )
        if clipped == 0 and config.smoothing_epsilon is not None:
            precisions.append(config.smoothing_epsilon / denom)
        else:
            precisions.append(clipped / denom)

    if any(p == 0.0 for p in precisions):
        geo_mean = 0.0
    else:
        geo_mean = math.exp(sum(math.log(p) for p in precisions) / len(precisions))

    c, r = len(hyp), len(ref)
    bp = 1.0 if c >= r else math.exp(1.0 - r / c)
    return OverlapResult(
        score=top * bp * geo_mean,
        precisions=tuple(precisions),
        brevity_penalty=bp,
    )


def _lcs(hyp: TokenSequence, ref: TokenSequence) -> int:
    table: dict[str, int] = {}
    a = np.array(
        [table.setdefault(t, len(table)) for t in hyp.normalized], np.int64
    )
    b = np.array(
        [table.setdefault(t, len(table)) for t in ref.normalized], np.int64
    )
    # shorter side as the DP row keeps memory at O(min(m, n))
    if a.shape[0] > b.shape[0]:
        a, b = b, a
    return int(_kernels.lcs_length(a, b))


def rouge_l(hypothesis: TokenSequence, reference: TokenSequence) -> OverlapResult:
    """LCS-based F1 over normalized tokens, in [0, 1]."""
    if len(hypothesis) == 0 or len(reference) == 0:
        return OverlapResult(score=0.0, lcs_length=0)
    lcs = _lcs(hypothesis, reference)
    if lcs == 0:
        return OverlapResult(score=0.0, lcs_length=0)
    precision = lcs / len(hypothesis)
    recall = lcs / len(reference)
    f1 = 2.0 * precision * recall / (precision + recall)
    return OverlapResult(score=f1, lcs_length=lcs)
