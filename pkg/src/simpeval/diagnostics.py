"""Computable diagnostics for degenerate generation: copying, repetition and
truncation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import EmptySource, InvalidOrder
from .ngram import _lcs
from .textcore import TokenSequence

NGRAM_ORDERS = tuple(range(1, 9))


@dataclass(frozen=True)
class DiagnosticsReport:
    copy_rate: float
    compression_ratio: float
    repeated_sentence_count: int
    repeated_ngram_rates: dict[int, float]
    longest_repeated_span: int


def copy_rate(output: TokenSequence, source: TokenSequence) -> float:
    """Order-preserving overlap: LCS(output, source) / |output|."""
    if len(source) == 0:
        raise EmptySource("source must be non-empty")
    if len(output) == 0:
        return 0.0
    return _lcs(output, source) / len(output)


def compression_ratio(output: TokenSequence, source: TokenSequence) -> float:
    """|output| / |source| in tokens."""
    if len(source) == 0:
        raise EmptySource("source must be non-empty")
    return len(output) / len(source)


def repeated_sentence_report(
    output: list[TokenSequence],
) -> tuple[int, list[tuple[TokenSequence, int]]]:
    """Sentences occurring more than once (by normalized token equality).

    Returns the number of repeated sentence groups and the groups
    themselves, sorted by multiplicity descending, then first occurrence.
    """
    first_seen: dict[tuple[str, ...], int] = {}
    counts: dict[tuple[str, ...], int] = {}
    representative: dict[tuple[str, ...], TokenSequence] = {}
    for pos, sentence in enumerate(output):
        key = sentence.normalized
        if key not in counts:
            counts[key] = 0
            first_seen[key] = pos
            representative[key] = sentence
        counts[key] += 1
    repeated = [
        (representative[key], count) for key, count in counts.items() if count >= 2
    ]
    repeated.sort(key=lambda item: (-item[1], first_seen[item[0].normalized]))
    return len(repeated), repeated


def repeated_ngram_rate(output: TokenSequence, n: int) -> float:
    """Fraction of n-gram positions whose n-gram occurred earlier."""
    if n < 1:
        raise InvalidOrder(f"n must be >= 1, got {n}")
    tokens = output.normalized
    total = len(tokens) - n + 1
    if total <= 0:
        return 0.0
    seen: set[tuple[str, ...]] = set()
    repeats = 0
    for i in range(total):
        gram = tokens[i : i + n]
        if gram in seen:
            repeats += 1
        else:
            seen.add(gram)
    return repeats / total


def longest_repeated_span(output: TokenSequence) -> int:
    """Token length of the longest substring occurring at least twice."""
    if len(output) < 2:
        return 0
    table: dict[str, int] = {}
    ids = np.array(
        [table.setdefault(t, len(table)) for t in output.normalized], np.int64
    )
    return _kernels.max_repeated_span(ids)


def diagnose(
    output: TokenSequence,
    source: TokenSequence,
    output_sentences: list[TokenSequence],
) -> DiagnosticsReport:
    """Full report for one (output, source) document pair."""
    repeated_count, _ = repeated_sentence_report(output_sentences)
    return DiagnosticsReport(
        copy_rate=copy_rate(output, source),
        compression_ratio=compression_ratio(output, source),
        repeated_sentence_count=repeated_count,
        repeated_ngram_rates={n: repeated_ngram_rate(output, n) for n in NGRAM_ORDERS},
        longest_repeated_span=longest_repeated_span(output),
    )
