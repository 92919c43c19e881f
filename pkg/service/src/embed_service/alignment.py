"""Subword-piece to token alignment.

The encoder tokenizes its own way; the caller sends whole tokens.  Tokens
are joined with single spaces, encoded with character offsets, and each
token's vector is the mean over the pieces whose offsets overlap the
token's span.  Tokens no piece covers (rare: exotic whitespace handling)
fall back to the mean over all pieces.
"""

from __future__ import annotations

import numpy as np


def token_spans(tokens: list[str]) -> tuple[str, list[tuple[int, int]]]:
    """Join tokens with single spaces and return each token's char span."""
    spans = []
    cursor = 0
    for i, token in enumerate(tokens):
        if i > 0:
            cursor += 1
        spans.append((cursor, cursor + len(token)))
        cursor += len(token)
    return " ".join(tokens), spans


def pool_pieces(
    spans: list[tuple[int, int]],
    piece_offsets: list[tuple[int, int]],
    piece_vectors: np.ndarray,
) -> np.ndarray:
    """Mean-pool piece vectors onto token spans by character overlap."""
    if piece_vectors.ndim != 2 or len(piece_offsets) != piece_vectors.shape[0]:
        raise ValueError("piece offsets and vectors must line up")
    pooled = np.empty((len(spans), piece_vectors.shape[1]), np.float64)
    # special pieces carry (0, 0) offsets; keep only real ones
    real = [
        i
        for i, (start, end) in enumerate(piece_offsets)
        if end > start
    ]
    fallback = (
        piece_vectors[real].mean(axis=0)
        if real
        else piece_vectors.mean(axis=0)
    )
    for t, (t_start, t_end) in enumerate(spans):
        members = [
            i
            for i in real
            if piece_offsets[i][0] < t_end and piece_offsets[i][1] > t_start
        ]
        pooled[t] = piece_vectors[members].mean(axis=0) if members else fallback
    return pooled
