"""Deterministic hash embeddings.

This mirrors the consumer-side test provider exactly: each (seed, token)
pair hashes via blake2b to a PCG64 stream whose first ``dimension`` standard
normal draws are L2-normalized.  Both implementations must keep this
derivation in lockstep; the cross-component contract test pins them to each
other at 1e-9.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MIN_NORM = 1e-12


def hash_unit_vector(seed: int, dimension: int, token: str) -> np.ndarray:
    digest = hashlib.blake2b(
        f"{seed}\x1f{token}".encode("utf-8"), digest_size=16
    ).digest()
    gen = np.random.Generator(np.random.PCG64(int.from_bytes(digest, "little")))
    v = gen.standard_normal(dimension)
    norm = np.linalg.norm(v)
    while norm < _MIN_NORM:  # pragma: no cover
        v = gen.standard_normal(dimension)
        norm = np.linalg.norm(v)
    return v / norm


def hash_embeddings(seed: int, dimension: int, tokens: list[str]) -> np.ndarray:
    """One unit vector per token; identical tokens share a row."""
    cache: dict[str, np.ndarray] = {}
    rows = np.empty((len(tokens), dimension), np.float64)
    for i, token in enumerate(tokens):
        vec = cache.get(token)
        if vec is None:
            vec = hash_unit_vector(seed, dimension, token)
            cache[token] = vec
        rows[i] = vec
    return rows
