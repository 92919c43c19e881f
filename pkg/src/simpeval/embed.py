"""Greedy-matching precision/recall/F1 over per-token embedding matrices.

The scorer never embeds text itself; vectors come from one of three
providers: a JSON file, an HTTP service speaking the wire protocol below, or
a deterministic hash-based provider for tests.

Wire protocol: ``POST {endpoint}/embed`` with body ``{"tokens": [...]}``
returns ``{"dimension": d, "vectors": [[...], ...]}``; errors carry status
>= 400 and ``{"error": "..."}``.

Embedding file format: UTF-8 JSON ``{"dimension": d, "tokens": [...],
"vectors": [[...], ...]}`` with rows in token order.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import requests

from .errors import (
    DimensionMismatch,
    EmptyMatrix,
    ParseError,
    ProtocolError,
    ProviderTimeout,
    TokenCountMismatch,
)
from .textcore import TokenSequence

_MIN_NORM = 1e-12


@dataclass(frozen=True)
class EmbeddingMatrix:
    """One d-dimensional vector per token, row order = token order."""

    vectors: np.ndarray

    def __post_init__(self) -> None:
        v = self.vectors
        if v.ndim != 2:
            raise ValueError(f"expected a 2-d array, got ndim={v.ndim}")
        if v.shape[0] > 0 and v.shape[1] < 1:
            raise ValueError("embedding dimension must be >= 1")

    @property
    def token_count(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.vectors.shape[1])

    def normalized(self) -> np.ndarray:
        norms = np.linalg.norm(self.vectors, axis=1, keepdims=True)
        return self.vectors / norms


@dataclass(frozen=True)
class BertScoreResult:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class ProviderSpec:
    """Embedding source: ``file:PATH``, ``http:URL`` or ``det:SEED,DIM``."""

    kind: str  # "file" | "http" | "deterministic"
    path: str | None = None
    url: str | None = None
    seed: int = 0
    dimension: int = 0
    timeout: float = 10.0

    @classmethod
    def parse(cls, text: str, timeout: float = 10.0) -> "ProviderSpec":
        if text.startswith("file:"):
            return cls(kind="file", path=text[len("file:") :])
        if text.startswith("http:"):
            url = text[len("http:") :]
            if not url.startswith(("http://", "https://")):
                url = "http://" + url.lstrip("/")
            return cls(kind="http", url=url, timeout=timeout)
        if text.startswith("det:"):
            try:
                seed_s, dim_s = text[len("det:") :].split(",")
                seed, dim = int(seed_s), int(dim_s)
            except ValueError as exc:
                raise ValueError(f"bad deterministic provider spec {text!r}") from exc
            if dim < 1:
                raise ValueError("embedding dimension must be >= 1")
            return cls(kind="deterministic", seed=seed, dimension=dim)
        raise ValueError(f"unknown provider spec {text!r}")


def greedy_match_score(
    hyp_emb: EmbeddingMatrix, ref_emb: EmbeddingMatrix
) -> BertScoreResult:
    """Precision/recall/F1 from greedy maximum-cosine token pairing.

    No IDF weighting, no baseline rescaling; vectors are L2-normalized
    before the similarity matrix is formed.
    """
    if hyp_emb.token_count == 0 or ref_emb.token_count == 0:
        raise EmptyMatrix("both embedding matrices must be non-empty")
    if hyp_emb.dimension != ref_emb.dimension:
        raise DimensionMismatch(
            f"dimension {hyp_emb.dimension} vs {ref_emb.dimension}"
        )
    sim = hyp_emb.normalized() @ ref_emb.normalized().T
    precision = float(sim.max(axis=1).mean())
    recall = float(sim.max(axis=0).mean())
    if precision + recall <= 0.0:
        f1 = 0.0
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return BertScoreResult(precision=precision, recall=recall, f1=f1)


def _validate_rows(
    vectors: list, dimension: int, n_tokens: int, origin: str
) -> np.ndarray:
    if len(vectors) != n_tokens:
        raise TokenCountMismatch(
            f"{origin}: {len(vectors)} vectors for {n_tokens} tokens"
        )
    out = np.empty((n_tokens, dimension), np.float64)
    for i, row in enumerate(vectors):
        if not isinstance(row, list) or len(row) != dimension:
            raise ParseError(f"{origin}: row {i} is not a {dimension}-vector")
        try:
            out[i] = row
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{origin}: row {i} holds non-numeric data") from exc
        if np.linalg.norm(out[i]) < _MIN_NORM:
            raise ParseError(f"{origin}: row {i} is a zero vector")
    return out


def load_embeddings_file(
    path: str | Path, expected_tokens: TokenSequence
) -> EmbeddingMatrix:
    """Load a JSON embedding file and check it against the token sequence."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    for key in ("dimension", "tokens", "vectors"):
        if key not in payload:
            raise ParseError(f"{path}: missing field {key!r}")
    dimension = payload["dimension"]
    if not isinstance(dimension, int) or dimension < 1:
        raise ParseError(f"{path}: bad dimension {dimension!r}")
    expected = list(expected_tokens.normalized)
    if len(payload["tokens"]) != len(expected):
        raise TokenCountMismatch(
            f"{path}: file has {len(payload['tokens'])} tokens, "
            f"expected {len(expected)}"
        )
    for i, (got, want) in enumerate(zip(payload["tokens"], expected)):
        if got != want:
            raise TokenCountMismatch(
                f"{path}: token {i} is {got!r}, expected {want!r} "
                "(tokenizer drift between producer and consumer)"
            )
    rows = _validate_rows(payload["vectors"], dimension, len(expected), str(path))
    return EmbeddingMatrix(rows)


def fetch_embeddings_http(
    spec: ProviderSpec, tokens: TokenSequence
) -> EmbeddingMatrix:
    """POST the token list to the provider and validate the response.

    One retry on connection failure or 5xx; 4xx responses and malformed
    payloads raise immediately.
    """
    if spec.kind != "http" or not spec.url:
        raise ValueError("fetch_embeddings_http needs an http provider spec")
    endpoint = spec.url.rstrip("/") + "/embed"
    body = {"tokens": list(tokens.normalized)}
    response = None
    last_exc: Exception | None = None
    for attempt in range(2):
        try:
            response = requests.post(endpoint, json=body, timeout=spec.timeout)
        except requests.Timeout as exc:
            raise ProviderTimeout(f"{endpoint}: no answer in {spec.timeout}s") from exc
        except requests.ConnectionError as exc:
            last_exc = exc
            continue
        if response.status_code >= 500 and attempt == 0:
            continue
        break
    if response is None:
        raise ProviderTimeout(f"{endpoint}: unreachable ({last_exc})")
    if response.status_code >= 400:
        try:
            message = response.json().get("error", response.text)
        except ValueError:
            message = response.text
        raise ProtocolError(f"{endpoint}: status {response.status_code}: {message}")
    try:
        payload = response.json()
    except ValueError as exc:
        raise ProtocolError(f"{endpoint}: response is not JSON") from exc
    if "dimension" not in payload or "vectors" not in payload:
        raise ProtocolError(f"{endpoint}: response missing dimension/vectors")
    try:
        rows = _validate_rows(
            payload["vectors"], payload["dimension"], len(tokens), endpoint
        )
    except ParseError as exc:
        raise ProtocolError(str(exc)) from exc
    return EmbeddingMatrix(rows)


def _hash_unit_vector(seed: int, dimension: int, token: str) -> np.ndarray:
    digest = hashlib.blake2b(
        f"{seed}\x1f{token}".encode("utf-8"), digest_size=16
    ).digest()
    gen = np.random.Generator(np.random.PCG64(int.from_bytes(digest, "little")))
    v = gen.standard_normal(dimension)
    norm = np.linalg.norm(v)
    while norm < _MIN_NORM:  # pragma: no cover - astronomically unlikely
        v = gen.standard_normal(dimension)
        norm = np.linalg.norm(v)
    return v / norm


def deterministic_embeddings(
    seed: int, dimension: int, tokens: TokenSequence
) -> EmbeddingMatrix:
    """Reproducible pseudo-random unit vectors keyed by (seed, token).

    Each distinct normalized token hashes (blake2b) to a PCG64 stream whose
    first ``dimension`` normal draws are L2-normalized.  Identical tokens get
    identical rows; the mapping is stable across calls, processes and
    platforms for a fixed numpy generation.
    """
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    cache: dict[str, np.ndarray] = {}
    rows = np.empty((len(tokens), dimension), np.float64)
    for i, tok in enumerate(tokens.normalized):
        vec = cache.get(tok)
        if vec is None:
            vec = _hash_unit_vector(seed, dimension, tok)
            cache[tok] = vec
        rows[i] = vec
    return EmbeddingMatrix(rows)


def embeddings_for(spec: ProviderSpec, tokens: TokenSequence) -> EmbeddingMatrix:
    """Dispatch to the provider named by ``spec``."""
    if spec.kind == "file":
        assert spec.path is not None
        return load_embeddings_file(spec.path, tokens)
    if spec.kind == "http":
        return fetch_embeddings_http(spec, tokens)
    if spec.kind == "deterministic":
        return deterministic_embeddings(spec.seed, spec.dimension, tokens)
    raise ValueError(f"unknown provider kind {spec.kind!r}")
