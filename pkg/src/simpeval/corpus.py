"""Document-pair manifests, split assignment, language tagging and the
masked-pair generator.

The shipped manifest (``data/document_manifest.jsonl``) lists the aligned
Standard/Simple German narrative documents with their public source URLs.
Texts themselves are never downloaded implicitly; they are read from local
files keyed by source id, and a fetch helper exists for explicitly
whitelisted public-domain hosts only.
"""

from __future__ import annotations

import enum
import importlib.resources
import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
import requests

from .errors import (
    DuplicateSourceId,
    EmptyInput,
    ParseError,
    RateOutOfRange,
    UnknownSourceId,
)
from .textcore import Token, TokenSequence

MASK_SYMBOL = "<mask>"
_MASK_TOKEN = Token(surface=MASK_SYMBOL, normalized=MASK_SYMBOL, is_punctuation=False)

_SOURCE_PREFIXES = ("eb", "kv", "pv", "mils")

_MANIFEST_FIELDS = (
    "source_id",
    "title",
    "origin",
    "standard_url",
    "simple_url",
    "standard_path",
    "simple_path",
    "standard_cutoff_chars",
)

DEFAULT_DEV_IDS = frozenset({"mils-stadtmusikanten", "eb-hyde", "pv-schimmelreiter"})
DEFAULT_TEST_IDS = frozenset({"mils-bruder", "eb-christo", "pv-sandmann"})


class LanguageTag(enum.Enum):
    DE_DE = "de_DE"  # domain-adaptation pairs, both sides
    DE_OR = "de_OR"  # Standard German side
    DE_SI = "de_SI"  # Simple German side


@dataclass(frozen=True)
class DocumentPair:
    source_id: str
    title: str
    origin: str
    standard_url: str
    simple_url: str
    standard_path: str | None = None
    simple_path: str | None = None
    standard_cutoff_chars: int | None = None
    standard_text: str | None = None
    simple_text: str | None = None

    def __post_init__(self) -> None:
        prefix = self.source_id.split("-", 1)[0]
        if prefix not in _SOURCE_PREFIXES:
            raise ValueError(
                f"source id {self.source_id!r} must start with one of "
                f"{_SOURCE_PREFIXES}"
            )


@dataclass(frozen=True)
class SplitAssignment:
    dev_ids: frozenset[str]
    test_ids: frozenset[str]
    train_ids: frozenset[str]

    def __post_init__(self) -> None:
        if (
            self.dev_ids & self.test_ids
            or self.dev_ids & self.train_ids
            or self.test_ids & self.train_ids
        ):
            raise ValueError("split sets must be disjoint")


@dataclass(frozen=True)
class MaskedPair:
    masked: TokenSequence
    original: TokenSequence
    tag: LanguageTag
    seed: int

    def __post_init__(self) -> None:
        if len(self.masked) != len(self.original):
            raise ValueError("masked and original must have equal length")


def default_manifest_path() -> Path:
    resource = importlib.resources.files("simpeval").joinpath(
        "data/document_manifest.jsonl"
    )
    return Path(str(resource))


def load_manifest(path: str | Path) -> list[DocumentPair]:
    """Read a JSONL manifest of document pairs."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        raise ParseError(f"{path}: manifest is empty")
    pairs: list[DocumentPair] = []
    seen: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: line {lineno}: {exc.msg}") from exc
        missing = [f for f in _MANIFEST_FIELDS if f not in record]
        if missing:
            raise ParseError(f"{path}: line {lineno}: missing fields {missing}")
        if record["source_id"] in seen:
            raise DuplicateSourceId(record["source_id"])
        seen.add(record["source_id"])
        try:
            pairs.append(DocumentPair(**{f: record[f] for f in _MANIFEST_FIELDS}))
        except ValueError as exc:
            raise ParseError(f"{path}: line {lineno}: {exc}") from exc
    return pairs


def assign_splits(
    manifest: list[DocumentPair],
    dev_ids: set[str] | None = None,
    test_ids: set[str] | None = None,
) -> SplitAssignment:
    """Partition the manifest into dev/test/train.

    Without overrides the defaults apply (dev: Stadtmusikanten, Jekyll &
    Hyde, Schimmelreiter; test: Bruder, Monte Christo, Sandmann).  A test
    override wins over a dev default for the same id.
    """
    all_ids = {p.source_id for p in manifest}
    effective_test = frozenset(test_ids) if test_ids is not None else DEFAULT_TEST_IDS
    effective_dev = frozenset(dev_ids) if dev_ids is not None else DEFAULT_DEV_IDS
    effective_dev -= effective_test
    unknown = (effective_dev | effective_test) - all_ids
    if unknown:
        raise UnknownSourceId(", ".join(sorted(unknown)))
    train = frozenset(all_ids - effective_dev - effective_test)
    return SplitAssignment(
        dev_ids=effective_dev, test_ids=effective_test, train_ids=train
    )


def mask_count(n_words: int, rate: float) -> int:
    """Number of word tokens to mask in a sentence with ``n_words`` words."""
    return max(1, math.floor(rate * n_words))


def generate_masked_pairs(
    sentences: list[TokenSequence], rate: float, seed: int
) -> list[MaskedPair]:
    """Shuffle sentences and mask a fixed share of word tokens in each.

    Per sentence exactly ``max(1, floor(rate * n_words))`` non-punctuation
    tokens are replaced by ``<mask>``; punctuation is never masked.
    Sentences without any word token are dropped.  The result is fully
    determined by (sentences, rate, seed).
    """
    if not sentences:
        raise EmptyInput("no sentences to mask")
    if not 0.0 < rate < 1.0:
        raise RateOutOfRange(f"rate must be in (0, 1), got {rate}")
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(sentences))
    pairs: list[MaskedPair] = []
    for idx in order:
        sentence = sentences[int(idx)]
        word_positions = sentence.word_positions()
        if not word_positions:
            continue
        k = mask_count(len(word_positions), rate)
        chosen = rng.choice(len(word_positions), size=k, replace=False)
        masked_at = {word_positions[int(c)] for c in chosen}
        masked_tokens = tuple(
            _MASK_TOKEN if i in masked_at else tok
            for i, tok in enumerate(sentence.tokens)
        )
        pairs.append(
            MaskedPair(
                masked=TokenSequence(masked_tokens),
                original=sentence,
                tag=LanguageTag.DE_DE,
                seed=seed,
            )
        )
    return pairs


@dataclass(frozen=True)
class TaggedRecord:
    """One line of the tagged-pairs JSONL export."""

    src_tag: str
    tgt_tag: str
    src: str
    tgt: str


def export_pairs(
    pairs: list[MaskedPair], path: str | Path, format: str = "jsonl"
) -> None:
    """Write masked pairs as tagged-pairs JSONL (masked side = src)."""
    if format != "jsonl":
        raise ValueError(f"unsupported export format {format!r}")
    lines = []
    for pair in pairs:
        record = {
            "src_tag": pair.tag.value,
            "tgt_tag": pair.tag.value,
            "src": " ".join(pair.masked.surfaces),
            "tgt": " ".join(pair.original.surfaces),
        }
        lines.append(json.dumps(record, ensure_ascii=False))
    Path(path).write_text(
        "\n".join(lines) + ("\n" if lines else ""), encoding="utf-8"
    )


def import_pairs(path: str | Path, format: str = "jsonl") -> list[TaggedRecord]:
    """Read a tagged-pairs file written by :func:`export_pairs`."""
    if format != "jsonl":
        raise ValueError(f"unsupported import format {format!r}")
    path = Path(path)
    records: list[TaggedRecord] = []
    for lineno, line in enumerate(
        path.read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: line {lineno}: {exc.msg}") from exc
        try:
            record = TaggedRecord(
                src_tag=payload["src_tag"],
                tgt_tag=payload["tgt_tag"],
                src=payload["src"],
                tgt=payload["tgt"],
            )
        except KeyError as exc:
            raise ParseError(f"{path}: line {lineno}: missing field {exc}") from exc
        known = {tag.value for tag in LanguageTag}
        for tag in (record.src_tag, record.tgt_tag):
            if tag not in known:
                raise ParseError(
                    f"{path}: line {lineno}: unknown language tag {tag!r}"
                )
        records.append(record)
    return records


def load_pair_texts(pair: DocumentPair, root: str | Path = ".") -> DocumentPair:
    """Read the local text files of a pair, applying the standard-side cutoff.

    The cutoff reproduces the manual truncation of the Standard version to
    the extent of the Simple excerpt; it is data, not automation.
    """
    root = Path(root)
    standard_text = pair.standard_text
    simple_text = pair.simple_text
    if pair.standard_path is not None:
        standard_text = (root / pair.standard_path).read_text(encoding="utf-8")
        if pair.standard_cutoff_chars is not None:
            standard_text = standard_text[: pair.standard_cutoff_chars]
    if pair.simple_path is not None:
        simple_text = (root / pair.simple_path).read_text(encoding="utf-8")
    return replace(pair, standard_text=standard_text, simple_text=simple_text)


def fetch_public_texts(
    pairs: list[DocumentPair],
    allowed_hosts: set[str],
    dest_dir: str | Path,
    timeout: float = 30.0,
) -> list[Path]:
    """Download standard-side documents whose host is explicitly whitelisted.

    Non-whitelisted URLs are refused (skipped), never fetched: most corpus
    sources are copyrighted and only their URLs may be shipped.
    """
    dest = Path(dest_dir)
    dest.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for pair in pairs:
        host = pair.standard_url.split("/")[2] if "//" in pair.standard_url else ""
        if host not in allowed_hosts:
            continue
        response = requests.get(pair.standard_url, timeout=timeout)
        response.raise_for_status()
        target = dest / f"{pair.source_id}.standard.txt"
        target.write_text(response.text, encoding="utf-8")
        written.append(target)
    return written
