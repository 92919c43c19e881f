"""Tokenization, normalization and sentence splitting.

Every metric in this package runs on the token stream produced here, so the
rules are deliberately self-contained and deterministic: no external NLP
model, no locale dependence.  The rule set is:

* split on whitespace,
* detach any non-word character as a single punctuation token,
* keep hyphenated words ("Geister-seher") as one token,
* the apostrophe separates words and becomes its own token,
* normalization is Unicode full case folding (``str.casefold``).

Abbreviation-aware sentence splitting is limited to a small configurable
list; mis-splits (e.g. after ordinals like "30.") are accepted behavior.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

# A token is either a word (possibly hyphenated) or one non-space symbol.
# Combining marks (U+0300-U+036F) continue a word: full case folding can
# expand e.g. "İ" to "i" + combining dot, and re-tokenizing the folded text
# must not break that apart.
_WORD = r"\w[\ẁ-ͯ]*"
_TOKEN_RE = re.compile(rf"{_WORD}(?:-{_WORD})*|[^\w\s]")

_SENTENCE_FINAL = {".", "!", "?", "…"}

#: Dotted abbreviations that never end a sentence.  Extend via a one-per-line
#: UTF-8 file passed to :func:`split_sentences`.
DEFAULT_ABBREVIATIONS = frozenset({"dr.", "nr.", "z.b.", "usw."})


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    normalized: str
    is_punctuation: bool

    @classmethod
    def from_surface(cls, surface: str) -> "Token":
        if not surface:
            raise ValueError("token surface must be non-empty")
        return cls(
            surface=surface,
            normalized=surface.casefold(),
            is_punctuation=not any(ch.isalnum() for ch in surface),
        )


@dataclass(frozen=True)
class TokenSequence:
    """Ordered, immutable token stream."""

    tokens: tuple[Token, ...]
    _normalized: tuple[str, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_normalized", tuple(t.normalized for t in self.tokens)
        )

    @classmethod
    def from_strings(cls, surfaces: Iterable[str]) -> "TokenSequence":
        return cls(tuple(Token.from_surface(s) for s in surfaces))

    @property
    def length(self) -> int:
        return len(self.tokens)

    @property
    def normalized(self) -> tuple[str, ...]:
        return self._normalized

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(t.surface for t in self.tokens)

    def word_positions(self) -> list[int]:
        """Indices of non-punctuation tokens."""
        return [i for i, t in enumerate(self.tokens) if not t.is_punctuation]

    def slice(self, start: int, end: int) -> "TokenSequence":
        return TokenSequence(self.tokens[start:end])

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def __getitem__(self, index: int) -> Token:
        return self.tokens[index]


@dataclass(frozen=True, slots=True)
class SentenceSpan:
    """Half-open token index range [start, end) within a document."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if not (0 <= self.start < self.end):
            raise ValueError(f"invalid sentence span [{self.start}, {self.end})")


def tokenize(text: str) -> TokenSequence:
    """Tokenize ``text`` into words and single-character punctuation tokens."""
    return TokenSequence(
        tuple(Token.from_surface(m.group()) for m in _TOKEN_RE.finditer(text))
    )


def load_abbreviations(path: str | Path) -> frozenset[str]:
    """Read a one-abbreviation-per-line UTF-8 file, case folded."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return frozenset(ln.strip().casefold() for ln in lines if ln.strip())


def _trailing_abbreviation(tokens: list[re.Match], dot_index: int) -> str | None:
    """Reconstruct a dotted abbreviation ending at ``tokens[dot_index]``.

    Walks back over alternating word/"." tokens that are adjacent in the
    source text, so "z.B." is recovered from its four tokens while "B." out
    of "A. B." is just "b.".
    """
    parts: list[str] = ["."]
    i = dot_index
    while i >= 1 and len(parts) < 8:
        prev = tokens[i - 1]
        cur = tokens[i]
        if prev.end() != cur.start():  # not glued together in the text
            break
        text = prev.group()
        expects_word = parts[-1] == "."
        if expects_word and text != "." and "." not in text:
            parts.append(text)
        elif not expects_word and text == ".":
            parts.append(".")
        else:
            break
        i -= 1
    if len(parts) < 2 or parts[-1] == ".":
        return None
    return "".join(reversed(parts)).casefold()


def split_sentences(
    text: str, abbreviations: frozenset[str] | None = None
) -> list[tuple[SentenceSpan, TokenSequence]]:
    """Split ``text`` into sentences over its token stream.

    A boundary is placed directly after a sentence-final mark (". ! ? …")
    when the mark is followed by whitespace and the next word token starts
    with an uppercase letter, or when the text ends.  Dashes and quotes
    between the mark and that word do not block the boundary; they attach to
    the following sentence.
    """
    abbrev = DEFAULT_ABBREVIATIONS if abbreviations is None else abbreviations
    matches = list(_TOKEN_RE.finditer(text))
    if not matches:
        return []
    tokens = [Token.from_surface(m.group()) for m in matches]
    n = len(tokens)

    boundaries: list[int] = []  # index AFTER which a sentence ends
    for i, tok in enumerate(tokens):
        if tok.surface not in _SENTENCE_FINAL:
            continue
        if tok.surface == "." and i >= 1:
            abbr = _trailing_abbreviation(matches, i)
            if abbr is not None and abbr in abbrev:
                continue
        if i == n - 1:
            boundaries.append(i)
            continue
        if matches[i + 1].start() == matches[i].end():
            continue  # no whitespace after the mark
        # Skip intervening punctuation; the decision rests on the next word.
        j = i + 1
        while j < n and tokens[j].is_punctuation:
            j += 1
        if j == n or tokens[j].surface[0].isupper():
            boundaries.append(i)

    sentences: list[tuple[SentenceSpan, TokenSequence]] = []
    start = 0
    for b in boundaries:
        end = b + 1
        if end > start:
            span = SentenceSpan(start, end)
            sentences.append((span, TokenSequence(tuple(tokens[start:end]))))
            start = end
    if start < n:
        span = SentenceSpan(start, n)
        sentences.append((span, TokenSequence(tuple(tokens[start:]))))
    return sentences
