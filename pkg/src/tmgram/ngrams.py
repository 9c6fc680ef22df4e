"""Word n-gram sets and Dice-style set similarity.

Similarity is computed over sets of contiguous word windows (trigrams by
default). Sentences shorter than the window order contribute one degenerate
whole-sentence gram, so short sentences remain matchable against each other
instead of silently scoring zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

__all__ = [
    "NgramSet",
    "SimilarityScore",
    "extract_ngrams",
    "dice_similarity",
    "rank_candidates",
    "DEFAULT_ORDER",
    "DEFAULT_MULTIPLIER",
]

DEFAULT_ORDER = 3
# Overlap multiplier. 3.0 stretches the usual Dice range so that a score of
# multiplier/2 means identical gram sets; 2.0 gives the standard coefficient.
DEFAULT_MULTIPLIER = 3.0


@dataclass(frozen=True, slots=True)
class NgramSet:
    """The set of word windows extracted from one sentence.

    `source_len` is the word count of the originating sentence, kept so the
    degenerate short-sentence rule stays visible to callers.
    """

    order: int
    grams: frozenset[tuple[str, ...]]
    source_len: int


def extract_ngrams(words: Sequence[str], order: int = DEFAULT_ORDER) -> NgramSet:
    """Build the NgramSet of `words` (normalized word tokens).

    For `len(words) >= order` the grams are every contiguous window of
    `order` words (`len(words) - order + 1` windows, deduplicated). Shorter
    non-empty sentences yield exactly one gram holding the whole sequence;
    an empty sequence yields an empty set.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    words = tuple(words)
    n = len(words)
    if n == 0:
        grams: frozenset[tuple[str, ...]] = frozenset()
    elif n < order:
        grams = frozenset({words})
    else:
        grams = frozenset(words[i : i + order] for i in range(n - order + 1))
    return NgramSet(order=order, grams=grams, source_len=n)


@dataclass(frozen=True, slots=True)
class SimilarityScore:
    """A similarity value together with the multiplier that produced it.

    `value` lies in [0, multiplier/2]; the ceiling is reached exactly when
    both gram sets are equal and non-empty.
    """

    value: float
    multiplier: float

    @property
    def ceiling(self) -> float:
        return self.multiplier / 2.0


def dice_similarity(
    a: NgramSet, b: NgramSet, k: float = DEFAULT_MULTIPLIER
) -> SimilarityScore:
    """Score two gram sets: `k * |a & b| / (|a| + |b|)`.

    Both sets must share the same order. Two empty sets score 0, not the
    ceiling: an empty sentence is not similar to anything.
    """
    if a.order != b.order:
        raise ValueError(
            f"gram order mismatch: {a.order} vs {b.order}"
        )
    total = len(a.grams) + len(b.grams)
    if total == 0:
        return SimilarityScore(value=0.0, multiplier=k)
    inter = len(a.grams & b.grams)
    return SimilarityScore(value=k * inter / total, multiplier=k)


def rank_candidates(
    query: NgramSet,
    candidates: Iterable[tuple[Any, NgramSet]],
    k: float = DEFAULT_MULTIPLIER,
) -> list[tuple[Any, SimilarityScore]]:
    """Score `(id, grams)` candidates against `query` and order them.

    Zero-score candidates are dropped; the rest sort by score descending
    with ties broken by ascending id, so rankings are deterministic.
    """
    scored = []
    for cid, grams in candidates:
        score = dice_similarity(query, grams, k=k)
        if score.value > 0.0:
            scored.append((cid, score))
    scored.sort(key=lambda item: (-item[1].value, item[0]))
    return scored
