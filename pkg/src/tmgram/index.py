"""In-memory retrieval index over translation units.

The index keeps three views of the unit set: an exact-match map keyed on
normalized source text, gram postings (gram -> unit ids) used to generate
fuzzy candidates, and positional word postings (word -> (unit id, word
position)) used for contiguous phrase search. It is rebuilt from the store
on startup and mutated in step with commits; mutating calls must be
serialized by the caller, while any number of readers may run between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DuplicateUnitError, UnitNotFoundError
from .ngrams import (
    DEFAULT_MULTIPLIER,
    DEFAULT_ORDER,
    NgramSet,
    SimilarityScore,
    extract_ngrams,
    rank_candidates,
)
from .segment import Segment, normalize
from .units import TranslationUnit

__all__ = ["TmIndex", "MatchResult", "build_index", "KIND_EXACT", "KIND_FUZZY"]

KIND_EXACT = "exact"
KIND_FUZZY = "fuzzy"

DEFAULT_LIMIT = 5


@dataclass(frozen=True, slots=True)
class MatchResult:
    """One retrieval hit: a unit, its score, and its 1-based rank."""

    unit: TranslationUnit
    score: SimilarityScore
    rank: int
    kind: str


class TmIndex:
    """Mutable index over a set of TranslationUnits."""

    def __init__(
        self, order: int = DEFAULT_ORDER, k: float = DEFAULT_MULTIPLIER
    ) -> None:
        if order < 1:
            raise ValueError(f"order must be >= 1, got {order}")
        self.order = order
        self.k = k
        self.unit_table: dict[str, TranslationUnit] = {}
        self.gram_postings: dict[tuple[str, ...], set[str]] = {}
        self.word_postings: dict[str, set[tuple[str, int]]] = {}
        self.exact_map: dict[str, set[str]] = {}
        self._unit_grams: dict[str, NgramSet] = {}

    def __len__(self) -> int:
        return len(self.unit_table)

    def __contains__(self, unit_id: str) -> bool:
        return unit_id in self.unit_table

    def add_unit(self, unit: TranslationUnit) -> None:
        """Insert `unit`; raises DuplicateUnitError if its id is present."""
        if unit.id in self.unit_table:
            raise DuplicateUnitError(f"unit {unit.id} already indexed")
        grams = extract_ngrams(unit.source.word_norms, self.order)
        self.unit_table[unit.id] = unit
        self._unit_grams[unit.id] = grams
        for gram in grams.grams:
            self.gram_postings.setdefault(gram, set()).add(unit.id)
        for pos, word in enumerate(unit.source.word_norms):
            self.word_postings.setdefault(word, set()).add((unit.id, pos))
        self.exact_map.setdefault(normalize(unit.source.raw), set()).add(unit.id)

    def remove_unit(self, unit_id: str) -> None:
        """Remove the unit and every posting that mentions it."""
        unit = self.unit_table.pop(unit_id, None)
        if unit is None:
            raise UnitNotFoundError(f"unit {unit_id} not indexed")
        grams = self._unit_grams.pop(unit_id)
        for gram in grams.grams:
            postings = self.gram_postings[gram]
            postings.discard(unit_id)
            if not postings:
                del self.gram_postings[gram]
        for pos, word in enumerate(unit.source.word_norms):
            positions = self.word_postings[word]
            positions.discard((unit_id, pos))
            if not positions:
                del self.word_postings[word]
        key = normalize(unit.source.raw)
        ids = self.exact_map[key]
        ids.discard(unit_id)
        if not ids:
            del self.exact_map[key]

    def lookup_exact(self, source_text: str) -> set[TranslationUnit]:
        """Units whose normalized source equals `normalize(source_text)`."""
        ids = self.exact_map.get(normalize(source_text), set())
        return {self.unit_table[uid] for uid in ids}

    def retrieve(
        self, query: Segment, limit: int = DEFAULT_LIMIT
    ) -> list[MatchResult]:
        """Rank stored units against `query` by gram overlap.

        Candidates are exactly the units sharing at least one gram with the
        query (pulled from the gram postings), scored with the index's
        multiplier, ordered by score descending then unit id, truncated to
        `limit`. Exact hits (normalized raw text equality) are marked
        `kind="exact"` and, scoring the ceiling, always rank first.
        """
        if limit < 1:
            raise ValueError(f"limit must be >= 1, got {limit}")
        query_grams = extract_ngrams(query.word_norms, self.order)
        candidate_ids: set[str] = set()
        for gram in query_grams.grams:
            candidate_ids.update(self.gram_postings.get(gram, ()))
        ranked = rank_candidates(
            query_grams,
            ((uid, self._unit_grams[uid]) for uid in candidate_ids),
            k=self.k,
        )
        exact_ids = self.exact_map.get(normalize(query.raw), set())
        results = []
        for position, (uid, score) in enumerate(ranked[:limit], start=1):
            kind = KIND_EXACT if uid in exact_ids else KIND_FUZZY
            results.append(
                MatchResult(
                    unit=self.unit_table[uid],
                    score=score,
                    rank=position,
                    kind=kind,
                )
            )
        return results

    def find_phrase(self, words: Sequence[str]) -> set[tuple[str, int]]:
        """All (unit id, start position) where `words` occur contiguously.

        `words` are normalized word tokens. Occurrences are found by
        position arithmetic over the word postings: a start position
        survives if every following word appears at the matching offset in
        the same unit.
        """
        words = tuple(words)
        if not words:
            raise ValueError("phrase must hold at least one word")
        occurrences = set(self.word_postings.get(words[0], ()))
        for offset, word in enumerate(words[1:], start=1):
            if not occurrences:
                break
            positions = self.word_postings.get(word, set())
            occurrences = {
                (uid, pos)
                for uid, pos in occurrences
                if (uid, pos + offset) in positions
            }
        return occurrences

    def unit_grams(self, unit_id: str) -> NgramSet:
        """The cached NgramSet of a stored unit's source."""
        return self._unit_grams[unit_id]


def build_index(
    units: Iterable[TranslationUnit],
    order: int = DEFAULT_ORDER,
    k: float = DEFAULT_MULTIPLIER,
) -> TmIndex:
    """Index `units`; ids must be unique."""
    index = TmIndex(order=order, k=k)
    for unit in units:
        index.add_unit(unit)
    return index
