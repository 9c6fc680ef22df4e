"""Sub-sentence phrase matching anchored on chunk boundaries.

When no whole sentence scores well, spans of the query that start at a
chunk start or end at a chunk end often still exist verbatim in the store.
The pipeline generates those spans as candidates, looks each one up with
positional phrase search, suppresses candidates that only ever occur inside
a longer match, and then greedily keeps the longest non-nested spans. Each
kept span is reported with the stored units it occurs in, ranked by gram
similarity between the span and the whole stored source.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .chunker import Chunk, Chunker
from .index import MatchResult, TmIndex
from .ngrams import SimilarityScore, dice_similarity, extract_ngrams
from .segment import Segment
from .units import TranslationUnit

__all__ = [
    "CandidatePhrase",
    "PhraseMatch",
    "Suggestion",
    "PhraseGroup",
    "SuggestReport",
    "generate_candidates",
    "match_candidates",
    "select_maximal",
    "suggest",
]

PER_PHRASE_LIMIT = 5


@dataclass(frozen=True, slots=True)
class CandidatePhrase:
    """A query span (inclusive word indices) anchored on a chunk boundary.

    At least one anchor flag is true: the span starts at some chunk's start
    or ends at some chunk's end, and spans always hold >= 2 words.
    """

    start: int
    end: int
    anchored_start: bool = True
    anchored_end: bool = True

    @property
    def length(self) -> int:
        return self.end - self.start + 1


@dataclass
class PhraseMatch:
    """A candidate that occurs in the store, with all its occurrences."""

    candidate: CandidatePhrase
    words: tuple[str, ...]
    occurrences: frozenset[tuple[str, int]]
    selected: bool = False


@dataclass(frozen=True, slots=True)
class Suggestion:
    """One stored unit offered for a matched phrase."""

    source_phrase: str
    unit: TranslationUnit
    target_text: str
    score: SimilarityScore
    rank: int


@dataclass
class PhraseGroup:
    """A selected phrase with its ranked suggestions.

    `span` is in word indices (inclusive); `char_start`/`char_end` locate
    the same phrase in the query's raw text so clients can highlight it
    without re-tokenizing.
    """

    phrase: str
    span: tuple[int, int]
    char_start: int
    char_end: int
    suggestions: list[Suggestion] = field(default_factory=list)


@dataclass
class SuggestReport:
    """Sentence-level matches plus phrase-level suggestion groups."""

    sentence_matches: list[MatchResult]
    phrase_matches: list[PhraseGroup]


def generate_candidates(
    segment: Segment, chunks: Sequence[Chunk]
) -> list[CandidatePhrase]:
    """All spans of >= 2 words starting at a chunk start or ending at a
    chunk end, deduplicated and ordered by (start, end)."""
    n = len(segment.word_norms)
    starts = {c.start for c in chunks}
    ends = {c.end for c in chunks}
    out: list[CandidatePhrase] = []
    for s in range(n):
        for e in range(s + 1, n):
            if s in starts or e in ends:
                out.append(
                    CandidatePhrase(
                        start=s,
                        end=e,
                        anchored_start=s in starts,
                        anchored_end=e in ends,
                    )
                )
    return out


def match_candidates(
    index: TmIndex, segment: Segment, candidates: Sequence[CandidatePhrase]
) -> list[PhraseMatch]:
    """Look up every candidate and keep the informative ones.

    A candidate with no occurrence is dropped. A matched candidate is also
    dropped when every one of its occurrences lies strictly inside some
    longer matched candidate's occurrence in the same unit: such a match
    repeats what the longer phrase already says. Kept matches carry their
    full occurrence sets and come back ordered by (start, end).
    """
    norms = segment.word_norms
    matched: list[PhraseMatch] = []
    for cand in candidates:
        words = norms[cand.start : cand.end + 1]
        occurrences = index.find_phrase(words)
        if occurrences:
            matched.append(
                PhraseMatch(
                    candidate=cand,
                    words=words,
                    occurrences=frozenset(occurrences),
                )
            )

    def covered(match: PhraseMatch) -> bool:
        length = match.candidate.length
        for uid, pos in match.occurrences:
            lo, hi = pos, pos + length - 1
            if not any(
                other.candidate.length > length
                and any(
                    ouid == uid and opos <= lo and opos + other.candidate.length - 1 >= hi
                    for ouid, opos in other.occurrences
                )
                for other in matched
            ):
                return False
        return True

    kept = [m for m in matched if not covered(m)]
    kept.sort(key=lambda m: (m.candidate.start, m.candidate.end))
    return kept


def select_maximal(matches: list[PhraseMatch]) -> list[PhraseMatch]:
    """Flag a maximal non-nested subset of matches as selected.

    Greedy by span length descending (ties: earlier start, then smaller
    phrase); a match is selected unless its span is strictly contained in
    an already selected span. Overlap without containment is allowed. The
    input list is returned with `selected` flags set on every element.
    """
    order = sorted(
        matches, key=lambda m: (-m.candidate.length, m.candidate.start, m.words)
    )
    chosen: list[CandidatePhrase] = []
    for match in order:
        cand = match.candidate
        nested = any(
            c.start <= cand.start
            and cand.end <= c.end
            and (c.start, c.end) != (cand.start, cand.end)
            for c in chosen
        )
        match.selected = not nested
        if not nested:
            chosen.append(cand)
    return matches


def _exact_first(matches: list[MatchResult]) -> list[MatchResult]:
    # An exact hit is the primary suggestion. Retrieval order already puts
    # exacts at the ceiling score; this guards the corner where a fuzzy unit
    # with identical grams but different punctuation wins the id tie-break.
    if any(m.kind == "exact" for m in matches) and matches[0].kind != "exact":
        reordered = sorted(
            matches, key=lambda m: (m.kind != "exact", m.rank)
        )
        return [
            MatchResult(unit=m.unit, score=m.score, rank=i, kind=m.kind)
            for i, m in enumerate(reordered, start=1)
        ]
    return matches


def _rank_phrase_units(
    index: TmIndex, query_grams, unit_ids: set[str], limit: int
) -> list[tuple[TranslationUnit, SimilarityScore]]:
    # Units are ranked by whole-query similarity. Unlike sentence retrieval,
    # zero scores are kept: the phrase does occur in the unit even when the
    # full sources share no gram.
    scored = [
        (uid, dice_similarity(query_grams, index.unit_grams(uid), k=index.k))
        for uid in unit_ids
    ]
    scored.sort(key=lambda item: (-item[1].value, item[0]))
    return [(index.unit_table[uid], score) for uid, score in scored[:limit]]


def suggest(
    index: TmIndex,
    query: Segment,
    chunker: Chunker,
    sentence_limit: int = 5,
    per_phrase: int = PER_PHRASE_LIMIT,
) -> SuggestReport:
    """Full suggestion workflow for one query sentence.

    Sentence-level retrieval always runs; the phrase pipeline (chunk,
    generate, match, select) runs on the same query and reports the selected
    phrases in span order, each with at most `per_phrase` suggestions ranked
    by gram similarity (score descending, unit id ascending).
    """
    sentence_matches = _exact_first(index.retrieve(query, limit=sentence_limit))
    chunks = chunker(query)
    candidates = generate_candidates(query, chunks)
    matches = match_candidates(index, query, candidates)
    select_maximal(matches)

    query_grams = extract_ngrams(query.word_norms, index.order)
    word_tokens = query.word_tokens
    groups: list[PhraseGroup] = []
    for match in matches:
        if not match.selected:
            continue
        cand = match.candidate
        char_start = word_tokens[cand.start].start
        char_end = word_tokens[cand.end].end
        phrase_text = query.raw[char_start:char_end]
        ranked = _rank_phrase_units(
            index,
            query_grams,
            {uid for uid, _ in match.occurrences},
            per_phrase,
        )
        group = PhraseGroup(
            phrase=phrase_text,
            span=(cand.start, cand.end),
            char_start=char_start,
            char_end=char_end,
        )
        for position, (unit, score) in enumerate(ranked, start=1):
            group.suggestions.append(
                Suggestion(
                    source_phrase=phrase_text,
                    unit=unit,
                    target_text=unit.target.raw,
                    score=score,
                    rank=position,
                )
            )
        groups.append(group)
    return SuggestReport(sentence_matches=sentence_matches, phrase_matches=groups)
