"""Rule-based shallow chunking over a flat part-of-speech lexicon.

Tagging is a plain lexicon lookup with a NOUN default for unknown words, so
the chunker degrades gracefully on open vocabulary: a run of unknown words
becomes a single noun phrase. Chunks are found greedily left to right with
verb phrases tried before noun phrases:

    NP := DET? ADJ* (NOUN|PRON)+
    PP := PREP DET? ADJ* (NOUN|PRON)+
    VP := PRON? (AUX|VERB)+ (ADV|PP)*   (at least one VERB required)

Requiring a VERB keeps a bare auxiliary ("will" in "Will they recommend...")
outside any chunk, while letting the verb's subject pronoun and trailing
prepositional attachments ride along. Punctuation tags OTHER and matches no
pattern, so it always breaks a chunk. Spans are inclusive word-index pairs
over the segment's word tokens.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, NamedTuple, Sequence

from .errors import LexiconError
from .segment import Segment, Token

__all__ = [
    "TAGS",
    "DEFAULT_TAG",
    "PosLexicon",
    "TaggedToken",
    "Chunk",
    "load_lexicon",
    "default_lexicon",
    "tag",
    "chunk",
    "chunk_segment",
    "Chunker",
]

TAGS = frozenset(
    {"DET", "PRON", "NOUN", "VERB", "AUX", "ADJ", "ADV", "PREP", "CONJ", "OTHER"}
)
DEFAULT_TAG = "NOUN"

_NP_HEAD = {"NOUN", "PRON"}
_VERBAL = {"AUX", "VERB"}


@dataclass(frozen=True)
class PosLexicon:
    """Word -> tag mapping with a default for unknown words."""

    entries: dict[str, str] = field(default_factory=dict)
    default_tag: str = DEFAULT_TAG

    def lookup(self, word_norm: str) -> str:
        return self.entries.get(word_norm, self.default_tag)


class TaggedToken(NamedTuple):
    token: Token
    tag: str


@dataclass(frozen=True, slots=True)
class Chunk:
    """A labeled span over word indices; `end` is inclusive."""

    label: str
    start: int
    end: int


def _parse_lexicon(text: str, source: str) -> PosLexicon:
    entries: dict[str, str] = {}
    for lineno, line in enumerate(text.split("\n"), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconError(
                f"{source} line {lineno}: expected 'word<TAB>TAG', got {line!r}"
            )
        word, pos_tag = parts[0].strip().casefold(), parts[1].strip()
        if pos_tag not in TAGS:
            raise LexiconError(
                f"{source} line {lineno}: unknown tag {pos_tag!r}"
            )
        # Later entries win, so local overrides can shadow earlier lines.
        entries[word] = pos_tag
    return PosLexicon(entries=entries)


def load_lexicon(path: str | Path) -> PosLexicon:
    """Load a `word<TAB>TAG` lexicon file (UTF-8, `#` comments)."""
    path = Path(path)
    return _parse_lexicon(path.read_text(encoding="utf-8"), str(path))


_DEFAULT_LEXICON: PosLexicon | None = None


def default_lexicon() -> PosLexicon:
    """The lexicon shipped with the package (data/lexicon.tsv), cached."""
    global _DEFAULT_LEXICON
    if _DEFAULT_LEXICON is None:
        from importlib.resources import files

        text = files("tmgram").joinpath("data/lexicon.tsv").read_text("utf-8")
        _DEFAULT_LEXICON = _parse_lexicon(text, "data/lexicon.tsv")
    return _DEFAULT_LEXICON


def tag(
    tokens: Sequence[Token], lexicon: PosLexicon | None = None
) -> list[TaggedToken]:
    """Tag every token; punctuation is OTHER, unknown words default."""
    if lexicon is None:
        lexicon = default_lexicon()
    tagged = []
    for token in tokens:
        if not token.is_word:
            tagged.append(TaggedToken(token, "OTHER"))
        else:
            tagged.append(TaggedToken(token, lexicon.lookup(token.norm)))
    return tagged


def _match_np_core(tags: Sequence[str], i: int) -> int | None:
    """DET? ADJ* (NOUN|PRON)+ starting at `i`; returns exclusive end."""
    n = len(tags)
    j = i
    if j < n and tags[j] == "DET":
        j += 1
    while j < n and tags[j] == "ADJ":
        j += 1
    heads = 0
    while j < n and tags[j] in _NP_HEAD:
        heads += 1
        j += 1
    return j if heads else None


def _match_vp(tags: Sequence[str], i: int) -> int | None:
    """PRON? (AUX|VERB)+ (ADV|PP)* with >=1 VERB; returns exclusive end."""
    n = len(tags)
    j = i
    if tags[j] == "PRON" and j + 1 < n and tags[j + 1] in _VERBAL:
        j += 1
    saw_verb = False
    verbal_start = j
    while j < n and tags[j] in _VERBAL:
        saw_verb = saw_verb or tags[j] == "VERB"
        j += 1
    if j == verbal_start or not saw_verb:
        return None
    while j < n:
        if tags[j] == "ADV":
            j += 1
            continue
        if tags[j] == "PREP":
            pp_end = _match_np_core(tags, j + 1)
            if pp_end is not None:
                j = pp_end
                continue
        break
    return j


def chunk(tagged: Sequence[TaggedToken]) -> list[Chunk]:
    """Greedy left-to-right chunking of a tagged token sequence.

    Returns non-overlapping VP/NP chunks ordered by start; spans index the
    word tokens only (punctuation occupies no word index but still blocks
    patterns from crossing it).
    """
    tags = [t.tag for t in tagged]
    word_index: list[int | None] = []
    next_word = 0
    for item in tagged:
        if item.token.is_word:
            word_index.append(next_word)
            next_word += 1
        else:
            word_index.append(None)

    chunks: list[Chunk] = []
    i = 0
    n = len(tags)
    while i < n:
        end = _match_vp(tags, i)
        label = "VP"
        if end is None:
            end = _match_np_core(tags, i)
            label = "NP"
        if end is None:
            i += 1
            continue
        # Patterns never match OTHER, so every position in [i, end) is a word.
        chunks.append(Chunk(label, word_index[i], word_index[end - 1]))
        i = end
    return chunks


Chunker = Callable[[Segment], list[Chunk]]


def chunk_segment(
    segment: Segment, lexicon: PosLexicon | None = None
) -> list[Chunk]:
    """Tag and chunk a segment in one step."""
    return chunk(tag(segment.tokens, lexicon))
