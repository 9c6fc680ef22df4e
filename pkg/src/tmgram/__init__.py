"""Translation memory engine for bilingual sentence corpora.

Retrieval works on overlap of word trigrams (Dice-style scoring), with an
exact-match fast path and chunk-anchored phrase suggestions for queries no
stored sentence covers. Units live in append-only JSONL stores, exchange
with other tools via a TMX subset, and are served over HTTP or the `tm`
command line.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .chunker import Chunk, PosLexicon, chunk, chunk_segment, load_lexicon, tag
from .engine import ApiConfig, Engine
from .errors import (
    DuplicateUnitError,
    EmptyTextError,
    LexiconError,
    RulesError,
    StoreError,
    TmError,
    TmxError,
    UnitNotFoundError,
)
from .index import MatchResult, TmIndex, build_index
from .ngrams import (
    NgramSet,
    SimilarityScore,
    dice_similarity,
    extract_ngrams,
    rank_candidates,
)
from .phrases import (
    CandidatePhrase,
    PhraseGroup,
    PhraseMatch,
    SuggestReport,
    Suggestion,
    generate_candidates,
    match_candidates,
    select_maximal,
    suggest,
)
from .segment import (
    SegRules,
    Segment,
    Token,
    load_rules,
    make_segment,
    normalize,
    split_sentences,
    tokenize,
)
from .store import ImportSummary, TmStore, merged_view
from .units import TranslationUnit, UnitMeta, make_unit, unit_id

__all__ = [
    "__version__",
    "ApiConfig",
    "CandidatePhrase",
    "Chunk",
    "DuplicateUnitError",
    "EmptyTextError",
    "Engine",
    "ImportSummary",
    "LexiconError",
    "MatchResult",
    "NgramSet",
    "PhraseGroup",
    "PhraseMatch",
    "PosLexicon",
    "RulesError",
    "SegRules",
    "Segment",
    "SimilarityScore",
    "StoreError",
    "SuggestReport",
    "Suggestion",
    "TmError",
    "TmIndex",
    "TmStore",
    "TmxError",
    "Token",
    "TranslationUnit",
    "UnitMeta",
    "UnitNotFoundError",
    "build_index",
    "chunk",
    "chunk_segment",
    "dice_similarity",
    "extract_ngrams",
    "generate_candidates",
    "load_lexicon",
    "load_rules",
    "make_segment",
    "make_unit",
    "match_candidates",
    "merged_view",
    "normalize",
    "rank_candidates",
    "select_maximal",
    "split_sentences",
    "suggest",
    "tag",
    "tokenize",
    "unit_id",
]
