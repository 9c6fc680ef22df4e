"""Translation units and their content-hash identity."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .segment import Segment, make_segment, normalize

__all__ = [
    "UnitMeta",
    "TranslationUnit",
    "unit_id",
    "make_unit",
    "SCOPE_LOCAL",
    "SCOPE_GLOBAL",
    "ORIGIN_MANUAL",
    "ORIGIN_IMPORTED",
]

SCOPE_LOCAL = "local"
SCOPE_GLOBAL = "global"
ORIGIN_MANUAL = "manual"
ORIGIN_IMPORTED = "imported"


@dataclass(frozen=True, slots=True)
class UnitMeta:
    """Provenance of a stored unit; `created_at` is epoch seconds (UTC)."""

    scope: str = SCOPE_LOCAL
    author: str = "anonymous"
    created_at: int = 0
    origin: str = ORIGIN_MANUAL


@dataclass(frozen=True, slots=True)
class TranslationUnit:
    """A source segment paired with its translation.

    The id is a content hash of the normalized texts and language pair, so
    committing the same pair twice yields the same unit.
    """

    id: str
    source: Segment
    target: Segment
    meta: UnitMeta


def unit_id(
    source_text: str, target_text: str, source_lang: str, target_lang: str
) -> str:
    """Stable content-hash id for a (source, target) pair.

    The hash covers the language pair and the normalized texts, joined with
    an unambiguous separator, and is truncated to 16 hex characters.
    """
    payload = "\x1f".join(
        (source_lang, target_lang, normalize(source_text), normalize(target_text))
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def make_unit(
    source_text: str,
    target_text: str,
    source_lang: str = "en",
    target_lang: str = "hi",
    meta: UnitMeta | None = None,
) -> TranslationUnit:
    """Build a TranslationUnit with its content-hash id."""
    return TranslationUnit(
        id=unit_id(source_text, target_text, source_lang, target_lang),
        source=make_segment(source_text, lang=source_lang),
        target=make_segment(target_text, lang=target_lang),
        meta=meta if meta is not None else UnitMeta(),
    )
