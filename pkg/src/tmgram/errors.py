"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "TmError",
    "EmptyTextError",
    "DuplicateUnitError",
    "UnitNotFoundError",
    "LexiconError",
    "RulesError",
    "StoreError",
    "TmxError",
]


class TmError(Exception):
    """Base class for all errors raised by this package."""


class EmptyTextError(TmError):
    """A text field was empty after normalization."""


class DuplicateUnitError(TmError):
    """A unit id was added to an index that already holds it."""


class UnitNotFoundError(TmError):
    """A unit id was not present where it was required."""


class LexiconError(TmError):
    """A part-of-speech lexicon file could not be parsed."""


class RulesError(TmError):
    """A segmentation rules file could not be parsed."""


class StoreError(TmError):
    """A store file could not be read, locked, or written."""


class TmxError(TmError):
    """An import payload was not a TMX document."""
