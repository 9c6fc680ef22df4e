"""Text normalization, tokenization, and rule-based sentence segmentation.

Normalization is deliberately minimal: Unicode NFC, simple case folding, and
whitespace-run collapsing. Matching quality then comes from n-gram overlap
rather than from aggressive text surgery, and normalized text remains
readable for both English and Hindi.

Sentence boundaries are detected with a small rule engine: a set of
terminator strings (covering "." "!" "?" and the Devanagari danda) plus
literal abbreviation exceptions such as "Dr." that suppress a break. A
terminator only breaks when followed by whitespace or end of text, so
decimals and dotted hostnames stay intact.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from .errors import RulesError

__all__ = [
    "Token",
    "Segment",
    "SegRules",
    "normalize",
    "tokenize",
    "split_sentences",
    "make_segment",
    "load_rules",
    "default_rules",
    "DEFAULT_TERMINATORS",
]

_WS_RUN = re.compile(r"\s+")
_NONSPACE = re.compile(r"\S+")

# "।" is the Devanagari danda, the Hindi full stop.
DEFAULT_TERMINATORS: tuple[str, ...] = (".", "!", "?", "।")


def normalize(text: str) -> str:
    """Return `text` in NFC, case-folded, with whitespace runs collapsed.

    The result carries no leading or trailing whitespace and every interior
    whitespace run is a single space. Applying `normalize` twice gives the
    same result as applying it once.
    """
    text = unicodedata.normalize("NFC", text)
    text = text.casefold()
    text = _WS_RUN.sub(" ", text).strip()
    # Case folding can denormalize composed characters; restore NFC.
    return unicodedata.normalize("NFC", text)


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


@dataclass(frozen=True, slots=True)
class Token:
    """One token of a segment.

    `start`/`end` index the raw segment text (`raw[start:end] == surface`).
    `norm` is the normalized form used for matching; `is_word` is False for
    the punctuation tokens split off token edges.
    """

    surface: str
    norm: str
    start: int
    end: int
    is_word: bool


def tokenize(text: str) -> tuple[Token, ...]:
    """Split `text` into word and punctuation tokens.

    Tokens are the whitespace-delimited chunks of `text`, except that
    punctuation characters (Unicode category P*) at a chunk's edges become
    separate one-character punctuation tokens. Interior punctuation stays
    inside the word token, so "a.b", "state-of-the-art", and "3.14" are
    single words. Offsets always index the original `text`.
    """
    tokens: list[Token] = []
    for m in _NONSPACE.finditer(text):
        chunk = m.group()
        base = m.start()
        left, right = 0, len(chunk)
        while left < right and _is_punct(chunk[left]):
            left += 1
        while right > left and _is_punct(chunk[right - 1]):
            right -= 1
        for i in range(left):
            tokens.append(_punct_token(chunk[i], base + i))
        if left < right:
            core = chunk[left:right]
            tokens.append(
                Token(
                    surface=core,
                    norm=normalize(core),
                    start=base + left,
                    end=base + right,
                    is_word=True,
                )
            )
        for i in range(right, len(chunk)):
            tokens.append(_punct_token(chunk[i], base + i))
    return tuple(tokens)


def _punct_token(ch: str, pos: int) -> Token:
    return Token(
        surface=ch,
        norm=unicodedata.normalize("NFC", ch),
        start=pos,
        end=pos + 1,
        is_word=False,
    )


@dataclass(frozen=True, slots=True)
class Segment:
    """A sentence (or sentence-like span) with its token sequence.

    `doc_start`/`doc_end` locate `raw` inside the document the segment was
    split from; a segment built directly from a string spans the whole
    string.
    """

    raw: str
    tokens: tuple[Token, ...]
    lang: str = "en"
    doc_start: int = 0
    doc_end: int = field(default=-1)

    def __post_init__(self) -> None:
        if self.doc_end < 0:
            object.__setattr__(self, "doc_end", self.doc_start + len(self.raw))

    @property
    def word_tokens(self) -> tuple[Token, ...]:
        return tuple(t for t in self.tokens if t.is_word)

    @property
    def word_norms(self) -> tuple[str, ...]:
        return tuple(t.norm for t in self.tokens if t.is_word)


def make_segment(text: str, lang: str = "en") -> Segment:
    """Build a single Segment covering all of `text`."""
    return Segment(raw=text, tokens=tokenize(text), lang=lang)


@dataclass(frozen=True)
class SegRules:
    """Sentence segmentation rules: terminators plus abbreviation exceptions.

    Every exception is a literal string ending in one of the terminators;
    a break candidate is suppressed when the text up to and including the
    terminator ends with an exception preceded by a non-word character (or
    start of text), so "Dr." is suppressed but a word merely ending in the
    same letters is not.
    """

    terminators: frozenset[str] = frozenset(DEFAULT_TERMINATORS)
    exceptions: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.terminators:
            raise RulesError("rule set needs at least one terminator")
        for exc in self.exceptions:
            if not any(exc.endswith(t) for t in self.terminators):
                raise RulesError(
                    f"exception {exc!r} does not end in a terminator"
                )


def _parse_rules(text: str) -> SegRules:
    terminators: list[str] = []
    exceptions: list[str] = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        directive, _, value = line.partition(" ")
        value = value.strip()
        if not value:
            raise RulesError(f"line {lineno}: missing value after {directive!r}")
        if directive == "term":
            terminators.append(value)
        elif directive == "except":
            exceptions.append(value)
        else:
            raise RulesError(f"line {lineno}: unknown directive {directive!r}")
    return SegRules(
        terminators=frozenset(terminators), exceptions=tuple(exceptions)
    )


def load_rules(path: str | Path) -> SegRules:
    """Parse a rules file: one `term <string>` or `except <string>` per line.

    The file is UTF-8 with LF line ends; blank lines and lines starting with
    `#` are ignored.
    """
    return _parse_rules(Path(path).read_text(encoding="utf-8"))


def default_rules() -> SegRules:
    """Rules shipped with the package (data/segment.rules)."""
    from importlib.resources import files

    content = files("tmgram").joinpath("data/segment.rules").read_text("utf-8")
    return _parse_rules(content)


def _exception_suppresses(text: str, break_end: int, rules: SegRules) -> bool:
    head = text[:break_end]
    for exc in rules.exceptions:
        if not head.endswith(exc):
            continue
        before = break_end - len(exc) - 1
        if before < 0 or not (text[before].isalnum() or text[before] == "_"):
            return True
    return False


def split_sentences(
    text: str, rules: SegRules | None = None, lang: str = "en"
) -> list[Segment]:
    """Split `text` into sentence Segments.

    A break happens after each terminator occurrence that is followed by
    whitespace or end of text and not suppressed by an exception. Segments
    are the trimmed spans between breaks; their `doc_start`/`doc_end`
    offsets index `text`, so every character of `text` belongs to exactly
    one segment or to inter-segment whitespace.
    """
    if rules is None:
        rules = SegRules()
    # Longest terminator first so e.g. "..." wins over "." when both are rules.
    terms = sorted(rules.terminators, key=len, reverse=True)
    breaks: list[int] = []
    i = 0
    n = len(text)
    while i < n:
        matched = None
        for t in terms:
            if text.startswith(t, i):
                matched = t
                break
        if matched is None:
            i += 1
            continue
        end = i + len(matched)
        at_boundary = end >= n or text[end].isspace()
        if at_boundary and not _exception_suppresses(text, end, rules):
            breaks.append(end)
        i = end
    breaks.append(n)

    segments: list[Segment] = []
    prev = 0
    for b in breaks:
        piece = text[prev:b]
        stripped = piece.strip()
        if stripped:
            lead = len(piece) - len(piece.lstrip())
            start = prev + lead
            end = start + len(stripped)
            segments.append(
                Segment(
                    raw=stripped,
                    tokens=tokenize(stripped),
                    lang=lang,
                    doc_start=start,
                    doc_end=end,
                )
            )
        prev = b
    return segments
