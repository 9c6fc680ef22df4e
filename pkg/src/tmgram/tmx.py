"""Minimal TMX 1.4 reading and writing.

Only the plain-text subset is handled: a header, then `tu` elements each
holding exactly two `tuv` children (distinguished by xml:lang) with a single
`seg` apiece. Inline markup inside a seg is flattened to its text; every
other TMX feature is ignored on import and never emitted.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import TmxError
from .units import TranslationUnit

__all__ = ["TmxPair", "parse_tmx", "export_tmx", "TMX_VERSION"]

TMX_VERSION = "1.4"
XML_LANG = "{http://www.w3.org/XML/1998/namespace}lang"


@dataclass(frozen=True, slots=True)
class TmxPair:
    """One well-formed tu: source/target texts with their language tags."""

    source_text: str
    target_text: str
    source_lang: str
    target_lang: str


def _primary(lang: str) -> str:
    return lang.split("-")[0].casefold()


def _tuv_text(tuv: ET.Element) -> str | None:
    segs = tuv.findall("seg")
    if len(segs) != 1:
        return None
    # Inline tags are dropped; their text content is kept.
    return "".join(segs[0].itertext())


def parse_tmx(
    data: bytes | str, source_lang: str | None = None
) -> tuple[list[TmxPair], int]:
    """Parse a TMX document into (pairs, malformed_count).

    A tu is malformed when it does not hold exactly two tuv children, a tuv
    lacks a language tag or a single non-empty seg, or the known source
    language matches zero or both tuvs. Malformed tus are counted and
    skipped; a payload that is not an XML tmx document raises TmxError.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise TmxError(f"not a TMX document: {exc}") from exc
    if root.tag != "tmx":
        raise TmxError(f"not a TMX document: root element {root.tag!r}")

    if source_lang is None:
        header = root.find("header")
        if header is not None:
            header_src = header.get("srclang")
            if header_src and header_src != "*all*":
                source_lang = header_src

    pairs: list[TmxPair] = []
    malformed = 0
    body = root.find("body")
    tus = body.findall("tu") if body is not None else []
    for tu in tus:
        tuvs = tu.findall("tuv")
        if len(tuvs) != 2:
            malformed += 1
            continue
        langs = [tuv.get(XML_LANG) or tuv.get("lang") for tuv in tuvs]
        texts = [_tuv_text(tuv) for tuv in tuvs]
        if any(not lang for lang in langs) or any(
            text is None or not text.strip() for text in texts
        ):
            malformed += 1
            continue
        src_pos = 0
        if source_lang is not None:
            matching = [
                i for i, lang in enumerate(langs) if _primary(lang) == _primary(source_lang)
            ]
            if len(matching) != 1:
                malformed += 1
                continue
            src_pos = matching[0]
        tgt_pos = 1 - src_pos
        pairs.append(
            TmxPair(
                source_text=texts[src_pos],
                target_text=texts[tgt_pos],
                source_lang=langs[src_pos],
                target_lang=langs[tgt_pos],
            )
        )
    return pairs, malformed


def export_tmx(
    units: Sequence[TranslationUnit] | Iterable[TranslationUnit],
    creationtool: str = "tmgram",
    adminlang: str = "en",
) -> bytes:
    """Serialize units to TMX bytes in (created_at, id) order.

    The header's srclang is the units' shared source language ("*all*" for
    an empty or mixed set), so a re-import resolves tuv roles exactly.
    """
    ordered = sorted(units, key=lambda u: (u.meta.created_at, u.id))
    source_langs = {u.source.lang for u in ordered}
    srclang = source_langs.pop() if len(source_langs) == 1 else "*all*"

    root = ET.Element("tmx", {"version": TMX_VERSION})
    ET.SubElement(
        root,
        "header",
        {
            "creationtool": creationtool,
            "srclang": srclang,
            "adminlang": adminlang,
            "segtype": "sentence",
            "datatype": "plaintext",
            "o-tmf": "jsonl",
        },
    )
    body = ET.SubElement(root, "body")
    for unit in ordered:
        tu = ET.SubElement(body, "tu")
        for segment in (unit.source, unit.target):
            tuv = ET.SubElement(tu, "tuv", {XML_LANG: segment.lang})
            seg = ET.SubElement(tuv, "seg")
            seg.text = segment.raw
    return ET.tostring(root, encoding="utf-8", xml_declaration=True)
