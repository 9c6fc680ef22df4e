"""Durable translation-unit store: an append-only JSONL log.

Every mutation is one JSON object on its own line, either an `add` carrying
the full unit or a `del` tombstone; replaying the file front to back
reconstructs the live set. A torn final line (the tail of an interrupted
write) is ignored on replay, so any prefix of the file ending on a record
boundary is itself a valid store. Single commits fsync before returning;
bulk paths (TMX import, store copies) write everything and fsync once.

A writable store takes an advisory `flock` on the log so only one writer
can have it open; read-only opens skip the lock and never touch the file.
"""

from __future__ import annotations

import fcntl
import json
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

from .errors import EmptyTextError, StoreError
from .segment import normalize
from .tmx import export_tmx, parse_tmx
from .units import (
    ORIGIN_IMPORTED,
    ORIGIN_MANUAL,
    SCOPE_LOCAL,
    TranslationUnit,
    UnitMeta,
    make_unit,
    unit_id,
)

__all__ = ["TmStore", "ImportSummary", "merged_view"]

# Log record fields, in the order they are written.
_ADD_FIELDS = (
    "op", "id", "src", "tgt", "slang", "tlang", "scope", "author", "ts", "origin",
)


@dataclass(frozen=True, slots=True)
class ImportSummary:
    """Outcome of a TMX import."""

    added: int
    skipped: int
    malformed: int


def _encode_add(unit: TranslationUnit) -> str:
    record = {
        "op": "add",
        "id": unit.id,
        "src": unit.source.raw,
        "tgt": unit.target.raw,
        "slang": unit.source.lang,
        "tlang": unit.target.lang,
        "scope": unit.meta.scope,
        "author": unit.meta.author,
        "ts": unit.meta.created_at,
        "origin": unit.meta.origin,
    }
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


def _encode_del(unit_id_: str) -> str:
    return json.dumps(
        {"op": "del", "id": unit_id_}, ensure_ascii=False, separators=(",", ":")
    )


def _decode_unit(record: dict) -> TranslationUnit:
    meta = UnitMeta(
        scope=record["scope"],
        author=record["author"],
        created_at=int(record["ts"]),
        origin=record["origin"],
    )
    unit = make_unit(
        record["src"],
        record["tgt"],
        source_lang=record["slang"],
        target_lang=record["tlang"],
        meta=meta,
    )
    stored_id = record["id"]
    if unit.id != stored_id:
        # Keep the stored id authoritative; foreign logs may predate the
        # current hashing scheme.
        unit = TranslationUnit(
            id=stored_id, source=unit.source, target=unit.target, meta=meta
        )
    return unit


class TmStore:
    """A translation-unit store backed by one append-only log file."""

    def __init__(
        self,
        path: str | Path,
        scope: str = SCOPE_LOCAL,
        read_only: bool = False,
    ) -> None:
        self.path = Path(path)
        self.scope = scope
        self.read_only = read_only
        self.live: dict[str, TranslationUnit] = {}
        self._last_ts = 0
        self._handle: IO[str] | None = None
        # Tail repair plan, decided during replay: byte length of the last
        # complete line, and whether the unterminated tail (if any) parsed.
        self._keep_bytes = 0
        self._tail = "clean"
        if self.path.exists():
            self._replay()
        elif read_only:
            raise StoreError(f"store file {self.path} does not exist")
        if not read_only:
            self._open_for_append()

    # -- lifecycle ---------------------------------------------------------

    def _replay(self) -> None:
        try:
            raw = self.path.read_bytes()
        except OSError as exc:
            raise StoreError(f"cannot read store {self.path}: {exc}") from exc
        # A torn write may split a multi-byte character; the replacement
        # char makes that line unparseable, which is exactly right.
        data = raw.decode("utf-8", errors="replace")
        self._keep_bytes = raw.rfind(b"\n") + 1
        self._tail = "clean" if self._keep_bytes == len(raw) else "torn"
        lines = data.split("\n")
        # A trailing newline leaves one empty string; anything else on the
        # last line is a torn write and is dropped.
        for lineno, line in enumerate(lines, start=1):
            if not line:
                continue
            try:
                record = json.loads(line)
                op = record["op"]
                if op == "add":
                    unit = _decode_unit(record)
                elif op == "del":
                    unit = None
                else:
                    raise ValueError(f"unknown op {op!r}")
            except (ValueError, KeyError, TypeError) as exc:
                if lineno == len(lines):
                    break
                raise StoreError(
                    f"corrupt record at {self.path}:{lineno}: {exc}"
                ) from exc
            if lineno == len(lines):
                # The last line parsed but lost its newline; keep the
                # record and just terminate the line before appending.
                self._tail = "unterminated"
            if unit is not None:
                # First add wins; a duplicate add is a log anomaly but the
                # earliest record carries the true creation time.
                self.live.setdefault(record["id"], unit)
                self._last_ts = max(self._last_ts, unit.meta.created_at)
            else:
                self.live.pop(record["id"], None)

    def _open_for_append(self) -> None:
        try:
            self._handle = open(self.path, "a", encoding="utf-8", newline="\n")
            fcntl.flock(self._handle.fileno(), fcntl.LOCK_EX | fcntl.LOCK_NB)
            # Appending straight after a torn write would glue the next
            # record onto the partial line, so repair the tail first.
            if self._tail == "torn":
                os.ftruncate(self._handle.fileno(), self._keep_bytes)
            elif self._tail == "unterminated":
                self._handle.write("\n")
                self._handle.flush()
                os.fsync(self._handle.fileno())
            self._tail = "clean"
        except OSError as exc:
            if self._handle is not None:
                self._handle.close()
                self._handle = None
            raise StoreError(f"cannot write store {self.path}: {exc}") from exc

    def close(self) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None

    def __enter__(self) -> "TmStore":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.live)

    def __contains__(self, unit_id_: str) -> bool:
        return unit_id_ in self.live

    def units(self) -> list[TranslationUnit]:
        """Live units in deterministic (created_at, id) order."""
        return sorted(self.live.values(), key=lambda u: (u.meta.created_at, u.id))

    # -- mutations ---------------------------------------------------------

    def _append(self, lines: Iterable[str], fsync: bool = True) -> None:
        if self._handle is None:
            raise StoreError(f"store {self.path} is read-only")
        try:
            for line in lines:
                self._handle.write(line + "\n")
            self._handle.flush()
            if fsync:
                os.fsync(self._handle.fileno())
        except OSError as exc:
            raise StoreError(f"cannot write store {self.path}: {exc}") from exc

    def sync(self) -> None:
        """fsync the log; pairs with commit(..., fsync=False) bulk loads."""
        if self._handle is not None:
            try:
                self._handle.flush()
                os.fsync(self._handle.fileno())
            except OSError as exc:
                raise StoreError(f"cannot sync store {self.path}: {exc}") from exc

    def _next_ts(self) -> int:
        # Creation times are monotone within a log even if the clock jumps.
        ts = max(int(time.time()), self._last_ts)
        self._last_ts = ts
        return ts

    def commit(
        self,
        source_text: str,
        target_text: str,
        source_lang: str = "en",
        target_lang: str = "hi",
        author: str = "anonymous",
        origin: str = ORIGIN_MANUAL,
        fsync: bool = True,
    ) -> TranslationUnit:
        """Persist one pair; returns the existing unit on duplicates.

        Both texts must be non-empty after normalization. The unit id is the
        content hash of the pair, so committing the same pair again leaves
        the log untouched and returns the already-live unit.
        """
        if not normalize(source_text):
            raise EmptyTextError("source text is empty after normalization")
        if not normalize(target_text):
            raise EmptyTextError("target text is empty after normalization")
        uid = unit_id(source_text, target_text, source_lang, target_lang)
        existing = self.live.get(uid)
        if existing is not None:
            return existing
        meta = UnitMeta(
            scope=self.scope,
            author=author,
            created_at=self._next_ts(),
            origin=origin,
        )
        unit = make_unit(
            source_text,
            target_text,
            source_lang=source_lang,
            target_lang=target_lang,
            meta=meta,
        )
        self._append([_encode_add(unit)], fsync=fsync)
        self.live[uid] = unit
        return unit

    def delete(self, unit_id_: str) -> None:
        """Append a tombstone for a live unit."""
        if unit_id_ not in self.live:
            raise StoreError(f"unit {unit_id_} is not live in {self.path}")
        self._append([_encode_del(unit_id_)])
        del self.live[unit_id_]

    def copy_units(self, units: Iterable[TranslationUnit]) -> int:
        """Append foreign units verbatim (id and meta preserved), skip dups.

        Used to derive stores (training subsets, merges) without rewriting
        history; one fsync covers the whole batch.
        """
        fresh: dict[str, TranslationUnit] = {}
        for unit in units:
            if unit.id in self.live or unit.id in fresh:
                continue
            fresh[unit.id] = unit
        if fresh:
            self._append((_encode_add(u) for u in fresh.values()), fsync=True)
            self.live.update(fresh)
            self._last_ts = max(
                self._last_ts, *(u.meta.created_at for u in fresh.values())
            )
        return len(fresh)

    # -- TMX ---------------------------------------------------------------

    def import_tmx(
        self,
        data: bytes | str,
        source_lang: str | None = None,
        author: str = "import",
    ) -> ImportSummary:
        """Commit every well-formed tu of a TMX payload.

        The payload is parsed completely before anything is written, so a
        non-TMX payload raises TmxError with the store unchanged. Duplicate
        pairs are skipped; malformed tus are counted and skipped.
        """
        pairs, malformed = parse_tmx(data, source_lang=source_lang)
        skipped = 0
        pending: dict[str, TranslationUnit] = {}
        for pair in pairs:
            uid = unit_id(
                pair.source_text,
                pair.target_text,
                pair.source_lang,
                pair.target_lang,
            )
            if uid in self.live or uid in pending:
                skipped += 1
                continue
            meta = UnitMeta(
                scope=self.scope,
                author=author,
                created_at=self._next_ts(),
                origin=ORIGIN_IMPORTED,
            )
            pending[uid] = make_unit(
                pair.source_text,
                pair.target_text,
                source_lang=pair.source_lang,
                target_lang=pair.target_lang,
                meta=meta,
            )
        if pending:
            self._append((_encode_add(u) for u in pending.values()), fsync=True)
            self.live.update(pending)
        return ImportSummary(
            added=len(pending), skipped=skipped, malformed=malformed
        )

    def export_tmx(self, creationtool: str = "tmgram") -> bytes:
        """Serialize the live set to TMX bytes (deterministic order)."""
        return export_tmx(self.units(), creationtool=creationtool)


def merged_view(
    local: TmStore | None, global_: TmStore | None
) -> list[TranslationUnit]:
    """Union of both stores' live sets; on id collisions local meta wins.

    Returns units in (created_at, id) order. Either store may be None.
    """
    merged: dict[str, TranslationUnit] = {}
    if global_ is not None:
        merged.update(global_.live)
    if local is not None:
        merged.update(local.live)
    return sorted(merged.values(), key=lambda u: (u.meta.created_at, u.id))
