"""Engine tying stores, index, and chunker together behind one lock.

The engine owns a local store, an optional shared global store, and the
in-memory index built from their merged view. All reads (query, suggest,
export, stats) may run concurrently; mutations (commit, import) take the
exclusive side of a readers-writer lock and update store and index together
so a reader never sees a committed unit missing from results.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .chunker import PosLexicon, chunk_segment, default_lexicon, load_lexicon
from .errors import TmError
from .index import MatchResult, TmIndex, build_index
from .ngrams import DEFAULT_MULTIPLIER, DEFAULT_ORDER
from .phrases import SuggestReport, suggest
from .segment import SegRules, default_rules, load_rules, make_segment
from .store import ImportSummary, TmStore, merged_view
from .units import SCOPE_GLOBAL, SCOPE_LOCAL, TranslationUnit

__all__ = ["ApiConfig", "Engine", "EngineStats", "RwLock"]


@dataclass(frozen=True)
class ApiConfig:
    """Everything needed to run an engine and serve it over HTTP."""

    local_store: str | Path = "local.tm"
    global_store: str | Path | None = None
    order: int = DEFAULT_ORDER
    k: float = DEFAULT_MULTIPLIER
    lexicon_path: str | Path | None = None
    rules_path: str | Path | None = None
    source_lang: str = "en"
    target_lang: str = "hi"
    host: str = "127.0.0.1"
    port: int = 8077
    cors_origins: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if self.k <= 0:
            raise ValueError(f"k must be positive, got {self.k}")


class RwLock:
    """Readers-writer lock: many readers or one writer, writer-preferring."""

    def __init__(self) -> None:
        self._cond = threading.Condition()
        self._readers = 0
        self._writer = False
        self._writers_waiting = 0

    @contextmanager
    def read(self) -> Iterator[None]:
        with self._cond:
            while self._writer or self._writers_waiting:
                self._cond.wait()
            self._readers += 1
        try:
            yield
        finally:
            with self._cond:
                self._readers -= 1
                if not self._readers:
                    self._cond.notify_all()

    @contextmanager
    def write(self) -> Iterator[None]:
        with self._cond:
            self._writers_waiting += 1
            while self._writer or self._readers:
                self._cond.wait()
            self._writers_waiting -= 1
            self._writer = True
        try:
            yield
        finally:
            with self._cond:
                self._writer = False
                self._cond.notify_all()


@dataclass(frozen=True, slots=True)
class EngineStats:
    """Live unit counts and the engine's scoring parameters."""

    units: int
    local_units: int
    global_units: int
    order: int
    k: float


class Engine:
    """One translation-memory engine instance."""

    def __init__(self, config: ApiConfig, read_only: bool = False) -> None:
        self.config = config
        self.lock = RwLock()
        self.lexicon: PosLexicon = (
            load_lexicon(config.lexicon_path)
            if config.lexicon_path
            else default_lexicon()
        )
        self.rules: SegRules = (
            load_rules(config.rules_path) if config.rules_path else default_rules()
        )
        self.local = TmStore(
            config.local_store, scope=SCOPE_LOCAL, read_only=read_only
        )
        self.global_: TmStore | None = None
        if config.global_store is not None:
            self.global_ = TmStore(
                config.global_store, scope=SCOPE_GLOBAL, read_only=read_only
            )
        self.index: TmIndex = build_index(
            merged_view(self.local, self.global_), order=config.order, k=config.k
        )

    def close(self) -> None:
        self.local.close()
        if self.global_ is not None:
            self.global_.close()

    def __enter__(self) -> "Engine":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()

    def _chunker(self, segment):
        return chunk_segment(segment, self.lexicon)

    # -- reads ---------------------------------------------------------------

    def query(self, text: str, limit: int = 5) -> list[MatchResult]:
        segment = make_segment(text, lang=self.config.source_lang)
        with self.lock.read():
            return self.index.retrieve(segment, limit=limit)

    def suggest(self, text: str, limit: int = 5) -> SuggestReport:
        segment = make_segment(text, lang=self.config.source_lang)
        with self.lock.read():
            return suggest(
                self.index,
                segment,
                self._chunker,
                sentence_limit=limit,
            )

    def export_tmx(self, scope: str = "all") -> bytes:
        from .tmx import export_tmx as encode

        with self.lock.read():
            if scope == SCOPE_LOCAL:
                units = self.local.units()
            elif scope == SCOPE_GLOBAL:
                units = self.global_.units() if self.global_ else []
            elif scope == "all":
                units = merged_view(self.local, self.global_)
            else:
                raise ValueError(f"unknown scope {scope!r}")
            return encode(units)

    def stats(self) -> EngineStats:
        with self.lock.read():
            return EngineStats(
                units=len(self.index),
                local_units=len(self.local),
                global_units=len(self.global_) if self.global_ else 0,
                order=self.config.order,
                k=self.config.k,
            )

    # -- writes --------------------------------------------------------------

    def _store_for(self, scope: str) -> TmStore:
        if scope == SCOPE_LOCAL:
            return self.local
        if scope == SCOPE_GLOBAL:
            if self.global_ is None:
                raise TmError("no global store configured")
            return self.global_
        raise ValueError(f"unknown scope {scope!r}")

    def commit(
        self,
        source_text: str,
        target_text: str,
        scope: str = SCOPE_LOCAL,
        author: str = "anonymous",
    ) -> tuple[TranslationUnit, bool]:
        """Persist a pair and index it; returns (unit, created)."""
        store = self._store_for(scope)
        with self.lock.write():
            before = len(store)
            unit = store.commit(
                source_text,
                target_text,
                source_lang=self.config.source_lang,
                target_lang=self.config.target_lang,
                author=author,
            )
            created = len(store) > before
            if unit.id not in self.index:
                self.index.add_unit(unit)
            return unit, created

    def import_tmx(self, data: bytes | str, scope: str = SCOPE_LOCAL) -> ImportSummary:
        """Import a TMX payload into one store and index the new units."""
        store = self._store_for(scope)
        with self.lock.write():
            known = set(store.live)
            summary = store.import_tmx(data, source_lang=self.config.source_lang)
            for uid, unit in store.live.items():
                if uid not in known and uid not in self.index:
                    self.index.add_unit(unit)
            return summary
