"""Evaluation harness: synthetic corpora, derived test sets, and metrics.

Three test sets are derived from a corpus store with one seeded RNG:

  Set A  verbatim sampled sources (self-retrieval should be exact),
  Set B  sampled sources with 1-3 word edits (replace/insert/delete from
         the corpus vocabulary), paired with the original targets,
  Set C  held-out units, removed from the emitted training store.

Test files are TSV (source TAB gold target, UTF-8, LF); the same seed
always produces byte-identical files. `evaluate` replays a test file
against an engine and reports exact-match rate, suggestion coverage,
best-suggestion accuracy, and latency, optionally tracing every line to an
audit file.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass
from pathlib import Path

from .engine import Engine
from .segment import normalize
from .store import TmStore

__all__ = [
    "EvalReport",
    "TestsetBundle",
    "generate_corpus",
    "make_testsets",
    "read_testset",
    "evaluate",
]

_LATIN_CONSONANTS = "bcdfghjklmnprstvz"
_LATIN_VOWELS = "aeiou"
_DEVANAGARI_CONSONANTS = "कखगघचछजझटठडढतथदधनपफबभमयरलवशषसह"
_DEVANAGARI_MATRAS = ["", "ा", "ि", "ी", "ु", "ू",
                      "े", "ै", "ो", "ौ"]


def _latin_vocab(rng: random.Random, size: int) -> list[str]:
    words: set[str] = set()
    while len(words) < size:
        syllables = rng.randint(1, 3)
        word = "".join(
            rng.choice(_LATIN_CONSONANTS) + rng.choice(_LATIN_VOWELS)
            for _ in range(syllables)
        )
        words.add(word)
    return sorted(words)


def _devanagari_vocab(rng: random.Random, size: int) -> list[str]:
    words: set[str] = set()
    while len(words) < size:
        syllables = rng.randint(1, 3)
        word = "".join(
            rng.choice(_DEVANAGARI_CONSONANTS) + rng.choice(_DEVANAGARI_MATRAS)
            for _ in range(syllables)
        )
        words.add(word)
    return sorted(words)


def generate_corpus(
    path: str | Path,
    count: int,
    seed: int = 0,
    vocab_size: int = 1200,
    min_len: int = 4,
    max_len: int = 12,
    source_lang: str = "en",
    target_lang: str = "hi",
) -> Path:
    """Write a synthetic bilingual store of `count` distinct units.

    Sources draw pseudo-words from a Latin-script vocabulary, targets from
    a Devanagari one; both are deterministic functions of the seed.
    """
    rng = random.Random(seed)
    src_vocab = _latin_vocab(rng, vocab_size)
    tgt_vocab = _devanagari_vocab(rng, vocab_size)
    path = Path(path)
    with TmStore(path, read_only=False) as store:
        while len(store) < count:
            n = rng.randint(min_len, max_len)
            source = " ".join(rng.choice(src_vocab) for _ in range(n))
            target = " ".join(rng.choice(tgt_vocab) for _ in range(n))
            store.commit(
                source,
                target,
                source_lang=source_lang,
                target_lang=target_lang,
                author="generator",
                fsync=False,
            )
        store.sync()
    return path


@dataclass(frozen=True)
class TestsetBundle:
    """Paths produced by make_testsets plus the Set B provenance."""

    set_a: Path
    set_b: Path
    set_c: Path
    train_store: Path
    set_b_originals: tuple[str, ...]


def _clean_field(text: str) -> str:
    # TSV fields cannot carry tabs or line breaks.
    return text.replace("\t", " ").replace("\n", " ").replace("\r", " ")


def _write_testset(path: Path, rows: list[tuple[str, str]]) -> None:
    lines = [f"{_clean_field(src)}\t{_clean_field(tgt)}" for src, tgt in rows]
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def _perturb(words: list[str], rng: random.Random, pool: list[str]) -> list[str]:
    out = list(words)
    for _ in range(rng.randint(1, 3)):
        op = rng.choice(("replace", "insert", "delete"))
        if op == "delete" and len(out) == 1:
            op = "replace"
        if op == "replace":
            out[rng.randrange(len(out))] = rng.choice(pool)
        elif op == "insert":
            out.insert(rng.randint(0, len(out)), rng.choice(pool))
        else:
            del out[rng.randrange(len(out))]
    return out


def make_testsets(
    store_path: str | Path,
    out_dir: str | Path,
    sizes: tuple[int, int, int] = (200, 200, 200),
    seed: int = 0,
) -> TestsetBundle:
    """Derive setA/setB/setC TSVs and a pruned training store.

    Sampling is without replacement across the three sets; Set C units are
    absent from the emitted train.tm. Raises ValueError when the corpus is
    smaller than the sets it should feed.
    """
    if any(s < 0 for s in sizes):
        raise ValueError(f"sizes must be non-negative, got {sizes}")
    store = TmStore(store_path, read_only=True)
    units = store.units()
    total = sum(sizes)
    if total > len(units):
        raise ValueError(
            f"corpus holds {len(units)} units, test sets need {total}"
        )
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    rng = random.Random(seed)
    picks = rng.sample(range(len(units)), total)
    a_idx = picks[: sizes[0]]
    b_idx = picks[sizes[0] : sizes[0] + sizes[1]]
    c_idx = picks[sizes[0] + sizes[1] :]

    pool = sorted({w for u in units for w in u.source.word_norms})

    set_a_rows = [(units[i].source.raw, units[i].target.raw) for i in a_idx]
    set_b_rows: list[tuple[str, str]] = []
    set_b_originals: list[str] = []
    for i in b_idx:
        unit = units[i]
        perturbed = _perturb(list(unit.source.word_norms), rng, pool)
        set_b_rows.append((" ".join(perturbed), unit.target.raw))
        set_b_originals.append(unit.source.raw)
    set_c_rows = [(units[i].source.raw, units[i].target.raw) for i in c_idx]

    set_a = out / "setA.tsv"
    set_b = out / "setB.tsv"
    set_c = out / "setC.tsv"
    _write_testset(set_a, set_a_rows)
    _write_testset(set_b, set_b_rows)
    _write_testset(set_c, set_c_rows)

    train_path = out / "train.tm"
    if train_path.exists():
        train_path.unlink()
    held_out = {units[i].id for i in c_idx}
    with TmStore(train_path, read_only=False) as train:
        train.copy_units(u for u in units if u.id not in held_out)
    return TestsetBundle(
        set_a=set_a,
        set_b=set_b,
        set_c=set_c,
        train_store=train_path,
        set_b_originals=tuple(set_b_originals),
    )


def read_testset(path: str | Path) -> tuple[list[tuple[str, str]], int]:
    """Parse a TSV test file into (rows, malformed_line_count)."""
    rows: list[tuple[str, str]] = []
    malformed = 0
    text = Path(path).read_text(encoding="utf-8")
    for line in text.split("\n"):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            malformed += 1
            continue
        rows.append((parts[0], parts[1]))
    return rows, malformed


@dataclass(frozen=True, slots=True)
class EvalReport:
    """Aggregated metrics for one test set run."""

    name: str
    count: int
    malformed: int
    exact_rate: float
    coverage_rate: float
    best_accuracy: float
    mean_latency_ms: float
    p95_latency_ms: float


def _p95(latencies: list[float]) -> float:
    if not latencies:
        return 0.0
    ordered = sorted(latencies)
    rank = max(math.ceil(0.95 * len(ordered)) - 1, 0)
    return ordered[rank]


def evaluate(
    engine: Engine,
    testset_path: str | Path,
    name: str | None = None,
    audit_path: str | Path | None = None,
) -> EvalReport:
    """Run every test line through engine.suggest and aggregate metrics.

    A line counts as exact when a sentence-level match is an exact hit, as
    covered when at least one suggestion of either level comes back, and as
    correct when the best suggestion's target equals the gold target after
    normalization. The best suggestion is the top sentence match when there
    is one, else the first suggestion of the first phrase group.
    """
    testset_path = Path(testset_path)
    rows, malformed = read_testset(testset_path)
    exact = covered = correct = 0
    latencies: list[float] = []
    audit_lines: list[str] = []

    for source, gold in rows:
        started = time.perf_counter()
        report = engine.suggest(source)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        latencies.append(elapsed_ms)

        is_exact = any(m.kind == "exact" for m in report.sentence_matches)
        best_target: str | None = None
        if report.sentence_matches:
            best_target = report.sentence_matches[0].unit.target.raw
        else:
            for group in report.phrase_matches:
                if group.suggestions:
                    best_target = group.suggestions[0].target_text
                    break
        is_covered = best_target is not None
        is_correct = is_covered and normalize(best_target) == normalize(gold)

        exact += is_exact
        covered += is_covered
        correct += is_correct
        if audit_path is not None:
            audit_lines.append(
                json.dumps(
                    {
                        "source": source,
                        "gold": gold,
                        "exact": is_exact,
                        "covered": is_covered,
                        "best_target": best_target,
                        "best_correct": is_correct,
                        "latency_ms": round(elapsed_ms, 3),
                    },
                    ensure_ascii=False,
                )
            )

    if audit_path is not None:
        Path(audit_path).write_text(
            "\n".join(audit_lines) + ("\n" if audit_lines else ""),
            encoding="utf-8",
        )

    n = len(rows)
    return EvalReport(
        name=name if name is not None else testset_path.stem,
        count=n,
        malformed=malformed,
        exact_rate=exact / n if n else 0.0,
        coverage_rate=covered / n if n else 0.0,
        best_accuracy=correct / n if n else 0.0,
        mean_latency_ms=sum(latencies) / n if n else 0.0,
        p95_latency_ms=_p95(latencies),
    )
