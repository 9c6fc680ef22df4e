"""Shared fixtures and independent oracle implementations.

The oracles deliberately avoid the library's own set machinery: windows are
enumerated with plain loops and membership is checked naively, so agreement
between library and oracle is meaningful.
"""

from __future__ import annotations

import random

import pytest

from tmgram import make_unit
from tmgram.segment import make_segment

# Three stored café sentences and the worked-example query they rank against.
CAFE_SOURCES = [
    "Café Coffee Day",
    "It has excellent menu and service",
    "Coffee at Café Coffee Day is good",
]
CAFE_TARGETS = [
    "कैफ़े कॉफ़ी डे",
    "इसका मेनू और सेवा उत्कृष्ट है",
    "कैफ़े कॉफ़ी डे की कॉफ़ी अच्छी है",
]
TARGET_SENTENCE = "Café Coffee Day has excellent menu and service"

# A chunk-anchored query and the three stored phrases it matches.
PROPOSAL_QUERY = "Will they recommend our proposal made for sites?"
PROPOSAL_PHRASES = [
    ("they recommend", "वे अनुशंसा करेंगे"),
    ("they recommend our proposal", "वे हमारे प्रस्ताव की अनुशंसा करेंगे"),
    ("our proposal", "हमारा प्रस्ताव"),
]


# Release criteria, one per acceptance test; the terminal summary prints a
# PASS/FAIL line for each after the run.
ACCEPTANCE_CRITERIA = {
    "test_trigram_sets_of_worked_fixture":
        "trigram extraction reproduces the worked fixture sets (1/4/5/6 grams)",
    "test_worked_similarity_scores":
        "similarity scores hit 0.43 / 0.90 / 0.27 within ±0.005 at k=3",
    "test_ranking_order_invariant_across_multipliers":
        "retrieval ranks the café fixture S2 > S1 > S3 for k in {2, 3}",
    "test_chunk_and_phrase_pipeline_worked_example":
        "chunker bracketing and phrase pipeline reproduce the worked example",
    "test_oracle_equivalence_hundred_corpora":
        "100 random corpora: retrieve == brute force, find_phrase == naive scan",
    "test_self_retrieval_at_scale":
        "10,000-unit store: self-retrieval exact rate 1.00, mean latency < 50 ms",
    "test_tmx_round_trip_hundred_stores":
        "TMX export/import round trip is lossless over 100 random stores",
    "test_truncation_at_every_record_boundary":
        "store truncated at every record boundary replays to the valid prefix",
    "test_perturbed_coverage_bound_and_disjoint_zero":
        "perturbed-set coverage >= shared-trigram bound; disjoint set coverage 0",
}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance: release acceptance criterion"
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes: dict[str, tuple[str, str]] = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            extras = ", ".join(
                f"{key}={value}"
                for key, value in getattr(report, "user_properties", [])
            )
            # A failure in any phase makes the criterion FAIL.
            if status != "passed" or name not in outcomes:
                outcomes[name] = (status, extras)
    if not outcomes:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, label in ACCEPTANCE_CRITERIA.items():
        if name not in outcomes:
            continue
        status, extras = outcomes[name]
        verdict = "PASS" if status == "passed" else "FAIL"
        suffix = f"  [{extras}]" if extras else ""
        terminalreporter.write_line(f"{verdict}  {label}{suffix}")


@pytest.fixture
def cafe_units():
    return [
        make_unit(src, tgt)
        for src, tgt in zip(CAFE_SOURCES, CAFE_TARGETS)
    ]


@pytest.fixture
def proposal_units():
    return [make_unit(src, tgt) for src, tgt in PROPOSAL_PHRASES]


# -- oracles -------------------------------------------------------------


def oracle_windows(words: list[str], order: int) -> list[tuple[str, ...]]:
    """All n-gram windows by plain enumeration, degenerate rule included."""
    n = len(words)
    if n == 0:
        return []
    if n < order:
        return [tuple(words)]
    out = []
    for i in range(n - order + 1):
        out.append(tuple(words[i : i + order]))
    return out


def oracle_dice(
    a_words: list[str], b_words: list[str], order: int, k: float
) -> float:
    """Dice scoring via naive window enumeration and membership tests."""
    a_set: list[tuple[str, ...]] = []
    for w in oracle_windows(a_words, order):
        if w not in a_set:
            a_set.append(w)
    b_set: list[tuple[str, ...]] = []
    for w in oracle_windows(b_words, order):
        if w not in b_set:
            b_set.append(w)
    inter = 0
    for w in a_set:
        if w in b_set:
            inter += 1
    total = len(a_set) + len(b_set)
    if total == 0:
        return 0.0
    return k * inter / (len(a_set) + len(b_set))


def oracle_retrieve(units, query_words: list[str], order: int, k: float):
    """Brute-force scan: score every unit, keep > 0, sort score desc, id asc."""
    scored = []
    for unit in units:
        value = oracle_dice(
            query_words, list(unit.source.word_norms), order, k
        )
        if value > 0.0:
            scored.append((unit.id, value))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored


def oracle_find_phrase(units, phrase: list[str]) -> set[tuple[str, int]]:
    """Naive contiguous-subsequence scan over every unit."""
    hits = set()
    m = len(phrase)
    for unit in units:
        words = list(unit.source.word_norms)
        for start in range(len(words) - m + 1):
            if words[start : start + m] == list(phrase):
                hits.add((unit.id, start))
    return hits


def random_corpus(rng: random.Random, max_units: int = 200, vocab_size: int = 30):
    """Random units over a small vocabulary; short sentences included."""
    vocab = [f"w{i}" for i in range(vocab_size)]
    count = rng.randint(1, max_units)
    units = []
    seen = set()
    while len(units) < count:
        n = rng.randint(1, 12)
        src = " ".join(rng.choice(vocab) for _ in range(n))
        tgt = " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 8)))
        if (src, tgt) in seen:
            continue
        seen.add((src, tgt))
        units.append(make_unit(src, tgt))
    return units


def segment_of(text: str):
    return make_segment(text)
