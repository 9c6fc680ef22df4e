"""Index construction, exact lookup, fuzzy retrieval, phrase search."""

from __future__ import annotations

import random

import pytest

from tmgram import make_unit
from tmgram.errors import DuplicateUnitError, UnitNotFoundError
from tmgram.index import build_index
from tmgram.segment import make_segment

from conftest import (
    CAFE_SOURCES,
    CAFE_TARGETS,
    TARGET_SENTENCE,
    oracle_find_phrase,
    oracle_retrieve,
    oracle_windows,
    random_corpus,
)


def _snapshot(index):
    return (
        {g: set(ids) for g, ids in index.gram_postings.items()},
        {w: set(ps) for w, ps in index.word_postings.items()},
        {t: set(ids) for t, ids in index.exact_map.items()},
        set(index.unit_table),
    )


def test_build_index_posting_count_matches_enumeration(cafe_units):
    # Independent count: enumerate each sentence's windows and union them.
    distinct = set()
    for unit in cafe_units:
        distinct.update(oracle_windows(list(unit.source.word_norms), 3))
    index = build_index(cafe_units)
    assert len(index.gram_postings) == len(distinct)
    # The shared gram ("café","coffee","day") appears in S1 and S3, so the
    # union holds 9 grams, not 1+4+5.
    assert len(index.gram_postings) == 9
    assert set(index.gram_postings) == distinct


def test_build_index_empty():
    index = build_index([])
    assert len(index) == 0
    assert index.retrieve(make_segment("anything at all")) == []


def test_build_index_single_unit_exact_map():
    unit = make_unit("Café Coffee Day", "कैफ़े कॉफ़ी डे")
    index = build_index([unit])
    assert len(index.exact_map) == 1
    assert index.exact_map["café coffee day"] == {unit.id}


def test_build_index_rejects_duplicate_ids(cafe_units):
    with pytest.raises(DuplicateUnitError):
        build_index(cafe_units + [cafe_units[0]])


def test_build_index_order_independent(cafe_units):
    forward = build_index(cafe_units)
    backward = build_index(list(reversed(cafe_units)))
    assert _snapshot(forward) == _snapshot(backward)


def test_add_then_remove_restores_postings(cafe_units):
    index = build_index(cafe_units)
    before = _snapshot(index)
    extra = make_unit("an entirely new sentence here", "नया वाक्य")
    index.add_unit(extra)
    assert _snapshot(index) != before
    index.remove_unit(extra.id)
    assert _snapshot(index) == before


def test_add_duplicate_rejected(cafe_units):
    index = build_index(cafe_units)
    with pytest.raises(DuplicateUnitError):
        index.add_unit(cafe_units[0])


def test_remove_missing_rejected(cafe_units):
    index = build_index(cafe_units)
    with pytest.raises(UnitNotFoundError):
        index.remove_unit("no-such-id")


def test_remove_then_retrieve_unique_word_unit():
    units = [
        make_unit("flurble grommet device", "एक"),
        make_unit("plain words only", "दो"),
    ]
    index = build_index(units)
    query = make_segment("flurble grommet device")
    assert index.retrieve(query) != []
    index.remove_unit(units[0].id)
    assert index.retrieve(query) == []


def test_lookup_exact_verbatim(cafe_units):
    index = build_index(cafe_units)
    assert index.lookup_exact("Café Coffee Day") == {cafe_units[0]}


def test_lookup_exact_case_insensitive(cafe_units):
    index = build_index(cafe_units)
    assert index.lookup_exact("CAFÉ COFFEE DAY") == {cafe_units[0]}


def test_lookup_exact_unseen(cafe_units):
    index = build_index(cafe_units)
    assert index.lookup_exact("unseen sentence") == set()


def test_lookup_exact_multiple_targets_one_source():
    units = [
        make_unit("shared source", "पहला"),
        make_unit("shared source", "दूसरा"),
    ]
    index = build_index(units)
    assert index.lookup_exact("shared source") == set(units)


def test_retrieve_cafe_worked_example(cafe_units):
    index = build_index(cafe_units)
    results = index.retrieve(make_segment(TARGET_SENTENCE), limit=5)
    assert [r.unit.source.raw for r in results] == [
        CAFE_SOURCES[1],
        CAFE_SOURCES[0],
        CAFE_SOURCES[2],
    ]
    assert [r.rank for r in results] == [1, 2, 3]
    assert results[0].score.value == pytest.approx(0.9)
    assert results[1].score.value == pytest.approx(3 / 7)
    assert results[2].score.value == pytest.approx(3 / 11)
    assert all(r.kind == "fuzzy" for r in results)


def test_retrieve_no_shared_gram_is_empty(cafe_units):
    index = build_index(cafe_units)
    assert index.retrieve(make_segment("totally unrelated words")) == []


def test_retrieve_marks_exact(cafe_units):
    index = build_index(cafe_units)
    results = index.retrieve(make_segment("café coffee DAY"))
    assert results[0].kind == "exact"
    assert results[0].score.value == pytest.approx(results[0].score.ceiling)


def test_retrieve_respects_limit(cafe_units):
    index = build_index(cafe_units)
    results = index.retrieve(make_segment(TARGET_SENTENCE), limit=1)
    assert len(results) == 1
    assert results[0].unit.source.raw == CAFE_SOURCES[1]


def test_retrieve_limit_must_be_positive(cafe_units):
    index = build_index(cafe_units)
    with pytest.raises(ValueError):
        index.retrieve(make_segment("x"), limit=0)


def test_retrieve_matches_bruteforce_on_random_corpora():
    rng = random.Random(2024)
    vocab = [f"w{i}" for i in range(30)]
    for _ in range(40):
        units = random_corpus(rng)
        index = build_index(units)
        for _ in range(8):
            n = rng.randint(1, 12)
            query_text = " ".join(rng.choice(vocab) for _ in range(n))
            query = make_segment(query_text)
            got = index.retrieve(query, limit=len(units) + 1)
            expected = oracle_retrieve(units, list(query.word_norms), 3, 3.0)
            assert [(r.unit.id, r.score.value) for r in got] == [
                (uid, pytest.approx(value)) for uid, value in expected
            ]


def test_find_phrase_single_occurrence():
    units = [
        make_unit("they will review our proposal soon", "वे जल्द समीक्षा करेंगे"),
        make_unit("nothing related here", "कुछ नहीं"),
    ]
    index = build_index(units)
    assert index.find_phrase(("our", "proposal")) == {(units[0].id, 3)}


def test_find_phrase_absent():
    index = build_index([make_unit("alpha beta", "क")])
    assert index.find_phrase(("gamma",)) == set()


def test_find_phrase_single_word_all_positions():
    units = [make_unit("go go go", "जाओ"), make_unit("stop go", "रुको")]
    index = build_index(units)
    assert index.find_phrase(("go",)) == {
        (units[0].id, 0),
        (units[0].id, 1),
        (units[0].id, 2),
        (units[1].id, 1),
    }


def test_find_phrase_requires_a_word():
    index = build_index([])
    with pytest.raises(ValueError):
        index.find_phrase(())


def test_find_phrase_matches_naive_scan_on_random_corpora():
    rng = random.Random(77)
    vocab = [f"w{i}" for i in range(30)]
    for _ in range(40):
        units = random_corpus(rng)
        index = build_index(units)
        for _ in range(10):
            m = rng.randint(1, 4)
            phrase = [rng.choice(vocab) for _ in range(m)]
            assert index.find_phrase(phrase) == oracle_find_phrase(units, phrase)


def test_postings_reference_only_live_units(cafe_units):
    index = build_index(cafe_units)
    index.remove_unit(cafe_units[1].id)
    for ids in index.gram_postings.values():
        assert ids <= set(index.unit_table)
    for positions in index.word_postings.values():
        assert {uid for uid, _ in positions} <= set(index.unit_table)
