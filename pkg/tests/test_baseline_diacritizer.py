"""Tests for the frequency-table diacritics restorer."""
from __future__ import annotations

import random

import pytest

from diakit.baseline_diacritizer import load_table, restore, save_table, train
from diakit.errors import DataError
from diakit.evaluation import der, wer
from diakit.unicode_core import strip_diacritics

from test_unicode_core import random_nfc_line


def test_train_picks_most_frequent_form():
    table = train(["så så sa"])
    assert table.entries["sa"] == ("så", 2)
    assert table.total_words == 3


def test_train_tie_breaks_by_code_point():
    table = train(["âb äb"])
    assert table.entries["ab"] == ("âb", 1)


def test_train_on_plain_corpus_maps_words_to_themselves():
    table = train(["plain words only", "more plain words"])
    for key, (form, _) in table.entries.items():
        assert key == form


def test_train_empty_corpus():
    table = train([])
    assert table.entries == {}
    assert table.total_words == 0


def test_table_keys_are_stripped_forms_of_values():
    rng = random.Random(3)
    table = train(random_nfc_line(rng) for _ in range(100))
    for key, (form, count) in table.entries.items():
        assert strip_diacritics(form) == key
        assert count >= 1


def test_restore_examples():
    table = train(["tack så"])
    assert restore(table, "tack sa") == "tack så"
    assert restore(table, "xyz") == "xyz"
    assert restore(table, "") == ""


def test_restore_never_changes_base_characters():
    rng = random.Random(9)
    corpus = [random_nfc_line(rng) for _ in range(150)]
    table = train(corpus)
    for line in corpus:
        stripped = strip_diacritics(line)
        assert strip_diacritics(restore(table, stripped)) == stripped


def test_restore_is_idempotent():
    rng = random.Random(10)
    corpus = [random_nfc_line(rng) for _ in range(100)]
    table = train(corpus)
    for line in corpus[:30]:
        once = restore(table, strip_diacritics(line))
        assert restore(table, once) == once


def test_unique_diacritizations_restore_perfectly():
    """With one diacritization per word shape, stripped text scores 0/0."""
    vocabulary = ["pálo", "kurä", "mòka", "tishi", "véndu", "ralô"]
    rng = random.Random(11)
    corpus = [
        " ".join(rng.choice(vocabulary) for _ in range(rng.randint(3, 8)))
        for _ in range(200)
    ]
    table = train(corpus)
    restored = [restore(table, strip_diacritics(line)) for line in corpus]
    assert der(corpus, restored) == 0.0
    assert wer(corpus, restored) == 0.0


def test_table_round_trips_through_json(tmp_path):
    table = train(["så så sa", "âb äb"])
    path = tmp_path / "table.json"
    save_table(table, path)
    loaded = load_table(path)
    assert loaded == table


def test_load_rejects_malformed_table(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{\"nope\": 1}", encoding="utf-8")
    with pytest.raises(DataError):
        load_table(path)
