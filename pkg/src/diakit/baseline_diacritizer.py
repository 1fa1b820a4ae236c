"""Frequency-based word-level diacritics restorer.

Not a model: for every undiacritized word shape seen in training, the
most frequent diacritized surface form wins, and restoration is plain
table lookup with unknown words passed through.  Exists so the whole
prep -> predict -> postprocess -> score path, and the desk-scale
complexity/performance studies, can run without training a network.
"""
from __future__ import annotations

import json
import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import DataError
from .unicode_core import strip_diacritics


@dataclass(frozen=True)
class RestorationTable:
    """Maps undiacritized word -> (most frequent diacritized form, count)."""

    entries: dict[str, tuple[str, int]]
    total_words: int

    def __contains__(self, word: str) -> bool:
        return word in self.entries


def train(lines: Iterable[str]) -> RestorationTable:
    """Count surface forms per undiacritized word shape and keep the winner.

    Ties break toward the lexicographically smallest form by code
    point, so training is deterministic across platforms.

    Example:
        >>> train(["så så sa"]).entries["sa"]
        ('så', 2)
    """
    forms: dict[str, Counter] = defaultdict(Counter)
    total = 0
    for line in lines:
        for word in line.split():
            word = unicodedata.normalize("NFC", word)
            forms[strip_diacritics(word)][word] += 1
            total += 1
    entries = {
        key: min(counts.items(), key=lambda item: (-item[1], item[0]))
        for key, counts in forms.items()
    }
    return RestorationTable(entries=dict(sorted(entries.items())), total_words=total)


def restore(table: RestorationTable, text: str) -> str:
    """Replace each whitespace token by its trained form; unknowns pass through."""
    restored = []
    for word in text.split():
        word = unicodedata.normalize("NFC", word)
        entry = table.entries.get(word)
        restored.append(entry[0] if entry else word)
    return " ".join(restored)


def save_table(table: RestorationTable, path: str | Path) -> None:
    payload = {
        "total_words": table.total_words,
        "map": {key: list(value) for key, value in sorted(table.entries.items())},
    }
    Path(path).write_text(
        json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def load_table(path: str | Path) -> RestorationTable:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        entries = {
            key: (form, int(count)) for key, (form, count) in payload["map"].items()
        }
        return RestorationTable(entries=entries, total_words=int(payload["total_words"]))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise DataError(f"unreadable restoration table {path}: {exc}") from exc
