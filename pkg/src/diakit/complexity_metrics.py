"""Corpus-level diacritical complexity metrics.

Six numbers summarize how heavily and how ambiguously a corpus uses
diacritics:

    dcr   diacritized characters / alphabetic characters
    dwr   diacritized words / words
    dbr   occurring variant forms / bases with a diacritized occurrence
    dwsr  diacritized words / sentences
    aed   mean entropy of the per-base variant distributions
    waed  occurrence-weighted mean of the same entropies

Characters are counted as glyph units (a base plus all its combining
marks is one character) and only alphabetic bases count.  Entropies
use the natural logarithm.  Bases that never occur diacritized carry
no signal about diacritic ambiguity, so only bases with at least one
diacritized occurrence are profiled; profiles are case-sensitive.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .unicode_core import decompose

METRIC_NAMES = ("dcr", "dwr", "dbr", "dwsr", "aed", "waed")


@dataclass(frozen=True)
class CorpusCounts:
    """Raw tallies behind the ratio metrics.

    variant_forms counts distinct occurring forms (bare form included
    when it occurs) over the diacritized bases only.
    """

    chars: int
    diacritized_chars: int
    words: int
    diacritized_words: int
    sentences: int
    diacritized_bases: int
    variant_forms: int


@dataclass(frozen=True)
class BaseCharProfile:
    """Distribution of one base character over its occurring variants."""

    base: str
    distribution: dict[str, float]
    occurrences: int

    def entropy(self) -> float:
        """Shannon entropy of the variant distribution, in nats."""
        return -sum(p * math.log(p) for p in self.distribution.values() if p > 0)


@dataclass(frozen=True)
class ComplexityReport:
    dcr: float
    dwr: float
    dbr: float
    dwsr: float
    aed: float
    waed: float
    counts: CorpusCounts
    # metrics whose denominator was zero and were therefore reported as 0
    zero_denominators: tuple[str, ...] = ()

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in METRIC_NAMES}


def _scan(lines: Iterable[str]) -> tuple[list[int], dict[str, Counter]]:
    """Single pass over the corpus: tallies plus per-base variant counts."""
    chars = diacritized_chars = words = diacritized_words = sentences = 0
    variants: dict[str, Counter] = {}
    for line in lines:
        sentences += 1
        for word in decompose(line).words:
            word_has_mark = False
            for unit in word:
                if not unit.base.isalpha():
                    continue
                chars += 1
                if unit.is_diacritized:
                    diacritized_chars += 1
                    word_has_mark = True
                variants.setdefault(unit.base, Counter())[unit.composed()] += 1
            words += 1
            if word_has_mark:
                diacritized_words += 1
    return [chars, diacritized_chars, words, diacritized_words, sentences], variants


def _diacritized_bases(variants: dict[str, Counter]) -> dict[str, Counter]:
    return {
        base: forms
        for base, forms in variants.items()
        if any(form != base for form in forms)
    }


def _counts_from_scan(
    tallies: list[int], variants: dict[str, Counter]
) -> CorpusCounts:
    profiled = _diacritized_bases(variants)
    return CorpusCounts(
        chars=tallies[0],
        diacritized_chars=tallies[1],
        words=tallies[2],
        diacritized_words=tallies[3],
        sentences=tallies[4],
        diacritized_bases=len(profiled),
        variant_forms=sum(len(forms) for forms in profiled.values()),
    )


def count_corpus(lines: Iterable[str]) -> CorpusCounts:
    """Tally characters, words, sentences, and variant forms.

    Example:
        >>> count_corpus(["ôô"])
        CorpusCounts(chars=2, diacritized_chars=2, words=1, diacritized_words=1, sentences=1, diacritized_bases=1, variant_forms=1)
    """
    return _counts_from_scan(*_scan(lines))


def profile_bases(lines: Iterable[str]) -> list[BaseCharProfile]:
    """Variant distributions for every base with a diacritized occurrence.

    Returns profiles sorted by base character.
    """
    _, variants = _scan(lines)
    return _profiles(variants)


def _profiles(variants: dict[str, Counter]) -> list[BaseCharProfile]:
    profiles = []
    for base, forms in sorted(_diacritized_bases(variants).items()):
        total = sum(forms.values())
        profiles.append(
            BaseCharProfile(
                base=base,
                distribution={form: n / total for form, n in sorted(forms.items())},
                occurrences=total,
            )
        )
    return profiles


def compute(lines: Iterable[str]) -> ComplexityReport:
    """Compute all six metrics in one pass.

    Any metric whose denominator is zero (empty corpus, no diacritics)
    comes out as 0 and is listed in the report's zero_denominators, so
    downstream numeric code never sees NaN.
    """
    tallies, variants = _scan(lines)
    counts = _counts_from_scan(tallies, variants)
    profiles = _profiles(variants)
    zero: list[str] = []

    def ratio(numerator: int, denominator: int, name: str) -> float:
        if denominator == 0:
            zero.append(name)
            return 0.0
        return numerator / denominator

    dcr = ratio(counts.diacritized_chars, counts.chars, "dcr")
    dwr = ratio(counts.diacritized_words, counts.words, "dwr")
    dbr = ratio(counts.variant_forms, counts.diacritized_bases, "dbr")
    dwsr = ratio(counts.diacritized_words, counts.sentences, "dwsr")

    if profiles:
        entropies = [p.entropy() for p in profiles]
        total_occurrences = sum(p.occurrences for p in profiles)
        aed = sum(entropies) / len(entropies)
        waed = sum(
            p.occurrences / total_occurrences * h
            for p, h in zip(profiles, entropies)
        )
    else:
        zero.extend(["aed", "waed"])
        aed = waed = 0.0

    return ComplexityReport(
        dcr=dcr,
        dwr=dwr,
        dbr=dbr,
        dwsr=dwsr,
        aed=aed,
        waed=waed,
        counts=counts,
        zero_denominators=tuple(zero),
    )
