"""Canonical handling of diacritized text.

Everything downstream (corpus preparation, complexity metrics,
evaluation) funnels through the helpers here: compatibility
decomposition into base/mark units, canonical recomposition,
diacritic stripping, and per-base variant inventories.

Decomposition uses NFKD so that precomposed characters and
compatibility forms are broken apart consistently; all output meant
for humans or for equality checks is recomposed with NFC.
"""
from __future__ import annotations

import unicodedata
import warnings
from dataclasses import dataclass

# Token used to mark word boundaries in character-tokenized text.
WORD_BOUNDARY = "|"

# Dotted circle, the conventional carrier for an isolated combining mark.
ORPHAN_MARK_BASE = "◌"

_MARK_CATEGORIES = frozenset({"Mn", "Mc", "Me"})


class OrphanMarkWarning(UserWarning):
    """A combining mark appeared with no preceding base character."""


def is_combining_mark(char: str) -> bool:
    """Return True iff ``char`` is a combining mark (category Mn, Mc or Me)."""
    return unicodedata.category(char) in _MARK_CATEGORIES


@dataclass(frozen=True)
class GlyphUnit:
    """One user-visible character: a base scalar plus its combining marks.

    A unit with no marks is an undiacritized character.  ``marks``
    preserves canonical decomposition order.
    """

    base: str
    marks: tuple[str, ...] = ()

    @property
    def is_diacritized(self) -> bool:
        return bool(self.marks)

    def composed(self) -> str:
        """The NFC composition of base plus marks (a variant form)."""
        return unicodedata.normalize("NFC", self.base + "".join(self.marks))


@dataclass(frozen=True)
class DecomposedText:
    """Text as words of GlyphUnits; no unit holds whitespace or '|'."""

    words: tuple[tuple[GlyphUnit, ...], ...]


def _is_boundary(char: str) -> bool:
    return char.isspace() or char == WORD_BOUNDARY


def decompose(text: str) -> DecomposedText:
    """Split text into words of (base, marks) glyph units.

    The text is NFKD-normalized first, so precomposed characters come
    apart into a base scalar followed by its combining marks.  Runs of
    whitespace, and the word-boundary symbol '|', delimit words; the
    separators themselves are not retained, so consecutive separators
    collapse.

    Args:
        text: any UTF-8 string.

    Returns:
        A DecomposedText whose words each hold at least one GlyphUnit.

    A combining mark with no preceding base in its word (dirty data) is
    attached to a dotted-circle placeholder base and an
    OrphanMarkWarning is emitted instead of failing.
    """
    words: list[tuple[GlyphUnit, ...]] = []
    current_word: list[GlyphUnit] = []
    base: str | None = None
    marks: list[str] = []

    def flush_glyph() -> None:
        nonlocal base, marks
        if base is not None:
            current_word.append(GlyphUnit(base, tuple(marks)))
        base, marks = None, []

    def flush_word() -> None:
        flush_glyph()
        if current_word:
            words.append(tuple(current_word))
        current_word.clear()

    for char in unicodedata.normalize("NFKD", text):
        if _is_boundary(char):
            flush_word()
        elif is_combining_mark(char):
            if base is None:
                warnings.warn(
                    f"combining mark U+{ord(char):04X} has no base character; "
                    f"attaching to placeholder",
                    OrphanMarkWarning,
                    stacklevel=2,
                )
                base = ORPHAN_MARK_BASE
            marks.append(char)
        else:
            flush_glyph()
            base = char
    flush_word()
    return DecomposedText(tuple(words))


def recompose(decomposed: DecomposedText) -> str:
    """Join words with single spaces and NFC-compose every glyph."""
    words = (
        "".join(unit.base + "".join(unit.marks) for unit in word)
        for word in decomposed.words
    )
    return unicodedata.normalize("NFC", " ".join(words))


def strip_diacritics(text: str) -> str:
    """Remove every combining mark, leaving all other characters alone.

    Example:
        >>> strip_diacritics("tack så")
        'tack sa'
    """
    decomposed = unicodedata.normalize("NFKD", text)
    kept = "".join(char for char in decomposed if not is_combining_mark(char))
    return unicodedata.normalize("NFC", kept)


def nfc_graphemes(word: str) -> list[str]:
    """Split an NFC-normalized word into grapheme units.

    Unlike :func:`decompose`, this applies canonical (NFC) rather than
    compatibility normalization, so units compare equal across
    precomposed and combining-sequence spellings without rewriting
    compatibility characters.  Used wherever lengths and positions are
    measured in user-visible characters.
    """
    graphemes: list[str] = []
    for char in unicodedata.normalize("NFC", word):
        if is_combining_mark(char) and graphemes:
            graphemes[-1] += char
        else:
            graphemes.append(char)
    return graphemes


def variant_inventory(lines) -> dict[str, set[str]]:
    """Collect, per alphabetic base character, the variant forms that occur.

    Args:
        lines: iterable of text lines.

    Returns:
        Mapping from base character to the set of composed variant
        forms observed, the bare form included only when it occurs.
        Marks on non-alphabetic characters (digits, punctuation) are
        not profiled.

    Example:
        >>> inv = variant_inventory(["så sa"])
        >>> sorted(inv["a"]) == ["a", "å"]
        True
    """
    inventory: dict[str, set[str]] = {}
    for line in lines:
        for word in decompose(line).words:
            for unit in word:
                if unit.base.isalpha():
                    inventory.setdefault(unit.base, set()).add(unit.composed())
    return inventory
