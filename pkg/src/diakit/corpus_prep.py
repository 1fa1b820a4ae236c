"""Parallel-corpus pipeline: filter, split, subset, format, vocabulary.

The pipeline turns a sentence-aligned corpus (diacritized language on
the source side, English on the target side) into model-ready files
for four training setups:

    onlydia       undiacritized char tokens -> diacritized char tokens
    onlymt-dia    diacritized char tokens   -> English words
    onlymt-undia  undiacritized char tokens -> English words
    diamt         one joint model; every input line yields a
                  diacritization pair and a translation pair, each
                  tagged by a prefix token on an undiacritized source

Non-English sides are character tokenized: NFKD decomposition, one
token per scalar (combining marks included), word boundaries replaced
by '|'.  English sides are whitespace word tokenized with punctuation
left attached.
"""
from __future__ import annotations

import random
import unicodedata
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import DataError
from .unicode_core import WORD_BOUNDARY, is_combining_mark, strip_diacritics

MODEL_ONLYDIA = "onlydia"
MODEL_ONLYMT_DIA = "onlymt-dia"
MODEL_ONLYMT_UNDIA = "onlymt-undia"
MODEL_DIAMT = "diamt"
MODEL_TYPES = (MODEL_ONLYDIA, MODEL_ONLYMT_DIA, MODEL_ONLYMT_UNDIA, MODEL_DIAMT)

TASK_DIA = "dia"
TASK_MT = "mt"

# Literal prefix tokens marking the sub-task of a joint-model pair.
DIA_TASK_PREFIX = "ε"
MT_TASK_PREFIX = "τ"

PAD_TOKEN = "<pad>"
UNK_TOKEN = "<unk>"
EOS_TOKEN = "</s>"


@dataclass
class ParallelCorpus:
    """Aligned source/target lines; line i of each side belongs together."""

    source_lines: list[str]
    target_lines: list[str]

    def __post_init__(self) -> None:
        if len(self.source_lines) != len(self.target_lines):
            raise DataError(
                f"source/target line counts differ: "
                f"{len(self.source_lines)} vs {len(self.target_lines)}"
            )

    def __len__(self) -> int:
        return len(self.source_lines)

    def pairs(self) -> Iterable[tuple[str, str]]:
        return zip(self.source_lines, self.target_lines)

    def select(self, indices: Iterable[int]) -> "ParallelCorpus":
        idx = list(indices)
        return ParallelCorpus(
            [self.source_lines[i] for i in idx],
            [self.target_lines[i] for i in idx],
        )


@dataclass(frozen=True)
class SplitSpec:
    """How to cut a corpus into train/dev/test.

    mode "ratio" partitions by the given fractions (floor for dev and
    test, remainder to train); mode "fixed" reserves counts = (dev_n,
    test_n) pairs and leaves the rest as train.  Both shuffle first.
    """

    mode: str = "ratio"
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1)
    counts: tuple[int, int] = (1500, 1500)
    seed: int = 42

    def __post_init__(self) -> None:
        if self.mode not in ("ratio", "fixed"):
            raise ValueError(f"unknown split mode: {self.mode!r}")
        if self.mode == "ratio":
            if any(r <= 0 for r in self.ratios) or abs(sum(self.ratios) - 1.0) > 1e-9:
                raise ValueError(f"ratios must be positive and sum to 1: {self.ratios}")
        if self.mode == "fixed" and any(c < 0 for c in self.counts):
            raise ValueError(f"counts must be non-negative: {self.counts}")


class CorpusSplits(NamedTuple):
    train: ParallelCorpus
    dev: ParallelCorpus
    test: ParallelCorpus


@dataclass(frozen=True)
class PreparedPair:
    """One source/target training line, tagged with its task and model."""

    source: str
    target: str
    task: str
    model_type: str


@dataclass(frozen=True)
class Vocabulary:
    """Token list in deterministic order: specials, then first occurrence."""

    tokens: tuple[str, ...]
    specials: tuple[str, ...]


def filter_lines(
    corpus: ParallelCorpus, min_chars: int = 6, max_chars: int = 500
) -> ParallelCorpus:
    """Drop pairs whose source line is shorter than min_chars or longer
    than max_chars.

    Lengths count every Unicode scalar of the raw source line,
    whitespace included, and the thresholds are strict.
    """
    kept = [
        i
        for i, line in enumerate(corpus.source_lines)
        if min_chars <= len(line) <= max_chars
    ]
    return corpus.select(kept)


def _shuffled_indices(n: int, seed: int) -> list[int]:
    # Fisher-Yates over a Mersenne Twister stream; spelled out (rather
    # than random.shuffle) so the ordering is pinned across Python
    # versions.
    rng = random.Random(seed)
    indices = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.randrange(i + 1)
        indices[i], indices[j] = indices[j], indices[i]
    return indices


def split_corpus(corpus: ParallelCorpus, spec: SplitSpec) -> CorpusSplits:
    """Shuffle deterministically under spec.seed, then cut train/dev/test.

    Returns:
        CorpusSplits(train, dev, test); the three parts are disjoint
        and together cover the input corpus.

    Raises:
        DataError: fixed counts leave no training pair.
    """
    n = len(corpus)
    if spec.mode == "ratio":
        n_dev = int(n * spec.ratios[1])
        n_test = int(n * spec.ratios[2])
    else:
        n_dev, n_test = spec.counts
        if n_dev + n_test >= n:
            raise DataError(
                f"corpus of {n} pairs cannot reserve {n_dev} dev + {n_test} test"
            )
    n_train = n - n_dev - n_test
    order = _shuffled_indices(n, spec.seed)
    return CorpusSplits(
        train=corpus.select(order[:n_train]),
        dev=corpus.select(order[n_train : n_train + n_dev]),
        test=corpus.select(order[n_train + n_dev :]),
    )


def subset_train(train: ParallelCorpus, size: int) -> ParallelCorpus:
    """First `size` pairs of the shuffled train split; subsets nest."""
    if size > len(train):
        raise DataError(f"requested train size {size} exceeds {len(train)} pairs")
    return corpus_prefix(train, size)


def corpus_prefix(corpus: ParallelCorpus, size: int) -> ParallelCorpus:
    return ParallelCorpus(corpus.source_lines[:size], corpus.target_lines[:size])


def char_tokenize(text: str) -> str:
    """NFKD-decompose and emit one token per scalar, '|' between words.

    Example:
        >>> char_tokenize("tack så")
        't a c k | s a ̊'
    """
    words = unicodedata.normalize("NFKD", text).split()
    tokens: list[str] = []
    for i, word in enumerate(words):
        if i:
            tokens.append(WORD_BOUNDARY)
        tokens.extend(word)
    return " ".join(tokens)


def word_tokenize(text: str) -> str:
    """Whitespace tokenization for the English side; punctuation stays."""
    return " ".join(text.split())


def prepare(pair: tuple[str, str], model_type: str) -> list[PreparedPair]:
    """Format one (source, target) line pair for the given model type.

    Returns one prepared pair, or two for the joint model (the
    diacritization pair first, then the translation pair; their
    sources differ only in the prefix token).

    Raises:
        DataError: empty source or target, or unknown model type.
    """
    if model_type not in MODEL_TYPES:
        raise ValueError(f"unknown model type: {model_type!r}")
    src, tgt = pair
    if not src.split():
        raise DataError("empty source line")
    if not tgt.split():
        raise DataError("empty target line")

    if model_type == MODEL_ONLYDIA:
        return [
            PreparedPair(
                source=char_tokenize(strip_diacritics(src)),
                target=char_tokenize(src),
                task=TASK_DIA,
                model_type=model_type,
            )
        ]
    if model_type == MODEL_ONLYMT_DIA:
        return [
            PreparedPair(
                source=char_tokenize(src),
                target=word_tokenize(tgt),
                task=TASK_MT,
                model_type=model_type,
            )
        ]
    if model_type == MODEL_ONLYMT_UNDIA:
        return [
            PreparedPair(
                source=char_tokenize(strip_diacritics(src)),
                target=word_tokenize(tgt),
                task=TASK_MT,
                model_type=model_type,
            )
        ]
    if model_type == MODEL_DIAMT:
        undia_body = char_tokenize(strip_diacritics(src))
        return [
            PreparedPair(
                source=f"{DIA_TASK_PREFIX} {undia_body}",
                target=char_tokenize(src),
                task=TASK_DIA,
                model_type=model_type,
            ),
            PreparedPair(
                source=f"{MT_TASK_PREFIX} {undia_body}",
                target=word_tokenize(tgt),
                task=TASK_MT,
                model_type=model_type,
            ),
        ]
    raise AssertionError("unreachable")


def prepare_corpus(
    corpus: ParallelCorpus, model_type: str
) -> tuple[list[PreparedPair], list[str]]:
    """Prepare every pair of a corpus, collecting rejection reasons.

    Returns:
        (prepared, rejections) where rejections holds one
        "line N: reason" entry per skipped input pair.
    """
    if model_type not in MODEL_TYPES:
        raise ValueError(f"unknown model type: {model_type!r}")
    prepared: list[PreparedPair] = []
    rejections: list[str] = []
    for lineno, pair in enumerate(corpus.pairs(), start=1):
        try:
            prepared.extend(prepare(pair, model_type))
        except DataError as exc:
            rejections.append(f"line {lineno}: {exc}")
    return prepared, rejections


def build_vocab(prepared: Iterable[PreparedPair], side: str) -> Vocabulary:
    """Collect the vocabulary of one side of a prepared-pair stream.

    Tokens come out in a deterministic order: the symbolic specials,
    then any task-prefix/boundary tokens that occur, then everything
    else by first occurrence.

    Args:
        prepared: pairs of a single model type.
        side: "source" or "target".
    """
    if side not in ("source", "target"):
        raise ValueError(f"side must be 'source' or 'target': {side!r}")
    seen: dict[str, None] = {}
    for pair in prepared:
        text = pair.source if side == "source" else pair.target
        for token in text.split():
            seen.setdefault(token)
    specials = [PAD_TOKEN, UNK_TOKEN, EOS_TOKEN]
    for marker in (DIA_TASK_PREFIX, MT_TASK_PREFIX, WORD_BOUNDARY):
        if marker in seen:
            specials.append(marker)
    ordered = specials + [t for t in seen if t not in specials]
    return Vocabulary(tokens=tuple(ordered), specials=tuple(specials))


def postprocess_prediction(pred: str) -> str:
    """Turn a character-token prediction back into plain text.

    Tokens are concatenated, '|' becomes a space, runs of boundaries
    collapse to one space, and the result is NFC-normalized:

        >>> postprocess_prediction("t a c k | s a ̊")
        'tack så'
    """
    pieces = [
        " " if token == WORD_BOUNDARY else token for token in pred.split()
    ]
    text = " ".join("".join(pieces).split())
    return unicodedata.normalize("NFC", text)


def vocabulary_has_combining_marks(vocab: Vocabulary) -> bool:
    """True if any vocabulary token contains a combining mark."""
    return any(
        any(is_combining_mark(char) for char in token) for token in vocab.tokens
    )
