"""Error rates for diacritization and BLEU for translation output.

DER and WER follow a deliberately simple positional scheme rather than
edit distance: sequences are compared word by word up to the shorter
word count, words position by position up to the shorter length, and
every length excess counts as that many errors.  Units are grapheme
clusters after NFC normalization, so one wrong diacritic is exactly
one error and precomposed versus combining-mark spellings never
disagree.

BLEU is the corpus-level geometric mean of modified n-gram precisions
with an exponential brevity penalty, on whitespace-pretokenized text.
"""
from __future__ import annotations

import math
import unicodedata
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus_prep import postprocess_prediction
from .errors import DataError
from .unicode_core import nfc_graphemes

TASK_DIA = "dia"
TASK_MT = "mt"


@dataclass(frozen=True)
class BleuReport:
    """Corpus BLEU with its ingredients exposed for inspection."""

    score: float
    precisions: tuple[float, ...]
    brevity_penalty: float
    hyp_length: int
    ref_length: int


@dataclass(frozen=True)
class EvalReport:
    task: str
    n_sequences: int
    der: float | None = None
    wer: float | None = None
    bleu: float | None = None
    # degenerate denominators reported as 0 are flagged here
    flags: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        out: dict = {"task": self.task, "n_sequences": self.n_sequences}
        for name in ("der", "wer", "bleu"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        out["flags"] = list(self.flags)
        return out


def _check_pairing(golds: Sequence[str], preds: Sequence[str]) -> None:
    if len(golds) != len(preds):
        raise DataError(f"gold/pred counts differ: {len(golds)} vs {len(preds)}")
    if not golds:
        raise DataError("nothing to evaluate: empty sequence lists")


def _der_tallies(golds: Sequence[str], preds: Sequence[str]) -> tuple[int, int]:
    correct = incorrect = 0
    for gold, pred in zip(golds, preds):
        for gold_word, pred_word in zip(gold.split(), pred.split()):
            gold_units = nfc_graphemes(gold_word)
            pred_units = nfc_graphemes(pred_word)
            incorrect += abs(len(pred_units) - len(gold_units))
            for g, p in zip(gold_units, pred_units):
                if g == p:
                    correct += 1
                else:
                    incorrect += 1
    return correct, incorrect


def _wer_tallies(golds: Sequence[str], preds: Sequence[str]) -> tuple[int, int]:
    correct = incorrect = 0
    for gold, pred in zip(golds, preds):
        gold_words = gold.split()
        pred_words = pred.split()
        incorrect += abs(len(gold_words) - len(pred_words))
        for g, p in zip(gold_words, pred_words):
            if unicodedata.normalize("NFC", g) == unicodedata.normalize("NFC", p):
                correct += 1
            else:
                incorrect += 1
    return correct, incorrect


def _rate(correct: int, incorrect: int) -> float:
    total = correct + incorrect
    return incorrect / total if total else 0.0


def der(golds: Sequence[str], preds: Sequence[str]) -> float:
    """Diacritization error rate over aligned sequence lists.

    Example:
        >>> round(der(["tack så"], ["tack sa"]), 4)
        0.1667

    Words beyond the shorter word count of a pair are ignored; within
    a word pair, the length difference counts as errors and positions
    up to the shorter length are compared one grapheme at a time.
    An all-empty comparison has no units and scores 0.
    """
    _check_pairing(golds, preds)
    return _rate(*_der_tallies(golds, preds))


def wer(golds: Sequence[str], preds: Sequence[str]) -> float:
    """Word error rate: positional exact-match with length penalty."""
    _check_pairing(golds, preds)
    return _rate(*_wer_tallies(golds, preds))


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu_report(
    refs: Sequence[str],
    hyps: Sequence[str],
    max_n: int = 4,
    smooth: bool = False,
) -> BleuReport:
    """Corpus-level BLEU on pretokenized text, with ingredients.

    Args:
        refs: reference lines, whitespace-tokenized words.
        hyps: hypothesis lines, aligned with refs.
        max_n: highest n-gram order.
        smooth: add-one smoothing on orders >= 2; without it, any
            zero precision makes the score 0.
    """
    _check_pairing(refs, hyps)
    matches = [0] * max_n
    totals = [0] * max_n
    hyp_length = ref_length = 0
    for ref, hyp in zip(refs, hyps):
        ref_tokens = ref.split()
        hyp_tokens = hyp.split()
        ref_length += len(ref_tokens)
        hyp_length += len(hyp_tokens)
        for n in range(1, max_n + 1):
            totals[n - 1] += max(len(hyp_tokens) - n + 1, 0)
            ref_counts = _ngrams(ref_tokens, n)
            for gram, count in _ngrams(hyp_tokens, n).items():
                matches[n - 1] += min(count, ref_counts[gram])

    precisions: list[float] = []
    for n in range(1, max_n + 1):
        match, total = matches[n - 1], totals[n - 1]
        if smooth and n >= 2:
            match, total = match + 1, total + 1
        precisions.append(match / total if total else 0.0)

    if hyp_length == 0 or any(p == 0.0 for p in precisions):
        score = 0.0
        brevity_penalty = 0.0 if hyp_length == 0 else _brevity(hyp_length, ref_length)
    else:
        brevity_penalty = _brevity(hyp_length, ref_length)
        log_mean = sum(math.log(p) for p in precisions) / max_n
        score = 100.0 * brevity_penalty * math.exp(log_mean)
    return BleuReport(
        score=score,
        precisions=tuple(precisions),
        brevity_penalty=brevity_penalty,
        hyp_length=hyp_length,
        ref_length=ref_length,
    )


def _brevity(hyp_length: int, ref_length: int) -> float:
    if hyp_length >= ref_length:
        return 1.0
    return math.exp(1.0 - ref_length / hyp_length)


def bleu(
    refs: Sequence[str], hyps: Sequence[str], max_n: int = 4, smooth: bool = False
) -> float:
    """Corpus BLEU in [0, 100]; see bleu_report for the breakdown."""
    return bleu_report(refs, hyps, max_n=max_n, smooth=smooth).score


def evaluate(
    task: str,
    golds: Sequence[str],
    preds: Sequence[str],
    postprocess: bool = False,
    bleu_smooth: bool = False,
) -> EvalReport:
    """Score predictions for one task and assemble an EvalReport.

    Task "dia" reports DER and WER; task "mt" reports BLEU.  With
    postprocess=True, predictions are first consolidated from
    character tokens back into plain text (gold files are expected to
    be plain text already).
    """
    _check_pairing(golds, preds)
    if postprocess:
        preds = [postprocess_prediction(p) for p in preds]
    flags: list[str] = []
    if task == TASK_DIA:
        correct, incorrect = _der_tallies(golds, preds)
        if correct + incorrect == 0:
            flags.append("der_zero_denominator")
        der_value = _rate(correct, incorrect)
        correct, incorrect = _wer_tallies(golds, preds)
        if correct + incorrect == 0:
            flags.append("wer_zero_denominator")
        wer_value = _rate(correct, incorrect)
        return EvalReport(
            task=task,
            n_sequences=len(golds),
            der=der_value,
            wer=wer_value,
            flags=tuple(flags),
        )
    if task == TASK_MT:
        report = bleu_report(golds, preds, smooth=bleu_smooth)
        if report.hyp_length == 0:
            flags.append("bleu_empty_hypotheses")
        return EvalReport(
            task=task,
            n_sequences=len(golds),
            bleu=report.score,
            flags=tuple(flags),
        )
    raise ValueError(f"unknown task: {task!r}")
