"""Result-table assembly over a directory of evaluation reports.

Evaluation runs drop one JSON per condition, named
`{lang}.{model}.{size}.json`.  This module averages each metric across
languages per train size and model, and builds the standard
model-pair comparison rows (percentage change of the averages, paired
t-test and effect size over the per-language values):

    diamt      vs onlymt-undia  on bleu
    onlymt-dia vs onlymt-undia  on bleu
    diamt      vs onlydia       on der and wer

Languages missing one side of a pair are reported under omissions
while the row is still built from the languages that have both.
"""
from __future__ import annotations

from collections import defaultdict
from pathlib import Path

from .corpus_prep import MODEL_TYPES
from .errors import DataError
from .io_utils import read_json
from .stats import PairedSamples, cohens_d, paired_t_test, percentage_change

COMPARISONS = (
    ("diamt", "onlymt-undia", "bleu"),
    ("onlymt-dia", "onlymt-undia", "bleu"),
    ("diamt", "onlydia", "der"),
    ("diamt", "onlydia", "wer"),
)

_METRICS = ("bleu", "der", "wer")


def parse_result_name(name: str) -> tuple[str, str, int] | None:
    """`{lang}.{model}.{size}.json` -> (lang, model, size), else None."""
    parts = name.split(".")
    if len(parts) != 4 or parts[3] != "json" or parts[1] not in MODEL_TYPES:
        return None
    if not parts[2].isdigit():
        return None
    return parts[0], parts[1], int(parts[2])


def scan_results(results_dir: str | Path) -> dict[tuple[str, str, int], dict]:
    """Load every well-named evaluation report under results_dir."""
    results = {}
    for path in sorted(Path(results_dir).iterdir()):
        key = parse_result_name(path.name)
        if key is None:
            continue
        payload = read_json(path)
        if not isinstance(payload, dict):
            raise DataError(f"{path}: expected a JSON object")
        results[key] = {m: payload[m] for m in _METRICS if m in payload}
    return results


def _averages(results: dict) -> list[dict]:
    grouped: dict[tuple[int, str, str], list[float]] = defaultdict(list)
    for (_, model, size), metrics in results.items():
        for metric, value in metrics.items():
            grouped[(size, model, metric)].append(value)
    return [
        {
            "size": size,
            "model": model,
            "metric": metric,
            "mean": sum(values) / len(values),
            "n_languages": len(values),
        }
        for (size, model, metric), values in sorted(grouped.items())
    ]


def assemble_report(results_dir: str | Path) -> dict:
    """Build the full report payload from a results directory."""
    results = scan_results(results_dir)
    sizes = sorted({size for (_, _, size) in results})
    languages = sorted({lang for (lang, _, _) in results})
    omissions: list[str] = []
    if not results:
        omissions.append("no result files found")

    comparisons = []
    for size in sizes:
        for model_a, model_b, metric in COMPARISONS:
            paired: list[tuple[str, float, float]] = []
            for lang in languages:
                value_a = results.get((lang, model_a, size), {}).get(metric)
                value_b = results.get((lang, model_b, size), {}).get(metric)
                if value_a is not None and value_b is not None:
                    paired.append((lang, value_a, value_b))
                elif value_a is not None or value_b is not None:
                    missing = model_b if value_a is not None else model_a
                    omissions.append(
                        f"size {size}, {model_a} vs {model_b} on {metric}: "
                        f"{lang} has no {missing} result"
                    )
            if not paired:
                continue
            labels = tuple(lang for lang, _, _ in paired)
            a = tuple(value for _, value, _ in paired)
            b = tuple(value for _, _, value in paired)
            mean_a = sum(a) / len(a)
            mean_b = sum(b) / len(b)
            row: dict = {
                "size": size,
                "model_a": model_a,
                "model_b": model_b,
                "metric": metric,
                "mean_a": mean_a,
                "mean_b": mean_b,
                "pc": None,
                "t": None,
                "p": None,
                "cohens_d": None,
                "n_languages": len(paired),
                "notes": [],
            }
            try:
                row["pc"] = percentage_change(mean_a, mean_b)
            except DataError as exc:
                row["notes"].append(str(exc))
            if len(paired) >= 2:
                samples = PairedSamples(a, b, labels)
                t_result = paired_t_test(samples)
                row["t"] = None if t_result.t in (float("inf"), float("-inf")) else t_result.t
                row["p"] = t_result.p
                if t_result.flag:
                    row["notes"].append(t_result.flag)
                try:
                    row["cohens_d"] = cohens_d(samples)
                except DataError as exc:
                    row["notes"].append(str(exc))
            else:
                row["notes"].append("single language; no paired test")
            comparisons.append(row)

    return {
        "languages": languages,
        "sizes": sizes,
        "averages": _averages(results),
        "comparisons": comparisons,
        "omissions": omissions,
    }


def _cell(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, float):
        return format(value, ".6f")
    return str(value)


def averages_tsv(payload: dict) -> str:
    header = ["size", "model", "metric", "mean", "n_languages"]
    rows = [
        [_cell(row[column]) for column in header] for row in payload["averages"]
    ]
    return "\n".join("\t".join(row) for row in [header] + rows) + "\n"


def comparisons_tsv(payload: dict) -> str:
    header = [
        "size",
        "model_a",
        "model_b",
        "metric",
        "mean_a",
        "mean_b",
        "pc",
        "t",
        "p",
        "cohens_d",
        "n_languages",
    ]
    rows = [
        [_cell(row[column]) for column in header] for row in payload["comparisons"]
    ]
    return "\n".join("\t".join(row) for row in [header] + rows) + "\n"
