"""Command-line entry point.

One executable, nine subcommands:

    prep        filter/split/format a parallel corpus for one model type
    metrics     complexity metrics of a corpus
    eval        score predictions (dia: DER/WER, mt: BLEU)
    baseline    train or apply the frequency-table restorer
    correlate   Pearson/Spearman/Kendall over two labeled vectors
    ttest       paired t-test plus effect size over two labeled vectors
    pc          percentage change of two scalars
    report      assemble result tables from a directory of eval JSONs
    variants    per-base variant inventory of a corpus

Exit codes: 0 success, 1 usage error, 2 data error.  Commands that
write files leave a manifest recording arguments, seed, and input
digests; reporting commands print JSON (or TSV with --tsv) to stdout.
The default seed is 42, overridable with the DIAKIT_SEED environment
variable when --seed is not given.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .baseline_diacritizer import load_table, restore, save_table, train
from .complexity_metrics import compute, profile_bases
from .corpus_prep import (
    MODEL_TYPES,
    ParallelCorpus,
    SplitSpec,
    build_vocab,
    filter_lines,
    prepare_corpus,
    split_corpus,
    subset_train,
)
from .errors import DataError
from .evaluation import evaluate
from .io_utils import (
    dump_json,
    make_manifest,
    read_labeled_values,
    read_lines,
    write_lines,
    write_manifest,
    write_sidecar_manifest,
)
from .report import assemble_report, averages_tsv, comparisons_tsv
from .stats import (
    CORRELATION_METHODS,
    PairedSamples,
    cohens_d,
    paired_t_test,
    percentage_change,
)
from .unicode_core import variant_inventory

SEED_ENV_VAR = "DIAKIT_SEED"


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError:
        raise DataError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


def _add_format_flags(parser: argparse.ArgumentParser) -> None:
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument(
        "--json", action="store_true", help="JSON output (the default)"
    )
    fmt.add_argument("--tsv", action="store_true", help="TSV output")


def _emit(args: argparse.Namespace, payload: dict, tsv_rows: list[tuple]) -> None:
    if args.tsv:
        for row in tsv_rows:
            print("\t".join("NA" if cell is None else str(cell) for cell in row))
    else:
        sys.stdout.write(dump_json(payload))


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_prep(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    corpus = ParallelCorpus(read_lines(args.src), read_lines(args.tgt))
    filtered = filter_lines(corpus)
    spec = SplitSpec(
        mode=args.split_mode,
        ratios=args.ratios,
        counts=(args.dev_size, args.test_size),
        seed=seed,
    )
    splits = split_corpus(filtered, spec)
    train_split = splits.train
    if args.train_size is not None:
        train_split = subset_train(train_split, args.train_size)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    line_counts = {}
    rejections: dict[str, list[str]] = {}
    for name, split in (
        ("train", train_split),
        ("dev", splits.dev),
        ("test", splits.test),
    ):
        prepared, rejected = prepare_corpus(split, args.model)
        write_lines(out / f"{name}.src", (p.source for p in prepared))
        write_lines(out / f"{name}.tgt", (p.target for p in prepared))
        line_counts[name] = len(prepared)
        if rejected:
            rejections[name] = rejected
        if name == "train":
            for side in ("source", "target"):
                vocab = build_vocab(prepared, side)
                suffix = "src" if side == "source" else "tgt"
                write_lines(out / f"vocab.{suffix}.txt", vocab.tokens)

    manifest = make_manifest(
        command="prep",
        arguments={
            "model": args.model,
            "split_mode": args.split_mode,
            "ratios": list(args.ratios),
            "dev_size": args.dev_size,
            "test_size": args.test_size,
            "train_size": args.train_size,
        },
        seed=seed,
        input_paths=[args.src, args.tgt],
        extra={
            "counts": {
                "input_pairs": len(corpus),
                "kept_pairs": len(filtered),
                "dropped_pairs": len(corpus) - len(filtered),
                "split_pairs": {
                    "train": len(train_split),
                    "dev": len(splits.dev),
                    "test": len(splits.test),
                },
                "prepared_lines": line_counts,
                "rejected": rejections,
            },
            "length_filter": {
                "min_chars": 6,
                "max_chars": 500,
                "unit": "unicode scalar characters of the source line, whitespace included",
            },
            "shuffle": "fisher-yates over random.Random(seed) (mersenne twister)",
            "vocabulary": "built on the train split",
        },
    )
    write_manifest(out, manifest)
    return 0


def cmd_metrics(args: argparse.Namespace) -> int:
    lines = read_lines(args.corpus)
    report = compute(lines)
    payload = dict(report.as_dict())
    payload["counts"] = {
        "chars": report.counts.chars,
        "diacritized_chars": report.counts.diacritized_chars,
        "words": report.counts.words,
        "diacritized_words": report.counts.diacritized_words,
        "sentences": report.counts.sentences,
        "diacritized_bases": report.counts.diacritized_bases,
        "variant_forms": report.counts.variant_forms,
    }
    payload["profiles"] = {
        profile.base: {
            "occurrences": profile.occurrences,
            "distribution": profile.distribution,
        }
        for profile in profile_bases(lines)
    }
    payload["zero_denominators"] = list(report.zero_denominators)
    rows = [(name, value) for name, value in sorted(report.as_dict().items())]
    rows += [(name, value) for name, value in sorted(payload["counts"].items())]
    _emit(args, payload, rows)
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    report = evaluate(
        args.task,
        read_lines(args.gold),
        read_lines(args.pred),
        postprocess=args.postprocess,
        bleu_smooth=args.bleu_smooth,
    )
    payload = report.as_dict()
    rows = [
        (key, value)
        for key, value in sorted(payload.items())
        if key not in ("flags",)
    ]
    _emit(args, payload, rows)
    return 0


def cmd_baseline(args: argparse.Namespace) -> int:
    if args.baseline_command == "train":
        table = train(read_lines(args.corpus))
        save_table(table, args.out)
        manifest = make_manifest(
            command="baseline train",
            arguments={},
            seed=_resolve_seed(None),
            input_paths=[args.corpus],
            extra={"total_words": table.total_words, "entries": len(table.entries)},
        )
        write_sidecar_manifest(args.out, manifest)
        return 0
    table = load_table(args.table)
    restored = [restore(table, line) for line in read_lines(args.input)]
    write_lines(args.out, restored)
    manifest = make_manifest(
        command="baseline restore",
        arguments={},
        seed=_resolve_seed(None),
        input_paths=[args.table, args.input],
        extra={"lines": len(restored)},
    )
    write_sidecar_manifest(args.out, manifest)
    return 0


def _aligned_vectors(
    path_a: str, path_b: str
) -> tuple[list[str], list[float], list[float]]:
    a = read_labeled_values(path_a)
    b = read_labeled_values(path_b)
    if set(a) != set(b):
        only_a = sorted(set(a) - set(b))
        only_b = sorted(set(b) - set(a))
        raise DataError(
            f"label sets differ between {path_a} and {path_b} "
            f"(only in first: {only_a}, only in second: {only_b})"
        )
    labels = sorted(a)
    return labels, [a[l] for l in labels], [b[l] for l in labels]


def cmd_correlate(args: argparse.Namespace) -> int:
    labels, x, y = _aligned_vectors(args.x, args.y)
    methods = (
        list(CORRELATION_METHODS) if args.method == "all" else [args.method]
    )
    payload: dict = {"n": len(labels), "labels": labels}
    rows = []
    for method in methods:
        result = CORRELATION_METHODS[method](x, y)
        payload[method] = {"statistic": result.statistic, "p_value": result.p_value}
        rows.append((method, result.statistic, result.p_value))
    _emit(args, payload, rows)
    return 0


def cmd_ttest(args: argparse.Namespace) -> int:
    labels, a, b = _aligned_vectors(args.a, args.b)
    samples = PairedSamples(tuple(a), tuple(b), tuple(labels))
    result = paired_t_test(samples)
    payload = {
        "n": result.n,
        "t": None if result.t in (float("inf"), float("-inf")) else result.t,
        "p": result.p,
        "flag": result.flag,
        "cohens_d_mode": args.cohens_d,
    }
    try:
        payload["cohens_d"] = cohens_d(samples, mode=args.cohens_d)
    except DataError as exc:
        payload["cohens_d"] = None
        payload["cohens_d_error"] = str(exc)
    rows = [(key, payload[key]) for key in ("n", "t", "p", "cohens_d")]
    _emit(args, payload, rows)
    return 0


def cmd_pc(args: argparse.Namespace) -> int:
    value = percentage_change(args.m1, args.m2)
    _emit(args, {"m1": args.m1, "m2": args.m2, "pc": value}, [("pc", value)])
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    results_dir = Path(args.results)
    if not results_dir.is_dir():
        raise DataError(f"not a directory: {results_dir}")
    payload = assemble_report(results_dir)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(dump_json(payload), encoding="utf-8")
    (out / "averages.tsv").write_text(averages_tsv(payload), encoding="utf-8")
    (out / "comparisons.tsv").write_text(comparisons_tsv(payload), encoding="utf-8")
    result_files = [
        path
        for path in sorted(results_dir.iterdir())
        if path.suffix == ".json" and path.name.count(".") == 3
    ]
    manifest = make_manifest(
        command="report",
        arguments={},
        seed=_resolve_seed(None),
        input_paths=result_files,
        extra={"result_files": len(result_files)},
    )
    write_manifest(out, manifest)
    return 0


def cmd_variants(args: argparse.Namespace) -> int:
    inventory = variant_inventory(read_lines(args.corpus))
    payload = {base: sorted(forms) for base, forms in sorted(inventory.items())}
    rows = [(base, " ".join(forms)) for base, forms in payload.items()]
    _emit(args, payload, rows)
    return 0


# ---------------------------------------------------------------------------
# parser


def _ratios(text: str) -> tuple[float, float, float]:
    try:
        parts = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a ratio triple: {text!r}")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated ratios")
    return parts  # type: ignore[return-value]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diakit",
        description="Corpus preparation, complexity metrics, and evaluation "
        "for diacritized text.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    prep = commands.add_parser("prep", help="prepare a parallel corpus")
    prep.add_argument("--src", required=True, help="diacritized source file")
    prep.add_argument("--tgt", required=True, help="English target file")
    prep.add_argument("--model", required=True, choices=MODEL_TYPES)
    prep.add_argument("--split-mode", choices=("ratio", "fixed"), default="ratio")
    prep.add_argument("--seed", type=int, default=None)
    prep.add_argument("--train-size", type=int, default=None)
    prep.add_argument(
        "--ratios", type=_ratios, default=(0.8, 0.1, 0.1),
        help="train,dev,test fractions for --split-mode ratio",
    )
    prep.add_argument(
        "--dev-size", type=int, default=1500,
        help="dev pair count for --split-mode fixed",
    )
    prep.add_argument(
        "--test-size", type=int, default=1500,
        help="test pair count for --split-mode fixed",
    )
    prep.add_argument("--out", required=True, help="output directory")
    prep.set_defaults(func=cmd_prep)

    metrics = commands.add_parser("metrics", help="complexity metrics of a corpus")
    metrics.add_argument("--corpus", required=True)
    _add_format_flags(metrics)
    metrics.set_defaults(func=cmd_metrics)

    evaluation = commands.add_parser("eval", help="score predictions")
    evaluation.add_argument("--task", required=True, choices=("dia", "mt"))
    evaluation.add_argument("--gold", required=True)
    evaluation.add_argument("--pred", required=True)
    evaluation.add_argument(
        "--postprocess", action="store_true",
        help="consolidate character-token predictions before scoring",
    )
    evaluation.add_argument(
        "--bleu-smooth", action="store_true",
        help="add-one smoothing on BLEU orders 2..4",
    )
    _add_format_flags(evaluation)
    evaluation.set_defaults(func=cmd_eval)

    baseline = commands.add_parser("baseline", help="frequency-table restorer")
    baseline_commands = baseline.add_subparsers(
        dest="baseline_command", required=True
    )
    baseline_train = baseline_commands.add_parser("train")
    baseline_train.add_argument("--corpus", required=True)
    baseline_train.add_argument("--out", required=True, help="table JSON path")
    baseline_train.set_defaults(func=cmd_baseline)
    baseline_restore = baseline_commands.add_parser("restore")
    baseline_restore.add_argument("--table", required=True)
    baseline_restore.add_argument("--in", dest="input", required=True)
    baseline_restore.add_argument("--out", required=True)
    baseline_restore.set_defaults(func=cmd_baseline)

    correlate = commands.add_parser(
        "correlate", help="correlations over two labeled TSV vectors"
    )
    correlate.add_argument("--x", required=True)
    correlate.add_argument("--y", required=True)
    correlate.add_argument(
        "--method",
        choices=("pearson", "spearman", "kendall", "all"),
        default="all",
    )
    _add_format_flags(correlate)
    correlate.set_defaults(func=cmd_correlate)

    ttest = commands.add_parser(
        "ttest", help="paired t-test over two labeled TSV vectors"
    )
    ttest.add_argument("--a", required=True)
    ttest.add_argument("--b", required=True)
    ttest.add_argument(
        "--cohens-d", choices=("paired", "pooled"), default="paired"
    )
    _add_format_flags(ttest)
    ttest.set_defaults(func=cmd_ttest)

    pc = commands.add_parser("pc", help="percentage change (m1 - m2) / m1")
    pc.add_argument("--m1", type=float, required=True)
    pc.add_argument("--m2", type=float, required=True)
    _add_format_flags(pc)
    pc.set_defaults(func=cmd_pc)

    report = commands.add_parser(
        "report", help="assemble result tables from eval JSONs"
    )
    report.add_argument(
        "--results", required=True, help="directory of {lang}.{model}.{size}.json"
    )
    report.add_argument("--out", required=True, help="output directory")
    report.set_defaults(func=cmd_report)

    variants = commands.add_parser(
        "variants", help="per-base variant inventory of a corpus"
    )
    variants.add_argument("--corpus", required=True)
    _add_format_flags(variants)
    variants.set_defaults(func=cmd_variants)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
