"""End-to-end tests for the command line interface."""
from __future__ import annotations

import json
from importlib import resources

import pytest

from diakit.cli import main
from diakit.stats import pearson

REFERENCE_CORPUS = str(resources.files("diakit") / "data" / "mock_corpus.txt")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_corpus(path, n_lines: int = 20):
    """A small unambiguous parallel corpus that passes the length filter."""
    src = [f"hälsa önskan nummer{i:02d}" for i in range(n_lines)]
    tgt = [f"greeting wish number{i:02d}" for i in range(n_lines)]
    src_path = path / "corpus.sv"
    tgt_path = path / "corpus.en"
    src_path.write_text("\n".join(src) + "\n", encoding="utf-8")
    tgt_path.write_text("\n".join(tgt) + "\n", encoding="utf-8")
    return src_path, tgt_path


# -- dispatch ---------------------------------------------------------------


def test_no_arguments_is_usage_error(capsys):
    code, _, err = run(capsys)
    assert code == 1
    assert "usage" in err.lower()


def test_unknown_subcommand_is_usage_error(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 1


def test_version_flag(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0


def test_missing_input_file_is_data_error(capsys, tmp_path):
    code, _, err = run(capsys, "metrics", "--corpus", str(tmp_path / "absent.txt"))
    assert code == 2
    assert err.startswith("error:")


def test_invalid_utf8_is_data_error_with_line_number(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_bytes(b"fine line\n\xff broken\n")
    code, _, err = run(capsys, "metrics", "--corpus", str(path))
    assert code == 2
    assert "line 2" in err and "invalid UTF-8" in err


# -- metrics ----------------------------------------------------------------


def test_metrics_json_on_reference_corpus(capsys):
    code, out, _ = run(capsys, "metrics", "--corpus", REFERENCE_CORPUS, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dcr"] == pytest.approx(5 / 39)
    assert payload["dwr"] == pytest.approx(0.4)
    assert payload["waed"] == pytest.approx(0.8669179411777300)
    assert payload["counts"]["chars"] == 39
    assert payload["counts"]["sentences"] == 2
    assert payload["zero_denominators"] == []
    # a occurs in wants/ân/âpple/wätër
    assert payload["profiles"]["a"]["occurrences"] == 4


def test_metrics_tsv_lists_metric_and_count_rows(capsys):
    code, out, _ = run(capsys, "metrics", "--corpus", REFERENCE_CORPUS, "--tsv")
    assert code == 0
    rows = dict(line.split("\t") for line in out.splitlines())
    assert float(rows["dcr"]) == pytest.approx(5 / 39)
    assert rows["words"] == "10"


def test_metrics_format_flags_conflict(capsys):
    code, _, _ = run(capsys, "metrics", "--corpus", REFERENCE_CORPUS, "--json", "--tsv")
    assert code == 1


# -- eval -------------------------------------------------------------------


def test_eval_identity_scores_zero(capsys, tmp_path):
    gold = tmp_path / "gold.txt"
    gold.write_text("tack så mycket\nhej då\n", encoding="utf-8")
    code, out, _ = run(
        capsys, "eval", "--task", "dia", "--gold", str(gold), "--pred", str(gold)
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["der"] == 0.0
    assert payload["wer"] == 0.0
    assert payload["n_sequences"] == 2


def test_eval_mt_perfect_bleu(capsys, tmp_path):
    gold = tmp_path / "gold.txt"
    gold.write_text("the cat sat on the mat today\n", encoding="utf-8")
    code, out, _ = run(
        capsys, "eval", "--task", "mt", "--gold", str(gold), "--pred", str(gold)
    )
    assert code == 0
    assert json.loads(out)["bleu"] == pytest.approx(100.0)


def test_eval_postprocess_consolidates_predictions(capsys, tmp_path):
    gold = tmp_path / "gold.txt"
    pred = tmp_path / "pred.txt"
    gold.write_text("tack så\n", encoding="utf-8")
    pred.write_text("t a c k | s å\n", encoding="utf-8")
    code, out, _ = run(
        capsys,
        "eval",
        "--task",
        "dia",
        "--gold",
        str(gold),
        "--pred",
        str(pred),
        "--postprocess",
    )
    assert code == 0
    assert json.loads(out)["der"] == 0.0


def test_eval_misaligned_files_is_data_error(capsys, tmp_path):
    gold = tmp_path / "gold.txt"
    pred = tmp_path / "pred.txt"
    gold.write_text("a b c\nd e f\n", encoding="utf-8")
    pred.write_text("a b c\n", encoding="utf-8")
    code, _, err = run(
        capsys, "eval", "--task", "dia", "--gold", str(gold), "--pred", str(pred)
    )
    assert code == 2
    assert "error:" in err


# -- prep -------------------------------------------------------------------

PREP_FILES = (
    "train.src",
    "train.tgt",
    "dev.src",
    "dev.tgt",
    "test.src",
    "test.tgt",
    "vocab.src.txt",
    "vocab.tgt.txt",
    "manifest.json",
)


def test_prep_writes_expected_tree(capsys, tmp_path):
    src, tgt = write_corpus(tmp_path)
    out = tmp_path / "prepped"
    code, _, _ = run(
        capsys,
        "prep",
        "--src",
        str(src),
        "--tgt",
        str(tgt),
        "--model",
        "onlydia",
        "--out",
        str(out),
    )
    assert code == 0
    assert sorted(p.name for p in out.iterdir()) == sorted(PREP_FILES)
    train_lines = (out / "train.src").read_text(encoding="utf-8").splitlines()
    assert len(train_lines) == 16  # 0.8 of 20
    # onlydia sources: undiacritized character tokens, task prefixes are
    # only for the joint model
    assert all(line.startswith("h a l s a |") for line in train_lines)
    manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["seed"] == 42
    assert manifest["counts"]["split_pairs"] == {"train": 16, "dev": 2, "test": 2}
    assert manifest["counts"]["kept_pairs"] == 20
    assert sorted(manifest["inputs"]) == ["corpus.en", "corpus.sv"]
    assert all(len(digest) == 64 for digest in manifest["inputs"].values())


def test_prep_diamt_doubles_lines_and_prefixes_tasks(capsys, tmp_path):
    src, tgt = write_corpus(tmp_path)
    out = tmp_path / "prepped"
    code, _, _ = run(
        capsys,
        "prep",
        "--src",
        str(src),
        "--tgt",
        str(tgt),
        "--model",
        "diamt",
        "--out",
        str(out),
    )
    assert code == 0
    train_lines = (out / "train.src").read_text(encoding="utf-8").splitlines()
    assert len(train_lines) == 32
    prefixes = {line.split(" ", 1)[0] for line in train_lines}
    assert prefixes == {"ε", "τ"}


def test_prep_runs_are_deterministic_and_relocatable(capsys, tmp_path):
    src, tgt = write_corpus(tmp_path)
    outputs = []
    for name in ("first", "second"):
        out = tmp_path / name
        code, _, _ = run(
            capsys,
            "prep",
            "--src",
            str(src),
            "--tgt",
            str(tgt),
            "--model",
            "diamt",
            "--seed",
            "7",
            "--out",
            str(out),
        )
        assert code == 0
        outputs.append({f: (out / f).read_bytes() for f in PREP_FILES})
    assert outputs[0] == outputs[1]


def test_prep_train_size_subsets_train_only(capsys, tmp_path):
    src, tgt = write_corpus(tmp_path)
    out = tmp_path / "prepped"
    code, _, _ = run(
        capsys,
        "prep",
        "--src",
        str(src),
        "--tgt",
        str(tgt),
        "--model",
        "onlydia",
        "--train-size",
        "5",
        "--out",
        str(out),
    )
    assert code == 0
    assert len((out / "train.src").read_bytes().splitlines()) == 5
    assert len((out / "test.src").read_bytes().splitlines()) == 2


def test_prep_fixed_split_too_large_is_data_error(capsys, tmp_path):
    src, tgt = write_corpus(tmp_path)
    code, _, err = run(
        capsys,
        "prep",
        "--src",
        str(src),
        "--tgt",
        str(tgt),
        "--model",
        "onlydia",
        "--split-mode",
        "fixed",
        "--dev-size",
        "15",
        "--test-size",
        "15",
        "--out",
        str(tmp_path / "prepped"),
    )
    assert code == 2
    assert "error:" in err


def test_prep_seed_from_environment(capsys, tmp_path, monkeypatch):
    src, tgt = write_corpus(tmp_path)
    monkeypatch.setenv("DIAKIT_SEED", "99")
    out = tmp_path / "prepped"
    code, _, _ = run(
        capsys,
        "prep",
        "--src",
        str(src),
        "--tgt",
        str(tgt),
        "--model",
        "onlydia",
        "--out",
        str(out),
    )
    assert code == 0
    manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["seed"] == 99


def test_prep_explicit_seed_beats_environment(capsys, tmp_path, monkeypatch):
    src, tgt = write_corpus(tmp_path)
    monkeypatch.setenv("DIAKIT_SEED", "99")
    out = tmp_path / "prepped"
    code, _, _ = run(
        capsys,
        "prep",
        "--src",
        str(src),
        "--tgt",
        str(tgt),
        "--model",
        "onlydia",
        "--seed",
        "3",
        "--out",
        str(out),
    )
    assert code == 0
    manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["seed"] == 3


# -- baseline ---------------------------------------------------------------


def test_baseline_cli_round_trip(capsys, tmp_path):
    corpus = tmp_path / "train.txt"
    corpus.write_text("hälsa önskan\nhälsa vän\n", encoding="utf-8")
    table = tmp_path / "table.json"
    code, _, _ = run(
        capsys, "baseline", "train", "--corpus", str(corpus), "--out", str(table)
    )
    assert code == 0
    assert table.exists()
    assert (tmp_path / "table.json.manifest.json").exists()

    stripped = tmp_path / "stripped.txt"
    stripped.write_text("halsa onskan\nhalsa van\n", encoding="utf-8")
    restored = tmp_path / "restored.txt"
    code, _, _ = run(
        capsys,
        "baseline",
        "restore",
        "--table",
        str(table),
        "--in",
        str(stripped),
        "--out",
        str(restored),
    )
    assert code == 0
    assert restored.read_text(encoding="utf-8") == "hälsa önskan\nhälsa vän\n"


# -- correlate / ttest / pc -------------------------------------------------


def write_tsv(path, pairs):
    path.write_text(
        "".join(f"{label}\t{value}\n" for label, value in pairs), encoding="utf-8"
    )
    return path


def test_correlate_all_methods(capsys, tmp_path):
    x = write_tsv(tmp_path / "x.tsv", [("sv", 1.0), ("yo", 2.0), ("vi", 4.0), ("ro", 3.0)])
    y = write_tsv(tmp_path / "y.tsv", [("sv", 2.0), ("yo", 3.0), ("vi", 9.0), ("ro", 5.0)])
    code, out, _ = run(
        capsys, "correlate", "--x", str(x), "--y", str(y), "--method", "all"
    )
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"n", "labels", "pearson", "spearman", "kendall"}
    assert payload["n"] == 4
    expected = pearson((1.0, 2.0, 4.0, 3.0), (2.0, 3.0, 9.0, 5.0))
    assert payload["pearson"]["statistic"] == pytest.approx(expected.statistic)
    assert payload["spearman"]["statistic"] == pytest.approx(1.0)


def test_correlate_aligns_rows_by_label(capsys, tmp_path):
    x = write_tsv(tmp_path / "x.tsv", [("a", 1.0), ("b", 2.0), ("c", 3.0)])
    y = write_tsv(tmp_path / "y.tsv", [("c", 30.0), ("a", 10.0), ("b", 20.0)])
    code, out, _ = run(
        capsys, "correlate", "--x", str(x), "--y", str(y), "--method", "pearson"
    )
    assert code == 0
    assert json.loads(out)["pearson"]["statistic"] == pytest.approx(1.0)


def test_correlate_label_mismatch_is_data_error(capsys, tmp_path):
    x = write_tsv(tmp_path / "x.tsv", [("a", 1.0), ("b", 2.0), ("c", 3.0)])
    y = write_tsv(tmp_path / "y.tsv", [("a", 1.0), ("b", 2.0), ("d", 3.0)])
    code, _, err = run(capsys, "correlate", "--x", str(x), "--y", str(y))
    assert code == 2
    assert "error:" in err


def test_ttest_json_payload(capsys, tmp_path):
    a = write_tsv(tmp_path / "a.tsv", [("sv", 2.0), ("yo", 4.0), ("vi", 5.0)])
    b = write_tsv(tmp_path / "b.tsv", [("sv", 1.0), ("yo", 2.0), ("vi", 4.0)])
    code, out, _ = run(capsys, "ttest", "--a", str(a), "--b", str(b))
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 3
    assert payload["t"] == pytest.approx(4.0)
    assert payload["flag"] is None
    assert payload["cohens_d"] == pytest.approx(4.0 / 3.0 ** 0.5)


def test_ttest_constant_differences_reported_not_crashed(capsys, tmp_path):
    a = write_tsv(tmp_path / "a.tsv", [("sv", 2.0), ("yo", 3.0), ("vi", 4.0)])
    b = write_tsv(tmp_path / "b.tsv", [("sv", 1.5), ("yo", 2.5), ("vi", 3.5)])
    code, out, _ = run(capsys, "ttest", "--a", str(a), "--b", str(b))
    assert code == 0
    payload = json.loads(out)
    assert payload["t"] is None
    assert payload["p"] == 0.0
    assert payload["flag"] == "constant_nonzero_differences"
    assert payload["cohens_d"] is None
    assert "cohens_d_error" in payload


def test_pc_matches_fixture(capsys):
    code, out, _ = run(capsys, "pc", "--m1", "2.306", "--m2", "1.055")
    assert code == 0
    assert json.loads(out)["pc"] == pytest.approx(0.5424978317432785)


def test_pc_zero_reference_is_data_error(capsys):
    code, _, err = run(capsys, "pc", "--m1", "0", "--m2", "1")
    assert code == 2
    assert "error:" in err


# -- report -----------------------------------------------------------------


def test_report_cli_writes_tables_and_manifest(capsys, tmp_path):
    results = tmp_path / "results"
    results.mkdir()
    for lang, value in (("aa", 2.0), ("bb", 4.0)):
        (results / f"{lang}.diamt.1000.json").write_text(
            json.dumps({"task": "mt", "bleu": value}), encoding="utf-8"
        )
        (results / f"{lang}.onlymt-undia.1000.json").write_text(
            json.dumps({"task": "mt", "bleu": value / 2}), encoding="utf-8"
        )
    out = tmp_path / "tables"
    code, _, _ = run(capsys, "report", "--results", str(results), "--out", str(out))
    assert code == 0
    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    assert report["languages"] == ["aa", "bb"]
    assert len(report["comparisons"]) == 1
    assert (out / "averages.tsv").exists()
    assert (out / "comparisons.tsv").exists()
    manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["result_files"] == 4


def test_report_cli_empty_directory(capsys, tmp_path):
    results = tmp_path / "results"
    results.mkdir()
    out = tmp_path / "tables"
    code, _, _ = run(capsys, "report", "--results", str(results), "--out", str(out))
    assert code == 0
    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    assert report["omissions"] == ["no result files found"]
    assert report["averages"] == []


# -- variants ---------------------------------------------------------------


def test_variants_inventory_of_reference_corpus(capsys):
    code, out, _ = run(capsys, "variants", "--corpus", REFERENCE_CORPUS, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["a"] == ["a", "â", "ä"]
    assert payload["e"] == ["e", "ë"]
    assert payload["s"] == ["s"]
