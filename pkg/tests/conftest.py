"""Shared pytest hooks: per-criterion summary for the acceptance suite."""
from __future__ import annotations

CRITERIA = [
    ("test_c01_reference_corpus_metrics", "reference corpus ratio/entropy values, under 1 s"),
    ("test_c02_entropy_natural_log_base", "variant entropy uses the natural log"),
    ("test_c03_pipeline_round_trip", "tokenize/postprocess round trip on 1000 fuzzed lines"),
    ("test_c04_error_rate_oracle_equivalence", "DER/WER match an independent trace on 500 pairs"),
    ("test_c05_perfect_restoration", "baseline restores unambiguous corpora perfectly"),
    ("test_c06_entropy_error_correlation", "restoration error rises with variant entropy, under 30 s"),
    ("test_c07_metric_stability", "metrics stable between 50% prefix and full corpus"),
    ("test_c08_stats_fixtures", "correlation/t-test/effect-size/percentage-change fixtures"),
    ("test_c09_bleu_fixtures", "BLEU identity/disjoint/clipped-precision fixtures"),
    ("test_c10_cli_determinism", "identically seeded CLI pipelines are byte-identical"),
]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes: dict[str, str] = {}
    for status, label in (
        ("passed", "PASS"),
        ("skipped", "SKIP"),
        ("failed", "FAIL"),
        ("error", "FAIL"),
    ):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            if outcomes.get(name) != "FAIL":
                outcomes[name] = label
    if not outcomes:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for index, (name, description) in enumerate(CRITERIA, start=1):
        verdict = outcomes.get(name, "NOT RUN")
        terminalreporter.write_line(f"criterion {index:2d}: {verdict:<8s}{description}")
