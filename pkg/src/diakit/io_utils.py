"""File I/O helpers shared by the CLI subcommands.

All text is UTF-8.  Input readers validate encoding up front and
report the offending line number, so a bad byte fails the run before
any output is written.  Run manifests record what produced an output
directory; they deliberately omit the output location itself, so a
run is reproducible byte for byte regardless of where it is written.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from . import __version__
from .errors import DataError

MANIFEST_NAME = "manifest.json"


def read_lines(path: str | Path) -> list[str]:
    """Read UTF-8 lines, tolerating CRLF; encoding errors carry line numbers."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    pieces = raw.split(b"\n")
    if pieces and pieces[-1] == b"":
        pieces.pop()
    lines: list[str] = []
    for lineno, piece in enumerate(pieces, start=1):
        if piece.endswith(b"\r"):
            piece = piece[:-1]
        try:
            lines.append(piece.decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise DataError(f"{path}: line {lineno}: invalid UTF-8: {exc}") from exc
    return lines


def write_lines(path: str | Path, lines: Iterable[str]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        for line in lines:
            handle.write(line)
            handle.write("\n")


def dump_json(payload) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def write_json(path: str | Path, payload) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(payload), encoding="utf-8")


def read_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DataError(f"{path}: not valid UTF-8 JSON: {exc}") from exc


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as handle:
        for block in iter(lambda: handle.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


def read_labeled_values(path: str | Path) -> dict[str, float]:
    """Parse a two-column (label, value) TSV into a mapping."""
    values: dict[str, float] = {}
    for lineno, line in enumerate(read_lines(path), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) < 2:
            raise DataError(f"{path}: line {lineno}: expected 'label<TAB>value'")
        try:
            value = float(parts[1])
        except ValueError as exc:
            raise DataError(
                f"{path}: line {lineno}: not a number: {parts[1]!r}"
            ) from exc
        if parts[0] in values:
            raise DataError(f"{path}: line {lineno}: duplicate label {parts[0]!r}")
        values[parts[0]] = value
    return values


@dataclass(frozen=True)
class RunManifest:
    """Provenance record written alongside generated outputs."""

    command: str
    arguments: dict
    seed: int
    inputs: dict[str, str]
    tool_version: str = __version__
    extra: dict | None = None

    def as_dict(self) -> dict:
        payload = {
            "command": self.command,
            "arguments": self.arguments,
            "seed": self.seed,
            "inputs": self.inputs,
            "tool_version": self.tool_version,
        }
        if self.extra:
            payload.update(self.extra)
        return payload


def make_manifest(
    command: str,
    arguments: Mapping,
    seed: int,
    input_paths: Iterable[str | Path],
    extra: Mapping | None = None,
) -> RunManifest:
    """Build a manifest with content digests of every input file.

    Output locations must not appear in `arguments`, and inputs are
    recorded by file name rather than path; both rules keep identically
    seeded runs byte-identical wherever they land. Same-named inputs
    with distinct contents are numbered in digest order.
    """
    digested = sorted({(Path(p).name, sha256_file(p)) for p in map(str, input_paths)})
    inputs: dict[str, str] = {}
    for name, digest in digested:
        key, bump = name, 1
        while key in inputs:
            bump += 1
            key = f"{name}#{bump}"
        inputs[key] = digest
    return RunManifest(
        command=command,
        arguments=dict(sorted(arguments.items())),
        seed=seed,
        inputs=inputs,
        extra=dict(extra) if extra else None,
    )


def write_manifest(directory: str | Path, manifest: RunManifest) -> Path:
    """Write the directory's single manifest.json."""
    path = Path(directory) / MANIFEST_NAME
    write_json(path, manifest.as_dict())
    return path


def write_sidecar_manifest(output_file: str | Path, manifest: RunManifest) -> Path:
    """Manifest for a single-file output, named after the file."""
    path = Path(str(output_file) + ".manifest.json")
    write_json(path, manifest.as_dict())
    return path
