"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: usage problems exit 1 (argparse
handles those) and data problems exit 2.
"""
from __future__ import annotations


class DataError(Exception):
    """Malformed, inconsistent, or degenerate input data."""
