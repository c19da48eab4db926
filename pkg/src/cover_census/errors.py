"""Exceptions shared across the package."""

from __future__ import annotations


class ConsistencyError(RuntimeError):
    """An exact internal cross-check failed.

    Raised when two independent computations of the same quantity disagree,
    or when a value that must be an integer comes out fractional.  This
    always indicates a bug, never bad user input.
    """
