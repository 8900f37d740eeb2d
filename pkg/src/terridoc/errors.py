"""Shared exception types for input handling."""

from __future__ import annotations


class TerridocError(Exception):
    """Base class for all input-related failures."""


class FormatError(TerridocError):
    """Input could not be parsed at all (markup, CSV or JSON syntax)."""


class ValidationError(TerridocError):
    """Input parsed but violates a structural rule of its format."""
