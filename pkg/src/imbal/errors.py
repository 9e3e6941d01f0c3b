"""Shared exception types."""

from __future__ import annotations

__all__ = [
    "ImbalError",
    "InvalidDatasetError",
    "InvalidArgumentError",
]


class ImbalError(Exception):
    """Base class for all package-specific errors."""


class InvalidDatasetError(ImbalError):
    """A dataset violates a structural invariant (labels, shapes, finiteness)."""


class InvalidArgumentError(ImbalError):
    """An operation was called with arguments outside its documented domain."""
