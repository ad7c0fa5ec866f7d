# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""Errors raised by the nonrep package."""


class NonrepError(Exception):
    """Base class for custom errors raised by this package."""


class WordError(NonrepError):
    """Raised when a word or alphabet violates its invariants."""


class GraphError(NonrepError):
    """Raised when a graph cannot be built or a vertex is unknown."""


class ColoringError(NonrepError):
    """Raised when a construction is invalid for the requested region."""


class VerifierError(NonrepError):
    """Raised when a verification cannot be run on the given input."""


class DataValidationError(NonrepError):
    """Raised when an input file fails to parse or validate."""


class TracingError(NonrepError):
    """Raised when the tracing exporter cannot be configured."""
