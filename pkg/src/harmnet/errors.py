"""Exception types shared across the package."""

from __future__ import annotations


class HarmnetError(Exception):
    """Base class for all errors raised by harmnet."""


# --- graph construction and queries ---

class GraphError(HarmnetError):
    pass


class DuplicateNode(GraphError):
    pass


class UnknownEndpoint(GraphError):
    pass


class HarmOutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class UnknownNode(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


# --- path enumeration ---

class PathError(HarmnetError):
    pass


class InvalidMMax(PathError):
    pass


class GraphTooLarge(PathError):
    pass


class BudgetExceeded(PathError):
    pass


# --- metrics ---

class MetricError(HarmnetError):
    pass


class EmptyMultiset(MetricError):
    pass


class AlphaOutOfRange(MetricError):
    pass


class AlphaTooLarge(MetricError):
    pass


class NoConvergence(MetricError):
    pass


class DivergentConfig(MetricError):
    pass


# --- what-if analysis ---

class WhatIfError(HarmnetError):
    pass


class SelfQuery(WhatIfError):
    pass


class InvalidOverlay(WhatIfError):
    pass


# --- ingest ---

class IngestError(HarmnetError):
    pass


class ParseError(IngestError):
    """A malformed value in a tabular input file.

    line and column are 1-based; column counts fields, not characters.
    """

    def __init__(self, line: int, column: int, reason: str):
        super().__init__(f"line {line}, column {column}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


class ConstraintViolation(IngestError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class OutOfScale(IngestError):
    pass


class UnknownGrade(IngestError):
    pass


class DegenerateIndicator(IngestError):
    pass


class MissingIndicator(IngestError):
    pass


class UnmappedLabels(IngestError):
    """Country labels that could not be resolved to 3-letter codes, in bulk."""

    def __init__(self, labels: list[str]):
        super().__init__("unmapped country labels: " + ", ".join(sorted(set(labels))))
        self.labels = sorted(set(labels))


# --- fixtures / CLI ---

class UnknownFixture(HarmnetError):
    pass
