"""Exception types raised across the pipeline."""

from __future__ import annotations


class BenchmarkError(Exception):
    """Base class for all pipeline errors."""


class SchemaViolation(BenchmarkError):
    """A configuration document does not match its strict schema.

    ``path`` names the offending key in dotted form (e.g.
    ``parse.parser_language``).
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class InvalidGlob(BenchmarkError):
    """A glob pattern could not be compiled."""


class DecodeError(BenchmarkError):
    """A persisted artifact could not be decoded.

    Carries the file path and, when known, the line/column of the defect.
    """

    def __init__(self, path: str, message: str, line: int | None = None, column: int | None = None):
        location = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{path}: {message}{location}")
        self.path = path
        self.line = line
        self.column = column


class DatasetPathMissing(BenchmarkError):
    """The configured dataset path does not exist or is not a directory."""


class UnknownParser(BenchmarkError):
    """The requested parser key is not registered."""


class MissingArtifact(BenchmarkError):
    """A stage requires an artifact that an earlier stage has not produced."""

    def __init__(self, artifact: str, hint: str = ""):
        suffix = f" ({hint})" if hint else ""
        super().__init__(f"missing artifact: {artifact}{suffix}")
        self.artifact = artifact


class MissingCatalog(BenchmarkError):
    """Construct measures are enabled but no construct catalog resolves."""
