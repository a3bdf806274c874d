"""Shared parser contract: every parser maps raw bytes to an IR graph plus diagnostics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..ir import Diagnostic, IRGraph


class ParseFailure(Exception):
    """No IR could be constructed from the input."""


@dataclass(frozen=True)
class ParseProduct:
    graph: IRGraph
    diagnostics: tuple[Diagnostic, ...]

    @property
    def n_loaded(self) -> int:
        return len(self.graph.nodes) + len(self.graph.edges)

    @property
    def n_skipped(self) -> int:
        return sum(1 for d in self.diagnostics if d.led_to_skip)


# parse(content, source_path, normalize_types=...) -> ParseProduct
ParserFn = Callable[..., ParseProduct]


@dataclass(frozen=True)
class ParserDescriptor:
    key: str
    language: str
    accepted_extensions: tuple[str, ...]
    parse: ParserFn

    def to_json_dict(self) -> dict:
        return {
            "key": self.key,
            "language": self.language,
            "accepted_extensions": list(self.accepted_extensions),
        }


def local_name(tag: str) -> str:
    """Strip an ElementTree namespace qualifier from a tag name."""
    return tag.rsplit("}", 1)[-1]


def strip_prefix(value: str) -> str:
    """Strip an XML prefix such as ``archimate:`` or ``ecore:`` from a type name."""
    return value.rsplit(":", 1)[-1]
