"""Glob matching for scan include/exclude rules.

Dialect: ``*`` and ``?`` match within one path segment, ``**`` crosses
segment boundaries (and may match zero segments), ``[...]`` is a character
class.  Patterns without a ``/`` match against the file name; patterns
containing a ``/`` match against the dataset-relative path (always with
``/`` separators).
"""

from __future__ import annotations

import re
from functools import lru_cache

from .errors import InvalidGlob

_SPECIALS = ".^$+{}()|\\"


def _translate_segment(segment: str, pattern: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(segment):
        ch = segment[i]
        if ch == "*":
            out.append("[^/]*")
        elif ch == "?":
            out.append("[^/]")
        elif ch == "[":
            j = i + 1
            if j < len(segment) and segment[j] in "!^":
                j += 1
            if j < len(segment) and segment[j] == "]":
                j += 1
            while j < len(segment) and segment[j] != "]":
                j += 1
            if j >= len(segment):
                raise InvalidGlob(f"unterminated character class in pattern {pattern!r}")
            inner = segment[i + 1 : j]
            if inner.startswith("!"):
                inner = "^" + inner[1:]
            out.append("[" + inner.replace("\\", "\\\\") + "]")
            i = j
        elif ch in _SPECIALS:
            out.append("\\" + ch)
        else:
            out.append(ch)
        i += 1
    return "".join(out)


@lru_cache(maxsize=1024)
def compile_pattern(pattern: str) -> re.Pattern:
    """Compile a glob pattern to a regex. Raises InvalidGlob on malformed input."""
    if not pattern:
        raise InvalidGlob("empty glob pattern")
    segments = pattern.split("/")
    parts: list[str] = []
    for idx, segment in enumerate(segments):
        if segment == "":
            raise InvalidGlob(f"empty segment in glob pattern {pattern!r}")
        first = idx == 0
        last = idx == len(segments) - 1
        after_doublestar = idx > 0 and segments[idx - 1] == "**"
        if segment == "**":
            if first and last:
                parts.append(".*")
            elif first:
                parts.append("(?:[^/]+/)*")  # consumes the following separator
            elif last:
                parts.append(".*" if after_doublestar else "/.*")
            else:
                # consumes separators on both sides
                parts.append("(?:[^/]+/)*" if after_doublestar else "/(?:[^/]+/)*")
        else:
            prefix = "" if first or after_doublestar else "/"
            parts.append(prefix + _translate_segment(segment, pattern))
    try:
        return re.compile("^" + "".join(parts) + "$")
    except re.error as exc:
        raise InvalidGlob(f"invalid glob pattern {pattern!r}: {exc}") from exc


def matches(pattern: str, relative_path: str) -> bool:
    """Match a pattern against a dataset-relative path (or its file name)."""
    target = relative_path if "/" in pattern else relative_path.rsplit("/", 1)[-1]
    return compile_pattern(pattern).match(target) is not None


def matches_any(patterns: tuple[str, ...] | list[str], relative_path: str) -> bool:
    return any(matches(p, relative_path) for p in patterns)
