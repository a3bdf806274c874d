"""Configurable label tokenizer for the lexical dimension.

Splits on whitespace always (tokens never contain whitespace), on any
non-alphanumeric character when ``split_punctuation`` is set, and on
camel-case boundaries when ``split_camel_case`` is set.  Camel boundaries
are lower→Upper transitions, acronym ends (HTTPServer → HTTP | Server),
and letter↔digit transitions in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..profile import TokenizerConfig


@dataclass(frozen=True)
class TokenList:
    label: str
    tokens: tuple[str, ...]


def _split_camel(fragment: str) -> list[str]:
    if len(fragment) < 2:
        return [fragment]
    parts: list[str] = []
    start = 0
    for i in range(1, len(fragment)):
        prev, cur = fragment[i - 1], fragment[i]
        boundary = False
        if prev.islower() and cur.isupper():
            boundary = True
        elif prev.isupper() and cur.isupper() and i + 1 < len(fragment) and fragment[i + 1].islower():
            boundary = True
        elif prev.isalpha() and cur.isdigit():
            boundary = True
        elif prev.isdigit() and cur.isalpha():
            boundary = True
        if boundary:
            parts.append(fragment[start:i])
            start = i
    parts.append(fragment[start:])
    return parts


def tokenize(label: str, cfg: TokenizerConfig | None = None) -> TokenList:
    cfg = cfg or TokenizerConfig()
    text = label.strip() if cfg.trim_whitespace else label

    if cfg.split_punctuation:
        fragments: list[str] = []
        current: list[str] = []
        for ch in text:
            if ch.isalnum():
                current.append(ch)
            else:
                if current:
                    fragments.append("".join(current))
                    current = []
        if current:
            fragments.append("".join(current))
    else:
        fragments = text.split()

    tokens: list[str] = []
    for fragment in fragments:
        parts = _split_camel(fragment) if cfg.split_camel_case else [fragment]
        for part in parts:
            if not part:
                continue
            if not cfg.keep_numbers and part.isdigit():
                continue
            tokens.append(part.lower() if cfg.lowercase else part)

    return TokenList(label=label, tokens=tuple(tokens))
