"""Whitespace tokenizer with terminal punctuation split off.

Tokens carry their code-point offsets in the parent string, so the original
text can always be rebuilt from tokens plus the (whitespace-only) gaps
between them.
"""

from __future__ import annotations

from dataclasses import dataclass

_SPLIT_PUNCT = frozenset(".,!?…;:")


@dataclass(frozen=True, slots=True)
class TokenSpan:
    text: str
    start: int
    end: int


def tokenize(text: str, lang: str | None = None) -> list[TokenSpan]:
    """Split on whitespace; trailing punctuation becomes its own token."""
    tokens: list[TokenSpan] = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        start = i
        while i < n and not text[i].isspace():
            i += 1
        end = i
        core_end = end
        while core_end > start and text[core_end - 1] in _SPLIT_PUNCT:
            core_end -= 1
        if core_end > start:
            tokens.append(TokenSpan(text=text[start:core_end], start=start, end=core_end))
        for k in range(core_end, end):
            tokens.append(TokenSpan(text=text[k], start=k, end=k + 1))
    return tokens
