"""Approximate location of a translated subsegment inside a translated sentence.

Plain-text MT engines return no alignment, so annotation placement is
recovered by translating each annotated fragment separately and searching
for it in the full translation.  The search considers every contiguous token
window whose length is within ±2 of the needle and picks the window with the
lowest normalized edit distance.

Distance between token sequences is a weighted Levenshtein: insertions and
deletions cost 1, substituting token ``a`` for ``b`` costs their character
Levenshtein distance divided by ``max(len(a), len(b))`` (tokens compared
case-folded).  The window cost is the sequence distance divided by
``max(window length, needle length)``, so costs live in [0, 1].  Costs are
computed as exact fractions to keep tie-breaking (leftmost start, then
shortest window) deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .tokenizer import TokenSpan

WINDOW_SLACK = 2
DEFAULT_THRESHOLD = 0.34


@dataclass(frozen=True, slots=True)
class MatchResult:
    start: int  # token index in the haystack, inclusive
    end: int    # token index in the haystack, exclusive
    cost: float

    @property
    def range(self) -> tuple[int, int]:
        return (self.start, self.end)


def char_distance(a: str, b: str) -> int:
    """Plain character-level Levenshtein distance."""
    if a == b:
        return 0
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        row = [i]
        for j, cb in enumerate(b, 1):
            sub = prev[j - 1] + (0 if ca == cb else 1)
            row.append(min(row[-1] + 1, prev[j] + 1, sub))
        prev = row
    return prev[-1]


def token_substitution_cost(a: str, b: str) -> Fraction:
    """Character-normalized substitution cost between two tokens, in [0, 1]."""
    a = a.casefold()
    b = b.casefold()
    longest = max(len(a), len(b))
    if longest == 0:
        return Fraction(0)
    return Fraction(char_distance(a, b), longest)


def sequence_distance(a: list[str], b: list[str]) -> Fraction:
    """Weighted token-level Levenshtein (ins/del 1, sub char-normalized)."""
    prev = [Fraction(j) for j in range(len(b) + 1)]
    for i, ta in enumerate(a, 1):
        row = [Fraction(i)]
        for j, tb in enumerate(b, 1):
            sub = prev[j - 1] + token_substitution_cost(ta, tb)
            row.append(min(row[-1] + 1, prev[j] + 1, sub))
        prev = row
    return prev[-1]


def window_cost(window: list[str], needle: list[str]) -> Fraction:
    return sequence_distance(window, needle) / max(len(window), len(needle))


def locate_subsegment(haystack: list[TokenSpan], needle: list[TokenSpan],
                      threshold: float = DEFAULT_THRESHOLD) -> MatchResult | None:
    """Best window of ``haystack`` matching ``needle``, or None above threshold.

    Windows of length ``max(1, len(needle) - 2)`` .. ``len(needle) + 2`` are
    scored; ties go to the leftmost start, then the shortest window.
    Raises ``ValueError`` on an empty needle.
    """
    if not needle:
        raise ValueError("empty needle")
    if not 0 <= threshold <= 1:
        raise ValueError(f"threshold {threshold!r} outside [0, 1]")
    hay = [t.text for t in haystack]
    ndl = [t.text for t in needle]
    lo = max(1, len(ndl) - WINDOW_SLACK)
    hi = len(ndl) + WINDOW_SLACK

    best: tuple[Fraction, int, int] | None = None  # (cost, start, length)
    for start in range(len(hay)):
        for length in range(lo, hi + 1):
            if start + length > len(hay):
                break
            cost = window_cost(hay[start:start + length], ndl)
            key = (cost, start, length)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    cost, start, length = best
    if cost > Fraction(threshold):
        return None
    return MatchResult(start=start, end=start + length, cost=float(cost))
