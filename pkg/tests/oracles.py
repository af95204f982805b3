"""Independent reference implementations for the test suite.

Everything here is written for obviousness, not speed: recursion with
memoisation, full-matrix dynamic programming, explicit candidate lists.
The production code must agree with these on every input the tests draw.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from html import unescape


def char_distance_ref(a: str, b: str) -> int:
    """Character Levenshtein via the full DP matrix."""
    m, n = len(a), len(b)
    d = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        d[i][0] = i
    for j in range(n + 1):
        d[0][j] = j
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            same = a[i - 1] == b[j - 1]
            d[i][j] = min(d[i - 1][j] + 1,
                          d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (0 if same else 1))
    return d[m][n]


def substitution_cost_ref(a: str, b: str) -> Fraction:
    fa, fb = a.casefold(), b.casefold()
    longest = max(len(fa), len(fb))
    if longest == 0:
        return Fraction(0)
    return Fraction(char_distance_ref(fa, fb), longest)


def weighted_distance_ref(xs: tuple[str, ...], ys: tuple[str, ...]) -> Fraction:
    """Weighted token Levenshtein by memoised recursion."""

    @lru_cache(maxsize=None)
    def rec(i: int, j: int) -> Fraction:
        if i == 0:
            return Fraction(j)
        if j == 0:
            return Fraction(i)
        return min(rec(i - 1, j) + 1,
                   rec(i, j - 1) + 1,
                   rec(i - 1, j - 1) + substitution_cost_ref(xs[i - 1], ys[j - 1]))

    result = rec(len(xs), len(ys))
    rec.cache_clear()
    return result


def best_window_ref(haystack: list[str], needle: list[str],
                    threshold: float, slack: int = 2):
    """Enumerate every admissible window; return (start, end, cost) or None.

    Ties resolved by sorting candidates on (cost, start, length), which is
    the documented order: cheapest, then leftmost, then shortest.
    """
    assert needle, "oracle requires a non-empty needle"
    n = len(needle)
    candidates = []
    for start in range(len(haystack)):
        for length in range(max(1, n - slack), n + slack + 1):
            end = start + length
            if end > len(haystack):
                continue
            dist = weighted_distance_ref(tuple(haystack[start:end]), tuple(needle))
            cost = dist / max(length, n)
            candidates.append((cost, start, length))
    if not candidates:
        return None
    cost, start, length = sorted(candidates)[0]
    if cost > Fraction(threshold):
        return None
    return start, start + length, cost


def naive_token_distance(a: list[str], b: list[str]) -> int:
    """Unit-cost Levenshtein by plain exponential recursion (tiny inputs only)."""
    if not a:
        return len(b)
    if not b:
        return len(a)
    if a[0] == b[0]:
        skip = naive_token_distance(a[1:], b[1:])
    else:
        skip = 1 + naive_token_distance(a[1:], b[1:])
    return min(1 + naive_token_distance(a[1:], b),
               1 + naive_token_distance(a, b[1:]),
               skip)


_TAG = re.compile(r"<[^>]*>")


def strip_tags_ref(markup: str) -> str:
    """Crude tag stripper: the plain-text projection of one block's markup."""
    return unescape(_TAG.sub("", markup))
