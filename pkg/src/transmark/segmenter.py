"""Rule-based sentence segmentation over rich text.

A sentence boundary is placed after a terminator (``.``, ``!``, ``?``, ``…``)
followed by whitespace, unless one of the suppression rules applies:

* the whitespace-delimited token ending at the terminator (terminator
  included) is in the language's abbreviation list, compared case-folded;
* the terminator sits inside a digit group (digit immediately before it and
  a digit as the next non-space character);
* an annotation span crosses the would-be boundary — a span is never split
  across two sentences.

Ranges cover all non-whitespace text; whitespace between sentences belongs
to no range.  Abbreviation lists ship as data files (one entry per line,
``#`` comments) for en, es, ca and pt; other languages fall back to an empty
list.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .docmodel import RichText

_TERMINATORS = frozenset(".!?…")


@dataclass(frozen=True, slots=True)
class SentenceRange:
    start: int
    end: int


@dataclass(frozen=True, slots=True)
class Correspondence:
    """Positional sentence pairing between a source and its translation."""

    pairs: tuple[tuple[int, int], ...]
    unpaired_source: tuple[int, ...]
    unpaired_target: tuple[int, ...]


def parse_abbreviation_lines(lines: list[str]) -> frozenset[str]:
    entries = set()
    for line in lines:
        entry = line.strip()
        if not entry or entry.startswith("#"):
            continue
        entries.add(entry.casefold())
    return frozenset(entries)


def load_abbreviation_file(path: str | Path) -> frozenset[str]:
    """Load an abbreviation list: one entry per line, ``#`` comments, UTF-8."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_abbreviation_lines(text.splitlines())


@lru_cache(maxsize=None)
def default_abbreviations(lang: str) -> frozenset[str]:
    """Packaged abbreviation list for ``lang`` (empty if none shipped)."""
    ref = resources.files("transmark").joinpath(f"data/abbrev/{lang}.txt")
    if not ref.is_file():
        return frozenset()
    return parse_abbreviation_lines(ref.read_text(encoding="utf-8").splitlines())


def _preceding_token(text: str, term_index: int) -> str:
    start = term_index
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start:term_index + 1]


def segment_sentences(rt: RichText, lang: str,
                      abbreviations: frozenset[str] | None = None) -> list[SentenceRange]:
    """Split ``rt`` into ordered sentence ranges covering all non-whitespace."""
    text = rt.text
    if abbreviations is None:
        abbreviations = default_abbreviations(lang)

    cuts: list[int] = []
    for i, ch in enumerate(text):
        if ch not in _TERMINATORS:
            continue
        if i + 1 >= len(text) or not text[i + 1].isspace():
            continue
        j = i + 1
        while j < len(text) and text[j].isspace():
            j += 1
        if j == len(text):
            continue  # only trailing whitespace follows; no sentence to start
        if _preceding_token(text, i).casefold() in abbreviations:
            continue
        if i > 0 and text[i - 1].isdigit() and text[j].isdigit():
            continue  # terminator inside a digit group
        cut, nxt = i + 1, j
        if any(sp.start < cut < sp.end or sp.start < nxt < sp.end for sp in rt.spans):
            continue  # a span may never be split in two
        cuts.append(cut)

    ranges: list[SentenceRange] = []
    pos = 0
    for cut in cuts + [len(text)]:
        while pos < cut and text[pos].isspace():
            pos += 1
        end = cut
        while end > pos and text[end - 1].isspace():
            end -= 1
        if end > pos:
            ranges.append(SentenceRange(start=pos, end=end))
        pos = cut
    return ranges


def sentence_correspondence(source_ranges: list[SentenceRange],
                            target_ranges: list[SentenceRange]) -> Correspondence:
    """Positional pairing (i ↔ i) up to the shorter list; the rest unpaired."""
    n = min(len(source_ranges), len(target_ranges))
    return Correspondence(
        pairs=tuple((i, i) for i in range(n)),
        unpaired_source=tuple(range(n, len(source_ranges))),
        unpaired_target=tuple(range(n, len(target_ranges))),
    )
