"""Markup transfer: re-establish annotations on plain-text MT output.

MT providers accept plain text only, so formatting is recovered with extra
MT work: each sentence is translated whole, then every annotated fragment is
translated separately and located inside the full translation by approximate
token matching (:func:`transmark.matcher.locate_subsegment`).  A located
fragment gets its annotation re-created over the matched character range;
fragments that cannot be located are reported as dropped rather than placed
by guesswork — a misplaced link is worse than a missing one.

Opaque annotations are matched by their covered text, but their payload is
copied verbatim, never translated.
"""

from __future__ import annotations

from dataclasses import dataclass

from .docmodel import Opaque, RichText, Span
from .matcher import DEFAULT_THRESHOLD, locate_subsegment
from .providers import MtProvider
from .segmenter import SentenceRange, segment_sentences
from .tokenizer import tokenize


@dataclass(frozen=True, slots=True)
class AdaptResult:
    rich: RichText
    correspondence: tuple[tuple[int, int], ...]  # (source sentence, target sentence)
    dropped: tuple[Span, ...]                    # original spans, source offsets
    target_sentences: tuple[SentenceRange, ...]  # ranges in ``rich.text``


@dataclass(frozen=True, slots=True)
class _Candidate:
    span: Span   # placed span, target offsets
    cost: float
    seq: int     # position in the input span list


def _conflicts(a: _Candidate, b: _Candidate) -> bool:
    x, y = a.span, b.span
    if x.start > y.start or (x.start == y.start and x.end < y.end):
        x, y = y, x  # x is now the (weakly) containing interval
    if y.start >= x.end:
        return False  # disjoint; touching edges is fine
    if y.end > x.end:
        return True  # partial overlap
    # Here y lies within x.
    if x.start == y.start and x.end == y.end:
        return isinstance(a.span.annotation, Opaque) and isinstance(b.span.annotation, Opaque)
    if isinstance(x.annotation, Opaque):
        return not y.start == y.end == x.start  # only boundary points allowed
    return False


def _overlaps(span: Span, rng: SentenceRange) -> bool:
    if span.start == span.end:
        return rng.start <= span.start < rng.end
    return span.start < rng.end and span.end > rng.start


def adapt_rich(provider: MtProvider, rt: RichText, src: str, tgt: str,
               threshold: float = DEFAULT_THRESHOLD,
               abbreviations: frozenset[str] | None = None) -> AdaptResult:
    """Translate ``rt`` sentence by sentence, carrying annotations across.

    Provider errors propagate.  The result's spans always satisfy the rich
    text invariants; when two reconstructed spans would partially overlap,
    the lower-cost match wins and the other is dropped.
    """
    source_ranges = segment_sentences(rt, src, abbreviations)
    spans_seq = list(enumerate(rt.spans))

    pieces: list[str] = []
    candidates: list[_Candidate] = []
    correspondence: list[tuple[int, int]] = []
    target_ranges: list[SentenceRange] = []
    base = 0

    for s_idx, rng in enumerate(source_ranges):
        sentence = rt.text[rng.start:rng.end]
        translated = provider.translate(sentence, src, tgt)
        haystack = tokenize(translated, tgt)
        if not haystack:
            continue  # empty translation: sentence vanishes, its spans stay dropped
        for seq, sp in spans_seq:
            if not _overlaps(sp, rng):
                continue
            covered = rt.text[max(sp.start, rng.start):min(sp.end, rng.end)]
            needle = tokenize(provider.translate(covered, src, tgt), tgt)
            if not needle:
                continue
            match = locate_subsegment(haystack, needle, threshold)
            if match is None:
                continue
            start = base + haystack[match.start].start
            end = base + haystack[match.end - 1].end
            candidates.append(_Candidate(
                span=Span(start=start, end=end, annotation=sp.annotation),
                cost=match.cost, seq=seq))
        t_idx = len(pieces)
        pieces.append(translated)
        correspondence.append((s_idx, t_idx))
        target_ranges.append(SentenceRange(start=base, end=base + len(translated)))
        base += len(translated) + 1

    accepted: list[_Candidate] = []
    placed_seqs: set[int] = set()
    for cand in sorted(candidates, key=lambda c: (c.cost, c.seq)):
        if cand.seq in placed_seqs:
            continue  # each input span is placed at most once
        if all(not _conflicts(cand, other) for other in accepted):
            accepted.append(cand)
            placed_seqs.add(cand.seq)
    dropped = tuple(sp for seq, sp in spans_seq if seq not in placed_seqs)
    out_spans = tuple(c.span for c in sorted(
        accepted,
        key=lambda c: (c.span.start, -c.span.end, isinstance(c.span.annotation, Opaque), c.seq)))
    return AdaptResult(
        rich=RichText(text=" ".join(pieces), spans=out_spans),
        correspondence=tuple(correspondence),
        dropped=dropped,
        target_sentences=tuple(target_ranges),
    )
