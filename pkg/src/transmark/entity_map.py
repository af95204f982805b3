"""Interlanguage link and category adaptation.

An :class:`EntityMap` relates article titles across languages through shared
entity ids (``Q`` followed by digits), the way Wikidata sitelinks do.  Link
adaptation rewrites ``./Title`` targets into the target language; titles that
cannot be resolved keep their source form and are flagged missing instead of
being removed, because red links carry information too.

Title lookup folds underscores to spaces and the first character to lower
case; everything else is exact.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from .docmodel import AnnotatedDoc, Block, Link, RichText, Span

_ENTITY_ID = re.compile(r"Q[0-9]+\Z")


class EntityMapError(ValueError):
    def __init__(self, message: str, path: str | None = None, lineno: int | None = None):
        if path is not None and lineno is not None:
            message = f"{path}:{lineno}: {message}"
        super().__init__(message)
        self.path = path
        self.lineno = lineno


def normalize_title(title: str) -> str:
    title = title.replace("_", " ")
    if title:
        title = title[0].lower() + title[1:]
    return title


@dataclass(frozen=True, slots=True)
class EntityMap:
    """Immutable entity id → {lang: title} mapping with an inverted index."""

    entries: dict[str, dict[str, str]] = field(default_factory=dict)
    index: dict[tuple[str, str], str] = field(default_factory=dict)

    @classmethod
    def from_records(cls, records, path: str | None = None) -> "EntityMap":
        """Build a map from (entity id, lang, title) triples.

        ``records`` may yield (qid, lang, title) or (qid, lang, title, lineno);
        the line number only feeds error messages.
        """
        entries: dict[str, dict[str, str]] = {}
        index: dict[tuple[str, str], str] = {}
        for record in records:
            qid, lang, title = record[:3]
            lineno = record[3] if len(record) > 3 else None
            if not _ENTITY_ID.match(qid):
                raise EntityMapError(f"bad entity id {qid!r}", path, lineno)
            if not lang or not title:
                raise EntityMapError("empty language or title", path, lineno)
            key = (lang, normalize_title(title))
            prior = index.get(key)
            if prior is not None and prior != qid:
                raise EntityMapError(
                    f"title {title!r} ({lang}) claimed by both {prior} and {qid}",
                    path, lineno)
            index[key] = qid
            entries.setdefault(qid, {})[lang] = title
        return cls(entries=entries, index=index)

    def resolve(self, lang: str, title: str) -> str | None:
        """Entity id for a title in ``lang``, or None."""
        return self.index.get((lang, normalize_title(title)))

    def title(self, entity_id: str, lang: str) -> str | None:
        """Stored title of ``entity_id`` in ``lang``, or None."""
        return self.entries.get(entity_id, {}).get(lang)

    def __len__(self) -> int:
        return len(self.entries)


def load_entity_map(path) -> EntityMap:
    """Read a tab-separated dump: one ``entity<TAB>lang<TAB>title`` per line.

    Blank lines and lines starting with ``#`` are skipped.
    """
    def records():
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise EntityMapError(
                        f"expected 3 tab-separated fields, got {len(parts)}",
                        str(path), lineno)
                yield parts[0], parts[1], parts[2], lineno

    return EntityMap.from_records(records(), path=str(path))


class Verdict(enum.Enum):
    ADAPTED = "adapted"
    MISSING_IN_TARGET = "missing"
    UNKNOWN_TITLE = "unknown"


@dataclass(frozen=True, slots=True)
class LinkAdaptation:
    verdict: Verdict
    target_title: str | None = None  # set iff ADAPTED
    entity_id: str | None = None     # set unless UNKNOWN_TITLE


@dataclass(frozen=True, slots=True)
class AdaptationReport:
    adapted: int = 0
    missing: int = 0
    unknown: int = 0

    @property
    def total(self) -> int:
        return self.adapted + self.missing + self.unknown


def adapt_link(emap: EntityMap, title: str, src: str, tgt: str) -> LinkAdaptation:
    qid = emap.resolve(src, title)
    if qid is None:
        return LinkAdaptation(Verdict.UNKNOWN_TITLE)
    target = emap.title(qid, tgt)
    if target is None:
        return LinkAdaptation(Verdict.MISSING_IN_TARGET, entity_id=qid)
    return LinkAdaptation(Verdict.ADAPTED, target_title=target, entity_id=qid)


def _adapt_span(emap: EntityMap, span: Span, src: str, tgt: str,
                tally: dict[Verdict, int]) -> Span:
    link = span.annotation
    if not isinstance(link, Link):
        return span
    result = adapt_link(emap, link.target, src, tgt)
    tally[result.verdict] += 1
    if result.verdict is Verdict.ADAPTED:
        new_link = Link(target=result.target_title, missing=False)
    else:
        new_link = Link(target=link.target, missing=True)
    return Span(start=span.start, end=span.end, annotation=new_link)


def adapt_links_in_doc(doc: AnnotatedDoc, emap: EntityMap,
                       tgt: str) -> tuple[AnnotatedDoc, AdaptationReport]:
    """Rewrite every link span of ``doc`` for language ``tgt``.

    The result's ``lang`` is ``tgt``, which makes a second pass over its own
    output a no-op for links that resolved.  Unresolvable links keep their
    display text and source target, flagged ``missing``.
    """
    tally: dict[Verdict, int] = {v: 0 for v in Verdict}
    blocks = []
    for block in doc.blocks:
        spans = tuple(_adapt_span(emap, sp, doc.lang, tgt, tally)
                      for sp in block.content.spans)
        blocks.append(Block(id=block.id, kind=block.kind,
                            content=RichText(text=block.content.text, spans=spans),
                            level=block.level))
    adapted_doc = AnnotatedDoc(lang=tgt, title=doc.title,
                               blocks=tuple(blocks), categories=doc.categories)
    report = AdaptationReport(adapted=tally[Verdict.ADAPTED],
                              missing=tally[Verdict.MISSING_IN_TARGET],
                              unknown=tally[Verdict.UNKNOWN_TITLE])
    return adapted_doc, report


def adapt_categories(cats, emap: EntityMap, src: str,
                     tgt: str) -> tuple[list[str], list[str]]:
    """Carry categories over to ``tgt``; the unmappable ones are dropped.

    A category survives only when its entity has a title in the target
    language.  Input order is preserved and duplicates (after mapping)
    collapse to the first occurrence.
    """
    adapted: list[str] = []
    dropped: list[str] = []
    seen_adapted: set[str] = set()
    seen_dropped: set[str] = set()
    for title in cats:
        qid = emap.resolve(src, title)
        target = emap.title(qid, tgt) if qid is not None else None
        if target is not None:
            if target not in seen_adapted:
                seen_adapted.add(target)
                adapted.append(target)
        elif title not in seen_dropped:
            seen_dropped.add(title)
            dropped.append(title)
    return adapted, dropped
