"""Offset-addressed rich-text document model over a restricted HTML subset.

A document is a sequence of blocks (paragraphs, headings, list items), each
holding plain text plus a list of annotation spans addressed by code-point
offsets.  Parsing and serialization are lossless up to a normalized form:
``parse_document(serialize_document(doc))`` is structurally equal to ``doc``.

Recognized markup:

* blocks: ``<p>``, ``<h1>``..``<h6>``, ``<li>``
* inline: ``<a href="./Title">`` (wiki-style links; ``class="new"`` marks a
  link whose target is known to be missing), ``<b>``/``<strong>``,
  ``<i>``/``<em>``
* ``<link rel="category" href="./Title"/>`` collects category titles
* anything else is carried as an :class:`Opaque` span whose payload is the
  verbatim source markup; opaque content is never parsed or rewritten.

Link targets and category titles are stored space-normalized (underscores in
hrefs become spaces); serialization writes underscores back.  All offsets
count code points, so the model is encoding-agnostic and astral-plane safe.
"""

from __future__ import annotations

import html
import re
from dataclasses import dataclass, field
from html.parser import HTMLParser


class ParseError(ValueError):
    """Malformed markup.  ``byte_offset`` locates the defect in UTF-8 bytes."""

    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


# --------------------------------------------------------------------------
# Model types
# --------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Link:
    target: str
    missing: bool = False


@dataclass(frozen=True, slots=True)
class Strong:
    pass


@dataclass(frozen=True, slots=True)
class Emphasis:
    pass


@dataclass(frozen=True, slots=True)
class Opaque:
    """Unrecognized markup carried verbatim.

    ``payload`` is the exact source slice (tags included); ``key`` is the
    root tag name (``"#comment"`` for comments).  The payload is emitted
    as-is on serialization and must never be rewritten.
    """

    payload: str
    key: str


Annotation = Link | Strong | Emphasis | Opaque


@dataclass(frozen=True, slots=True)
class Span:
    start: int
    end: int
    annotation: Annotation


@dataclass(frozen=True, slots=True)
class RichText:
    """Plain text plus offset-addressed annotation spans.

    Invariants (see :func:`check_rich_text`): every span satisfies
    ``0 <= start <= end <= len(text)`` in code points; spans are pairwise
    disjoint or properly nested; the list is sorted by (start ascending,
    end descending).
    """

    text: str
    spans: tuple[Span, ...] = ()


PARAGRAPH = "paragraph"
HEADING = "heading"
LIST_ITEM = "list-item"


@dataclass(frozen=True, slots=True)
class Block:
    id: str
    kind: str
    content: RichText
    level: int | None = None  # headings only, 1..6


@dataclass(frozen=True, slots=True)
class AnnotatedDoc:
    lang: str
    title: str
    blocks: tuple[Block, ...] = ()
    categories: tuple[str, ...] = ()


def block_id(index: int) -> str:
    """Stable block id for the given 0-based document position."""
    return f"cxb{index}"


# --------------------------------------------------------------------------
# Invariant checks
# --------------------------------------------------------------------------

def check_rich_text(rt: RichText) -> None:
    """Raise ``ValueError`` if ``rt`` violates the span discipline."""
    n = len(rt.text)
    prev: Span | None = None
    for sp in rt.spans:
        if not (0 <= sp.start <= sp.end <= n):
            raise ValueError(f"span [{sp.start},{sp.end}) out of range for text of length {n}")
        if prev is not None:
            if sp.start < prev.start or (sp.start == prev.start and sp.end > prev.end):
                raise ValueError("spans not sorted by (start asc, end desc)")
        prev = sp
    # Disjoint or properly nested; partial overlap is forbidden.
    stack: list[Span] = []
    for sp in rt.spans:
        while stack and stack[-1].end <= sp.start:
            stack.pop()
        if stack and sp.end > stack[-1].end:
            raise ValueError(
                f"spans [{stack[-1].start},{stack[-1].end}) and [{sp.start},{sp.end}) partially overlap"
            )
        stack.append(sp)
    # Opaque interiors are unparsed, so nothing may live inside them.
    for i, sp in enumerate(rt.spans):
        if not isinstance(sp.annotation, Opaque):
            continue
        for other in rt.spans[i + 1:]:
            if other.start >= sp.end:
                break
            inside = (sp.start <= other.start and other.end <= sp.end
                      and not (other.start == other.end == sp.start)
                      and not (other.start == other.end == sp.end))
            if inside:
                raise ValueError("span nested inside an opaque span")


def check_document(doc: AnnotatedDoc) -> None:
    """Raise ``ValueError`` on any violated document invariant."""
    for i, blk in enumerate(doc.blocks):
        if blk.id != block_id(i):
            raise ValueError(f"block {i} has id {blk.id!r}, expected {block_id(i)!r}")
        if blk.kind not in (PARAGRAPH, HEADING, LIST_ITEM):
            raise ValueError(f"unknown block kind {blk.kind!r}")
        if blk.kind == HEADING:
            if blk.level is None or not 1 <= blk.level <= 6:
                raise ValueError(f"heading level {blk.level!r} outside 1..6")
        elif blk.level is not None:
            raise ValueError(f"{blk.kind} block carries a heading level")
        check_rich_text(blk.content)
    if len(set(doc.categories)) != len(doc.categories):
        raise ValueError("duplicate categories")


# --------------------------------------------------------------------------
# Operations on rich text
# --------------------------------------------------------------------------

def plain_text(rt: RichText) -> str:
    """Plain projection of the rich text (the text, annotations dropped)."""
    return rt.text


def annotations_at(rt: RichText, offset: int) -> list[Annotation]:
    """Annotations covering ``offset``, outermost first.

    ``offset`` must satisfy ``0 <= offset < len(rt.text)``.
    """
    if not 0 <= offset < len(rt.text):
        raise ValueError(f"offset {offset} out of range for text of length {len(rt.text)}")
    return [sp.annotation for sp in rt.spans if sp.start <= offset < sp.end]


# --------------------------------------------------------------------------
# Parsing
# --------------------------------------------------------------------------

_BLOCK_TAGS = {"p": (PARAGRAPH, None), "li": (LIST_ITEM, None)}
_BLOCK_TAGS.update({f"h{k}": (HEADING, k) for k in range(1, 7)})

_INLINE_TAGS: dict[str, type] = {"b": Strong, "strong": Strong, "i": Emphasis, "em": Emphasis}

# HTML void elements never receive an end tag.
_VOID_TAGS = {
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
}

_WS_RE = re.compile(r"\s+")


def _normalize_title(href_title: str) -> str:
    return href_title.replace("_", " ")


def _title_to_href(title: str) -> str:
    return "./" + title.replace(" ", "_")


@dataclass(slots=True)
class _Frame:
    tag: str
    start: int       # code-point offset in the current block text
    seq: int         # open order, used for canonical span sorting
    annotation: Annotation | None  # None while uninstantiated (links)


@dataclass(slots=True)
class _OpenBlock:
    tag: str | None  # None for an implicit paragraph
    kind: str
    level: int | None
    parts: list[str] = field(default_factory=list)
    length: int = 0
    spans: list[tuple[Span, int]] = field(default_factory=list)  # (span, open seq)
    frames: list[_Frame] = field(default_factory=list)


class _DocParser(HTMLParser):
    def __init__(self, raw: str):
        super().__init__(convert_charrefs=True)
        self.raw = raw
        self.line_starts = [0]
        for m in re.finditer("\n", raw):
            self.line_starts.append(m.end())
        self.blocks: list[Block] = []
        self.categories: list[str] = []
        self.block: _OpenBlock | None = None
        self.seq = 0
        # Opaque capture state: (root tag, text start, raw char start, inner tag stack)
        self.opaque: tuple[str, int, int, list[str]] | None = None

    # -- position helpers ---------------------------------------------------

    def _char_pos(self) -> int:
        line, col = self.getpos()
        return self.line_starts[line - 1] + col

    def _byte_pos(self, char_pos: int | None = None) -> int:
        if char_pos is None:
            char_pos = self._char_pos()
        return len(self.raw[:char_pos].encode("utf-8"))

    def _fail(self, message: str, char_pos: int | None = None) -> None:
        raise ParseError(message, self._byte_pos(char_pos))

    def _tag_end(self, start: int) -> int:
        """Char offset just past the ``>`` closing the tag that starts at ``start``."""
        quote: str | None = None
        for i in range(start, len(self.raw)):
            ch = self.raw[i]
            if quote is not None:
                if ch == quote:
                    quote = None
            elif ch in "\"'":
                quote = ch
            elif ch == ">":
                return i + 1
        self._fail("unterminated tag", start)
        raise AssertionError("unreachable")

    # -- block helpers ------------------------------------------------------

    def _ensure_block(self, tag: str | None = None, kind: str = PARAGRAPH,
                      level: int | None = None) -> _OpenBlock:
        if self.block is None:
            self.block = _OpenBlock(tag=tag, kind=kind, level=level)
        return self.block

    def _close_block(self) -> None:
        blk = self.block
        assert blk is not None
        if blk.frames:
            frame = blk.frames[-1]
            self._fail(f"unclosed <{frame.tag}> element")
        text = "".join(blk.parts)
        spans = tuple(sp for sp, _seq in sorted(blk.spans, key=lambda e: (e[0].start, -e[0].end, e[1])))
        content = RichText(text=text, spans=spans)
        self.blocks.append(Block(id=block_id(len(self.blocks)), kind=blk.kind,
                                 content=content, level=blk.level))
        self.block = None

    def _append_text(self, data: str) -> None:
        blk = self.block
        assert blk is not None
        blk.parts.append(data)
        blk.length += len(data)

    def _record_span(self, start: int, end: int, annotation: Annotation, seq: int) -> None:
        blk = self.block
        assert blk is not None
        blk.spans.append((Span(start=start, end=end, annotation=annotation), seq))

    def _open_opaque(self, tag: str) -> None:
        blk = self._ensure_block()
        self.opaque = (tag, blk.length, self._char_pos(), [])

    def _emit_void_opaque(self, tag: str) -> None:
        start = self._char_pos()
        payload = self.raw[start:self._tag_end(start)]
        blk = self._ensure_block()
        self._record_span(blk.length, blk.length, Opaque(payload=payload, key=tag), self.seq)
        self.seq += 1

    # -- HTMLParser callbacks -----------------------------------------------

    def handle_starttag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        if self.opaque is not None:
            if tag not in _VOID_TAGS:
                self.opaque[3].append(tag)
            return
        attr_map = {k: (v or "") for k, v in attrs}
        if tag == "link":
            self._handle_link_element(tag, attr_map)
            return
        if tag in _VOID_TAGS:
            self._emit_void_opaque(tag)
            return
        if tag in _BLOCK_TAGS:
            kind, level = _BLOCK_TAGS[tag]
            if self.block is not None:
                if self.block.tag is not None:
                    self._fail(f"block element <{tag}> nested inside <{self.block.tag}>")
                self._close_block()  # implicit paragraph ends here
            self.block = _OpenBlock(tag=tag, kind=kind, level=level)
            return
        if tag in _INLINE_TAGS:
            blk = self._ensure_block()
            blk.frames.append(_Frame(tag=tag, start=blk.length, seq=self.seq,
                                     annotation=_INLINE_TAGS[tag]()))
            self.seq += 1
            return
        if tag == "a":
            href = attr_map.get("href", "")
            if href.startswith("./"):
                missing = "new" in attr_map.get("class", "").split()
                blk = self._ensure_block()
                link = Link(target=_normalize_title(href[2:]), missing=missing)
                blk.frames.append(_Frame(tag=tag, start=blk.length, seq=self.seq, annotation=link))
                self.seq += 1
                return
            # non-wiki anchors fall through to opaque capture
        self._open_opaque(tag)

    def handle_startendtag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        if self.opaque is not None:
            return
        attr_map = {k: (v or "") for k, v in attrs}
        if tag == "link":
            self._handle_link_element(tag, attr_map)
            return
        if tag in _BLOCK_TAGS:
            kind, level = _BLOCK_TAGS[tag]
            if self.block is not None and self.block.tag is not None:
                self._fail(f"block element <{tag}> nested inside <{self.block.tag}>")
            if self.block is not None:
                self._close_block()
            self.block = _OpenBlock(tag=tag, kind=kind, level=level)
            self._close_block()
            return
        if tag in _INLINE_TAGS:
            blk = self._ensure_block()
            self._record_span(blk.length, blk.length, _INLINE_TAGS[tag](), self.seq)
            self.seq += 1
            return
        self._emit_void_opaque(tag)

    def _handle_link_element(self, tag: str, attr_map: dict[str, str]) -> None:
        href = attr_map.get("href", "")
        if attr_map.get("rel") == "category" and href.startswith("./"):
            title = _normalize_title(href[2:])
            if title not in self.categories:
                self.categories.append(title)
            return
        self._emit_void_opaque(tag)

    def handle_endtag(self, tag: str) -> None:
        if self.opaque is not None:
            root, text_start, raw_start, inner = self.opaque
            if inner:
                if inner[-1] != tag:
                    self._fail(f"mismatched </{tag}>, expected </{inner[-1]}>")
                inner.pop()
                return
            if tag != root:
                self._fail(f"mismatched </{tag}>, expected </{root}>")
            raw_end = self._tag_end(self._char_pos())
            payload = self.raw[raw_start:raw_end]
            blk = self.block
            assert blk is not None
            self._record_span(text_start, blk.length, Opaque(payload=payload, key=root), self.seq)
            self.seq += 1
            self.opaque = None
            return
        if tag in _BLOCK_TAGS:
            if self.block is None or self.block.tag != tag:
                self._fail(f"unexpected </{tag}>")
            self._close_block()
            return
        blk = self.block
        if blk is None or not blk.frames:
            self._fail(f"unexpected </{tag}>")
            return
        frame = blk.frames[-1]
        if frame.tag != tag:
            self._fail(f"mismatched </{tag}>, expected </{frame.tag}>")
        blk.frames.pop()
        assert frame.annotation is not None
        self._record_span(frame.start, blk.length, frame.annotation, frame.seq)

    def handle_data(self, data: str) -> None:
        if self.block is None:
            if data.strip() == "":
                return
            self._ensure_block()
        self._append_text(data)

    def handle_comment(self, data: str) -> None:
        if self.opaque is not None:
            return
        if self.block is None:
            return  # comments between blocks are not content
        payload = f"<!--{data}-->"
        blk = self.block
        self._record_span(blk.length, blk.length, Opaque(payload=payload, key="#comment"), self.seq)
        self.seq += 1

    def handle_decl(self, decl: str) -> None:
        self._fail(f"unsupported declaration <!{decl}>")

    def handle_pi(self, data: str) -> None:
        self._fail(f"unsupported processing instruction <?{data}>")

    def finish(self) -> None:
        self.close()
        if self.opaque is not None:
            self._fail(f"unclosed <{self.opaque[0]}> element", self.opaque[2])
        if self.block is not None:
            if self.block.tag is not None or self.block.frames:
                tag = self.block.frames[-1].tag if self.block.frames else self.block.tag
                self._fail(f"unclosed <{tag}> element", len(self.raw))
            self._close_block()


def parse_document(markup: str, lang: str, title: str) -> AnnotatedDoc:
    """Parse the restricted HTML subset into an :class:`AnnotatedDoc`.

    Raises :class:`ParseError` (with a UTF-8 byte offset) on mismatched or
    unclosed tags and on markup outside the subset that cannot be carried
    opaquely.
    """
    parser = _DocParser(markup)
    try:
        parser.feed(markup)
        parser.finish()
    except ParseError:
        raise
    return AnnotatedDoc(lang=lang, title=title, blocks=tuple(parser.blocks),
                        categories=tuple(parser.categories))


# --------------------------------------------------------------------------
# Serialization
# --------------------------------------------------------------------------

def _open_tag(annotation: Annotation) -> str:
    if isinstance(annotation, Strong):
        return "<b>"
    if isinstance(annotation, Emphasis):
        return "<i>"
    if isinstance(annotation, Link):
        href = html.escape(_title_to_href(annotation.target), quote=True)
        cls = ' class="new"' if annotation.missing else ""
        return f'<a href="{href}"{cls}>'
    raise TypeError(f"no open tag for {annotation!r}")


def _close_tag(annotation: Annotation) -> str:
    if isinstance(annotation, Strong):
        return "</b>"
    if isinstance(annotation, Emphasis):
        return "</i>"
    if isinstance(annotation, Link):
        return "</a>"
    raise TypeError(f"no close tag for {annotation!r}")


def _render_rich(rt: RichText) -> str:
    spans = sorted(rt.spans, key=lambda sp: (sp.start, -sp.end))
    out: list[str] = []
    stack: list[Span] = []
    idx = 0
    pos = 0
    n = len(rt.text)
    while True:
        while stack and stack[-1].end == pos:
            out.append(_close_tag(stack.pop().annotation))
        # Zero-length spans sit between the closes and the opens at pos.
        restart = False
        while idx < len(spans) and spans[idx].start == pos and spans[idx].end == pos:
            sp = spans[idx]
            if isinstance(sp.annotation, Opaque):
                out.append(sp.annotation.payload)
            else:
                out.append(_open_tag(sp.annotation) + _close_tag(sp.annotation))
            idx += 1
        while idx < len(spans) and spans[idx].start == pos:
            sp = spans[idx]
            idx += 1
            if isinstance(sp.annotation, Opaque):
                # Zero-length spans at pos sort after a covering opaque span
                # but must be written before its payload to keep their offset.
                while (sp.end > pos and idx < len(spans)
                       and spans[idx].start == pos and spans[idx].end == pos):
                    zero = spans[idx]
                    if isinstance(zero.annotation, Opaque):
                        out.append(zero.annotation.payload)
                    else:
                        out.append(_open_tag(zero.annotation)
                                   + _close_tag(zero.annotation))
                    idx += 1
                out.append(sp.annotation.payload)
                pos = sp.end
                restart = True
                break
            out.append(_open_tag(sp.annotation))
            stack.append(sp)
        if restart:
            continue
        if pos == n:
            break
        next_stop = n
        if idx < len(spans):
            next_stop = min(next_stop, spans[idx].start)
        if stack:
            next_stop = min(next_stop, stack[-1].end)
        if next_stop == pos:
            # only zero-length events remain at pos; loop above consumed them
            continue
        out.append(html.escape(rt.text[pos:next_stop], quote=False))
        pos = next_stop
    while stack:
        out.append(_close_tag(stack.pop().annotation))
    return "".join(out)


_BLOCK_OPEN = {PARAGRAPH: "p", LIST_ITEM: "li"}


def serialize_block(block: Block) -> str:
    """Serialized form of a single block, e.g. ``<p>…</p>``."""
    if block.kind == HEADING:
        tag = f"h{block.level}"
    else:
        tag = _BLOCK_OPEN[block.kind]
    return f"<{tag}>{_render_rich(block.content)}</{tag}>"


def serialize_document(doc: AnnotatedDoc) -> str:
    """Serialize to the restricted HTML subset (normalized form)."""
    parts = [serialize_block(b) for b in doc.blocks]
    for title in doc.categories:
        href = html.escape(_title_to_href(title), quote=True)
        parts.append(f'<link rel="category" href="{href}"/>')
    return "\n".join(parts)
