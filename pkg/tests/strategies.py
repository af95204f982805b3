"""Hypothesis strategies shared across the test modules.

Two families:

* free-form documents for the parser/serializer round-trip (arbitrary text,
  span trees up to depth 3, opaque payloads synthesized to stay consistent
  with their covered text);
* token-aligned rich texts for the markup-transfer tests, where every word
  is unique and spans sit on token boundaries, so exact matching has a
  single correct answer.
"""

from __future__ import annotations

import html
from itertools import product

from hypothesis import strategies as st

from transmark.docmodel import (HEADING, LIST_ITEM, PARAGRAPH, AnnotatedDoc,
                                Block, Emphasis, Link, Opaque, RichText, Span,
                                Strong, block_id)

TEXT_CHARS = "abcdefg hijk.lm!? áéíñç AB:012𝄞🌍<>&\"'\n…;,"

block_texts = st.text(alphabet=TEXT_CHARS, max_size=48)

titles = (st.text(alphabet="ABCDEabcde áéíñ", min_size=1, max_size=14)
          .map(str.strip).filter(bool))

langs = st.sampled_from(["es", "ca", "pt", "en"])


def _simple_annotations():
    return st.one_of(
        st.builds(Strong),
        st.builds(Emphasis),
        st.builds(Link, target=titles, missing=st.booleans()),
    )


def _opaque_for(text: str, start: int, end: int) -> Opaque:
    if start == end:
        return Opaque(payload="<ref/>", key="ref")
    inner = html.escape(text[start:end], quote=False)
    return Opaque(payload=f"<ref>{inner}</ref>", key="ref")


@st.composite
def _forest(draw, text: str, lo: int, hi: int, depth: int) -> list[Span]:
    """Disjoint spans in [lo, hi], each optionally with nested children."""
    spans: list[Span] = []
    pos = lo
    for _ in range(draw(st.integers(0, 3))):
        if pos > hi:
            break
        start = draw(st.integers(pos, hi))
        end = draw(st.integers(start, hi))
        kind = draw(st.sampled_from(["plain", "plain", "plain", "opaque"]))
        if kind == "opaque":
            spans.append(Span(start, end, _opaque_for(text, start, end)))
        else:
            spans.append(Span(start, end, draw(_simple_annotations())))
            if depth > 1 and end > start and draw(st.booleans()):
                spans.extend(draw(_forest(text, start, end, depth - 1)))
        pos = end
    return spans


@st.composite
def rich_texts(draw, depth: int = 3) -> RichText:
    text = draw(block_texts)
    preorder = draw(_forest(text, 0, len(text), depth))
    ordered = sorted(preorder, key=lambda sp: (sp.start, -sp.end))
    return RichText(text=text, spans=tuple(ordered))


@st.composite
def documents(draw, max_blocks: int = 6) -> AnnotatedDoc:
    blocks = []
    for i in range(draw(st.integers(0, max_blocks))):
        kind = draw(st.sampled_from([PARAGRAPH, PARAGRAPH, PARAGRAPH,
                                     HEADING, LIST_ITEM]))
        level = draw(st.integers(1, 6)) if kind == HEADING else None
        blocks.append(Block(id=block_id(i), kind=kind,
                            content=draw(rich_texts()), level=level))
    categories = draw(st.lists(titles, max_size=3, unique=True))
    return AnnotatedDoc(lang=draw(langs), title=draw(titles),
                        blocks=tuple(blocks), categories=tuple(categories))


# ---------------------------------------------------------------------------
# Token-aligned inputs for markup transfer.

WORD_POOL = ["".join(t) for t in product("bcdfgmpstv", "aeiou", "lnrks")]


@st.composite
def aligned_rich_texts(draw, max_sentences: int = 3,
                       allow_opaque: bool = True) -> RichText:
    """Sentences of unique words with spans on token boundaries.

    Every word appears once in the whole text and sentences are joined by
    single spaces, so markup transfer with a well-behaved provider has
    exactly one defensible placement for every span.
    """
    sizes = [draw(st.integers(3, 7))
             for _ in range(draw(st.integers(1, max_sentences)))]
    total = sum(sizes)
    words = draw(st.lists(st.sampled_from(WORD_POOL), unique=True,
                          min_size=total, max_size=total))
    bounds: list[tuple[int, int]] = []   # char range of each word, dot excluded
    sentence_words: list[list[int]] = []  # global word indices per sentence
    pieces: list[str] = []
    pos = 0
    w = 0
    for size in sizes:
        members = []
        for j in range(size):
            if pieces:
                pos += 1  # single joining space
            word = words[w]
            bounds.append((pos, pos + len(word)))
            members.append(w)
            piece = word + ("." if j == size - 1 else "")
            pieces.append(piece)
            pos += len(piece)
            w += 1
        sentence_words.append(members)
    text = " ".join(pieces)

    preorder: list[Span] = []
    for members in sentence_words:
        taken = 0
        for _ in range(draw(st.integers(0, 2))):
            if taken >= len(members):
                break
            a = draw(st.integers(taken, len(members) - 1))
            b = draw(st.integers(a, len(members) - 1))
            start = bounds[members[a]][0]
            end = bounds[members[b]][1]
            wants_opaque = allow_opaque and draw(st.booleans())
            if wants_opaque:
                preorder.append(Span(start, end, _opaque_for(text, start, end)))
            else:
                preorder.append(Span(start, end, draw(_simple_annotations())))
                if b > a and draw(st.booleans()):  # one nested child
                    c = draw(st.integers(a, b))
                    d = draw(st.integers(c, b))
                    preorder.append(Span(bounds[members[c]][0],
                                         bounds[members[d]][1],
                                         draw(_simple_annotations())))
            taken = b + 1
    ordered = sorted(preorder, key=lambda sp: (sp.start, -sp.end))
    return RichText(text=text, spans=tuple(ordered))


@st.composite
def single_span_sentences(draw) -> tuple[RichText, tuple[int, int]]:
    """One sentence of unique words with exactly one span; returns the
    covered word-index range (a, b) inclusive alongside the rich text."""
    size = draw(st.integers(3, 8))
    words = draw(st.lists(st.sampled_from(WORD_POOL), unique=True,
                          min_size=size, max_size=size))
    text = " ".join(words[:-1] + [words[-1] + "."])
    bounds = []
    pos = 0
    for word in words:
        bounds.append((pos, pos + len(word)))
        pos += len(word) + 1
    a = draw(st.integers(0, size - 1))
    b = draw(st.integers(a, size - 1))
    span = Span(bounds[a][0], bounds[b][1], draw(_simple_annotations()))
    return RichText(text=text, spans=(span,)), (a, b)
