// Parser and renderer for one block of the service's restricted HTML
// subset. The editor needs both directions: translate responses and page
// blocks arrive as HTML and must become offset-addressed rich text for
// editing, and edited rich text must render back for display.
//
// Span offsets count Unicode code points, matching the service. JS string
// indices are UTF-16, so text length is tracked by code points and the
// renderer slices through a code-point array.

import type { RichTextJson, SpanJson } from "./types.js";

export class BlockParseError extends Error {
    constructor(
        message: string,
        readonly offset: number,
    ) {
        super(`${message} (at ${offset})`);
        this.name = "BlockParseError";
    }
}

export interface ParsedBlock {
    kind: "paragraph" | "heading" | "list-item";
    level: number | null;
    rich: RichTextJson;
}

const BLOCK_TAGS: Record<string, { kind: ParsedBlock["kind"]; level: number | null }> = {
    p: { kind: "paragraph", level: null },
    li: { kind: "list-item", level: null },
    h1: { kind: "heading", level: 1 },
    h2: { kind: "heading", level: 2 },
    h3: { kind: "heading", level: 3 },
    h4: { kind: "heading", level: 4 },
    h5: { kind: "heading", level: 5 },
    h6: { kind: "heading", level: 6 },
};

const INLINE_TAGS: Record<string, "strong" | "emphasis"> = {
    b: "strong",
    strong: "strong",
    i: "emphasis",
    em: "emphasis",
};

const VOID_TAGS = new Set([
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
]);

const NAMED_ENTITIES: Record<string, string> = {
    amp: "&",
    lt: "<",
    gt: ">",
    quot: '"',
    apos: "'",
    nbsp: " ",
};

function decodeEntities(raw: string): string {
    return raw.replace(/&(#x?[0-9a-fA-F]+|[a-zA-Z]+);/g, (whole, body: string) => {
        if (body.startsWith("#x") || body.startsWith("#X")) {
            return String.fromCodePoint(parseInt(body.slice(2), 16));
        }
        if (body.startsWith("#")) {
            return String.fromCodePoint(parseInt(body.slice(1), 10));
        }
        return NAMED_ENTITIES[body.toLowerCase()] ?? whole;
    });
}

function codePointLength(s: string): number {
    let n = 0;
    for (const _ of s) n++;
    return n;
}

interface Tag {
    name: string;
    attrs: Record<string, string>;
    selfClosing: boolean;
    closing: boolean;
    end: number; // UTF-16 index just past the ">"
}

const ATTR_RE = /([^\s=/>]+)(?:\s*=\s*("([^"]*)"|'([^']*)'|[^\s>]*))?/g;

function readTag(raw: string, at: number): Tag {
    // A naive indexOf(">") is wrong when an attribute value contains ">",
    // so scan with quote awareness.
    let end = -1;
    let quote: string | null = null;
    for (let i = at + 1; i < raw.length; i++) {
        const ch = raw[i]!;
        if (quote !== null) {
            if (ch === quote) quote = null;
        } else if (ch === '"' || ch === "'") {
            quote = ch;
        } else if (ch === ">") {
            end = i;
            break;
        }
    }
    if (end === -1) {
        throw new BlockParseError("unterminated tag", at);
    }
    let inner = raw.slice(at + 1, end);
    const closing = inner.startsWith("/");
    if (closing) inner = inner.slice(1);
    const selfClosing = inner.endsWith("/");
    if (selfClosing) inner = inner.slice(0, -1);
    const nameMatch = /^[a-zA-Z][a-zA-Z0-9]*/.exec(inner);
    if (!nameMatch) {
        throw new BlockParseError("tag without a name", at);
    }
    const name = nameMatch[0].toLowerCase();
    const attrs: Record<string, string> = {};
    const rest = inner.slice(nameMatch[0].length);
    for (const m of rest.matchAll(ATTR_RE)) {
        const key = m[1]!.toLowerCase();
        const value = m[3] ?? m[4] ?? (m[2] !== undefined ? m[2] : "");
        attrs[key] = decodeEntities(value);
    }
    return { name, attrs, selfClosing, closing, end: end + 1 };
}

interface OpenFrame {
    tag: string;
    start: number; // code points
    span: SpanJson | null; // filled at close time for links/inline
    makeSpan: (start: number, end: number) => SpanJson;
    seq: number;
}

/** Parse exactly one block (`<p>…</p>`, `<h2>…</h2>`, `<li>…</li>`). */
export function parseBlock(raw: string): ParsedBlock {
    let i = 0;
    while (i < raw.length && /\s/.test(raw[i]!)) i++;
    if (raw[i] !== "<") {
        throw new BlockParseError("expected a block tag", i);
    }
    const open = readTag(raw, i);
    const blockInfo = BLOCK_TAGS[open.name];
    if (blockInfo === undefined || open.closing) {
        throw new BlockParseError(`<${open.name}> is not a block tag`, i);
    }

    const parts: string[] = [];
    let length = 0; // code points so far
    const spans: { span: SpanJson; seq: number }[] = [];
    const frames: OpenFrame[] = [];
    let seq = 0;
    // Opaque capture: root tag, text start, raw UTF-16 start, inner stack.
    let opaque: { root: string; textStart: number; rawStart: number; inner: string[] } | null = null;

    const appendText = (data: string) => {
        parts.push(data);
        length += codePointLength(data);
    };

    i = open.end;
    if (open.selfClosing) {
        return { kind: blockInfo.kind, level: blockInfo.level, rich: { text: "", spans: [] } };
    }

    let closed = false;
    while (i < raw.length) {
        if (raw[i] !== "<") {
            let j = raw.indexOf("<", i);
            if (j === -1) j = raw.length;
            appendText(decodeEntities(raw.slice(i, j)));
            i = j;
            continue;
        }
        if (raw.startsWith("<!--", i)) {
            const commentEnd = raw.indexOf("-->", i);
            if (commentEnd === -1) throw new BlockParseError("unterminated comment", i);
            if (opaque === null) {
                spans.push({
                    span: {
                        type: "opaque",
                        start: length,
                        end: length,
                        payload: raw.slice(i, commentEnd + 3),
                        key: "#comment",
                    },
                    seq: seq++,
                });
            }
            i = commentEnd + 3;
            continue;
        }
        const tag = readTag(raw, i);

        if (opaque !== null) {
            if (tag.closing) {
                if (opaque.inner.length > 0) {
                    if (opaque.inner[opaque.inner.length - 1] !== tag.name) {
                        throw new BlockParseError(`mismatched </${tag.name}>`, i);
                    }
                    opaque.inner.pop();
                } else if (tag.name === opaque.root) {
                    spans.push({
                        span: {
                            type: "opaque",
                            start: opaque.textStart,
                            end: length,
                            payload: raw.slice(opaque.rawStart, tag.end),
                            key: opaque.root,
                        },
                        seq: seq++,
                    });
                    opaque = null;
                } else {
                    throw new BlockParseError(
                        `mismatched </${tag.name}>, expected </${opaque.root}>`, i);
                }
            } else if (!tag.selfClosing && !VOID_TAGS.has(tag.name)) {
                opaque.inner.push(tag.name);
            }
            i = tag.end;
            continue;
        }

        if (tag.closing) {
            if (tag.name === open.name) {
                if (frames.length > 0) {
                    throw new BlockParseError(
                        `unclosed <${frames[frames.length - 1]!.tag}> element`, i);
                }
                closed = true;
                i = tag.end;
                break;
            }
            const frame = frames.pop();
            if (frame === undefined || frame.tag !== tag.name) {
                throw new BlockParseError(`unexpected </${tag.name}>`, i);
            }
            spans.push({ span: frame.makeSpan(frame.start, length), seq: frame.seq });
            i = tag.end;
            continue;
        }

        const inline = INLINE_TAGS[tag.name];
        if (inline !== undefined) {
            const kind = inline;
            if (tag.selfClosing) {
                spans.push({ span: { type: kind, start: length, end: length }, seq: seq++ });
            } else {
                frames.push({
                    tag: tag.name,
                    start: length,
                    span: null,
                    makeSpan: (s, e) => ({ type: kind, start: s, end: e }),
                    seq: seq++,
                });
            }
            i = tag.end;
            continue;
        }
        if (tag.name === "a" && (tag.attrs.href ?? "").startsWith("./")) {
            if (tag.selfClosing) {
                throw new BlockParseError("self-closing <a>", i);
            }
            const target = (tag.attrs.href ?? "").slice(2).replace(/_/g, " ");
            const missing = (tag.attrs.class ?? "").split(/\s+/).includes("new");
            frames.push({
                tag: "a",
                start: length,
                span: null,
                makeSpan: (s, e) => ({ type: "link", start: s, end: e, target, missing }),
                seq: seq++,
            });
            i = tag.end;
            continue;
        }
        if (BLOCK_TAGS[tag.name] !== undefined) {
            throw new BlockParseError(`nested block tag <${tag.name}>`, i);
        }
        if (tag.selfClosing || VOID_TAGS.has(tag.name)) {
            spans.push({
                span: {
                    type: "opaque",
                    start: length,
                    end: length,
                    payload: raw.slice(i, tag.end),
                    key: tag.name,
                },
                seq: seq++,
            });
            i = tag.end;
            continue;
        }
        opaque = { root: tag.name, textStart: length, rawStart: i, inner: [] };
        i = tag.end;
    }

    if (!closed) throw new BlockParseError(`unclosed <${open.name}>`, raw.length);
    if (opaque !== null) {
        throw new BlockParseError(`unclosed <${opaque.root}> element`, opaque.rawStart);
    }
    if (raw.slice(i).trim() !== "") {
        throw new BlockParseError("content after the block", i);
    }

    spans.sort((a, b) => a.span.start - b.span.start || b.span.end - a.span.end || a.seq - b.seq);
    return {
        kind: blockInfo.kind,
        level: blockInfo.level,
        rich: { text: parts.join(""), spans: spans.map((s) => s.span) },
    };
}

// ---------------------------------------------------------------------------
// Rendering

function escapeText(s: string): string {
    return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function escapeAttr(s: string): string {
    return escapeText(s).replace(/"/g, "&quot;").replace(/'/g, "&#x27;");
}

function openTag(span: SpanJson): string {
    switch (span.type) {
        case "strong":
            return "<b>";
        case "emphasis":
            return "<i>";
        case "link": {
            const href = escapeAttr("./" + span.target.replace(/ /g, "_"));
            return `<a href="${href}"${span.missing ? ' class="new"' : ""}>`;
        }
        default:
            throw new Error(`no open tag for ${span.type}`);
    }
}

function closeTag(span: SpanJson): string {
    return span.type === "strong" ? "</b>" : span.type === "emphasis" ? "</i>" : "</a>";
}

export function renderRichText(rich: RichTextJson): string {
    const spans = [...rich.spans].sort(
        (a, b) => a.start - b.start || b.end - a.end,
    );
    const cps = Array.from(rich.text);
    const n = cps.length;
    const out: string[] = [];
    const stack: SpanJson[] = [];
    let idx = 0;
    let pos = 0;

    const emitZeroLength = (span: SpanJson) => {
        if (span.type === "opaque") out.push(span.payload);
        else out.push(openTag(span) + closeTag(span));
    };

    outer: while (true) {
        while (stack.length > 0 && stack[stack.length - 1]!.end === pos) {
            out.push(closeTag(stack.pop()!));
        }
        while (idx < spans.length && spans[idx]!.start === pos && spans[idx]!.end === pos) {
            emitZeroLength(spans[idx]!);
            idx++;
        }
        while (idx < spans.length && spans[idx]!.start === pos) {
            const span = spans[idx]!;
            idx++;
            if (span.type === "opaque") {
                // Zero-length spans at this offset sort after the covering
                // opaque but must be written before its payload.
                while (
                    span.end > pos &&
                    idx < spans.length &&
                    spans[idx]!.start === pos &&
                    spans[idx]!.end === pos
                ) {
                    emitZeroLength(spans[idx]!);
                    idx++;
                }
                out.push(span.payload);
                pos = span.end;
                continue outer;
            }
            out.push(openTag(span));
            stack.push(span);
        }
        if (pos === n) break;
        let next = n;
        if (idx < spans.length) next = Math.min(next, spans[idx]!.start);
        if (stack.length > 0) next = Math.min(next, stack[stack.length - 1]!.end);
        if (next === pos) continue;
        out.push(escapeText(cps.slice(pos, next).join("")));
        pos = next;
    }
    while (stack.length > 0) out.push(closeTag(stack.pop()!));
    return out.join("");
}

export function renderBlock(kind: string, level: number | null, rich: RichTextJson): string {
    const tag = kind === "heading" ? `h${level}` : kind === "list-item" ? "li" : "p";
    return `<${tag}>${renderRichText(rich)}</${tag}>`;
}

export function plainText(rich: RichTextJson): string {
    return rich.text;
}
