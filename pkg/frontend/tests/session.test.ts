import { describe, expect, it, vi } from "vitest";
import { ApiError } from "../src/api.js";
import { parseBlock } from "../src/html.js";
import {
    EditorSession,
    sentenceIndexAt,
    type TranslateApi,
} from "../src/session.js";
import type {
    DraftBody,
    PagePayload,
    TranslateResponse,
} from "../src/types.js";

// "Hola mundo. Adiós." segmented into two sentences, as the page
// endpoint reports them.
const page: PagePayload = {
    lang: "es",
    title: "Berlín",
    blocks: [
        {
            id: "cxb0",
            kind: "paragraph",
            level: null,
            html: "<p>Hola <b>mundo</b>. Adiós.</p>",
            sentences: [
                { start: 0, end: 11 },
                { start: 12, end: 18 },
            ],
        },
        {
            id: "cxb1",
            kind: "heading",
            level: 2,
            html: "<h2>Historia</h2>",
            sentences: [{ start: 0, end: 8 }],
        },
    ],
    categories: ["Capitales"],
};

const translated: TranslateResponse = {
    html: "<p>Hola <b>món</b>. Adeu.</p>",
    correspondence: [
        [0, 0],
        [1, 1],
    ],
    targetSentences: [
        { start: 0, end: 9 },
        { start: 10, end: 15 },
    ],
    droppedSpans: 0,
    links: { adapted: 0, missing: 0, unknown: 0 },
};

function freshDraft(): DraftBody {
    return {
        sourceLang: "es",
        targetLang: "ca",
        sourceTitle: "Berlín",
        targetTitle: "Berlín (ca)",
        units: [],
        categories: [],
    };
}

function sessionWith(
    response: TranslateResponse | Error = translated,
): { session: EditorSession; translate: ReturnType<typeof vi.fn> } {
    const translate = vi.fn(() =>
        response instanceof Error
            ? Promise.reject(response)
            : Promise.resolve(response),
    );
    const api: TranslateApi = { translate };
    return { session: new EditorSession(api, page, "d1", freshDraft()), translate };
}

describe("sentenceIndexAt", () => {
    it("finds the covering range and rejects gaps", () => {
        const ranges = [
            { start: 0, end: 11 },
            { start: 12, end: 18 },
        ];
        expect(sentenceIndexAt(ranges, 0)).toBe(0);
        expect(sentenceIndexAt(ranges, 10)).toBe(0);
        expect(sentenceIndexAt(ranges, 11)).toBe(-1); // the space between
        expect(sentenceIndexAt(ranges, 12)).toBe(1);
        expect(sentenceIndexAt(ranges, 18)).toBe(-1); // past the end
        expect(sentenceIndexAt([], 0)).toBe(-1);
    });
});

describe("EditorSession.addParagraph", () => {
    it("mt mode stores the service response without local rewriting", async () => {
        const { session, translate } = sessionWith();
        const unit = await session.addParagraph("cxb0", "mt", "mirror");

        expect(translate).toHaveBeenCalledWith(
            "mirror", "es", "ca", "<p>Hola <b>mundo</b>. Adiós.</p>",
        );
        expect(unit.origin).toBe("mt");
        expect(unit.mtProvider).toBe("mirror");
        expect(unit.current).toEqual(parseBlock(translated.html).rich);
        // The baseline is a snapshot, not an alias of the editable copy.
        expect(unit.mtBaseline).toEqual(unit.current);
        expect(unit.mtBaseline).not.toBe(unit.current);
        unit.current.text = "edited";
        expect(unit.mtBaseline!.text).toBe("Hola món. Adeu.");
        expect(session.draft.units).toHaveLength(1);
        expect(session.activeBlockId).toBe("cxb0");
    });

    it("leaves the draft untouched when the provider fails", async () => {
        const { session } = sessionWith(new ApiError(502, "provider unreachable"));
        await expect(session.addParagraph("cxb0", "mt", "mirror")).rejects.toMatchObject({
            status: 502,
        });
        expect(session.draft.units).toHaveLength(0);
        expect(session.activeBlockId).toBeNull();
        // A retry after the provider recovers still works.
        const { session: again } = sessionWith();
        await again.addParagraph("cxb0", "mt", "mirror");
        expect(again.draft.units).toHaveLength(1);
    });

    it("source mode copies the source block's rich text", async () => {
        const { session, translate } = sessionWith();
        const unit = await session.addParagraph("cxb0", "source");
        expect(translate).not.toHaveBeenCalled();
        expect(unit.origin).toBe("source");
        expect(unit.mtBaseline).toBeUndefined();
        expect(unit.current).toEqual(parseBlock(page.blocks[0]!.html).rich);
    });

    it("scratch mode starts empty", async () => {
        const { session } = sessionWith();
        const unit = await session.addParagraph("cxb1", "scratch");
        expect(unit).toMatchObject({
            origin: "scratch",
            current: { text: "", spans: [] },
        });
    });

    it("rejects unknown blocks and duplicates", async () => {
        const { session } = sessionWith();
        await expect(session.addParagraph("cxb9", "scratch")).rejects.toThrow("cxb9");
        await session.addParagraph("cxb0", "scratch");
        await expect(session.addParagraph("cxb0", "mt", "mirror")).rejects.toThrow(
            "already drafted",
        );
        expect(session.draft.units).toHaveLength(1);
    });

    it("mt mode requires a provider name", async () => {
        const { session } = sessionWith();
        await expect(session.addParagraph("cxb0", "mt")).rejects.toThrow("provider");
    });
});

describe("EditorSession editing", () => {
    it("replaces content and stamps updatedAt, keeping origin", async () => {
        const { session } = sessionWith();
        await session.addParagraph("cxb0", "mt", "mirror");
        const unit = session.editUnit("cxb0", { text: "Hola món. Adeu!", spans: [] });
        expect(unit.origin).toBe("mt");
        expect(unit.current.text).toBe("Hola món. Adeu!");
        expect(unit.updatedAt).toBeTruthy();
        expect(() => session.editUnit("cxb1", { text: "", spans: [] })).toThrow("cxb1");
    });

    it("removeParagraph drops the unit and clears focus", async () => {
        const { session } = sessionWith();
        await session.addParagraph("cxb0", "scratch");
        session.removeParagraph("cxb0");
        expect(session.draft.units).toHaveLength(0);
        expect(session.activeBlockId).toBeNull();
        session.removeParagraph("cxb0"); // idempotent
    });
});

describe("EditorSession.correspondingSourceRange", () => {
    it("maps the caret to the paired source sentence", async () => {
        const { session } = sessionWith();
        await session.addParagraph("cxb0", "mt", "mirror");
        // Caret inside "Hola món." -> first source sentence.
        expect(session.correspondingSourceRange(3)).toEqual({ start: 0, end: 11 });
        // Caret inside "Adeu." -> second source sentence.
        expect(session.correspondingSourceRange(12)).toEqual({ start: 12, end: 18 });
    });

    it("returns null between sentences and outside the text", async () => {
        const { session } = sessionWith();
        await session.addParagraph("cxb0", "mt", "mirror");
        expect(session.correspondingSourceRange(9)).toBeNull(); // the gap
        expect(session.correspondingSourceRange(999)).toBeNull();
    });

    it("changes exactly once when the caret walks over the boundary", async () => {
        const { session } = sessionWith();
        await session.addParagraph("cxb0", "mt", "mirror");
        const seen: Array<string> = [];
        for (let caret = 8; caret <= 11; caret++) {
            const range = session.correspondingSourceRange(caret);
            const key = range === null ? "none" : `${range.start}-${range.end}`;
            if (seen[seen.length - 1] !== key) seen.push(key);
        }
        // sentence one, the unhighlighted gap, sentence two: one effective
        // switch of highlight per region, no flicker inside a region.
        expect(seen).toEqual(["0-11", "none", "12-18"]);
    });

    it("returns null for unpaired sentences and non-mt units", async () => {
        const unpaired: TranslateResponse = {
            ...translated,
            correspondence: [[0, 1]],
        };
        const { session } = sessionWith(unpaired);
        await session.addParagraph("cxb0", "mt", "mirror");
        // Target sentence 0 has no pair; sentence 1 pairs with source 0.
        expect(session.correspondingSourceRange(3)).toBeNull();
        expect(session.correspondingSourceRange(12)).toEqual({ start: 0, end: 11 });

        const { session: scratch } = sessionWith();
        await scratch.addParagraph("cxb0", "scratch");
        expect(scratch.correspondingSourceRange(0)).toBeNull();
    });

    it("returns null with no active unit", () => {
        const { session } = sessionWith();
        expect(session.correspondingSourceRange(0)).toBeNull();
    });
});
