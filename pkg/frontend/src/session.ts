// Editing session state for one page + draft pair.
//
// The session never computes adaptation or provenance itself; machine
// translation, link rewriting, and review ratios all come from the
// service. This module just keeps the draft body consistent and maps
// caret positions to corresponding source sentences.

import type {
    DraftBody,
    PageBlock,
    PagePayload,
    RichTextJson,
    SentenceRange,
    TranslateResponse,
    UnitJson,
} from "./types.js";
import { parseBlock } from "./html.js";

/** The one service call the session makes itself. */
export interface TranslateApi {
    translate(
        provider: string,
        srcLang: string,
        tgtLang: string,
        blockHtml: string,
        threshold?: number,
    ): Promise<TranslateResponse>;
}

export type ParagraphMode = "mt" | "source" | "scratch";

function emptyRich(): RichTextJson {
    return { text: "", spans: [] };
}

function cloneRich(rich: RichTextJson): RichTextJson {
    return { text: rich.text, spans: rich.spans.map((s) => ({ ...s })) };
}

/** Index of the sentence range containing `offset`, or -1. */
export function sentenceIndexAt(ranges: readonly SentenceRange[], offset: number): number {
    for (let i = 0; i < ranges.length; i++) {
        const r = ranges[i]!;
        if (offset >= r.start && offset < r.end) return i;
    }
    return -1;
}

export class EditorSession {
    /** Last translate response per source block, kept for highlighting. */
    private readonly translations = new Map<string, TranslateResponse>();
    activeBlockId: string | null = null;

    constructor(
        readonly api: TranslateApi,
        readonly page: PagePayload,
        readonly draftId: string,
        readonly draft: DraftBody,
    ) {}

    sourceBlock(blockId: string): PageBlock {
        const block = this.page.blocks.find((b) => b.id === blockId);
        if (block === undefined) {
            throw new Error(`no source block ${blockId}`);
        }
        return block;
    }

    unitFor(blockId: string): UnitJson | undefined {
        return this.draft.units.find((u) => u.sourceBlockId === blockId);
    }

    /**
     * Start a translation unit for a source block. In "mt" mode the service
     * translates the block and the response is stored verbatim: the parsed
     * rich text becomes both the editable content and the frozen baseline
     * the provenance check compares against. If the provider fails, the
     * draft is left exactly as it was and the error propagates to the
     * caller, which offers a retry.
     */
    async addParagraph(
        blockId: string,
        mode: ParagraphMode,
        provider?: string,
    ): Promise<UnitJson> {
        const block = this.sourceBlock(blockId);
        if (this.unitFor(blockId) !== undefined) {
            throw new Error(`block ${blockId} is already drafted`);
        }
        let unit: UnitJson;
        if (mode === "mt") {
            if (provider === undefined) {
                throw new Error("mt mode needs a provider");
            }
            const response = await this.api.translate(
                provider,
                this.draft.sourceLang,
                this.draft.targetLang,
                block.html,
            );
            const parsed = parseBlock(response.html);
            unit = {
                sourceBlockId: blockId,
                origin: "mt",
                mtProvider: provider,
                mtBaseline: cloneRich(parsed.rich),
                current: parsed.rich,
            };
            this.translations.set(blockId, response);
        } else if (mode === "source") {
            unit = {
                sourceBlockId: blockId,
                origin: "source",
                current: parseBlock(block.html).rich,
            };
        } else {
            unit = { sourceBlockId: blockId, origin: "scratch", current: emptyRich() };
        }
        this.draft.units.push(unit);
        this.activeBlockId = blockId;
        return unit;
    }

    /** Replace a unit's content after an edit. Origin and baseline stay. */
    editUnit(blockId: string, rich: RichTextJson): UnitJson {
        const unit = this.unitFor(blockId);
        if (unit === undefined) {
            throw new Error(`block ${blockId} has no unit`);
        }
        unit.current = rich;
        unit.updatedAt = new Date().toISOString();
        this.activeBlockId = blockId;
        return unit;
    }

    removeParagraph(blockId: string): void {
        const at = this.draft.units.findIndex((u) => u.sourceBlockId === blockId);
        if (at === -1) return;
        this.draft.units.splice(at, 1);
        if (this.activeBlockId === blockId) this.activeBlockId = null;
    }

    /**
     * Source sentence range corresponding to the caret position in the
     * active unit, or null when the caret sits outside every translated
     * sentence (scratch text, punctuation between sentences, non-mt units).
     */
    correspondingSourceRange(caretOffset: number): SentenceRange | null {
        if (this.activeBlockId === null) return null;
        const response = this.translations.get(this.activeBlockId);
        if (response === undefined) return null;
        const t = sentenceIndexAt(response.targetSentences, caretOffset);
        if (t === -1) return null;
        const pair = response.correspondence.find(([, tgt]) => tgt === t);
        if (pair === undefined) return null;
        const block = this.sourceBlock(this.activeBlockId);
        return block.sentences[pair[0]] ?? null;
    }
}
