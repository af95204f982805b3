// HTML scaffolding for the two-column editor. Pure string builders so
// they can be tested without a layout engine; main.ts injects the output
// and measures real box heights before running the alignment pass.

import { alignPairs, type PairHeights, type PairLayout } from "./alignment.js";
import { renderBlock } from "./html.js";
import type { DraftBody, PageBlock, UnitJson } from "./types.js";

function spacer(height: number): string {
    if (height <= 0) return "";
    return `<div class="spacer" style="height:${height}px"></div>`;
}

export function renderSourceCell(block: PageBlock): string {
    return `<div class="cell source" data-block="${block.id}">${block.html}</div>`;
}

export function renderTargetCell(block: PageBlock, unit: UnitJson | undefined): string {
    if (unit === undefined) {
        return (
            `<div class="cell target empty" data-block="${block.id}">` +
            `<button data-add="mt">Translate</button>` +
            `<button data-add="source">Copy source</button>` +
            `<button data-add="scratch">Start empty</button>` +
            `</div>`
        );
    }
    const html = renderBlock(block.kind, block.level, unit.current);
    return (
        `<div class="cell target" data-block="${block.id}" data-origin="${unit.origin}">` +
        `<div class="unit" contenteditable="true">${html}</div>` +
        `</div>`
    );
}

export interface ColumnsHtml {
    source: string;
    target: string;
    layout: PairLayout[];
}

/**
 * Build both columns with spacers sized from the measured pair heights.
 * Pass zero heights on the first render; main.ts re-renders once real
 * measurements exist.
 */
export function renderColumns(
    blocks: readonly PageBlock[],
    draft: DraftBody,
    heights: readonly PairHeights[],
    gap = 0,
): ColumnsHtml {
    const layout = alignPairs(heights, gap);
    const source: string[] = [];
    const target: string[] = [];
    blocks.forEach((block, i) => {
        const row = layout[i] ?? { top: 0, sourceSpacer: 0, targetSpacer: 0, bottom: 0 };
        const unit = draft.units.find((u) => u.sourceBlockId === block.id);
        source.push(renderSourceCell(block), spacer(row.sourceSpacer));
        target.push(renderTargetCell(block, unit), spacer(row.targetSpacer));
    });
    return { source: source.join("\n"), target: target.join("\n"), layout };
}
