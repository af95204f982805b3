// Side-by-side column alignment. Each source block is paired with its
// translation slot; the pair occupies one row whose height is the taller
// of the two, and the shorter side gets a spacer below it so the next
// pair starts level again in both columns.

export interface PairHeights {
    sourceHeight: number;
    targetHeight: number;
}

export interface PairLayout {
    /** Offset of this pair's top edge from the column start. */
    top: number;
    /** Spacer to insert below the source block. */
    sourceSpacer: number;
    /** Spacer to insert below the target block. */
    targetSpacer: number;
    /** Offset of the row's bottom edge (before the inter-row gap). */
    bottom: number;
}

function round2(x: number): number {
    return Math.round(x * 100) / 100;
}

export function alignPairs(pairs: readonly PairHeights[], gap = 0): PairLayout[] {
    const rows: PairLayout[] = [];
    let top = 0;
    for (const pair of pairs) {
        const row = Math.max(pair.sourceHeight, pair.targetHeight);
        const layout = {
            top,
            sourceSpacer: round2(row - pair.sourceHeight),
            targetSpacer: round2(row - pair.targetHeight),
            bottom: top + row,
        };
        rows.push(layout);
        top = layout.bottom + gap;
    }
    return rows;
}

/**
 * Predict where each block lands when the blocks and spacers of one column
 * are stacked. Mirrors what the browser does with the spacer heights we set,
 * which lets tests check the alignment invariant without a layout engine.
 */
export function stackedTops(
    heights: readonly number[],
    spacers: readonly number[],
    gap = 0,
): number[] {
    const tops: number[] = [];
    let top = 0;
    for (let i = 0; i < heights.length; i++) {
        tops.push(top);
        top += heights[i]! + (spacers[i] ?? 0) + gap;
    }
    return tops;
}
