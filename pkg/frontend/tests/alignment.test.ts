import { describe, expect, it } from "vitest";
import { alignPairs, stackedTops, type PairHeights } from "../src/alignment.js";

// Ten source blocks with awkward fractional heights, as a browser would
// measure them.
function fixture(): PairHeights[] {
    const sourceHeights = [42.5, 118.66, 37.33, 201.8, 55, 55, 94.12, 23.4, 160.75, 48];
    return sourceHeights.map((h) => ({ sourceHeight: h, targetHeight: 28 }));
}

function columnTops(pairs: PairHeights[], gap: number) {
    const layout = alignPairs(pairs, gap);
    const src = stackedTops(
        pairs.map((p) => p.sourceHeight),
        layout.map((r) => r.sourceSpacer),
        gap,
    );
    const tgt = stackedTops(
        pairs.map((p) => p.targetHeight),
        layout.map((r) => r.targetSpacer),
        gap,
    );
    return { src, tgt };
}

function expectAligned(pairs: PairHeights[], gap: number): void {
    const { src, tgt } = columnTops(pairs, gap);
    for (let i = 0; i < pairs.length; i++) {
        expect(Math.abs(src[i]! - tgt[i]!)).toBeLessThan(1);
    }
}

describe("alignPairs", () => {
    it("keeps ten pairs level while three translations are added", () => {
        const pairs = fixture();
        expectAligned(pairs, 8);

        // Translations land in blocks 1, 3 and 7; each changes the target
        // height (taller than the source, shorter, and much taller). The
        // columns must stay aligned after every single change.
        pairs[1]!.targetHeight = 150.2;
        expectAligned(pairs, 8);
        pairs[3]!.targetHeight = 96.33;
        expectAligned(pairs, 8);
        pairs[7]!.targetHeight = 310.9;
        expectAligned(pairs, 8);

        // Top offsets agree pairwise, not just in total.
        const { src, tgt } = columnTops(pairs, 8);
        src.forEach((top, i) => {
            expect(Math.abs(top - tgt[i]!)).toBeLessThan(1);
        });
    });

    it("puts the spacer under the shorter side only", () => {
        const rows = alignPairs([
            { sourceHeight: 100, targetHeight: 40 },
            { sourceHeight: 30, targetHeight: 90 },
            { sourceHeight: 50, targetHeight: 50 },
        ]);
        expect(rows[0]).toMatchObject({ sourceSpacer: 0, targetSpacer: 60 });
        expect(rows[1]).toMatchObject({ sourceSpacer: 60, targetSpacer: 0 });
        expect(rows[2]).toMatchObject({ sourceSpacer: 0, targetSpacer: 0 });
    });

    it("accumulates tops row by row including the gap", () => {
        const rows = alignPairs(
            [
                { sourceHeight: 10, targetHeight: 20 },
                { sourceHeight: 5, targetHeight: 5 },
            ],
            4,
        );
        expect(rows[0]).toMatchObject({ top: 0, bottom: 20 });
        expect(rows[1]).toMatchObject({ top: 24, bottom: 29 });
    });

    it("handles an empty page", () => {
        expect(alignPairs([])).toEqual([]);
    });

    it("rounds spacer heights to what CSS pixels can express", () => {
        const rows = alignPairs([{ sourceHeight: 10.333, targetHeight: 31.007 }]);
        expect(rows[0]!.sourceSpacer).toBe(20.67);
        expect(rows[0]!.targetSpacer).toBe(0);
    });
});
