// Publish-flow warning display. The service's review report is shown
// verbatim: one marker per unit warning and a page-level banner when the
// overall ratio trips the threshold. Nothing is recomputed client side.

import type { ProvenancePayload, ProvenanceWarningJson } from "./types.js";

export interface ProvenanceView {
    /** Page-level warning, present when the overall ratio is too high. */
    banner: ProvenanceWarningJson | null;
    /** Per-unit warnings, in report order, keyed by source block id. */
    markers: ProvenanceWarningJson[];
    perUnit: Record<string, number>;
    overall: number;
}

export function provenanceView(report: ProvenancePayload): ProvenanceView {
    let banner: ProvenanceWarningJson | null = null;
    const markers: ProvenanceWarningJson[] = [];
    for (const warning of report.warnings) {
        if (warning.subject === "overall") banner = warning;
        else markers.push(warning);
    }
    return { banner, markers, perUnit: report.perUnit, overall: report.overall };
}

function pct(ratio: number): string {
    return `${Math.round(ratio * 1000) / 10}%`;
}

function escape(s: string): string {
    return s
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}

/**
 * Render the warning area of the publish view. Returns "" when there is
 * nothing to warn about so the caller can hide the container.
 */
export function renderWarnings(view: ProvenanceView): string {
    const parts: string[] = [];
    if (view.banner !== null) {
        parts.push(
            `<div class="prov-banner" data-ratio="${view.banner.ratio}"` +
                ` data-threshold="${view.banner.threshold}">` +
                `${pct(view.banner.ratio)} of this draft is unmodified machine ` +
                `translation (limit ${pct(view.banner.threshold)}). ` +
                `Review it before publishing.</div>`,
        );
    }
    for (const warning of view.markers) {
        parts.push(
            `<span class="prov-marker" data-block="${escape(warning.subject)}"` +
                ` data-ratio="${warning.ratio}" data-threshold="${warning.threshold}">` +
                `${pct(warning.ratio)} machine translation</span>`,
        );
    }
    return parts.join("\n");
}
