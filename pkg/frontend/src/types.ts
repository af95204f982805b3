// Wire types for the transmark JSON API, /api/v1.
// Field names match the service responses exactly.

export interface SentenceRange {
    start: number;
    end: number;
}

export interface PageBlock {
    id: string;
    kind: string;
    level: number | null;
    html: string;
    sentences: SentenceRange[];
}

export interface PagePayload {
    lang: string;
    title: string;
    blocks: PageBlock[];
    categories: string[];
}

export type SpanJson =
    | { type: "link"; start: number; end: number; target: string; missing: boolean }
    | { type: "strong"; start: number; end: number }
    | { type: "emphasis"; start: number; end: number }
    | { type: "opaque"; start: number; end: number; payload: string; key: string };

export interface RichTextJson {
    text: string;
    spans: SpanJson[];
}

export type UnitOrigin = "mt" | "source" | "scratch";

export interface UnitJson {
    sourceBlockId: string;
    origin: UnitOrigin;
    current: RichTextJson;
    mtProvider?: string;
    mtBaseline?: RichTextJson;
    updatedAt?: string;
}

export interface DraftBody {
    sourceLang: string;
    targetLang: string;
    sourceTitle: string;
    targetTitle: string;
    units: UnitJson[];
    categories: string[];
}

export interface StoredDraft extends DraftBody {
    schemaVersion: number;
    id: string;
    revision: number;
    createdAt: string;
    updatedAt: string;
}

export interface DraftSummary {
    id: string;
    sourceLang: string;
    targetLang: string;
    sourceTitle: string;
    targetTitle: string;
    revision: number;
    updatedAt: string;
}

export interface TranslateResponse {
    html: string;
    correspondence: [number, number][];
    targetSentences: SentenceRange[];
    droppedSpans: number;
    links: { adapted: number; missing: number; unknown: number };
}

export interface ProvenanceWarningJson {
    subject: string;
    ratio: number;
    threshold: number;
}

export interface ProvenancePayload {
    perUnit: Record<string, number>;
    overall: number;
    warnings: ProvenanceWarningJson[];
}

export interface PublishResponse {
    html: string;
    path: string;
    provenance: ProvenancePayload;
}

export interface ProviderInfo {
    name: string;
    kind: string;
    pairs: [string, string][];
}

export interface PairCount {
    sourceLang: string;
    targetLang: string;
    published: number;
}

export interface StatsPayload {
    deletionRatio: number | null;
    pairCounts: PairCount[];
}
