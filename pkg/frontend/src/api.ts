// Thin typed client over fetch. Every method maps to one endpoint and
// does no post-processing beyond JSON decoding and error mapping, so the
// rest of the app stays a pure consumer of service data.

import type {
    DraftBody,
    DraftSummary,
    PagePayload,
    ProviderInfo,
    PublishResponse,
    StatsPayload,
    StoredDraft,
    TranslateResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
    constructor(
        readonly status: number,
        readonly detail: string,
    ) {
        super(detail);
        this.name = "ApiError";
    }
}

/** A stale save: the service holds `storedRevision`, not what we sent. */
export class ConflictError extends ApiError {
    constructor(
        readonly storedRevision: number,
        detail: string,
    ) {
        super(409, detail);
        this.name = "ConflictError";
    }
}

async function errorOf(response: Response): Promise<ApiError> {
    let detail = response.statusText || `HTTP ${response.status}`;
    let stored: number | undefined;
    try {
        const body = await response.json();
        if (typeof body?.detail === "string") detail = body.detail;
        if (typeof body?.storedRevision === "number") stored = body.storedRevision;
    } catch {
        // non-JSON error body; keep the status text
    }
    if (response.status === 409 && stored !== undefined) {
        return new ConflictError(stored, detail);
    }
    return new ApiError(response.status, detail);
}

export class ApiClient {
    constructor(
        private readonly baseUrl: string = "",
        private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
    ) {}

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const response = await this.fetchFn(this.baseUrl + "/api/v1" + path, init);
        if (!response.ok) throw await errorOf(response);
        return (await response.json()) as T;
    }

    private post<T>(path: string, body?: unknown): Promise<T> {
        return this.request<T>(path, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
    }

    getPage(lang: string, title: string): Promise<PagePayload> {
        const slug = encodeURIComponent(title.replace(/ /g, "_"));
        return this.request(`/page/${encodeURIComponent(lang)}/${slug}`);
    }

    translate(
        provider: string,
        srcLang: string,
        tgtLang: string,
        blockHtml: string,
        threshold?: number,
    ): Promise<TranslateResponse> {
        const body: Record<string, unknown> = { provider, srcLang, tgtLang, blockHtml };
        if (threshold !== undefined) body.threshold = threshold;
        return this.post("/translate", body);
    }

    getDraft(id: string): Promise<StoredDraft> {
        return this.request(`/draft/${encodeURIComponent(id)}`);
    }

    async putDraft(id: string, expectedRevision: number, draft: DraftBody): Promise<number> {
        const result = await this.request<{ revision: number }>(
            `/draft/${encodeURIComponent(id)}`,
            {
                method: "PUT",
                headers: { "Content-Type": "application/json" },
                body: JSON.stringify({ expectedRevision, draft }),
            },
        );
        return result.revision;
    }

    async listDrafts(pair?: { from: string; to: string }): Promise<DraftSummary[]> {
        const query = pair
            ? `?from=${encodeURIComponent(pair.from)}&to=${encodeURIComponent(pair.to)}`
            : "";
        const result = await this.request<{ drafts: DraftSummary[] }>(`/drafts${query}`);
        return result.drafts;
    }

    publish(id: string): Promise<PublishResponse> {
        return this.post(`/publish/${encodeURIComponent(id)}`);
    }

    async providers(pair?: { from: string; to: string }): Promise<ProviderInfo[]> {
        const query = pair
            ? `?from=${encodeURIComponent(pair.from)}&to=${encodeURIComponent(pair.to)}`
            : "";
        const result = await this.request<{ providers: ProviderInfo[] }>(`/providers${query}`);
        return result.providers;
    }

    stats(): Promise<StatsPayload> {
        return this.request("/stats");
    }
}
