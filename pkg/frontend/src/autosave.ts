// Debounced draft autosave with optimistic-concurrency recovery.
//
// Edits are coalesced: the timer restarts on every edit and only the
// latest draft body is sent. A 409 from the service means another tab
// or client moved the draft forward; the recovery path reloads the
// stored draft once, reapplies the local edit on top of the fresh
// revision, and retries a single time. A second conflict in a row is
// surfaced instead of retried so the user decides what wins.

import { ConflictError } from "./api.js";
import type { DraftBody, StoredDraft } from "./types.js";

export type SaveState = "idle" | "dirty" | "saving" | "saved" | "conflict" | "error";

export interface AutosaveDeps {
    save(draft: DraftBody, expectedRevision: number): Promise<number>;
    reload(): Promise<StoredDraft>;
    onState?(state: SaveState, detail?: string): void;
    debounceMs?: number;
}

export class Autosaver {
    state: SaveState = "idle";
    private revision: number;
    private pending: DraftBody | null = null;
    private timer: ReturnType<typeof setTimeout> | null = null;
    private saving = false;

    constructor(
        private readonly deps: AutosaveDeps,
        initialRevision: number,
    ) {
        this.revision = initialRevision;
    }

    get currentRevision(): number {
        return this.revision;
    }

    /** Record an edit and restart the quiet-period timer. */
    noteEdit(draft: DraftBody): void {
        this.pending = draft;
        if (this.state !== "conflict" && this.state !== "error") {
            this.setState("dirty");
        }
        this.schedule();
    }

    /** Force the pending draft out immediately (e.g. before publishing). */
    async flushNow(): Promise<void> {
        if (this.timer !== null) {
            clearTimeout(this.timer);
            this.timer = null;
        }
        await this.flush();
    }

    dispose(): void {
        if (this.timer !== null) {
            clearTimeout(this.timer);
            this.timer = null;
        }
    }

    private schedule(): void {
        if (this.timer !== null) clearTimeout(this.timer);
        this.timer = setTimeout(() => {
            this.timer = null;
            void this.flush();
        }, this.deps.debounceMs ?? 3000);
    }

    private setState(state: SaveState, detail?: string): void {
        this.state = state;
        this.deps.onState?.(state, detail);
    }

    private async flush(): Promise<void> {
        if (this.saving) return; // the running save reschedules leftovers
        const draft = this.pending;
        if (draft === null) return;
        this.pending = null;
        this.saving = true;
        this.setState("saving");
        try {
            this.revision = await this.deps.save(draft, this.revision);
            if (this.pending === null) this.setState("saved");
        } catch (err) {
            if (err instanceof ConflictError) {
                await this.recover(draft, err);
            } else {
                if (this.pending === null) this.pending = draft;
                this.setState("error", err instanceof Error ? err.message : String(err));
            }
        } finally {
            this.saving = false;
        }
        if (this.pending !== null && this.timer === null && this.state !== "conflict"
            && this.state !== "error") {
            this.schedule();
        }
    }

    private async recover(draft: DraftBody, first: ConflictError): Promise<void> {
        let stored: StoredDraft;
        try {
            stored = await this.deps.reload();
        } catch (err) {
            this.pending = draft;
            this.setState("error", err instanceof Error ? err.message : String(err));
            return;
        }
        this.revision = stored.revision;
        try {
            this.revision = await this.deps.save(draft, stored.revision);
            if (this.pending === null) this.setState("saved");
        } catch (err) {
            this.pending = draft;
            if (err instanceof ConflictError) {
                this.setState(
                    "conflict",
                    `stored revision ${err.storedRevision ?? first.storedRevision}`,
                );
            } else {
                this.setState("error", err instanceof Error ? err.message : String(err));
            }
        }
    }
}
