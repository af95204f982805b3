// Browser entry point: loads a page and its draft, renders the aligned
// columns, and wires editing, autosave, and publishing. All engine work
// happens on the service; this file is glue.

import { ApiClient, ApiError } from "./api.js";
import type { PairHeights } from "./alignment.js";
import { Autosaver } from "./autosave.js";
import { parseBlock } from "./html.js";
import { provenanceView, renderWarnings } from "./provenance.js";
import { renderColumns } from "./render.js";
import { EditorSession, type ParagraphMode } from "./session.js";
import type { DraftBody, StoredDraft } from "./types.js";

function must<T extends Element>(root: ParentNode, selector: string): T {
    const el = root.querySelector(selector);
    if (el === null) throw new Error(`missing element ${selector}`);
    return el as T;
}

function caretOffsetIn(cell: HTMLElement): number | null {
    const sel = window.getSelection();
    if (sel === null || sel.rangeCount === 0) return null;
    const range = sel.getRangeAt(0);
    if (!cell.contains(range.startContainer)) return null;
    const probe = range.cloneRange();
    probe.selectNodeContents(cell);
    probe.setEnd(range.startContainer, range.startOffset);
    // Code points, not UTF-16 units, to match service offsets.
    return Array.from(probe.toString()).length;
}

async function boot(): Promise<void> {
    const params = new URLSearchParams(window.location.search);
    const lang = params.get("lang") ?? "es";
    const title = params.get("title") ?? "Berlín";
    const draftId = params.get("draft");
    if (draftId === null) {
        document.body.textContent = "missing ?draft= parameter";
        return;
    }

    const api = new ApiClient("");
    const page = await api.getPage(lang, title);
    const stored: StoredDraft = await api.getDraft(draftId);
    const draft: DraftBody = {
        sourceLang: stored.sourceLang,
        targetLang: stored.targetLang,
        sourceTitle: stored.sourceTitle,
        targetTitle: stored.targetTitle,
        units: stored.units,
        categories: stored.categories,
    };
    const session = new EditorSession(api, page, draftId, draft);

    const statusEl = must<HTMLElement>(document, "#save-state");
    const saver = new Autosaver(
        {
            save: (body, rev) => api.putDraft(draftId, rev, body),
            reload: () => api.getDraft(draftId),
            onState: (state, detail) => {
                statusEl.dataset.state = state;
                statusEl.textContent = detail ? `${state}: ${detail}` : state;
            },
        },
        stored.revision,
    );

    const sourceCol = must<HTMLElement>(document, "#source-column");
    const targetCol = must<HTMLElement>(document, "#target-column");
    const warnBox = must<HTMLElement>(document, "#warnings");
    const providerSel = must<HTMLSelectElement>(document, "#provider");

    for (const p of await api.providers({ from: draft.sourceLang, to: draft.targetLang })) {
        const opt = document.createElement("option");
        opt.value = p.name;
        opt.textContent = `${p.name} (${p.kind})`;
        providerSel.append(opt);
    }

    const measure = (): PairHeights[] =>
        page.blocks.map((block) => {
            const src = sourceCol.querySelector(`[data-block="${block.id}"]`);
            const tgt = targetCol.querySelector(`[data-block="${block.id}"]`);
            return {
                sourceHeight: src instanceof HTMLElement ? src.offsetHeight : 0,
                targetHeight: tgt instanceof HTMLElement ? tgt.offsetHeight : 0,
            };
        });

    let rendering = false;
    const redraw = (heights?: PairHeights[]): void => {
        rendering = true;
        const columns = renderColumns(
            page.blocks,
            draft,
            heights ?? page.blocks.map(() => ({ sourceHeight: 0, targetHeight: 0 })),
            8,
        );
        sourceCol.innerHTML = columns.source;
        targetCol.innerHTML = columns.target;
        rendering = false;
        if (heights === undefined) {
            // Second pass with real box heights so the pairs line up.
            requestAnimationFrame(() => redraw(measure()));
        }
    };

    const noteEdit = (): void => saver.noteEdit(draft);

    targetCol.addEventListener("click", (ev) => {
        const button = ev.target;
        if (!(button instanceof HTMLElement) || button.dataset.add === undefined) return;
        const cell = button.closest("[data-block]");
        if (!(cell instanceof HTMLElement) || cell.dataset.block === undefined) return;
        const mode = button.dataset.add as ParagraphMode;
        session
            .addParagraph(cell.dataset.block, mode, providerSel.value)
            .then(() => {
                noteEdit();
                redraw();
            })
            .catch((err: unknown) => {
                // Provider failure: draft untouched, offer a retry in place.
                button.textContent = "Translate (retry)";
                cell.dataset.error =
                    err instanceof ApiError ? err.detail : String(err);
            });
    });

    targetCol.addEventListener("input", (ev) => {
        if (rendering) return;
        const cell = (ev.target as HTMLElement).closest("[data-block]");
        if (!(cell instanceof HTMLElement) || cell.dataset.block === undefined) return;
        const editable = cell.querySelector(".unit");
        if (!(editable instanceof HTMLElement)) return;
        try {
            const parsed = parseBlock(editable.innerHTML);
            session.editUnit(cell.dataset.block, parsed.rich);
        } catch {
            // Browser produced markup outside the subset; fall back to text.
            session.editUnit(cell.dataset.block, {
                text: editable.textContent ?? "",
                spans: [],
            });
        }
        noteEdit();
    });

    document.addEventListener("selectionchange", () => {
        for (const el of sourceCol.querySelectorAll(".hl")) el.classList.remove("hl");
        const active = document.activeElement;
        if (!(active instanceof HTMLElement)) return;
        const cell = active.closest("[data-block]");
        if (!(cell instanceof HTMLElement) || cell.dataset.block === undefined) return;
        session.activeBlockId = cell.dataset.block;
        const caret = caretOffsetIn(active);
        if (caret === null) return;
        const range = session.correspondingSourceRange(caret);
        if (range === null) return;
        const srcCell = sourceCol.querySelector(`[data-block="${cell.dataset.block}"]`);
        if (srcCell instanceof HTMLElement) srcCell.classList.add("hl");
    });

    must<HTMLButtonElement>(document, "#publish").addEventListener("click", () => {
        void (async () => {
            await saver.flushNow();
            try {
                const result = await api.publish(draftId);
                const view = provenanceView(result.provenance);
                warnBox.innerHTML = renderWarnings(view);
                warnBox.hidden = view.banner === null && view.markers.length === 0;
                must<HTMLElement>(document, "#published-path").textContent = result.path;
            } catch (err) {
                warnBox.hidden = false;
                warnBox.textContent =
                    err instanceof ApiError ? err.detail : String(err);
            }
        })();
    });

    const publishButton = must<HTMLButtonElement>(document, "#publish");
    const refreshPublish = (): void => {
        publishButton.disabled = draft.units.length === 0;
    };
    targetCol.addEventListener("input", refreshPublish);
    targetCol.addEventListener("click", () => setTimeout(refreshPublish, 0));
    refreshPublish();

    redraw();
}

void boot().catch((err: unknown) => {
    document.body.textContent = `failed to start: ${String(err)}`;
});
