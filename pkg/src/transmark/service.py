"""HTTP facade over the translation engine.

Every endpoint is a thin composition of library calls: parse, adapt, store,
evaluate, serialize.  Handlers validate transport concerns (schemas, status
codes) and add nothing else, so a response can always be reproduced by
calling the underlying functions directly.

Routes (all under ``/api/v1``):

* ``GET  /page/{lang}/{title}``   segmented source article
* ``POST /translate``             adapt one block for a language pair
* ``GET  /draft/{id}``            stored draft
* ``PUT  /draft/{id}``            optimistic save (``expectedRevision``)
* ``GET  /drafts``                summaries, optional pair filter
* ``POST /publish/{id}``          final HTML + provenance report
* ``GET  /providers``             registry projection
* ``GET  /stats``                 deletion ratio + per-pair publish counts
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from datetime import datetime, timezone
from urllib.parse import quote

import requests
from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .config import ServiceConfig, build_registry, check_inputs
from .docmodel import (AnnotatedDoc, Block, ParseError, block_id,
                       parse_document, serialize_block, serialize_document)
from .drafts import (Draft, DraftNotFoundError, DraftStore,
                     DraftValidationError, RevisionConflictError,
                     TranslationUnit, draft_to_json, rich_text_from_json)
from .entity_map import adapt_links_in_doc, load_entity_map
from .matcher import DEFAULT_THRESHOLD
from .providers import ProtocolError, TransportError, UnsupportedPairError
from .provenance import ProvenanceReport, evaluate_draft
from .segmenter import default_abbreviations, segment_sentences
from .telemetry import (KIND_DRAFT_CREATED, KIND_PUBLISHED, Event, EventLog,
                        deletion_ratio, pair_counts)
from .transfer import adapt_rich


class PageNotFound(Exception):
    def __init__(self, lang: str, title: str):
        super().__init__(f"no article {title!r} in {lang!r}")
        self.lang = lang
        self.title = title


class PageFetchError(Exception):
    """The article source could not be retrieved (upstream trouble)."""


def _safe_title(title: str) -> str:
    """Title as a file name; refuses anything that could leave the directory."""
    name = title.replace(" ", "_")
    if not name or "/" in name or "\\" in name or name.startswith("."):
        raise PageNotFound("?", title)
    return name


@dataclass(frozen=True, slots=True)
class CorpusFetcher:
    """Articles as files: ``<root>/<lang>/<Title_with_underscores>.html``."""

    root: str

    def fetch(self, lang: str, title: str) -> str:
        if "/" in lang or "\\" in lang or lang.startswith("."):
            raise PageNotFound(lang, title)
        path = os.path.join(self.root, lang, _safe_title(title) + ".html")
        try:
            with open(path, encoding="utf-8") as fh:
                return fh.read()
        except FileNotFoundError:
            raise PageNotFound(lang, title) from None


@dataclass(frozen=True)
class RemoteFetcher:
    """Fetch article HTML from a remote endpoint serving ``/{lang}/{title}``."""

    base_url: str
    timeout: float = 10.0

    def fetch(self, lang: str, title: str) -> str:
        url = f"{self.base_url.rstrip('/')}/{quote(lang)}/{quote(_safe_title(title))}"
        try:
            resp = requests.get(url, timeout=self.timeout)
        except requests.RequestException as exc:
            raise PageFetchError(f"fetching {title!r}: {exc}") from exc
        if resp.status_code == 404:
            raise PageNotFound(lang, title)
        if resp.status_code != 200:
            raise PageFetchError(f"fetching {title!r}: HTTP {resp.status_code}")
        return resp.text


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


class RichBody(BaseModel):
    text: str
    spans: list[dict] = []


class UnitBody(BaseModel):
    sourceBlockId: str
    origin: str
    current: RichBody
    mtProvider: str | None = None
    mtBaseline: RichBody | None = None
    updatedAt: str | None = None


class DraftBody(BaseModel):
    sourceLang: str
    targetLang: str
    sourceTitle: str
    targetTitle: str
    units: list[UnitBody]
    categories: list[str] = []


class SaveRequest(BaseModel):
    expectedRevision: int = Field(ge=0)
    draft: DraftBody


class TranslateRequest(BaseModel):
    provider: str
    srcLang: str
    tgtLang: str
    blockHtml: str
    threshold: float | None = Field(default=None, ge=0.0, le=1.0)


def _provenance_payload(report: ProvenanceReport) -> dict:
    return {
        "perUnit": {uid: ratio for uid, ratio in report.per_unit.items()},
        "overall": report.overall,
        "warnings": [{"subject": w.subject, "ratio": w.ratio,
                      "threshold": w.threshold} for w in report.warnings],
    }


def create_app(config: ServiceConfig, fetcher=None) -> FastAPI:
    check_inputs(config)
    emap = load_entity_map(config.entity_map_path)
    registry = build_registry(config)
    store = DraftStore(config.draft_dir)
    log = EventLog(config.event_log_path)
    os.makedirs(config.published_dir, exist_ok=True)
    if fetcher is None:
        fetcher = CorpusFetcher(config.corpus_dir)

    app = FastAPI(title="translation engine", version="1")

    def _error(status: int):
        def handler(request: Request, exc: Exception):
            body = {"detail": str(exc)}
            if isinstance(exc, RevisionConflictError):
                body["storedRevision"] = exc.stored
            return JSONResponse(status_code=status, content=body)
        return handler

    app.add_exception_handler(PageNotFound, _error(404))
    app.add_exception_handler(DraftNotFoundError, _error(404))
    app.add_exception_handler(RevisionConflictError, _error(409))
    app.add_exception_handler(DraftValidationError, _error(422))
    app.add_exception_handler(UnsupportedPairError, _error(400))
    app.add_exception_handler(TransportError, _error(502))
    app.add_exception_handler(ProtocolError, _error(502))
    app.add_exception_handler(PageFetchError, _error(502))

    def _source_doc(lang: str, title: str) -> AnnotatedDoc:
        markup = fetcher.fetch(lang, title)
        return parse_document(markup, lang, title)

    @app.get("/api/v1/page/{lang}/{title}")
    def get_page(lang: str, title: str):
        title = title.replace("_", " ")
        doc = _source_doc(lang, title)
        abbreviations = default_abbreviations(lang)
        blocks = []
        for block in doc.blocks:
            ranges = segment_sentences(block.content, lang, abbreviations)
            blocks.append({
                "id": block.id,
                "kind": block.kind,
                "level": block.level,
                "html": serialize_block(block),
                "sentences": [{"start": r.start, "end": r.end} for r in ranges],
            })
        return {"lang": doc.lang, "title": doc.title,
                "blocks": blocks, "categories": list(doc.categories)}

    @app.post("/api/v1/translate")
    def translate_block(req: TranslateRequest):
        provider = registry.get(req.provider)
        if provider is None:
            return JSONResponse(status_code=400,
                                content={"detail": f"unknown provider {req.provider!r}"})
        if not provider.supports(req.srcLang, req.tgtLang):
            return JSONResponse(
                status_code=400,
                content={"detail": f"provider {req.provider!r} does not translate "
                                   f"{req.srcLang}->{req.tgtLang}"})
        try:
            doc = parse_document(req.blockHtml, req.srcLang, "")
        except ParseError as exc:
            return JSONResponse(status_code=400,
                                content={"detail": f"malformed block: {exc}"})
        if len(doc.blocks) != 1:
            return JSONResponse(
                status_code=400,
                content={"detail": f"expected exactly one block, got {len(doc.blocks)}"})
        block = doc.blocks[0]
        threshold = DEFAULT_THRESHOLD if req.threshold is None else req.threshold
        result = adapt_rich(provider, block.content, req.srcLang, req.tgtLang,
                            threshold=threshold,
                            abbreviations=default_abbreviations(req.srcLang))
        adapted = Block(id=block.id, kind=block.kind, content=result.rich,
                        level=block.level)
        holder = AnnotatedDoc(lang=req.srcLang, title="", blocks=(adapted,),
                              categories=())
        linked, report = adapt_links_in_doc(holder, emap, req.tgtLang)
        return {
            "html": serialize_block(linked.blocks[0]),
            "correspondence": [[s, t] for s, t in result.correspondence],
            "targetSentences": [{"start": r.start, "end": r.end}
                                for r in result.target_sentences],
            "droppedSpans": len(result.dropped),
            "links": {"adapted": report.adapted, "missing": report.missing,
                      "unknown": report.unknown},
        }

    def _build_draft(draft_id: str, body: DraftBody) -> Draft:
        if any(c in body.targetTitle for c in "/\\") or body.targetTitle.startswith("."):
            raise DraftValidationError(
                f"target title {body.targetTitle!r} is not publishable")
        if len(set(body.categories)) != len(body.categories):
            raise DraftValidationError("categories must be unique")
        try:
            source = _source_doc(body.sourceLang, body.sourceTitle)
        except PageNotFound:
            raise DraftValidationError(
                f"source article {body.sourceTitle!r} ({body.sourceLang}) not found")
        known_ids = {b.id for b in source.blocks}
        now = _now()
        units = []
        for unit in body.units:
            if unit.sourceBlockId not in known_ids:
                raise DraftValidationError(
                    f"unit references unknown block {unit.sourceBlockId!r}")
            baseline = unit.mtBaseline
            units.append(TranslationUnit(
                source_block_id=unit.sourceBlockId,
                origin=unit.origin,
                current=rich_text_from_json(unit.current.model_dump()),
                mt_provider=unit.mtProvider,
                mt_baseline=rich_text_from_json(baseline.model_dump())
                if baseline is not None else None,
                updated_at=unit.updatedAt or now,
            ))
        try:
            stored = store.load_draft(draft_id)
            created_at = stored.created_at
        except DraftNotFoundError:
            created_at = now
        return Draft(
            id=draft_id,
            source_lang=body.sourceLang,
            target_lang=body.targetLang,
            source_title=body.sourceTitle,
            target_title=body.targetTitle,
            units=tuple(units),
            categories=tuple(body.categories),
            created_at=created_at,
            updated_at=now,
        )

    @app.get("/api/v1/draft/{draft_id}")
    def get_draft(draft_id: str):
        return draft_to_json(store.load_draft(draft_id))

    @app.put("/api/v1/draft/{draft_id}")
    def put_draft(draft_id: str, req: SaveRequest):
        draft = _build_draft(draft_id, req.draft)
        revision = store.save_draft(draft, req.expectedRevision)
        if req.expectedRevision == 0:
            log.record_event(Event(
                kind=KIND_DRAFT_CREATED, source_lang=draft.source_lang,
                target_lang=draft.target_lang, title=draft.target_title,
                timestamp=_now()))
        return {"revision": revision}

    @app.get("/api/v1/drafts")
    def get_drafts(pair_from: str | None = Query(default=None, alias="from"),
                   pair_to: str | None = Query(default=None, alias="to")):
        pair = (pair_from, pair_to) if pair_from and pair_to else None
        return {"drafts": [{
            "id": s.id, "sourceLang": s.source_lang, "targetLang": s.target_lang,
            "sourceTitle": s.source_title, "targetTitle": s.target_title,
            "revision": s.revision, "updatedAt": s.updated_at,
        } for s in store.list_drafts(pair)]}

    @app.post("/api/v1/publish/{draft_id}")
    def publish(draft_id: str):
        draft = store.load_draft(draft_id)
        if not draft.units:
            raise DraftValidationError("draft has no units")
        try:
            source = _source_doc(draft.source_lang, draft.source_title)
        except PageNotFound:
            raise DraftValidationError(
                f"source article {draft.source_title!r} "
                f"({draft.source_lang}) not found")
        order = {b.id: (i, b.kind, b.level) for i, b in enumerate(source.blocks)}
        for unit in draft.units:
            if unit.source_block_id not in order:
                raise DraftValidationError(
                    f"unit references unknown block {unit.source_block_id!r}")
        ordered = sorted(draft.units, key=lambda u: order[u.source_block_id][0])
        blocks = tuple(
            Block(id=block_id(i), kind=order[u.source_block_id][1],
                  content=u.current, level=order[u.source_block_id][2])
            for i, u in enumerate(ordered))
        out = AnnotatedDoc(lang=draft.target_lang, title=draft.target_title,
                           blocks=blocks, categories=draft.categories)
        report = evaluate_draft(draft, config.provenance)
        html_text = serialize_document(out)
        rel_path = os.path.join(draft.target_lang, _safe_title(draft.target_title) + ".html")
        full_path = os.path.join(config.published_dir, rel_path)
        os.makedirs(os.path.dirname(full_path), exist_ok=True)
        with open(full_path, "w", encoding="utf-8") as fh:
            fh.write(html_text)
        log.record_event(Event(
            kind=KIND_PUBLISHED, source_lang=draft.source_lang,
            target_lang=draft.target_lang, title=draft.target_title,
            timestamp=_now()))
        return {"html": html_text, "path": rel_path,
                "provenance": _provenance_payload(report)}

    @app.get("/api/v1/providers")
    def get_providers(pair_from: str | None = Query(default=None, alias="from"),
                      pair_to: str | None = Query(default=None, alias="to")):
        if pair_from and pair_to:
            providers = registry.for_pair(pair_from, pair_to)
        else:
            providers = registry.all()
        return {"providers": [p.describe() for p in providers]}

    @app.get("/api/v1/stats")
    def get_stats():
        counts = pair_counts(log)
        rows = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return {
            "deletionRatio": deletion_ratio(log),
            "pairCounts": [{"sourceLang": src, "targetLang": tgt, "published": n}
                           for (src, tgt), n in rows],
        }

    return app
