"""Revisioned on-disk storage for in-progress translations.

A draft is one JSON file under the store directory (``drafts/<id>.json``,
``schemaVersion`` 1).  Saves are optimistic: the caller states the revision
it believes is stored, and the write only lands when that matches, so two
autosave timers racing each other cannot silently overwrite one another.
Commits go through write-to-temp plus :func:`os.replace`, which keeps the
previous version readable if the process dies mid-save.

Timestamps are caller-provided ISO-8601 strings; the store only ever touches
the revision counter.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field, replace

from .docmodel import (Emphasis, Link, Opaque, RichText, Span, Strong,
                       check_rich_text)

SCHEMA_VERSION = 1

ORIGIN_MT = "mt"
ORIGIN_SOURCE = "source"
ORIGIN_SCRATCH = "scratch"
_ORIGINS = (ORIGIN_MT, ORIGIN_SOURCE, ORIGIN_SCRATCH)

# Seam for fault injection in tests: the commit step of every save.
_rename = os.replace


class DraftError(Exception):
    pass


class DraftNotFoundError(DraftError):
    def __init__(self, draft_id: str):
        super().__init__(f"no draft {draft_id!r}")
        self.draft_id = draft_id


class RevisionConflictError(DraftError):
    def __init__(self, draft_id: str, expected: int, stored: int):
        super().__init__(
            f"draft {draft_id!r}: expected revision {expected}, stored {stored}")
        self.draft_id = draft_id
        self.expected = expected
        self.stored = stored


class CorruptDraftError(DraftError):
    def __init__(self, draft_id: str, reason: str):
        super().__init__(f"draft {draft_id!r} is corrupt: {reason}")
        self.draft_id = draft_id
        self.reason = reason


class DraftValidationError(DraftError, ValueError):
    pass


@dataclass(frozen=True, slots=True)
class TranslationUnit:
    source_block_id: str
    origin: str                       # "mt" | "source" | "scratch"
    current: RichText
    mt_provider: str | None = None    # set iff origin == "mt"
    mt_baseline: RichText | None = None
    updated_at: str = ""

    def __post_init__(self):
        if self.origin not in _ORIGINS:
            raise DraftValidationError(f"unknown origin {self.origin!r}")
        if self.origin == ORIGIN_MT:
            if self.mt_baseline is None or not self.mt_provider:
                raise DraftValidationError(
                    "mt-origin unit needs a baseline and a provider name")
        elif self.mt_baseline is not None or self.mt_provider is not None:
            raise DraftValidationError(
                f"{self.origin}-origin unit must not carry MT fields")


@dataclass(frozen=True, slots=True)
class Draft:
    id: str
    source_lang: str
    target_lang: str
    source_title: str
    target_title: str
    units: tuple[TranslationUnit, ...]
    categories: tuple[str, ...] = ()
    revision: int = 0
    created_at: str = ""
    updated_at: str = ""

    def __post_init__(self):
        seen = set()
        for unit in self.units:
            if unit.source_block_id in seen:
                raise DraftValidationError(
                    f"duplicate unit for block {unit.source_block_id!r}")
            seen.add(unit.source_block_id)


@dataclass(frozen=True, slots=True)
class DraftSummary:
    id: str
    source_lang: str
    target_lang: str
    source_title: str
    target_title: str
    revision: int
    updated_at: str


def rich_text_to_json(rt: RichText) -> dict:
    spans = []
    for sp in rt.spans:
        entry: dict = {"start": sp.start, "end": sp.end}
        ann = sp.annotation
        if isinstance(ann, Link):
            entry["type"] = "link"
            entry["target"] = ann.target
            entry["missing"] = ann.missing
        elif isinstance(ann, Strong):
            entry["type"] = "strong"
        elif isinstance(ann, Emphasis):
            entry["type"] = "emphasis"
        elif isinstance(ann, Opaque):
            entry["type"] = "opaque"
            entry["payload"] = ann.payload
            entry["key"] = ann.key
        else:  # pragma: no cover - the annotation union is closed
            raise TypeError(f"unknown annotation {ann!r}")
        spans.append(entry)
    return {"text": rt.text, "spans": spans}


def rich_text_from_json(data) -> RichText:
    if not isinstance(data, dict) or not isinstance(data.get("text"), str):
        raise DraftValidationError("rich text must be {text, spans}")
    spans = []
    for entry in data.get("spans", ()):
        kind = entry.get("type")
        if kind == "link":
            ann = Link(target=entry["target"], missing=bool(entry.get("missing", False)))
        elif kind == "strong":
            ann = Strong()
        elif kind == "emphasis":
            ann = Emphasis()
        elif kind == "opaque":
            ann = Opaque(payload=entry["payload"], key=entry.get("key", ""))
        else:
            raise DraftValidationError(f"unknown span type {kind!r}")
        start, end = entry.get("start"), entry.get("end")
        if not isinstance(start, int) or not isinstance(end, int):
            raise DraftValidationError("span offsets must be integers")
        spans.append(Span(start=start, end=end, annotation=ann))
    rt = RichText(text=data["text"], spans=tuple(spans))
    try:
        check_rich_text(rt)
    except ValueError as exc:
        raise DraftValidationError(str(exc)) from exc
    return rt


def _unit_to_json(unit: TranslationUnit) -> dict:
    entry = {
        "sourceBlockId": unit.source_block_id,
        "origin": unit.origin,
        "current": rich_text_to_json(unit.current),
        "updatedAt": unit.updated_at,
    }
    if unit.origin == ORIGIN_MT:
        entry["mtProvider"] = unit.mt_provider
        entry["mtBaseline"] = rich_text_to_json(unit.mt_baseline)
    return entry


def _unit_from_json(entry) -> TranslationUnit:
    baseline = entry.get("mtBaseline")
    return TranslationUnit(
        source_block_id=entry["sourceBlockId"],
        origin=entry["origin"],
        current=rich_text_from_json(entry["current"]),
        mt_provider=entry.get("mtProvider"),
        mt_baseline=rich_text_from_json(baseline) if baseline is not None else None,
        updated_at=entry.get("updatedAt", ""),
    )


def draft_to_json(draft: Draft) -> dict:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "id": draft.id,
        "sourceLang": draft.source_lang,
        "targetLang": draft.target_lang,
        "sourceTitle": draft.source_title,
        "targetTitle": draft.target_title,
        "units": [_unit_to_json(u) for u in draft.units],
        "categories": list(draft.categories),
        "revision": draft.revision,
        "createdAt": draft.created_at,
        "updatedAt": draft.updated_at,
    }


def draft_from_json(data) -> Draft:
    if not isinstance(data, dict):
        raise DraftValidationError("draft document must be an object")
    version = data.get("schemaVersion")
    if version != SCHEMA_VERSION:
        raise DraftValidationError(f"unsupported schemaVersion {version!r}")
    revision = data.get("revision")
    if not isinstance(revision, int) or revision < 1:
        raise DraftValidationError(f"bad revision {revision!r}")
    return Draft(
        id=data["id"],
        source_lang=data["sourceLang"],
        target_lang=data["targetLang"],
        source_title=data["sourceTitle"],
        target_title=data["targetTitle"],
        units=tuple(_unit_from_json(u) for u in data.get("units", ())),
        categories=tuple(data.get("categories", ())),
        revision=revision,
        created_at=data.get("createdAt", ""),
        updated_at=data.get("updatedAt", ""),
    )


@dataclass
class DraftStore:
    """Directory of draft files with optimistic-concurrency saves."""

    root: str
    _locks: dict[str, threading.Lock] = field(default_factory=dict, repr=False)
    _registry_lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        os.makedirs(self.root, exist_ok=True)

    def _path(self, draft_id: str) -> str:
        if not draft_id or "/" in draft_id or "\\" in draft_id or draft_id.startswith("."):
            raise DraftValidationError(f"bad draft id {draft_id!r}")
        return os.path.join(self.root, draft_id + ".json")

    def _lock_for(self, draft_id: str) -> threading.Lock:
        with self._registry_lock:
            lock = self._locks.get(draft_id)
            if lock is None:
                lock = self._locks[draft_id] = threading.Lock()
            return lock

    def _read(self, draft_id: str) -> Draft:
        path = self._path(draft_id)
        try:
            with open(path, "rb") as fh:
                raw = fh.read()
        except FileNotFoundError:
            raise DraftNotFoundError(draft_id) from None
        try:
            return draft_from_json(json.loads(raw))
        except (json.JSONDecodeError, DraftValidationError, KeyError, TypeError) as exc:
            raise CorruptDraftError(draft_id, str(exc)) from exc

    def save_draft(self, draft: Draft, expected_revision: int) -> int:
        """Persist ``draft`` iff the stored revision equals ``expected_revision``.

        Returns the new revision (``expected_revision + 1``).  A new draft is
        created by passing 0.  On conflict nothing is written.
        """
        if expected_revision < 0:
            raise DraftValidationError("expectedRevision must be >= 0")
        path = self._path(draft.id)
        with self._lock_for(draft.id):
            stored: Draft | None
            try:
                stored = self._read(draft.id)
            except DraftNotFoundError:
                stored = None
            stored_revision = stored.revision if stored is not None else 0
            if stored_revision != expected_revision:
                raise RevisionConflictError(draft.id, expected_revision, stored_revision)
            if stored is not None:
                self._check_baselines(draft, stored)
            new_revision = expected_revision + 1
            payload = json.dumps(draft_to_json(replace(draft, revision=new_revision)),
                                 ensure_ascii=False, indent=2)
            tmp = path + ".tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                fh.write(payload)
                fh.flush()
                os.fsync(fh.fileno())
            _rename(tmp, path)
            return new_revision

    @staticmethod
    def _check_baselines(draft: Draft, stored: Draft) -> None:
        previous = {u.source_block_id: u for u in stored.units}
        for unit in draft.units:
            old = previous.get(unit.source_block_id)
            if old is None or old.origin != ORIGIN_MT or unit.origin != ORIGIN_MT:
                continue
            if unit.mt_baseline != old.mt_baseline:
                raise DraftValidationError(
                    f"unit {unit.source_block_id!r}: the MT baseline is immutable")

    def load_draft(self, draft_id: str) -> Draft:
        return self._read(draft_id)

    def list_drafts(self, pair: tuple[str, str] | None = None) -> list[DraftSummary]:
        """Summaries of every readable draft, newest first."""
        summaries = []
        for name in os.listdir(self.root):
            if not name.endswith(".json"):
                continue
            try:
                draft = self._read(name[:-len(".json")])
            except (DraftNotFoundError, CorruptDraftError):
                continue  # listing stays best-effort; load_draft still reports
            if pair is not None and (draft.source_lang, draft.target_lang) != pair:
                continue
            summaries.append(DraftSummary(
                id=draft.id, source_lang=draft.source_lang,
                target_lang=draft.target_lang, source_title=draft.source_title,
                target_title=draft.target_title, revision=draft.revision,
                updated_at=draft.updated_at))
        summaries.sort(key=lambda s: (s.updated_at, s.id), reverse=True)
        return summaries
