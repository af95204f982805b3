"""Lifecycle event log and the statistics derived from it.

Events (draft_created / published / deleted) are appended to a newline-
delimited JSON file, one object per line.  Appends enforce non-decreasing
timestamps; readers skip a partial final line so that a crash mid-append
never poisons the whole log.
"""

from __future__ import annotations

import json
import os
import threading
from collections import Counter
from dataclasses import dataclass

KIND_DRAFT_CREATED = "draft_created"
KIND_PUBLISHED = "published"
KIND_DELETED = "deleted"
_KINDS = (KIND_DRAFT_CREATED, KIND_PUBLISHED, KIND_DELETED)


class TelemetryError(Exception):
    pass


class MonotonicityError(TelemetryError):
    def __init__(self, timestamp: str, tail: str):
        super().__init__(f"timestamp {timestamp!r} is older than the log tail {tail!r}")
        self.timestamp = timestamp
        self.tail = tail


@dataclass(frozen=True, slots=True)
class Event:
    kind: str
    source_lang: str
    target_lang: str
    title: str
    timestamp: str  # ISO-8601, UTC

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")


def _event_to_json(e: Event) -> dict:
    return {"kind": e.kind, "sourceLang": e.source_lang,
            "targetLang": e.target_lang, "title": e.title,
            "timestamp": e.timestamp}


def _event_from_json(data: dict) -> Event:
    return Event(kind=data["kind"], source_lang=data["sourceLang"],
                 target_lang=data["targetLang"], title=data["title"],
                 timestamp=data["timestamp"])


class EventLog:
    """Append-only NDJSON event file.  One writer, any number of readers."""

    def __init__(self, path):
        self.path = str(path)
        self._lock = threading.Lock()
        self._tail_timestamp: str | None = None

    def record_event(self, event: Event) -> None:
        with self._lock:
            if self._tail_timestamp is None:
                self._repair_tail()
                self._tail_timestamp = self._last_timestamp()
            if self._tail_timestamp and event.timestamp < self._tail_timestamp:
                raise MonotonicityError(event.timestamp, self._tail_timestamp)
            line = json.dumps(_event_to_json(event), ensure_ascii=False)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self._tail_timestamp = event.timestamp

    def _repair_tail(self) -> None:
        """Drop a torn final line so the next append starts a fresh record.

        A record is only a record once its newline hit the disk; cutting the
        partial tail loses nothing and keeps the file parseable line by line.
        """
        try:
            with open(self.path, "rb+") as fh:
                data = fh.read()
                if not data or data.endswith(b"\n"):
                    return
                fh.truncate(data.rfind(b"\n") + 1)
        except FileNotFoundError:
            pass

    def _last_timestamp(self) -> str:
        last = ""
        for event in self.read_events():
            last = event.timestamp
        return last

    def read_events(self) -> list[Event]:
        """Every complete record in the file; a truncated last line is skipped."""
        try:
            with open(self.path, "r", encoding="utf-8") as fh:
                raw = fh.read()
        except FileNotFoundError:
            return []
        events = []
        # With a trailing newline the last split element is ""; without one
        # it is a torn append.  Either way it is not a record.
        for line in raw.split("\n")[:-1]:
            if not line.strip():
                continue
            try:
                events.append(_event_from_json(json.loads(line)))
            except (json.JSONDecodeError, KeyError, ValueError):
                raise TelemetryError(f"unreadable event record: {line[:80]!r}")
        return events


def deletion_ratio(log: EventLog) -> float | None:
    """deleted ÷ published, or None when nothing was published yet."""
    published = deleted = 0
    for event in log.read_events():
        if event.kind == KIND_PUBLISHED:
            published += 1
        elif event.kind == KIND_DELETED:
            deleted += 1
    if published == 0:
        return None
    return deleted / published


def pair_counts(log: EventLog) -> dict[tuple[str, str], int]:
    """Published-article counts per (source, target) language pair."""
    counts: Counter[tuple[str, str]] = Counter()
    for event in log.read_events():
        if event.kind == KIND_PUBLISHED:
            counts[(event.source_lang, event.target_lang)] += 1
    return dict(counts)
