#!/usr/bin/env python3
"""Generate the fixture event log (NDJSON, timestamps non-decreasing).

The published counts are fixed: 455 es->ca, 25 es->pt, 420 across other
pairs, 900 in total, with 8 deletions — the numbers the stats tests and the
stats endpoint fixture rely on.
"""

from __future__ import annotations

import argparse
import json
import random
from datetime import datetime, timedelta, timezone
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

PUBLISHED_PER_PAIR = {
    ("es", "ca"): 455,
    ("es", "pt"): 25,
    ("en", "es"): 180,
    ("en", "pt"): 60,
    ("ca", "es"): 90,
    ("pt", "es"): 50,
    ("en", "ca"): 40,
}
DELETED = 8           # all from the biggest pair
DRAFTS_ONLY = 75      # draft_created noise, never published


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20260819)
    parser.add_argument("--out", type=Path,
                        default=ROOT / "fixtures" / "events.ndjson")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    events: list[tuple[str, str, str, str]] = []
    for (src, tgt), count in PUBLISHED_PER_PAIR.items():
        for i in range(count):
            events.append(("published", src, tgt, f"Artículo {src}-{tgt} {i}"))
    for i in range(DELETED):
        events.append(("deleted", "es", "ca", f"Artículo es-ca {i}"))
    for i in range(DRAFTS_ONLY):
        src, tgt = rng.choice(list(PUBLISHED_PER_PAIR))
        events.append(("draft_created", src, tgt, f"Borrador {i}"))

    rng.shuffle(events)
    stamp = datetime(2025, 3, 1, tzinfo=timezone.utc)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w", encoding="utf-8") as fh:
        for kind, src, tgt, title in events:
            stamp += timedelta(minutes=rng.randint(0, 90))
            fh.write(json.dumps({
                "kind": kind, "sourceLang": src, "targetLang": tgt,
                "title": title, "timestamp": stamp.isoformat(),
            }, ensure_ascii=False) + "\n")
    print(f"{args.out}: {len(events)} events")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
