"""Dump every corpus block as (html, kind, level, rich-JSON) for the editor tests.

The editor re-parses block HTML in the browser, so its parser has to agree
with the engine's on every block the service can actually emit. This writes
frontend/tests/fixtures/blocks.json from the fixture corpus; the frontend
suite replays it through the TypeScript codec.

Usage: python scripts/gen_frontend_fixture.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from transmark.docmodel import parse_document, serialize_block
from transmark.drafts import rich_text_to_json

ROOT = os.path.join(os.path.dirname(__file__), "..")
CORPUS = os.path.join(ROOT, "fixtures", "corpus")
OUT = os.path.join(ROOT, "frontend", "tests", "fixtures", "blocks.json")


def main() -> None:
    entries = []
    for lang in sorted(os.listdir(CORPUS)):
        lang_dir = os.path.join(CORPUS, lang)
        if not os.path.isdir(lang_dir):
            continue
        for name in sorted(os.listdir(lang_dir)):
            if not name.endswith(".html"):
                continue
            title = name[:-5].replace("_", " ")
            with open(os.path.join(lang_dir, name), encoding="utf-8") as fh:
                doc = parse_document(fh.read(), lang, title)
            for block in doc.blocks:
                entries.append({
                    "html": serialize_block(block),
                    "kind": block.kind,
                    "level": block.level,
                    "rich": rich_text_to_json(block.content),
                })
    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w", encoding="utf-8") as fh:
        json.dump(entries, fh, ensure_ascii=False, indent=None)
        fh.write("\n")
    print(f"{len(entries)} blocks -> {os.path.relpath(OUT, ROOT)}")


if __name__ == "__main__":
    main()
