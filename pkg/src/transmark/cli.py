"""Command line entry points.

``serve`` runs the HTTP service, ``validate-entity-map`` checks a TSV dump
without starting anything, and ``stats`` prints what the stats endpoint
would report for a given event log.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import ConfigError, check_inputs, load_config
from .entity_map import EntityMapError, load_entity_map
from .telemetry import EventLog, deletion_ratio, pair_counts


def _cmd_serve(args) -> int:
    try:
        config = load_config(args.config)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    overrides = {}
    if args.corpus:
        overrides["corpus_dir"] = args.corpus
    if args.entity_map:
        overrides["entity_map_path"] = args.entity_map
    if args.listen:
        host, _, port = args.listen.rpartition(":")
        if not host or not port.isdigit():
            print(f"error: bad listen address {args.listen!r}", file=sys.stderr)
            return 2
        overrides["host"] = host
        overrides["port"] = int(port)
    if overrides:
        config = replace(config, **overrides)
    try:
        check_inputs(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return 0


def _cmd_validate_entity_map(args) -> int:
    try:
        emap = load_entity_map(args.path)
    except (EntityMapError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sitelinks = sum(len(langs) for langs in emap.entries.values())
    print(f"{args.path}: {len(emap)} entities, {sitelinks} sitelinks")
    return 0


def _cmd_stats(args) -> int:
    log = EventLog(args.log)
    counts = pair_counts(log)
    ratio = deletion_ratio(log)
    total = sum(counts.values())
    print(f"published: {total}")
    if ratio is None:
        print("deletion ratio: n/a (nothing published)")
    else:
        print(f"deletion ratio: {ratio:.4f}")
    for (src, tgt), n in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])):
        print(f"  {src} -> {tgt}: {n}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transmark",
        description="computer-assisted translation engine")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--config", required=True, help="path to the JSON config file")
    serve.add_argument("--listen", help="host:port override")
    serve.add_argument("--corpus", help="corpus directory override")
    serve.add_argument("--entity-map", help="entity map path override")
    serve.set_defaults(func=_cmd_serve)

    validate = sub.add_parser("validate-entity-map",
                              help="check a TSV entity dump and summarize it")
    validate.add_argument("path")
    validate.set_defaults(func=_cmd_validate_entity_map)

    stats = sub.add_parser("stats", help="print statistics for an event log")
    stats.add_argument("--log", required=True, help="event log path (NDJSON)")
    stats.set_defaults(func=_cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
