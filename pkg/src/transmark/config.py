"""Service configuration: a JSON file naming data paths and MT providers.

Input paths (corpus, entity map, lexicons) must exist when the config is
loaded; that failure should happen at startup, not on the first request.
Output locations (draft directory, published directory, event log) are
created on demand.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .providers import (DictionaryProvider, IdentityProvider, MtProvider,
                        ProviderRegistry, RemoteProvider, ReverseProvider,
                        UppercaseProvider, load_lexicon)
from .provenance import ProvenanceConfig


class ConfigError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class ProviderSpec:
    name: str
    kind: str  # identity | uppercase | reverse | dictionary | remote
    pairs: tuple[tuple[str, str], ...]
    base_url: str | None = None  # remote only
    lexicon: str | None = None   # dictionary only


@dataclass(frozen=True, slots=True)
class ServiceConfig:
    corpus_dir: str
    entity_map_path: str
    draft_dir: str = "drafts"
    event_log_path: str = "events.ndjson"
    published_dir: str = "published"
    host: str = "127.0.0.1"
    port: int = 8763
    providers: tuple[ProviderSpec, ...] = ()
    provenance: ProvenanceConfig = field(default_factory=ProvenanceConfig)


def _parse_pairs(raw, name: str) -> tuple[tuple[str, str], ...]:
    pairs = []
    for entry in raw:
        if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
            raise ConfigError(f"provider {name!r}: each pair must be [src, tgt]")
        pairs.append((str(entry[0]), str(entry[1])))
    if not pairs:
        raise ConfigError(f"provider {name!r}: no language pairs")
    return tuple(pairs)


def _parse_provider(entry) -> ProviderSpec:
    name = entry.get("name")
    kind = entry.get("kind")
    if not name or not kind:
        raise ConfigError("provider entries need name and kind")
    return ProviderSpec(
        name=name, kind=kind,
        pairs=_parse_pairs(entry.get("pairs", ()), name),
        base_url=entry.get("baseUrl"),
        lexicon=entry.get("lexicon"),
    )


def load_config(path) -> ServiceConfig:
    """Parse a config file and fail fast on anything unusable."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON: {exc}") from exc
    base = os.path.dirname(os.path.abspath(path))

    def resolve(p):
        return p if os.path.isabs(p) else os.path.join(base, p)

    try:
        corpus_dir = resolve(data["corpusDir"])
        entity_map_path = resolve(data["entityMap"])
    except KeyError as exc:
        raise ConfigError(f"{path}: missing required key {exc.args[0]!r}") from None

    listen = data.get("listen", "127.0.0.1:8763")
    host, _, port_text = listen.rpartition(":")
    if not host or not port_text.isdigit():
        raise ConfigError(f"bad listen address {listen!r}, expected host:port")

    prov = data.get("provenance", {})
    try:
        provenance = ProvenanceConfig(
            unit_threshold=prov.get("unitThreshold", 0.85),
            overall_threshold=prov.get("overallThreshold", 0.75),
            min_unit_tokens=prov.get("minUnitTokens", 10),
        )
    except ValueError as exc:
        raise ConfigError(f"bad provenance config: {exc}") from exc

    specs = []
    for entry in data.get("providers", ()):
        spec = _parse_provider(entry)
        if spec.lexicon:
            spec = ProviderSpec(name=spec.name, kind=spec.kind, pairs=spec.pairs,
                                base_url=spec.base_url, lexicon=resolve(spec.lexicon))
        specs.append(spec)
    config = ServiceConfig(
        corpus_dir=corpus_dir,
        entity_map_path=entity_map_path,
        draft_dir=resolve(data.get("draftDir", "drafts")),
        event_log_path=resolve(data.get("eventLog", "events.ndjson")),
        published_dir=resolve(data.get("publishedDir", "published")),
        host=host,
        port=int(port_text),
        providers=tuple(specs),
        provenance=provenance,
    )
    check_inputs(config)
    return config


def check_inputs(config: ServiceConfig) -> None:
    """Verify every input path; raise ConfigError naming the first bad one."""
    if not os.path.isdir(config.corpus_dir):
        raise ConfigError(f"corpus directory missing: {config.corpus_dir}")
    if not os.path.isfile(config.entity_map_path):
        raise ConfigError(f"entity map missing: {config.entity_map_path}")
    for spec in config.providers:
        if spec.kind == "dictionary":
            if not spec.lexicon:
                raise ConfigError(f"provider {spec.name!r}: dictionary needs a lexicon")
            if not os.path.isfile(spec.lexicon):
                raise ConfigError(f"provider {spec.name!r}: lexicon missing: {spec.lexicon}")
        if spec.kind == "remote" and not spec.base_url:
            raise ConfigError(f"provider {spec.name!r}: remote needs baseUrl")


def build_provider(spec: ProviderSpec) -> MtProvider:
    if spec.kind == "identity":
        return IdentityProvider(spec.name, spec.pairs)
    if spec.kind == "uppercase":
        return UppercaseProvider(spec.name, spec.pairs)
    if spec.kind == "reverse":
        return ReverseProvider(spec.name, spec.pairs)
    if spec.kind == "dictionary":
        return DictionaryProvider(spec.name, spec.pairs, load_lexicon(spec.lexicon))
    if spec.kind == "remote":
        return RemoteProvider(spec.name, spec.pairs, spec.base_url)
    raise ConfigError(f"provider {spec.name!r}: unknown kind {spec.kind!r}")


def build_registry(config: ServiceConfig) -> ProviderRegistry:
    registry = ProviderRegistry()
    for spec in config.providers:
        registry.register(build_provider(spec))
    return registry
