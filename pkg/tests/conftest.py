"""Shared fixtures: fixture paths and a hermetic service client factory."""

from __future__ import annotations

import shutil
from pathlib import Path

import pytest

from transmark.config import ProviderSpec, ServiceConfig
from transmark.provenance import ProvenanceConfig

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

DEFAULT_PROVIDERS = (
    ProviderSpec(name="mirror", kind="identity",
                 pairs=(("es", "es"), ("es", "ca"), ("es", "pt"))),
    ProviderSpec(name="dicc-es-ca", kind="dictionary",
                 pairs=(("es", "ca"),),
                 lexicon=str(FIXTURES / "lexicons" / "es-ca.tsv")),
    ProviderSpec(name="shout", kind="uppercase", pairs=(("es", "en"),)),
)


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return FIXTURES / "corpus"


@pytest.fixture
def service_factory(tmp_path):
    """Build a TestClient over a service with outputs sandboxed to tmp_path."""
    from fastapi.testclient import TestClient

    from transmark.service import create_app

    def factory(with_fixture_log: bool = False,
                providers: tuple[ProviderSpec, ...] = DEFAULT_PROVIDERS,
                provenance: ProvenanceConfig | None = None,
                fetcher=None):
        log_path = tmp_path / "events.ndjson"
        if with_fixture_log:
            shutil.copy(FIXTURES / "events.ndjson", log_path)
        config = ServiceConfig(
            corpus_dir=str(FIXTURES / "corpus"),
            entity_map_path=str(FIXTURES / "entity_map.tsv"),
            draft_dir=str(tmp_path / "drafts"),
            event_log_path=str(log_path),
            published_dir=str(tmp_path / "published"),
            providers=providers,
            provenance=provenance or ProvenanceConfig(),
        )
        app = create_app(config, fetcher=fetcher)
        client = TestClient(app, raise_server_exceptions=False)
        return client, config

    return factory
