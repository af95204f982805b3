"""Pluggable plain-text MT providers.

Every provider translates plain text for a declared set of language pairs.
The deterministic test providers (identity, uppercase, dictionary, reverse)
make the markup-transfer machinery verifiable without a real MT system; the
remote provider speaks the Apertium-style JSON API:

    GET <base>/translate?langpair=<src>|<tgt>&q=<urlencoded text>
    -> {"responseData": {"translatedText": "..."}, "responseStatus": 200}
"""

from __future__ import annotations

import threading
from pathlib import Path

import requests

from .tokenizer import tokenize

Pair = tuple[str, str]


class ProviderError(Exception):
    pass


class UnsupportedPairError(ProviderError):
    def __init__(self, provider: str, src: str, tgt: str):
        super().__init__(f"provider {provider!r} does not support {src}->{tgt}")
        self.pair = (src, tgt)


class TransportError(ProviderError):
    """Remote call failed in transit; safe to retry."""

    retriable = True


class ProtocolError(ProviderError):
    """Remote endpoint answered with something other than the expected shape."""

    retriable = False


class DuplicateProviderError(ProviderError):
    pass


class LexiconError(ProviderError):
    pass


class MtProvider:
    """Base: a named plain-text translation capability for language pairs."""

    kind = "abstract"

    def __init__(self, name: str, pairs: set[Pair] | frozenset[Pair]):
        self.name = name
        self.pairs = frozenset(pairs)

    def supports(self, src: str, tgt: str) -> bool:
        return (src, tgt) in self.pairs

    def translate(self, text: str, src: str, tgt: str) -> str:
        if not self.supports(src, tgt):
            raise UnsupportedPairError(self.name, src, tgt)
        return self._translate(text, src, tgt)

    def _translate(self, text: str, src: str, tgt: str) -> str:
        raise NotImplementedError

    def describe(self) -> dict:
        return {"name": self.name, "kind": self.kind,
                "pairs": [list(p) for p in sorted(self.pairs)]}


class IdentityProvider(MtProvider):
    kind = "identity"

    def _translate(self, text: str, src: str, tgt: str) -> str:
        return text


class UppercaseProvider(MtProvider):
    kind = "uppercase"

    def _translate(self, text: str, src: str, tgt: str) -> str:
        return text.upper()


class ReverseProvider(MtProvider):
    """Reverses token order; joins with single spaces.

    Useful as a worst-case reordering model for the placement algorithm.
    """

    kind = "reverse"

    def _translate(self, text: str, src: str, tgt: str) -> str:
        return " ".join(t.text for t in reversed(tokenize(text)))


def load_lexicon(path: str | Path) -> dict[str, str]:
    """TSV lexicon: source token TAB target token, ``#`` comments, UTF-8."""
    mapping: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        cols = stripped.split("\t")
        if len(cols) != 2 or not cols[0] or not cols[1]:
            raise LexiconError(f"{path}:{lineno}: expected two tab-separated columns")
        mapping[cols[0].casefold()] = cols[1]
    return mapping


class DictionaryProvider(MtProvider):
    """Token-by-token lexicon lookup; case-insensitive, initial capital restored.

    Unknown tokens (punctuation included) pass through; separators are kept,
    so the output mirrors the input's spacing.
    """

    kind = "dictionary"

    def __init__(self, name: str, pairs: set[Pair] | frozenset[Pair],
                 lexicon: dict[str, str] | str | Path):
        super().__init__(name, pairs)
        self.lexicon = dict(lexicon) if isinstance(lexicon, dict) else load_lexicon(lexicon)

    def _translate(self, text: str, src: str, tgt: str) -> str:
        out: list[str] = []
        pos = 0
        for token in tokenize(text):
            out.append(text[pos:token.start])
            target = self.lexicon.get(token.text.casefold())
            if target is None:
                out.append(token.text)
            elif token.text[:1].isupper():
                out.append(target[:1].upper() + target[1:])
            else:
                out.append(target)
            pos = token.end
        out.append(text[pos:])
        return "".join(out)


class RemoteProvider(MtProvider):
    """Apertium-compatible HTTP client with an in-flight cap and timeout."""

    kind = "remote"

    def __init__(self, name: str, pairs: set[Pair] | frozenset[Pair], base_url: str,
                 timeout: float = 10.0, max_inflight: int = 4,
                 session: requests.Session | None = None):
        super().__init__(name, pairs)
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self._gate = threading.Semaphore(max_inflight)
        self._session = session or requests.Session()

    def _translate(self, text: str, src: str, tgt: str) -> str:
        params = {"langpair": f"{src}|{tgt}", "q": text}
        with self._gate:
            try:
                resp = self._session.get(f"{self.base_url}/translate",
                                         params=params, timeout=self.timeout)
            except requests.RequestException as exc:
                raise TransportError(f"{self.name}: {exc}") from exc
        if resp.status_code >= 500:
            raise TransportError(f"{self.name}: HTTP {resp.status_code}")
        if resp.status_code != 200:
            raise ProtocolError(f"{self.name}: HTTP {resp.status_code}")
        try:
            body = resp.json()
            if body.get("responseStatus") != 200:
                raise ProtocolError(f"{self.name}: responseStatus {body.get('responseStatus')!r}")
            translated = body["responseData"]["translatedText"]
        except (ValueError, KeyError, TypeError) as exc:
            raise ProtocolError(f"{self.name}: malformed response body") from exc
        if not isinstance(translated, str):
            raise ProtocolError(f"{self.name}: translatedText is not a string")
        return translated


class ProviderRegistry:
    """Named providers; lookups by name or by supported language pair."""

    def __init__(self) -> None:
        self._providers: dict[str, MtProvider] = {}

    def register(self, provider: MtProvider) -> None:
        if provider.name in self._providers:
            raise DuplicateProviderError(f"provider {provider.name!r} already registered")
        self._providers[provider.name] = provider

    def get(self, name: str) -> MtProvider | None:
        return self._providers.get(name)

    def for_pair(self, src: str, tgt: str) -> list[MtProvider]:
        return [p for p in self._providers.values() if p.supports(src, tgt)]

    def all(self) -> list[MtProvider]:
        return list(self._providers.values())


def translate_plain(provider: MtProvider, text: str, src: str, tgt: str) -> str:
    return provider.translate(text, src, tgt)
