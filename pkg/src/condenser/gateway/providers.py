"""Model providers: an OpenAI-compatible HTTP client and an offline stub."""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping, Protocol

import httpx

from ..errors import ProviderError
from ..text_core import count_tokens
from . import prompts

MAX_RETRIES = 3
BACKOFF_BASE_S = 0.5
RETRYABLE_STATUS = frozenset({408, 409, 425, 429, 500, 502, 503, 504})


@dataclass(frozen=True)
class ProviderResponse:
    text: str
    latency_s: float


class Provider(Protocol):
    name: str

    def complete(
        self, prompt: str, *, model_id: str, temperature: float, max_output_tokens: int
    ) -> ProviderResponse: ...


@dataclass(frozen=True)
class TransportResponse:
    status: int
    headers: Mapping[str, str]
    body: Any


Transport = Callable[[str, Mapping[str, str], dict, float], TransportResponse]


def httpx_transport(url: str, headers: Mapping[str, str], payload: dict, timeout: float) -> TransportResponse:
    try:
        resp = httpx.post(url, headers=dict(headers), json=payload, timeout=timeout)
    except httpx.HTTPError as exc:
        raise ProviderError(f"transport error: {exc}") from exc
    try:
        body = resp.json()
    except ValueError:
        body = resp.text
    return TransportResponse(resp.status_code, dict(resp.headers), body)


def _retry_after(headers: Mapping[str, str]) -> float | None:
    for key, value in headers.items():
        if key.lower() == "retry-after":
            try:
                return max(0.0, float(value))
            except ValueError:
                return None
    return None


@dataclass
class OpenAICompatibleProvider:
    """Chat-completions client for any OpenAI-compatible endpoint.

    Transport failures and retryable statuses are retried up to
    ``MAX_RETRIES`` times with exponential backoff, or after the server's
    ``Retry-After`` hint when present. Reported latency is the sum of the
    attempt durations, excluding the waits between them.
    """

    name: str
    base_url: str
    api_key_env: str | None = None
    timeout_s: float = 60.0
    transport: Transport = httpx_transport
    sleep: Callable[[float], None] = time.sleep

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        if self.api_key_env:
            key = os.environ.get(self.api_key_env)
            if not key:
                raise ProviderError(f"environment variable {self.api_key_env} is not set")
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def complete(
        self, prompt: str, *, model_id: str, temperature: float, max_output_tokens: int
    ) -> ProviderResponse:
        url = self.base_url.rstrip("/") + "/chat/completions"
        payload = {
            "model": model_id,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": temperature,
            "max_tokens": max_output_tokens,
        }
        headers = self._headers()
        elapsed = 0.0
        last_error: ProviderError | None = None
        for attempt in range(MAX_RETRIES + 1):
            wait = BACKOFF_BASE_S * 2**attempt
            start = time.perf_counter()
            try:
                resp = self.transport(url, headers, payload, self.timeout_s)
            except ProviderError as exc:
                elapsed += time.perf_counter() - start
                last_error = exc
            else:
                elapsed += time.perf_counter() - start
                if resp.status == 200:
                    return ProviderResponse(_extract_text(resp.body), elapsed)
                last_error = ProviderError(f"HTTP {resp.status}: {str(resp.body)[:200]}", resp.status)
                if resp.status not in RETRYABLE_STATUS:
                    raise last_error
                hinted = _retry_after(resp.headers)
                if hinted is not None:
                    wait = hinted
            if attempt < MAX_RETRIES:
                self.sleep(wait)
        assert last_error is not None
        raise ProviderError(f"gave up after {MAX_RETRIES} retries: {last_error}", last_error.status)


def _extract_text(body: Any) -> str:
    try:
        return body["choices"][0]["message"]["content"] or ""
    except (KeyError, IndexError, TypeError) as exc:
        raise ProviderError(f"unexpected response body: {str(body)[:200]}") from exc


@dataclass
class StubProvider:
    """Deterministic offline provider for fixtures and tests.

    Sentiment prompts get an integer derived from a hash of the prompt;
    categorization prompts get the listed category mentioned most often in
    the text (hash-chosen on ties). Latency is simulated from the prompt
    length so recorded fixtures carry meaningful, reproducible values.
    """

    name: str = "stub"
    base_latency_s: float = 0.25
    latency_per_token_s: float = 0.0004
    calls: int = field(default=0, init=False)

    def complete(
        self, prompt: str, *, model_id: str, temperature: float, max_output_tokens: int
    ) -> ProviderResponse:
        self.calls += 1
        digest = int.from_bytes(hashlib.sha256(f"{model_id}\0{prompt}".encode()).digest()[:8], "big")
        if prompt.startswith(prompts.CATEGORIZATION_HEADER):
            text = self._categorize(prompt, digest)
        else:
            text = f"I would rate this {1 + digest % 100}."
        latency = round(self.base_latency_s + self.latency_per_token_s * count_tokens(prompt), 6)
        return ProviderResponse(text, latency)

    @staticmethod
    def _categorize(prompt: str, digest: int) -> str:
        head, _, body = prompt.partition(prompts.CATEGORIZATION_FOOTER)
        cats = [line[2:] for line in head.splitlines() if line.startswith("- ")]
        lowered = body.lower()
        hits = [lowered.count(c.lower()) for c in cats]
        best = max(hits)
        tied = [c for c, h in zip(cats, hits) if h == best]
        return tied[digest % len(tied)]


@dataclass(frozen=True)
class ProviderConfig:
    name: str
    kind: str = "openai"
    base_url: str | None = None
    model_id: str | None = None
    api_key_env: str | None = None

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "ProviderConfig":
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown provider config keys: {sorted(unknown)}")
        if "api_key" in data:
            raise ValueError("API keys belong in environment variables, not config files")
        return cls(**data)


def load_provider_config(path: str | Path) -> ProviderConfig:
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix == ".toml":
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib
        data = tomllib.loads(raw.decode("utf-8"))
    else:
        data = json.loads(raw)
    return ProviderConfig.from_mapping(data)


def make_provider(config: ProviderConfig, transport: Transport | None = None) -> Provider:
    if config.kind == "stub":
        return StubProvider(name=config.name)
    if config.kind == "openai":
        if not config.base_url:
            raise ValueError("openai-compatible providers need a base_url")
        return OpenAICompatibleProvider(
            name=config.name,
            base_url=config.base_url,
            api_key_env=config.api_key_env,
            transport=transport or httpx_transport,
        )
    raise ValueError(f"unknown provider kind {config.kind!r}")
