"""Request model and cached dispatch to a provider."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum

from ..text_core import count_tokens
from ..errors import CacheMiss
from .cache import CompletionRecord, ReplayCache, fingerprint
from .prompts import TEMPLATE_VERSION, build_categorization_prompt, build_sentiment_prompt
from .providers import Provider


class Task(str, Enum):
    SENTIMENT = "sentiment"
    CATEGORIZATION = "categorization"


class Mode(str, Enum):
    LIVE = "live"
    REPLAY = "replay"
    RECORD = "record"


@dataclass(frozen=True)
class PromptRequest:
    task: Task
    model_id: str
    temperature: float
    input_text: str
    categories: tuple[str, ...] | None = None
    max_output_tokens: int = 16

    def __post_init__(self) -> None:
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.task is Task.CATEGORIZATION and (not self.categories or len(self.categories) < 2):
            raise ValueError("categorization requests need at least two categories")
        if self.task is Task.SENTIMENT and self.categories:
            raise ValueError("sentiment requests take no categories")

    @property
    def prompt(self) -> str:
        if self.task is Task.SENTIMENT:
            return build_sentiment_prompt(self.input_text)
        return build_categorization_prompt(self.input_text, self.categories)


def send_with_cache(
    request: PromptRequest,
    provider: Provider,
    cache: ReplayCache | None,
    mode: Mode = Mode.REPLAY,
    run_index: int = 0,
) -> CompletionRecord:
    """Resolve *request* live, from the cache, or live-then-stored.

    Replay never touches the provider and raises :class:`CacheMiss` for
    unseen requests.
    """
    mode = Mode(mode)
    prompt = request.prompt
    fp = fingerprint(provider.name, request.model_id, prompt, request.temperature, run_index)

    if mode is Mode.REPLAY:
        record = cache.get(fp) if cache is not None else None
        if record is None:
            raise CacheMiss(fp, run_index)
        return record

    response = provider.complete(
        prompt,
        model_id=request.model_id,
        temperature=request.temperature,
        max_output_tokens=request.max_output_tokens,
    )
    record = CompletionRecord(
        fingerprint=fp,
        run_index=run_index,
        provider=provider.name,
        model_id=request.model_id,
        prompt=prompt,
        temperature=float(request.temperature),
        response_text=response.text,
        latency_s=response.latency_s,
        input_tokens=count_tokens(prompt),
        output_tokens=count_tokens(response.text),
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        template_version=TEMPLATE_VERSION,
    )
    if mode is Mode.RECORD:
        if cache is None:
            raise ValueError("record mode needs a cache")
        cache.append(record)
    return record
