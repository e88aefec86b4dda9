from .cache import CompletionRecord, ReplayCache, fingerprint
from .client import Mode, PromptRequest, Task, send_with_cache
from .cost import Price, cost_reduction, estimate_cost, load_price_table, token_cost
from .parsing import parse_category, parse_sentiment
from .prompts import TEMPLATE_VERSION, build_categorization_prompt, build_sentiment_prompt
from .providers import (
    OpenAICompatibleProvider,
    ProviderConfig,
    ProviderResponse,
    StubProvider,
    TransportResponse,
    load_provider_config,
    make_provider,
)

__all__ = [
    "CompletionRecord",
    "Mode",
    "OpenAICompatibleProvider",
    "Price",
    "PromptRequest",
    "ProviderConfig",
    "ProviderResponse",
    "ReplayCache",
    "StubProvider",
    "TEMPLATE_VERSION",
    "Task",
    "TransportResponse",
    "build_categorization_prompt",
    "build_sentiment_prompt",
    "cost_reduction",
    "estimate_cost",
    "fingerprint",
    "load_price_table",
    "load_provider_config",
    "make_provider",
    "parse_category",
    "parse_sentiment",
    "send_with_cache",
    "token_cost",
]
