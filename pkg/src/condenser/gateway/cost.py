"""Per-model token prices and request cost estimates."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from ..errors import UnknownModel
from .cache import CompletionRecord


@dataclass(frozen=True)
class Price:
    input_per_1k: float
    output_per_1k: float

    def __post_init__(self) -> None:
        if self.input_per_1k < 0 or self.output_per_1k < 0:
            raise ValueError("prices must be non-negative")


PriceTable = Mapping[str, Price]


def load_price_table(path: str | Path) -> dict[str, Price]:
    data = json.loads(Path(path).read_text("utf-8"))
    return {model: Price(float(p["input_per_1k"]), float(p["output_per_1k"])) for model, p in data.items()}


def token_cost(model_id: str, input_tokens: int, output_tokens: int, prices: PriceTable) -> float:
    try:
        price = prices[model_id]
    except KeyError:
        raise UnknownModel(model_id) from None
    return input_tokens / 1000 * price.input_per_1k + output_tokens / 1000 * price.output_per_1k


def estimate_cost(record: CompletionRecord, prices: PriceTable) -> float:
    return token_cost(record.model_id, record.input_tokens, record.output_tokens, prices)


def cost_reduction(baseline: float, condensed: float) -> float:
    """Fractional saving of *condensed* relative to *baseline* (0.93 = 93%)."""
    if baseline <= 0:
        raise ValueError("baseline cost must be positive")
    return 1.0 - condensed / baseline
