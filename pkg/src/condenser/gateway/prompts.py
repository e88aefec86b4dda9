"""Versioned prompt templates.

Any wording change must bump ``TEMPLATE_VERSION``; it is written into every
cache record and report header.
"""

from __future__ import annotations

from typing import Sequence

TEMPLATE_VERSION = "1"

SENTIMENT_PREFIX = (
    "Rate the sentiment of the following review on a scale from 1 to 100, "
    "where 1 is extremely negative and 100 is extremely positive.\n"
    "Respond with only a single integer.\n"
    "\n"
    "Review:\n"
)

CATEGORIZATION_HEADER = "Categorize the following text into exactly one of these categories:\n"
CATEGORIZATION_FOOTER = (
    "Respond with only the category name, exactly as written above.\n"
    "\n"
    "Text:\n"
)


def build_sentiment_prompt(input_text: str) -> str:
    if not input_text.strip():
        raise ValueError("input text is empty")
    return SENTIMENT_PREFIX + input_text


def category_block(categories: Sequence[str]) -> str:
    return "".join(f"- {c}\n" for c in categories)


def build_categorization_prompt(input_text: str, categories: Sequence[str]) -> str:
    if len(categories) < 2:
        raise ValueError("categorization needs at least two categories")
    if not input_text.strip():
        raise ValueError("input text is empty")
    return CATEGORIZATION_HEADER + category_block(categories) + CATEGORIZATION_FOOTER + input_text
