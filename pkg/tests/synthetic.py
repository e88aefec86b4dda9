"""Synthetic topical documents for cohesion tests."""

from __future__ import annotations

import random

TOPIC_A = ["engine", "piston", "fuel", "gear", "brake", "clutch", "tire", "exhaust", "valve", "radiator"]
TOPIC_B = ["violin", "melody", "chord", "tempo", "rhythm", "harmony", "orchestra", "sonata", "cello", "pitch"]
FILLER = ["the", "a", "is", "and", "with", "of"]


def topical_sentence(rng: random.Random, topic: list[str]) -> str:
    words = rng.sample(topic, 4) + rng.sample(FILLER, 2)
    rng.shuffle(words)
    return " ".join(words).capitalize() + "."


def two_topic_sentences(rng: random.Random, per_topic: int = 12) -> list[str]:
    return [topical_sentence(rng, TOPIC_A) for _ in range(per_topic)] + [
        topical_sentence(rng, TOPIC_B) for _ in range(per_topic)
    ]
