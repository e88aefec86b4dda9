"""Regenerate the committed test fixtures.

    python tests/fixtures/make_fixtures.py

Writes the two synthetic corpora, then records the replay cache for
``replay_config.toml`` against the offline stub provider. Re-running
produces identical corpora and responses (only cache timestamps differ).
"""

from __future__ import annotations

import json
import random
from pathlib import Path

from condenser.cli import main

HERE = Path(__file__).parent

REVIEW_OPENERS = [
    "This game sets out to reinvent the {genre} genre.",
    "I spent about {hours} hours with this release before writing this review.",
    "Expectations were high after the original {genre} hit.",
]
REVIEW_BODY = [
    "The combat feels {adj} and the controls respond {adv}.",
    "Level design is {adj}, with {count} distinct areas to explore.",
    "The story follows a {adj} hero through a {adj2} world.",
    "Music and sound effects are {adj} throughout the campaign.",
    "Boss fights are {adj} and demand {adv} timing.",
    "Graphics look {adj} on modern hardware.",
    "Side quests add {count} extra hours of {adj} content.",
    "The map is {adj} and rarely confusing.",
    "Load times are {adj} on every platform.",
    "Multiplayer matches feel {adj} thanks to {adj2} netcode.",
    "The difficulty curve is {adj} for newcomers.",
    "Weapon upgrades feel {adj} and rewarding.",
]
REVIEW_CLOSERS = [
    "Overall, this is a {adj} {genre} game worth your time.",
    "In the end the experience is {adj} despite a few flaws.",
    "Fans of the {genre} genre will find it {adj}.",
]
POSITIVE = ["superb", "polished", "excellent", "gripping", "smooth"]
NEGATIVE = ["clumsy", "dull", "broken", "tedious", "sluggish"]
ADVERBS = ["crisply", "sluggishly", "precisely", "loosely"]
GENRES = ["action", "racing", "puzzle", "strategy"]

NEWS = {
    "business": ["profits", "shares", "market", "investors", "bank", "company"],
    "entertainment": ["film", "actor", "album", "festival", "award", "singer"],
    "politics": ["minister", "election", "party", "vote", "parliament", "policy"],
    "sport": ["match", "coach", "season", "goal", "team", "championship"],
    "tech": ["software", "phone", "internet", "users", "chip", "network"],
}
NEWS_TEMPLATES = [
    "The {a} drew attention as the {b} changed this week.",
    "Officials said the {a} would affect the {b} next year.",
    "Analysts expect the {a} and the {b} to dominate headlines.",
    "Critics argued that the {a} had overshadowed the {b}.",
    "A spokesperson confirmed the {a} was linked to the {b}.",
    "Reports suggest the {b} will shape the {a} for months.",
]


def review(rng: random.Random, label: int) -> str:
    good = label >= 50
    pool = POSITIVE if good else NEGATIVE
    other = NEGATIVE if good else POSITIVE

    def fill(t: str) -> str:
        adj = rng.choice(pool if rng.random() < 0.8 else other)
        return t.format(
            genre=rng.choice(GENRES), hours=rng.randint(10, 60), adj=adj, adj2=rng.choice(pool),
            adv=rng.choice(ADVERBS), count=rng.randint(3, 12),
        )

    body = rng.sample(REVIEW_BODY, 10)
    return " ".join([fill(rng.choice(REVIEW_OPENERS))] + [fill(t) for t in body] + [fill(rng.choice(REVIEW_CLOSERS))])


def article(rng: random.Random, category: str) -> str:
    words = NEWS[category]
    noise = [w for c, ws in NEWS.items() if c != category for w in ws]
    out = []
    for _ in range(10):
        a = rng.choice(words)
        b = rng.choice(words if rng.random() < 0.7 else noise)
        out.append(rng.choice(NEWS_TEMPLATES).format(a=a, b=b))
    return " ".join(out)


def write_jsonl(path: Path, records) -> None:
    path.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")


def main_fixtures() -> None:
    rng = random.Random(1234)
    reviews = [{"id": f"review-{i}", "text": review(rng, label), "label": label}
               for i, label in enumerate([90, 35, 70, 15])]
    write_jsonl(HERE / "reviews.jsonl", reviews)

    cats = list(NEWS)
    articles = [{"id": f"news-{i}", "text": article(rng, c), "label": c} for i, c in enumerate(cats + cats[:1])]
    write_jsonl(HERE / "news.jsonl", articles)

    cache = HERE / "replay_cache.jsonl"
    if cache.exists():
        cache.unlink()
    for cfg in ("replay_config.toml", "news_config.toml"):
        status = main(["run", "--config", str(HERE / cfg), "--mode", "record", "--out-dir", str(HERE / "_record_out")])
        assert status == 0
    status = main([
        "run", "--config", str(HERE / "replay_config.toml"), "--mode", "record",
        "--n-sweep", "3:5", "--out-dir", str(HERE / "_record_out"),
    ])
    assert status == 0


if __name__ == "__main__":
    main_fixtures()
