"""Multi-run experiment execution over scenarios, documents and runs."""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Callable, Optional, Sequence

from ..condense import SEPARATOR_VERSION, CondensedInput, CondenseParams, Strategy, condense
from ..errors import CacheMiss, ExperimentError, ParseFailure, ProviderError
from ..gateway.cache import ReplayCache
from ..gateway.client import Mode, PromptRequest, Task, send_with_cache
from ..gateway.cost import Price, estimate_cost
from ..gateway.parsing import parse_category, parse_sentiment
from ..gateway.prompts import TEMPLATE_VERSION
from ..gateway.providers import Provider
from ..text_core import abbreviations_version
from . import metrics as M
from .corpus import Corpus
from .report import MetricsReport, ScenarioResult, rank_scenarios

ALL_SCENARIOS = tuple(Strategy)


@dataclass(frozen=True)
class ExperimentConfig:
    model_id: str
    scenarios: tuple[Strategy, ...] = ALL_SCENARIOS
    n: int = 10
    runs: int = 5
    seed: int = 0
    temperature: float = 0.0
    mode: Mode = Mode.REPLAY
    sample_size: Optional[int] = None
    confidence_level: float = 0.85
    prune_keep_fraction: float = 0.5
    max_output_tokens: int = 16
    max_in_flight: int = 4
    n_sweep: Optional[tuple[int, ...]] = None
    temperature_sweep: Optional[tuple[float, ...]] = None

    def validate(self) -> None:
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 < self.confidence_level < 1.0:
            raise ValueError("confidence_level must lie in (0, 1)")
        if self.sample_size is not None and self.sample_size < 1:
            raise ValueError("sample_size must be >= 1")
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be >= 1")
        if not self.scenarios:
            raise ValueError("at least one scenario is required")
        CondenseParams(self.n, self.seed, self.prune_keep_fraction).validate()


@dataclass(frozen=True)
class Observation:
    run: int
    doc_index: int
    doc_id: str
    scenario: str
    label: object
    prediction: object
    failure: Optional[str]
    latency_s: float
    input_tokens: int
    prompt_tokens: int
    output_tokens: int
    cost_usd: Optional[float]


def derive_seed(seed: int, run: int, doc_id: str) -> int:
    """Per-(run, document) sampling seed; differs across runs, replays exactly."""
    digest = hashlib.sha256(f"{seed}:{run}:{doc_id}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _documents(corpus: Corpus, config: ExperimentConfig):
    docs = corpus.documents
    return docs[: config.sample_size] if config.sample_size else docs


def run_experiment(
    config: ExperimentConfig,
    corpus: Corpus,
    provider: Provider,
    cache: ReplayCache | None,
    prices: dict[str, Price] | None = None,
    on_partial: Callable[[list[Observation]], None] | None = None,
) -> MetricsReport:
    """Condense, prompt, parse and aggregate every (run, document, scenario).

    Condensation runs serially up front and is timed separately from the
    model latency. Requests then go out on up to ``max_in_flight`` threads;
    results are aggregated in (run, document, scenario) order so the
    degree of parallelism never changes the report.

    On a cache miss or provider failure the completed observations are
    handed to *on_partial* before an :class:`ExperimentError` is raised.
    """
    config.validate()
    docs = _documents(corpus, config)
    task = corpus.task

    condensed: dict[tuple[int, int, int], CondensedInput] = {}
    condense_seconds = {s.value: 0.0 for s in config.scenarios}
    memo: dict[tuple[int, int], CondensedInput] = {}
    for r in range(config.runs):
        for d, doc in enumerate(docs):
            for k, strategy in enumerate(config.scenarios):
                if strategy is not Strategy.RANDOM_SAMPLING and (d, k) in memo:
                    condensed[r, d, k] = memo[d, k]
                    continue
                params = CondenseParams(config.n, derive_seed(config.seed, r, doc.id), config.prune_keep_fraction)
                start = time.perf_counter()
                result = condense(doc, strategy, params)
                condense_seconds[strategy.value] += time.perf_counter() - start
                condensed[r, d, k] = memo[d, k] = result

    def execute(key: tuple[int, int, int]) -> Observation:
        r, d, k = key
        doc, strategy, cond = docs[d], config.scenarios[k], condensed[key]
        request = PromptRequest(
            task=task,
            model_id=config.model_id,
            temperature=config.temperature,
            input_text=cond.text,
            categories=corpus.categories if task is Task.CATEGORIZATION else None,
            max_output_tokens=config.max_output_tokens,
        )
        try:
            record = send_with_cache(request, provider, cache, config.mode, run_index=r)
        except (CacheMiss, ProviderError) as exc:
            raise ExperimentError(
                f"{exc} [document {doc.id!r}, scenario {strategy.value}, run {r}]",
                doc_id=doc.id,
                scenario=strategy.value,
                run_index=r,
            ) from exc
        prediction, failure = None, None
        try:
            if task is Task.SENTIMENT:
                prediction = parse_sentiment(record.response_text)
            else:
                prediction = parse_category(record.response_text, corpus.categories)
        except ParseFailure as exc:
            failure = exc.kind
        cost = estimate_cost(record, prices) if prices is not None else None
        return Observation(
            r, d, doc.id, strategy.value, doc.label, prediction, failure,
            record.latency_s, cond.token_count, record.input_tokens, record.output_tokens, cost,
        )

    keys = sorted(condensed)
    results: dict[tuple[int, int, int], Observation] = {}
    error: ExperimentError | None = None
    with ThreadPoolExecutor(max_workers=config.max_in_flight) as pool:
        futures = {key: pool.submit(execute, key) for key in keys}
        for key in keys:
            try:
                results[key] = futures[key].result()
            except ExperimentError as exc:
                if error is None:
                    error = exc
                    for f in futures.values():
                        f.cancel()
            except Exception:
                if error is None:
                    for f in futures.values():
                        f.cancel()
                    raise
    if error is not None:
        if on_partial is not None:
            on_partial([results[k] for k in sorted(results)])
        raise error

    observations = [results[k] for k in keys]
    report = aggregate(observations, config, corpus)
    report.condense_seconds = condense_seconds
    return report


def _run_metrics(obs: Sequence[Observation], corpus: Corpus) -> dict[str, Optional[float]]:
    pairs = [(o.prediction, o.label) for o in obs]
    values: dict[str, Optional[float]] = {}
    if corpus.task is Task.SENTIMENT:
        parsed = any(p is not None for p, _ in pairs)
        values["mse"] = M.mse(pairs) if parsed else None
        values["mae"] = M.mae(pairs) if parsed else None
        values["accuracy"] = M.accuracy_within(pairs) if parsed else None
    else:
        parsed = any(p is not None for p, _ in pairs)
        values["macro_f1"] = M.macro_f1(pairs, corpus.categories) if parsed else 0.0
        values["accuracy"] = M.categorization_accuracy(pairs)
    values["avg_latency_s"] = sum(o.latency_s for o in obs) / len(obs)
    values["avg_input_tokens"] = sum(o.input_tokens for o in obs) / len(obs)
    costs = [o.cost_usd for o in obs]
    values["avg_cost_usd"] = None if any(c is None for c in costs) else sum(costs) / len(costs)
    values["parse_failure_rate"] = sum(o.failure is not None for o in obs) / len(obs)
    return values


def aggregate(observations: Sequence[Observation], config: ExperimentConfig, corpus: Corpus) -> MetricsReport:
    """Per-run metrics per scenario, then mean and t-interval across runs."""
    results = []
    for strategy in config.scenarios:
        per_run = []
        for r in range(config.runs):
            obs = [o for o in observations if o.run == r and o.scenario == strategy.value]
            per_run.append(_run_metrics(obs, corpus))
        values: dict[str, Optional[float]] = {}
        halves: dict[str, Optional[float]] = {}
        for metric in per_run[0]:
            series = [run[metric] for run in per_run if run[metric] is not None]
            if not series:
                values[metric] = halves[metric] = None
            elif len(series) == 1:
                values[metric], halves[metric] = series[0], 0.0
            else:
                values[metric], halves[metric] = M.confidence_interval(series, config.confidence_level)
        results.append(ScenarioResult(strategy.value, values, halves))

    header = {
        "corpus": corpus.name,
        "task": corpus.task.value,
        "min_sentences": corpus.min_sentences,
        "num_documents": len(_documents(corpus, config)),
        "sample_size": config.sample_size,
        "model_id": config.model_id,
        "temperature": config.temperature,
        "n": config.n,
        "runs": config.runs,
        "seed": config.seed,
        "prune_keep_fraction": config.prune_keep_fraction,
        "confidence_level": config.confidence_level,
        "single_run_ci": config.runs < 2,
        "template_version": TEMPLATE_VERSION,
        "separator_version": SEPARATOR_VERSION,
        "abbreviations_version": abbreviations_version(),
    }
    return rank_scenarios(MetricsReport(corpus.task.value, results, header))


def run_sweep(
    config: ExperimentConfig,
    corpus: Corpus,
    provider: Provider,
    cache: ReplayCache | None,
    prices: dict[str, Price] | None = None,
    on_partial: Callable[[list[Observation]], None] | None = None,
) -> list[tuple[str, object, MetricsReport]]:
    """Reports for the base config plus each ``n_sweep`` / ``temperature_sweep`` point."""
    points: list[tuple[str, object, MetricsReport]] = []
    if not config.n_sweep and not config.temperature_sweep:
        points.append(("n", config.n, run_experiment(config, corpus, provider, cache, prices, on_partial)))
    for n in config.n_sweep or ():
        rep = run_experiment(replace(config, n=n), corpus, provider, cache, prices, on_partial)
        points.append(("n", n, rep))
    for t in config.temperature_sweep or ():
        rep = run_experiment(replace(config, temperature=t), corpus, provider, cache, prices, on_partial)
        points.append(("temperature", t, rep))
    return points


def write_observations(path: str | Path, observations: Sequence[Observation]) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for o in observations:
            fh.write(json.dumps(asdict(o), sort_keys=True) + "\n")
