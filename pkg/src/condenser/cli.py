"""Command-line entry point: condense, rank, arp, run, report."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import fields
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .cohesion import ARP_LABEL, compare_corpora
from .condense import CondenseParams, Strategy, condense
from .errors import CondenserError, ExperimentError
from .evaluation.corpus import PRESETS, load_corpus, load_documents
from .evaluation.report import MetricsReport, merge_reports, points_csv, rank_scenarios, render_table
from .evaluation.runner import ExperimentConfig, run_sweep, write_observations
from .gateway.cache import ReplayCache
from .gateway.client import Mode
from .gateway.cost import load_price_table
from .gateway.providers import ProviderConfig, make_provider
from .text_core import document_from_text
from .textrank import build_graph, rank

CONFIG_ENV = "CONDENSER_CONFIG"


class UsageError(Exception):
    """Invalid configuration; exits with status 2."""


# keys accepted in a run config file besides the ExperimentConfig fields
_FILE_KEYS = {"corpus", "dataset", "task", "categories", "min_sentences", "name", "cache", "prices", "out_dir", "provider"}
_EXPERIMENT_KEYS = {f.name for f in fields(ExperimentConfig)}


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _parse_range(spec: str) -> tuple[int, ...]:
    """``"3:15"`` (inclusive) or ``"3,5,7"``."""
    if ":" in spec:
        lo, hi = spec.split(":", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(x) for x in spec.split(",") if x.strip())


def _parse_floats(spec: str) -> tuple[float, ...]:
    return tuple(float(x) for x in spec.split(",") if x.strip())


# -- condense / rank / arp / report ------------------------------------------


def cmd_condense(args: argparse.Namespace) -> int:
    doc = document_from_text(_read_text(args.input), doc_id=Path(args.input).stem)
    params = CondenseParams(n=args.n, seed=args.seed, prune_keep_fraction=args.prune_keep)
    result = condense(doc, args.strategy, params)
    sys.stdout.write(result.text + "\n")
    if args.json:
        sidecar = {
            "strategy": result.strategy.value,
            "selected": list(result.selected),
            "token_count": result.token_count,
            "source_token_count": doc.word_token_count,
            "num_sentences": doc.num_sentences,
            "n": args.n,
            "seed": args.seed,
            "prune_keep_fraction": args.prune_keep,
        }
        Path(args.json).write_text(json.dumps(sidecar, indent=2) + "\n", encoding="utf-8")
    return 0


def cmd_rank(args: argparse.Namespace) -> int:
    doc = document_from_text(_read_text(args.input))
    scores = rank(build_graph(doc, args.similarity), args.damping, args.tol, args.max_iter)
    lines = ["index,score"] + [f"{i},{s!r}" for i, s in enumerate(scores.scores.tolist())]
    sys.stdout.write("\n".join(lines) + "\n")
    if not scores.converged:
        print(f"warning: not converged after {scores.iterations} iterations", file=sys.stderr)
    return 0


def cmd_arp(args: argparse.Namespace) -> int:
    corpora = {}
    for path in args.corpus:
        name = Path(path).stem
        if name in corpora:
            name = path
        corpora[name] = load_documents(path, args.min_sentences)
        if not corpora[name]:
            raise CondenserError(f"{path}: no documents with at least {args.min_sentences} sentences")
    reports = compare_corpora(corpora, args.segment_len)
    out = {
        "label": ARP_LABEL,
        "segment_len": args.segment_len,
        "corpora": {name: r.to_dict() for name, r in reports.items()},
    }
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    report = rank_scenarios(MetricsReport.load(args.report))
    sys.stdout.write(render_table(report))
    return 0


# -- run ------------------------------------------------------------------------


def _load_config_file(path: Path) -> dict[str, Any]:
    raw = path.read_bytes()
    if path.suffix == ".toml":
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib
        data = tomllib.loads(raw.decode("utf-8"))
    else:
        data = json.loads(raw)
    unknown = set(data) - _FILE_KEYS - _EXPERIMENT_KEYS
    if unknown:
        raise UsageError(f"{path}: unknown config keys: {sorted(unknown)}")
    base = path.parent
    for key in ("corpus", "cache", "prices", "out_dir"):
        if key in data and not Path(data[key]).is_absolute():
            data[key] = str(base / data[key])
    return data


def _merge_flags(data: dict[str, Any], args: argparse.Namespace) -> dict[str, Any]:
    overrides = {
        "corpus": args.corpus,
        "model_id": args.model_id,
        "mode": args.mode,
        "n": args.n,
        "runs": args.runs,
        "seed": args.seed,
        "temperature": args.temperature,
        "sample_size": args.sample_size,
        "confidence_level": args.confidence_level,
        "prune_keep_fraction": args.prune_keep,
        "max_in_flight": args.max_in_flight,
        "cache": args.cache,
        "prices": args.prices,
        "out_dir": args.out_dir,
        "n_sweep": _parse_range(args.n_sweep) if args.n_sweep else None,
        "temperature_sweep": _parse_floats(args.temperature_sweep) if args.temperature_sweep else None,
        "scenarios": args.scenarios.split(",") if args.scenarios else None,
    }
    merged = dict(data)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return merged


def _experiment_config(data: dict[str, Any]) -> ExperimentConfig:
    if "model_id" not in data:
        raise UsageError("model_id is required")
    kwargs = {k: v for k, v in data.items() if k in _EXPERIMENT_KEYS}
    try:
        if "scenarios" in kwargs:
            kwargs["scenarios"] = tuple(Strategy.parse(s) for s in kwargs["scenarios"])
        if "mode" in kwargs:
            kwargs["mode"] = Mode(kwargs["mode"])
        if isinstance(kwargs.get("n_sweep"), str):
            kwargs["n_sweep"] = _parse_range(kwargs["n_sweep"])
        for key in ("n_sweep", "temperature_sweep"):
            if kwargs.get(key) is not None:
                kwargs[key] = tuple(kwargs[key])
        config = ExperimentConfig(**kwargs)
        config.validate()
    except (ValueError, TypeError) as exc:
        raise UsageError(f"invalid experiment config: {exc}") from exc
    return config


def cmd_run(args: argparse.Namespace) -> int:
    config_path = args.config or os.environ.get(CONFIG_ENV)
    data = _load_config_file(Path(config_path)) if config_path else {}
    data = _merge_flags(data, args)
    config = _experiment_config(data)

    if "corpus" not in data:
        raise UsageError("corpus path is required")
    preset = PRESETS.get(data.get("dataset", ""))
    task = data.get("task") or (preset.task.value if preset else None)
    if task is None:
        raise UsageError("task is required (or a known dataset preset)")
    categories = data.get("categories") or (preset.categories if preset else None)
    min_sentences = data.get("min_sentences", preset.min_sentences if preset else 0)
    corpus = load_corpus(data["corpus"], task, min_sentences, categories, data.get("name"))

    try:
        provider_cfg = ProviderConfig.from_mapping(data.get("provider", {"name": "stub", "kind": "stub"}))
        provider = make_provider(provider_cfg)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid provider config: {exc}") from exc
    cache_path = data.get("cache")
    if config.mode is not Mode.LIVE and not cache_path:
        raise UsageError(f"{config.mode.value} mode needs a cache path")
    cache = ReplayCache(cache_path) if cache_path else None
    prices = load_price_table(data["prices"]) if data.get("prices") else None

    out_dir = Path(data.get("out_dir", "results"))
    out_dir.mkdir(parents=True, exist_ok=True)

    def save_partial(observations):
        write_observations(out_dir / "partial_observations.jsonl", observations)

    points = run_sweep(config, corpus, provider, cache, prices, on_partial=save_partial)
    base = points[0][2] if not (config.n_sweep or config.temperature_sweep) else None
    if base is None:
        (out_dir / "report.json").write_text(
            json.dumps(merge_reports([p[2] for p in points]), indent=2) + "\n", encoding="utf-8"
        )
        table = "".join(f"[{param}={value}]\n{render_table(rep)}\n" for param, value, rep in points)
    else:
        (out_dir / "report.json").write_text(base.to_json(), encoding="utf-8")
        table = render_table(base)
    (out_dir / "report.txt").write_text(table, encoding="utf-8")
    (out_dir / "points.csv").write_text(points_csv(points), encoding="utf-8")
    timings = [
        {"sweep_param": p, "sweep_value": v, "condense_seconds": rep.condense_seconds} for p, v, rep in points
    ]
    (out_dir / "timings.json").write_text(json.dumps(timings, indent=2) + "\n", encoding="utf-8")
    sys.stdout.write(table)
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="condenser", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("condense", help="condense one text file with a strategy")
    p.add_argument("input", help="UTF-8 text file, or - for stdin")
    p.add_argument("--strategy", required=True, choices=[s.value for s in Strategy])
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prune-keep", type=float, default=0.5)
    p.add_argument("--json", metavar="PATH", help="write a JSON sidecar with indices and token counts")
    p.set_defaults(func=cmd_condense)

    p = sub.add_parser("rank", help="TextRank scores per sentence as CSV")
    p.add_argument("input")
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--similarity", choices=["overlap", "tfidf"], default="overlap")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("arp", help="cohesiveness (ARP) of one or more JSONL corpora")
    p.add_argument("corpus", nargs="+")
    p.add_argument("--segment-len", type=int, default=2)
    p.add_argument("--min-sentences", type=int, default=0)
    p.set_defaults(func=cmd_arp)

    p = sub.add_parser("run", help="run an experiment from a config file")
    p.add_argument("--config", help=f"JSON or TOML config (default: ${CONFIG_ENV})")
    p.add_argument("--corpus")
    p.add_argument("--model-id")
    p.add_argument("--mode", choices=[m.value for m in Mode])
    p.add_argument("--scenarios", help="comma-separated strategy names")
    p.add_argument("--n", type=int)
    p.add_argument("--runs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--temperature", type=float)
    p.add_argument("--sample-size", type=int)
    p.add_argument("--confidence-level", type=float)
    p.add_argument("--prune-keep", type=float)
    p.add_argument("--max-in-flight", type=int)
    p.add_argument("--cache")
    p.add_argument("--prices")
    p.add_argument("--out-dir")
    p.add_argument("--n-sweep", help="inclusive range like 3:15, or a list like 3,5,7")
    p.add_argument("--temperature-sweep", help="comma-separated temperatures")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("report", help="render a report JSON as a ranked table")
    p.add_argument("report")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"condenser: error: {exc}", file=sys.stderr)
        return 2
    except ExperimentError as exc:
        print(f"condenser: {exc}", file=sys.stderr)
        return 1
    except (CondenserError, OSError, ValueError, KeyError) as exc:
        print(f"condenser: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
