"""Per-scenario metric reports: ranking, JSON, aligned tables and CSV points."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from ..condense import STRATEGY_LABELS, Strategy
from .metrics import competition_rank

SENTIMENT_METRICS = (
    "mse",
    "mae",
    "accuracy",
    "avg_latency_s",
    "avg_input_tokens",
    "avg_cost_usd",
    "parse_failure_rate",
)
CATEGORIZATION_METRICS = (
    "macro_f1",
    "accuracy",
    "avg_latency_s",
    "avg_input_tokens",
    "avg_cost_usd",
    "parse_failure_rate",
)
HIGHER_IS_BETTER = frozenset({"accuracy", "macro_f1"})

_COLUMNS = {
    "mse": ("MSE", "{:.1f}"),
    "mae": ("MAE", "{:.2f}"),
    "accuracy": ("Accuracy", "{:.1f}"),
    "macro_f1": ("Mac. F1", "{:.2f}"),
    "avg_latency_s": ("Avg. Lat.", "{:.2f}"),
    "avg_input_tokens": ("Inp. Len.", "{:.0f}"),
    "avg_cost_usd": ("Avg. Cost", "{:.5f}"),
    "parse_failure_rate": ("Fail Rate", "{:.3f}"),
}


def metric_names(task: str) -> tuple[str, ...]:
    return SENTIMENT_METRICS if task == "sentiment" else CATEGORIZATION_METRICS


@dataclass
class ScenarioResult:
    scenario: str
    values: dict[str, Optional[float]]
    half_widths: dict[str, Optional[float]] = field(default_factory=dict)
    ranks: dict[str, Optional[int]] = field(default_factory=dict)

    @property
    def label(self) -> str:
        try:
            return STRATEGY_LABELS[Strategy(self.scenario)]
        except ValueError:
            return self.scenario


@dataclass
class MetricsReport:
    task: str
    scenarios: list[ScenarioResult]
    header: dict[str, Any] = field(default_factory=dict)
    # wall-clock condensation time per scenario; never serialised because it
    # differs between otherwise identical runs
    condense_seconds: dict[str, float] = field(default_factory=dict, compare=False, repr=False)

    def metrics(self) -> list[str]:
        present = {m for s in self.scenarios for m in s.values}
        ordered = [m for m in metric_names(self.task) if m in present]
        return ordered + sorted(present - set(ordered))

    def scenario(self, name: str) -> ScenarioResult:
        for s in self.scenarios:
            if s.scenario == name:
                return s
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "header": self.header,
            "task": self.task,
            "scenarios": [
                {
                    "scenario": s.scenario,
                    "values": s.values,
                    "ci_half_widths": s.half_widths,
                    "ranks": s.ranks,
                }
                for s in self.scenarios
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MetricsReport":
        scenarios = [
            ScenarioResult(
                s["scenario"],
                dict(s["values"]),
                dict(s.get("ci_half_widths", {})),
                dict(s.get("ranks", {})),
            )
            for s in data["scenarios"]
        ]
        return cls(data["task"], scenarios, dict(data.get("header", {})))

    @classmethod
    def load(cls, path: str | Path) -> "MetricsReport":
        return cls.from_dict(json.loads(Path(path).read_text("utf-8")))


def rank_scenarios(report: MetricsReport) -> MetricsReport:
    """Fill in per-metric ranks (1 = best, ties share the better rank)."""
    for metric in report.metrics():
        values = [s.values.get(metric) for s in report.scenarios]
        ranks = competition_rank(values, higher_is_better=metric in HIGHER_IS_BETTER)
        for s, r in zip(report.scenarios, ranks):
            s.ranks[metric] = r
    return report


def render_table(report: MetricsReport) -> str:
    metrics = report.metrics()
    header = ["Scenario"] + [_COLUMNS.get(m, (m, "{:.4g}"))[0] for m in metrics]
    rows = [header]
    for s in report.scenarios:
        row = [s.label]
        for m in metrics:
            fmt = _COLUMNS.get(m, (m, "{:.4g}"))[1]
            v = s.values.get(m)
            cell = "-" if v is None else fmt.format(v)
            r = s.ranks.get(m)
            if r is not None:
                cell += f" ({r})"
            row.append(cell)
        rows.append(row)
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = []
    for k, row in enumerate(rows):
        cells = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def points_csv(points: Iterable[tuple[str, Any, MetricsReport]]) -> str:
    """Wide CSV with one row per (sweep value, scenario) for plotting."""
    points = list(points)
    metrics: list[str] = []
    for _, _, rep in points:
        metrics += [m for m in rep.metrics() if m not in metrics]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["sweep_param", "sweep_value", "scenario"] + [c for m in metrics for c in (m, f"{m}_ci")])
    for param, value, rep in points:
        for s in rep.scenarios:
            row: list[Any] = [param, value, s.scenario]
            for m in metrics:
                row += [_csv_value(s.values.get(m)), _csv_value(s.half_widths.get(m))]
            writer.writerow(row)
    return buf.getvalue()


def _csv_value(v: Optional[float]) -> str:
    return "" if v is None else repr(float(v))


def merge_reports(reports: Sequence[MetricsReport]) -> dict[str, Any]:
    return {"reports": [r.to_dict() for r in reports]}
