"""Append-only JSONL store of completions, keyed by request fingerprint."""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import asdict, dataclass
from pathlib import Path


def fingerprint(provider: str, model_id: str, prompt: str, temperature: float, run_index: int) -> str:
    """Stable SHA-256 over a canonical JSON encoding of the request identity."""
    payload = json.dumps(
        {
            "provider": provider,
            "model_id": model_id,
            "prompt": prompt,
            "temperature": float(temperature),
            "run_index": int(run_index),
        },
        sort_keys=True,
        ensure_ascii=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CompletionRecord:
    fingerprint: str
    run_index: int
    provider: str
    model_id: str
    prompt: str
    temperature: float
    response_text: str
    latency_s: float
    input_tokens: int
    output_tokens: int
    timestamp: str
    template_version: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> "CompletionRecord":
        return cls(**{k: data[k] for k in cls.__dataclass_fields__})


class ReplayCache:
    """JSONL cache with an in-memory index.

    Reads are lock-free dictionary lookups; appends are serialised by a lock
    and become visible to later lookups as soon as they return. When a
    fingerprint appears more than once, the last line wins.
    """

    def __init__(self, path: str | Path | None = None) -> None:
        self.path = Path(path) if path is not None else None
        self._index: dict[str, CompletionRecord] = {}
        self._lock = threading.Lock()
        if self.path is not None and self.path.exists():
            with self.path.open(encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, 1):
                    if not line.strip():
                        continue
                    try:
                        record = CompletionRecord.from_dict(json.loads(line))
                    except (ValueError, KeyError, TypeError) as exc:
                        raise ValueError(f"{self.path}:{lineno}: bad cache record ({exc})") from exc
                    self._index[record.fingerprint] = record

    def __len__(self) -> int:
        return len(self._index)

    def __contains__(self, fp: str) -> bool:
        return fp in self._index

    def get(self, fp: str) -> CompletionRecord | None:
        return self._index.get(fp)

    def append(self, record: CompletionRecord) -> None:
        with self._lock:
            if self.path is not None:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with self.path.open("a", encoding="utf-8") as fh:
                    fh.write(record.to_json() + "\n")
            self._index[record.fingerprint] = record
