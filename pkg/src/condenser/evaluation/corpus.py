"""JSONL corpus loading with minimum-length filtering."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

from ..errors import EmptyAfterFilter, InvalidDocument, MalformedRecord, UnknownLabel
from ..gateway.client import Task
from ..text_core import RawDocument, TokenizedDocument, tokenize_document

BBC_CATEGORIES = ("business", "entertainment", "politics", "sport", "tech")

NEWSGROUPS_CATEGORIES = (
    "alt.atheism",
    "comp.graphics",
    "comp.os.ms-windows.misc",
    "comp.sys.ibm.pc.hardware",
    "comp.sys.mac.hardware",
    "comp.windows.x",
    "misc.forsale",
    "rec.autos",
    "rec.motorcycles",
    "rec.sport.baseball",
    "rec.sport.hockey",
    "sci.crypt",
    "sci.electronics",
    "sci.med",
    "sci.space",
    "soc.religion.christian",
    "talk.politics.guns",
    "talk.politics.mideast",
    "talk.politics.misc",
    "talk.religion.misc",
)


@dataclass(frozen=True)
class DatasetPreset:
    task: Task
    min_sentences: int
    categories: tuple[str, ...] | None = None


PRESETS = {
    "gamespot": DatasetPreset(Task.SENTIMENT, 45),
    "20newsgroups": DatasetPreset(Task.CATEGORIZATION, 60, NEWSGROUPS_CATEGORIES),
    "bbc": DatasetPreset(Task.CATEGORIZATION, 35, BBC_CATEGORIES),
}


@dataclass(frozen=True)
class Corpus:
    name: str
    task: Task
    documents: tuple[TokenizedDocument, ...]
    categories: tuple[str, ...] | None
    min_sentences: int

    def __len__(self) -> int:
        return len(self.documents)


def iter_records(path: str | Path, require_label: bool = True) -> Iterator[tuple[int, RawDocument]]:
    """Yield ``(line_number, RawDocument)`` for each non-blank JSONL line."""
    seen: set[str] = set()
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRecord(lineno, f"invalid JSON ({exc.msg})") from None
            if not isinstance(obj, dict):
                raise MalformedRecord(lineno, "record is not an object")
            doc_id, text = obj.get("id"), obj.get("text")
            if not isinstance(doc_id, str) or not doc_id:
                raise MalformedRecord(lineno, "missing or empty 'id'")
            if not isinstance(text, str) or not text.strip():
                raise MalformedRecord(lineno, "missing or empty 'text'")
            if require_label and "label" not in obj:
                raise MalformedRecord(lineno, "missing 'label'")
            label = obj.get("label")
            if label is not None and (isinstance(label, bool) or not isinstance(label, (int, str))):
                raise MalformedRecord(lineno, "'label' must be a string or integer")
            if doc_id in seen:
                raise MalformedRecord(lineno, f"duplicate id {doc_id!r}")
            seen.add(doc_id)
            yield lineno, RawDocument(doc_id, text, label)


def _validate_label(label, task: Task, categories: Sequence[str] | None, lineno: int):
    if task is Task.SENTIMENT:
        if isinstance(label, str) and label.strip().lstrip("+-").isdigit():
            label = int(label)
        if not isinstance(label, int) or not 1 <= label <= 100:
            raise UnknownLabel(f"line {lineno}: sentiment label must be an integer in [1, 100], got {label!r}")
        return label
    if label not in (categories or ()):
        raise UnknownLabel(f"line {lineno}: label {label!r} is not one of the corpus categories")
    return label


def load_corpus(
    path: str | Path,
    task: Task | str,
    min_sentences: int = 0,
    categories: Sequence[str] | None = None,
    name: str | None = None,
) -> Corpus:
    task = Task(task)
    if task is Task.CATEGORIZATION and (not categories or len(categories) < 2):
        raise ValueError("categorization corpora need at least two categories")
    docs = []
    for lineno, raw in iter_records(path):
        label = _validate_label(raw.label, task, categories, lineno)
        try:
            doc = tokenize_document(RawDocument(raw.id, raw.text, label))
        except InvalidDocument as exc:
            raise MalformedRecord(lineno, str(exc)) from None
        if doc.num_sentences >= min_sentences:
            docs.append(doc)
    if not docs:
        raise EmptyAfterFilter(f"no documents in {path} have at least {min_sentences} sentences")
    cats = tuple(categories) if task is Task.CATEGORIZATION else None
    return Corpus(name or Path(path).stem, task, tuple(docs), cats, min_sentences)


def load_documents(path: str | Path, min_sentences: int = 0) -> list[TokenizedDocument]:
    """Tokenize every record without label checks (labels are optional)."""
    docs = []
    for lineno, raw in iter_records(path, require_label=False):
        try:
            doc = tokenize_document(raw)
        except InvalidDocument as exc:
            raise MalformedRecord(lineno, str(exc)) from None
        if doc.num_sentences >= min_sentences:
            docs.append(doc)
    return docs
