"""Sentence splitting, word tokenization and the tokenized document model."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Union

from .errors import InvalidDocument

Label = Union[int, str]

_PIECE_RE = re.compile(r"\S+")
# terminator run, then optional closing quotes/brackets, at the end of a piece
_TERMINAL_RE = re.compile(r"[.!?]+[\"'”’)\]]*$")
_OPENERS = "\"'“‘(["


def load_abbreviations(path: str | Path | None = None) -> tuple[str, frozenset[str]]:
    """Read an abbreviation list file and return ``(version, entries)``.

    Lines starting with ``#`` are comments; a ``# version: X`` comment sets
    the version string. Without *path* the bundled list is used.
    """
    if path is None:
        text = resources.files("condenser.data").joinpath("abbreviations.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    version = "unversioned"
    entries = set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = re.match(r"#\s*version:\s*(\S+)", line)
            if m:
                version = m.group(1)
            continue
        entries.add(line.lower())
    return version, frozenset(entries)


@lru_cache(maxsize=1)
def _default_abbreviations() -> tuple[str, frozenset[str]]:
    return load_abbreviations()


def abbreviations_version() -> str:
    return _default_abbreviations()[0]


@dataclass(frozen=True)
class RawDocument:
    id: str
    text: str
    label: Label | None = None


@dataclass(frozen=True)
class Sentence:
    index: int
    text: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class TokenizedDocument:
    id: str
    sentences: tuple[Sentence, ...]
    label: Label | None = None

    @property
    def word_token_count(self) -> int:
        return sum(len(s.tokens) for s in self.sentences)

    @property
    def num_sentences(self) -> int:
        return len(self.sentences)

    @property
    def text(self) -> str:
        return " ".join(s.text for s in self.sentences)


def is_punct(token: str) -> bool:
    """True for tokens made only of non-alphanumeric characters."""
    return not any(ch.isalnum() for ch in token)


def _is_abbreviation(piece: str, abbreviations: frozenset[str]) -> bool:
    body = re.sub(r"[\"'”’)\]]+$", "", piece)
    if not body.endswith("."):
        return False
    core = body[:-1].lstrip(_OPENERS)
    if len(core) == 1 and core.isupper():
        return True
    return core.lower() in abbreviations


def split_sentences(text: str, abbreviations: Iterable[str] | None = None) -> list[str]:
    """Split *text* into sentence strings.

    A boundary follows a piece ending in ``.``, ``!`` or ``?`` (optionally
    followed by closing quotes/brackets) when the next character is
    whitespace, unless the piece is a known abbreviation or a single-letter
    initial. Whitespace inside a sentence is collapsed to single spaces, so
    ``" ".join(split_sentences(t)) == " ".join(t.split())``.
    """
    if not text or not text.strip():
        raise InvalidDocument("document text is empty")
    abbrevs = _default_abbreviations()[1] if abbreviations is None else frozenset(abbreviations)

    sentences: list[str] = []
    current: list[str] = []
    for m in _PIECE_RE.finditer(text):
        piece = m.group(0)
        current.append(piece)
        if _TERMINAL_RE.search(piece) and not _is_abbreviation(piece, abbrevs):
            sentences.append(" ".join(current))
            current = []
    if current:
        sentences.append(" ".join(current))
    return sentences


def tokenize_words(text: str) -> list[str]:
    """Lowercase word tokens; punctuation runs at piece edges become tokens.

    >>> tokenize_words("Hello, world!")
    ['hello', ',', 'world', '!']
    """
    tokens: list[str] = []
    for piece in text.lower().split():
        start, end = 0, len(piece)
        while start < end and not piece[start].isalnum():
            start += 1
        if start == end:
            tokens.append(piece)
            continue
        while not piece[end - 1].isalnum():
            end -= 1
        if start:
            tokens.append(piece[:start])
        tokens.append(piece[start:end])
        if end < len(piece):
            tokens.append(piece[end:])
    return tokens


def count_tokens(text: str) -> int:
    return len(tokenize_words(text))


def make_sentences(texts: Iterable[str]) -> tuple[Sentence, ...]:
    return tuple(Sentence(i, t, tuple(tokenize_words(t))) for i, t in enumerate(texts))


def tokenize_document(doc: RawDocument, abbreviations: Iterable[str] | None = None) -> TokenizedDocument:
    if not doc.id:
        raise InvalidDocument("document id is empty")
    sentences = make_sentences(split_sentences(doc.text, abbreviations))
    if sum(len(s.tokens) for s in sentences) < 1:
        raise InvalidDocument(f"document {doc.id!r} has no tokens")
    return TokenizedDocument(doc.id, sentences, doc.label)


def document_from_text(text: str, doc_id: str = "doc", label: Label | None = None) -> TokenizedDocument:
    return tokenize_document(RawDocument(doc_id, text, label))
