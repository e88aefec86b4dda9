"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CondenserError(Exception):
    """Base class for all library errors."""


class InvalidDocument(CondenserError, ValueError):
    pass


class ModelMismatch(CondenserError, ValueError):
    pass


class UnknownStrategy(CondenserError, ValueError):
    pass


class InvalidParams(CondenserError, ValueError):
    pass


class EmptyCorpus(CondenserError, ValueError):
    pass


# -- gateway ---------------------------------------------------------------


class ParseFailure(CondenserError):
    """A model response that could not be mapped to a prediction."""

    kind = "parse_failure"

    def __init__(self, response_text: str, message: str | None = None) -> None:
        self.response_text = response_text
        super().__init__(message or f"{self.kind}: {response_text[:80]!r}")


class NoInteger(ParseFailure):
    kind = "no_integer"


class OutOfRange(ParseFailure):
    kind = "out_of_range"


class NoMatch(ParseFailure):
    kind = "no_match"


class CacheMiss(CondenserError, KeyError):
    def __init__(self, fingerprint: str, run_index: int) -> None:
        self.fingerprint = fingerprint
        self.run_index = run_index
        super().__init__(f"no cached completion for fingerprint {fingerprint} (run {run_index})")

    def __str__(self) -> str:
        return self.args[0]


class ProviderError(CondenserError):
    def __init__(self, message: str, status: int | None = None) -> None:
        self.status = status
        super().__init__(message)


class UnknownModel(CondenserError, KeyError):
    def __str__(self) -> str:
        return f"model not in price table: {self.args[0]}"


# -- evaluation ------------------------------------------------------------


class MalformedRecord(CondenserError, ValueError):
    def __init__(self, line: int, reason: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {reason}")


class UnknownLabel(CondenserError, ValueError):
    pass


class EmptyAfterFilter(CondenserError, ValueError):
    pass


class NoValidPairs(CondenserError, ValueError):
    pass


class ExperimentError(CondenserError):
    """Wraps a gateway failure with the document and scenario it occurred on."""

    def __init__(self, message: str, *, doc_id: str, scenario: str, run_index: int) -> None:
        self.doc_id = doc_id
        self.scenario = scenario
        self.run_index = run_index
        super().__init__(message)
