"""Deterministic input condensation for LLM prompts, plus an evaluation harness."""

__version__ = "0.1.0"
