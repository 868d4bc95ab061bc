"""Valence lexicon tools: merging, frame coverage, parser evaluation, error mining."""

from ._core import (
    FormatError,
    InvariantError,
    LexicalEntry,
    Lexicon,
    __version__,
    check,
    evaluate,
    merge,
    mine,
    run_cli,
    top_lemmas,
)

__all__ = [
    "FormatError",
    "InvariantError",
    "LexicalEntry",
    "Lexicon",
    "check",
    "evaluate",
    "merge",
    "mine",
    "run_cli",
    "top_lemmas",
]
