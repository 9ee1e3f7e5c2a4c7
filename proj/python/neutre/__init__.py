"""French collective-noun rewriting engine (C++ core)."""

import os
from pathlib import Path

from ._neutre import (
    Dictionary,
    Engine,
    Lexicon,
    NeutreError,
    bleu,
    detokenize,
    strip_tags,
    tokenize_13a,
    wer,
)

__all__ = [
    "Dictionary",
    "Engine",
    "Lexicon",
    "NeutreError",
    "bleu",
    "data_path",
    "default_engine",
    "detokenize",
    "strip_tags",
    "tokenize_13a",
    "wer",
]


def data_path(name: str) -> Path:
    """Resource file from $NEUTRE_DATA, else the copy shipped with the package."""
    env = os.environ.get("NEUTRE_DATA")
    base = Path(env) if env else Path(__file__).parent / "data"
    return base / name


def default_engine() -> Engine:
    return Engine(str(data_path("dictionary.tsv")), str(data_path("lexicon.tsv")))
