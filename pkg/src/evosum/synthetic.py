"""Planted-signal story corpora for convergence checks and demos.

Every story has one article line containing the signal token; the highlight
repeats that line. Every other line is random filler, so the ideal model
learns to keep only the signal lines.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .corpus import Document, parse_story

SIGNAL = "signal"


def _filler_words(n: int) -> list[str]:
    syllables = ["ka", "lo", "mi", "ne", "ru", "to", "za", "be", "di", "fo"]
    words = []
    for i in range(n):
        a, b, c = i % 10, (i // 10) % 10, (i // 100) % 10
        words.append(syllables[a] + syllables[b] + syllables[c])
    return words


def planted_stories(
    n_docs: int = 20,
    seed: int = 0,
    sentences_per_doc: int = 8,
    filler_size: int = 300,
    sentence_length: tuple[int, int] = (6, 14),
) -> dict[str, str]:
    """Story file contents keyed by file name, e.g. ``{"story000.story": "..."}``."""
    rng = np.random.default_rng(seed)
    words = _filler_words(filler_size)
    stories = {}
    for d in range(n_docs):
        lines = []
        signal_at = int(rng.integers(0, sentences_per_doc))
        for s in range(sentences_per_doc):
            n = int(rng.integers(sentence_length[0], sentence_length[1] + 1))
            toks = [words[i] for i in rng.integers(0, filler_size, size=n)]
            if s == signal_at:
                toks[int(rng.integers(0, n))] = SIGNAL
                highlight = " ".join(toks)
            lines.append(" ".join(toks) + " .")
        stories[f"story{d:03d}.story"] = (
            "\n\n".join(lines) + "\n\n@highlight\n\n" + highlight + "\n"
        )
    return stories


def planted_corpus(n_docs: int = 20, seed: int = 0, **kwargs) -> list[Document]:
    stories = planted_stories(n_docs, seed, **kwargs)
    return [parse_story(raw, Path(name).stem) for name, raw in sorted(stories.items())]


def write_stories(directory: str | os.PathLike, stories: dict[str, str]) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, raw in stories.items():
        (directory / name).write_text(raw, encoding="utf-8")
    return directory
