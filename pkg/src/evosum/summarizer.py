"""Threshold-based sentence extraction driven by per-token weights."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Document, Sentence
from .errors import DimensionMismatchError, EmptySentenceError
from .vocab import Vocabulary, lookup

# A chromosome is a 1-D float64 array with one weight in [0, 1] per vocabulary id.
Chromosome = np.ndarray


@dataclass(frozen=True)
class Summary:
    selected: tuple[int, ...]
    tokens: tuple[str, ...]


def check_chromosome(chromosome: Chromosome, vocab: Vocabulary) -> np.ndarray:
    weights = np.asarray(chromosome, dtype=np.float64)
    if weights.ndim != 1 or weights.shape[0] != len(vocab):
        raise DimensionMismatchError(
            f"chromosome has shape {weights.shape}, vocabulary size is {len(vocab)}"
        )
    return weights


def token_ids(tokens, vocab: Vocabulary) -> np.ndarray:
    """Vocabulary ids for ``tokens``; unknown tokens map to ``len(vocab)``.

    Index ``len(vocab)`` addresses the zero appended by :func:`padded`.
    """
    unknown = len(vocab)
    get = vocab.index.get
    return np.fromiter((get(t, unknown) for t in tokens), dtype=np.int64, count=len(tokens))


def padded(weights: np.ndarray) -> np.ndarray:
    return np.append(weights, 0.0)


def segment_means(values: np.ndarray, starts: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """Mean of each contiguous, non-empty segment of ``values``.

    Every weight computation in the package goes through here so that
    training, evaluation and one-off summaries agree bit for bit.
    """
    return np.add.reduceat(values, starts) / lengths


def sentence_weight(sentence: Sentence, chromosome: Chromosome, vocab: Vocabulary) -> float:
    weights = check_chromosome(chromosome, vocab)
    n = len(sentence.tokens)
    if n == 0:
        raise EmptySentenceError(f"sentence {sentence.source_index} has no tokens")
    gathered = padded(weights)[token_ids(sentence.tokens, vocab)]
    return float(segment_means(gathered, np.zeros(1, np.int64), np.array([n]))[0])


def sentence_weights(document: Document, chromosome: Chromosome, vocab: Vocabulary) -> np.ndarray:
    weights = check_chromosome(chromosome, vocab)
    lengths = np.array([len(s.tokens) for s in document.sentences], dtype=np.int64)
    if (lengths == 0).any():
        raise EmptySentenceError(f"{document.id}: empty sentence")
    ids = token_ids([t for s in document.sentences for t in s.tokens], vocab)
    starts = np.concatenate(([0], np.cumsum(lengths)[:-1]))
    return segment_means(padded(weights)[ids], starts, lengths)


def summarize(
    document: Document, chromosome: Chromosome, vocab: Vocabulary, threshold: float
) -> Summary:
    """Select every sentence whose mean token weight is strictly above ``threshold``."""
    scores = sentence_weights(document, chromosome, vocab)
    selected = tuple(int(i) for i in np.flatnonzero(scores > threshold))
    tokens = tuple(t for i in selected for t in document.sentences[i].tokens)
    return Summary(selected=selected, tokens=tokens)
