"""ROUGE-1 over pre-tokenized sequences, with clipped unigram counts."""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from typing import NamedTuple

from .errors import EmptyReferenceError


class RougeScore(NamedTuple):
    precision: float
    recall: float
    f1: float


ZERO = RougeScore(0.0, 0.0, 0.0)


def f_measure(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * (precision * recall) / (precision + recall)


def unigram_counts(tokens: Sequence[str]) -> Counter:
    return Counter(tokens)


def clipped_overlap(candidate: Sequence[str], reference: Sequence[str]) -> int:
    """Sum over tokens of min(candidate count, reference count).

    Each candidate occurrence consumes one remaining reference occurrence,
    which equals the min-sum and avoids building two Counters per call.
    """
    remaining: dict[str, int] = {}
    for t in reference:
        remaining[t] = remaining.get(t, 0) + 1
    hits = 0
    for t in candidate:
        left = remaining.get(t)
        if left:
            remaining[t] = left - 1
            hits += 1
    return hits


def rouge1(candidate: Sequence[str], reference: Sequence[str]) -> RougeScore:
    """Clipped unigram precision, recall and F1 of ``candidate`` against ``reference``.

    An empty candidate scores (0, 0, 0).
    """
    if not reference:
        raise EmptyReferenceError("reference summary is empty")
    if not candidate:
        return ZERO
    hits = clipped_overlap(candidate, reference)
    precision = hits / len(candidate)
    recall = hits / len(reference)
    return RougeScore(precision, recall, f_measure(precision, recall))


def rouge_mean(score: RougeScore) -> float:
    return (score.precision + score.recall + score.f1) / 3
