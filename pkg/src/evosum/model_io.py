"""Weights files and per-generation stats CSVs.

Weights file layout (UTF-8)::

    evosum-weights v1
    threshold 0.6
    vocab_size 3
    the<TAB>0.5
    ...

Floats are written with ``repr``, the shortest string that round-trips to
the same binary64 value, so save -> load -> save is byte-identical.
"""

from __future__ import annotations

import csv
import io
import math
import os
from collections.abc import Iterable

import numpy as np

from .errors import WeightsFormatError
from .ga import GaConfig, GenerationStats, TrainedModel
from .vocab import Vocabulary

MAGIC = "evosum-weights v1"
STATS_HEADER = ("generation", "min", "mean", "max", "best_so_far")


def format_weights(vocab: Vocabulary, weights: np.ndarray, threshold: float) -> str:
    if len(weights) != len(vocab):
        raise ValueError("weights and vocabulary differ in length")
    lines = [MAGIC, f"threshold {float(threshold)!r}", f"vocab_size {len(vocab)}"]
    lines.extend(f"{tok}\t{float(w)!r}" for tok, w in zip(vocab.entries, weights))
    return "\n".join(lines) + "\n"


def save_weights(path: str | os.PathLike, model: TrainedModel) -> None:
    text = format_weights(model.vocabulary, model.best, model.config.threshold)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _parse_float(text: str, lineno: int, what: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise WeightsFormatError(f"{what} is not a number: {text!r}", lineno) from None
    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
        raise WeightsFormatError(f"{what} {text} outside [0, 1]", lineno)
    return value


def parse_weights(text: str) -> TrainedModel:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != MAGIC:
        raise WeightsFormatError(f"expected header {MAGIC!r}", 1)
    if len(lines) < 3:
        raise WeightsFormatError("truncated header", len(lines) + 1)
    key, _, value = lines[1].partition(" ")
    if key != "threshold":
        raise WeightsFormatError("expected 'threshold <decimal>'", 2)
    threshold = _parse_float(value, 2, "threshold")
    key, _, value = lines[2].partition(" ")
    if key != "vocab_size" or not value.isdigit():
        raise WeightsFormatError("expected 'vocab_size <count>'", 3)
    size = int(value)
    body = lines[3:]
    if len(body) != size:
        raise WeightsFormatError(f"vocab_size is {size} but {len(body)} entries follow", 3)

    tokens, weights = [], np.empty(size)
    for k, line in enumerate(body):
        lineno = k + 4
        tok, sep, value = line.partition("\t")
        if not sep or not tok or "\t" in value:
            raise WeightsFormatError("expected '<token>\\t<weight>'", lineno)
        tokens.append(tok)
        weights[k] = _parse_float(value, lineno, "weight")
    try:
        vocab = Vocabulary(tuple(tokens))
    except ValueError as exc:
        raise WeightsFormatError(str(exc)) from None
    return TrainedModel(vocab, weights, GaConfig(threshold=threshold))


def load_weights(path: str | os.PathLike) -> TrainedModel:
    with open(path, encoding="utf-8", newline="") as f:
        return parse_weights(f.read())


def format_stats(stats: Iterable[GenerationStats]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(STATS_HEADER)
    for s in stats:
        writer.writerow(
            [s.generation, repr(s.min_fitness), repr(s.mean_fitness),
             repr(s.max_fitness), repr(s.best_so_far)]
        )
    return buf.getvalue()


def save_stats(path: str | os.PathLike, stats: Iterable[GenerationStats]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(format_stats(stats))


def load_stats(path: str | os.PathLike) -> list[GenerationStats]:
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        if tuple(header) != STATS_HEADER:
            raise ValueError(f"unexpected stats header {header}")
        return [
            GenerationStats(int(g), float(lo), float(mean), float(hi), float(best))
            for g, lo, mean, hi, best in reader
        ]
