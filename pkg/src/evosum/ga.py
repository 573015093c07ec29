"""Generational GA over per-token weight vectors.

Random stream
-------------
One ``numpy.random.Generator`` over PCG64, seeded with ``GaConfig.seed``,
drives everything, and it is consumed in this fixed order:

1. initialization: ``rng.random((population_size, vocab_size))``
2. per generation, for each of ``population_size`` parent slots in turn:
   ``rng.integers(0, population_size, size=tournament_size)``
3. for each consecutive parent pair ``(0, 1), (2, 3), ...``: ``rng.random()``;
   when that is below ``crossover_rate``, ``i = rng.integers(0, L)`` then
   ``j = rng.integers(i + 1, L + 1)``
4. for each offspring in order: ``rng.random(L)`` (gene zeroed where the
   draw is below ``mutation_gene_rate``)

Fitness evaluation never touches the generator, so it may run on threads.
"""

from __future__ import annotations

import logging
import os
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .corpus import Document
from .errors import DimensionMismatchError, EmptyCorpusError, EmptyReferenceError
from .summarizer import check_chromosome, padded, segment_means, token_ids
from .vocab import Vocabulary

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 100
    generations: int = 15
    crossover_rate: float = 0.8
    mutation_gene_rate: float = 0.01
    tournament_size: int = 5
    threshold: float = 0.6
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 1:
            raise ValueError("population_size must be positive")
        if self.generations < 0:
            raise ValueError("generations must be non-negative")
        if not 1 <= self.tournament_size <= self.population_size:
            raise ValueError("tournament_size must be in [1, population_size]")
        for name in ("crossover_rate", "mutation_gene_rate", "threshold"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class GenerationStats:
    generation: int
    min_fitness: float
    mean_fitness: float
    max_fitness: float
    best_so_far: float


@dataclass
class TrainedModel:
    vocabulary: Vocabulary
    best: np.ndarray
    config: GaConfig
    stats: list[GenerationStats] = field(default_factory=list)
    best_fitness: float | None = None


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def init_population(rng: np.random.Generator, vocab_size: int, population_size: int) -> np.ndarray:
    """Uniform [0, 1) weights, one row per individual."""
    if vocab_size < 1:
        raise ValueError("vocab_size must be at least 1")
    return rng.random((population_size, vocab_size))


def two_point_crossover(
    rng: np.random.Generator,
    a: np.ndarray,
    b: np.ndarray,
    cut_points: tuple[int, int] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Swap the segment ``[i, j)`` between copies of ``a`` and ``b``.

    ``i`` is uniform on ``[0, L-1]`` and ``j`` uniform on ``(i, L]``, so a
    non-empty segment always moves. Pass ``cut_points`` to skip the draw.
    """
    if a.shape != b.shape:
        raise DimensionMismatchError(f"parent shapes differ: {a.shape} vs {b.shape}")
    n = a.shape[0]
    if cut_points is None:
        i = int(rng.integers(0, n))
        j = int(rng.integers(i + 1, n + 1))
    else:
        i, j = cut_points
    c1, c2 = a.copy(), b.copy()
    c1[i:j] = b[i:j]
    c2[i:j] = a[i:j]
    return c1, c2


def deletion_mutation(rng: np.random.Generator, c: np.ndarray, gene_rate: float) -> np.ndarray:
    """Zero each gene independently with probability ``gene_rate``."""
    out = c.copy()
    out[rng.random(c.shape[0]) < gene_rate] = 0.0
    return out


def tournament_index(rng: np.random.Generator, fitnesses: np.ndarray, k: int) -> int:
    contestants = rng.integers(0, len(fitnesses), size=k)
    scores = fitnesses[contestants]
    return int(contestants[scores == scores.max()].min())


def tournament_select(
    rng: np.random.Generator, population: Sequence[np.ndarray], fitnesses: Sequence[float], k: int
) -> np.ndarray:
    """Fittest of ``k`` contestants drawn with replacement; ties go to the lowest index."""
    if len(population) == 0:
        raise ValueError("empty population")
    if len(population) != len(fitnesses):
        raise ValueError("population and fitnesses differ in length")
    idx = tournament_index(rng, np.asarray(fitnesses, dtype=np.float64), k)
    return np.array(population[idx], copy=True)


class FitnessEvaluator:
    """Corpus compiled into flat arrays for fast fitness evaluation.

    Per chromosome, the cost is one gather over all article tokens plus a few
    bincounts. The result matches composing ``summarize`` with ``rouge1``
    document by document.
    """

    def __init__(self, corpus: Sequence[Document], vocab: Vocabulary, threshold: float):
        if len(corpus) == 0:
            raise EmptyCorpusError("fitness corpus is empty")
        self.vocab = vocab
        self.threshold = threshold
        self.n_docs = len(corpus)

        ids, lengths, sent_doc = [], [], []
        ref_len, col_doc, col_count = [], [], []
        entry_sent, entry_col, entry_count = [], [], []
        n_sent = 0
        for d, doc in enumerate(corpus):
            if not doc.reference:
                raise EmptyReferenceError(f"{doc.id}: empty reference")
            ref_counts: dict[str, int] = {}
            for t in doc.reference:
                ref_counts[t] = ref_counts.get(t, 0) + 1
            col_of = {}
            for t, c in ref_counts.items():
                col_of[t] = len(col_count)
                col_count.append(c)
                col_doc.append(d)
            ref_len.append(len(doc.reference))
            for s in doc.sentences:
                if not s.tokens:
                    raise ValueError(f"{doc.id}: empty sentence {s.source_index}")
                ids.append(token_ids(s.tokens, vocab))
                lengths.append(len(s.tokens))
                sent_doc.append(d)
                counts: dict[int, int] = {}
                for t in s.tokens:
                    col = col_of.get(t)
                    if col is not None:
                        counts[col] = counts.get(col, 0) + 1
                for col, c in counts.items():
                    entry_sent.append(n_sent)
                    entry_col.append(col)
                    entry_count.append(c)
                n_sent += 1

        self.ids = np.concatenate(ids)
        self.lengths = np.array(lengths, dtype=np.int64)
        self.starts = np.concatenate(([0], np.cumsum(self.lengths)[:-1]))
        self.sent_doc = np.array(sent_doc, dtype=np.int64)
        self.ref_len = np.array(ref_len, dtype=np.float64)
        self.col_doc = np.array(col_doc, dtype=np.int64)
        self.col_count = np.array(col_count, dtype=np.float64)
        self.entry_sent = np.array(entry_sent, dtype=np.int64)
        self.entry_col = np.array(entry_col, dtype=np.int64)
        self.entry_count = np.array(entry_count, dtype=np.float64)

    def scores(self, chromosome: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per-document (precision, recall, f1) arrays."""
        weights = check_chromosome(chromosome, self.vocab)
        sw = segment_means(padded(weights)[self.ids], self.starts, self.lengths)
        mask = sw > self.threshold
        cand_len = np.bincount(
            self.sent_doc, weights=np.where(mask, self.lengths, 0), minlength=self.n_docs
        )
        picked = np.bincount(
            self.entry_col,
            weights=np.where(mask[self.entry_sent], self.entry_count, 0.0),
            minlength=len(self.col_count),
        )
        hits = np.bincount(
            self.col_doc, weights=np.minimum(picked, self.col_count), minlength=self.n_docs
        )
        nonempty = cand_len > 0
        precision = np.divide(hits, cand_len, out=np.zeros(self.n_docs), where=nonempty)
        recall = np.where(nonempty, hits / self.ref_len, 0.0)
        denom = precision + recall
        f1 = np.divide(2 * (precision * recall), denom, out=np.zeros(self.n_docs), where=denom > 0)
        return precision, recall, f1

    def document_fitness(self, chromosome: np.ndarray) -> np.ndarray:
        p, r, f = self.scores(chromosome)
        return (p + r + f) / 3

    def __call__(self, chromosome: np.ndarray) -> float:
        return float(np.mean(self.document_fitness(chromosome)))

    def evaluate_population(self, population: np.ndarray, threads: int | None = None) -> np.ndarray:
        threads = threads or os.cpu_count() or 1
        if threads == 1 or len(population) == 1:
            return np.array([self(row) for row in population])
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return np.array(list(pool.map(self, population)))


def evaluate_fitness(
    chromosome: np.ndarray, corpus: Sequence[Document], vocab: Vocabulary, threshold: float
) -> float:
    """Mean over documents of the averaged ROUGE-1 precision, recall and F1."""
    return FitnessEvaluator(corpus, vocab, threshold)(chromosome)


def _stats(generation: int, fitnesses: np.ndarray, best_so_far: float) -> GenerationStats:
    lo, hi = float(fitnesses.min()), float(fitnesses.max())
    mean = min(max(float(fitnesses.mean()), lo), hi)
    return GenerationStats(generation, lo, mean, hi, best_so_far)


def evolve(
    config: GaConfig,
    corpus: Sequence[Document],
    vocab: Vocabulary,
    progress_sink: Callable[[GenerationStats], None] | None = None,
    threads: int | None = None,
    population_sink: Callable[[int, np.ndarray, np.ndarray], None] | None = None,
) -> TrainedModel:
    """Run the GA and return the best individual ever evaluated.

    Replacement is fully generational; the hall-of-fame individual lives
    outside the population. ``population_sink(generation, population,
    fitnesses)`` sees every evaluated population (read-only by convention).
    """
    if len(vocab) == 0:
        raise ValueError("vocabulary is empty")
    evaluator = FitnessEvaluator(corpus, vocab, config.threshold)
    rng = make_rng(config.seed)
    n, length = config.population_size, len(vocab)

    population = init_population(rng, length, n)
    fitnesses = evaluator.evaluate_population(population, threads)
    best_idx = int(np.argmax(fitnesses))
    best, best_fitness = population[best_idx].copy(), float(fitnesses[best_idx])
    stats = [_stats(0, fitnesses, best_fitness)]
    if population_sink:
        population_sink(0, population, fitnesses)
    if progress_sink:
        progress_sink(stats[-1])

    for gen in range(1, config.generations + 1):
        parents = [tournament_index(rng, fitnesses, config.tournament_size) for _ in range(n)]
        offspring = population[parents]  # fancy indexing copies
        for k in range(0, n - 1, 2):
            if rng.random() < config.crossover_rate:
                offspring[k], offspring[k + 1] = two_point_crossover(
                    rng, offspring[k], offspring[k + 1]
                )
        for k in range(n):
            offspring[k] = deletion_mutation(rng, offspring[k], config.mutation_gene_rate)
        population = offspring
        fitnesses = evaluator.evaluate_population(population, threads)

        gen_idx = int(np.argmax(fitnesses))
        if fitnesses[gen_idx] > best_fitness:
            best, best_fitness = population[gen_idx].copy(), float(fitnesses[gen_idx])
        stats.append(_stats(gen, fitnesses, best_fitness))
        if population_sink:
            population_sink(gen, population, fitnesses)
        log.info(
            "generation %d: min %.4f mean %.4f max %.4f best %.4f",
            gen, stats[-1].min_fitness, stats[-1].mean_fitness, stats[-1].max_fitness, best_fitness,
        )
        if progress_sink:
            progress_sink(stats[-1])

    return TrainedModel(vocab, best, config, stats, best_fitness)
