import copy

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from evosum.corpus import Document, Sentence
from evosum.errors import DimensionMismatchError, EmptyCorpusError
from evosum.ga import (
    FitnessEvaluator,
    GaConfig,
    deletion_mutation,
    evaluate_fitness,
    evolve,
    init_population,
    make_rng,
    tournament_select,
    two_point_crossover,
)
from evosum.rouge import rouge1, rouge_mean
from evosum.synthetic import planted_corpus
from evosum.vocab import Vocabulary, build_vocabulary
from oracles import brute_fitness


def make_doc(sentences, reference, id="d"):
    return Document(
        id, tuple(Sentence(tuple(s), i) for i, s in enumerate(sentences)), tuple(reference)
    )


@pytest.fixture(scope="module")
def planted():
    docs = planted_corpus(n_docs=10, seed=11)
    return docs, build_vocabulary(docs)


# --------------------------------------------------------------- config


def test_defaults():
    c = GaConfig()
    assert (c.population_size, c.generations, c.crossover_rate) == (100, 15, 0.8)
    assert (c.mutation_gene_rate, c.tournament_size, c.threshold) == (0.01, 5, 0.6)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"population_size": 0},
        {"population_size": 4, "tournament_size": 5},
        {"tournament_size": 0},
        {"crossover_rate": 1.5},
        {"mutation_gene_rate": -0.1},
        {"threshold": 2.0},
        {"seed": -1},
        {"seed": 2**64},
        {"generations": -1},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        GaConfig(**kwargs)


# ----------------------------------------------------------- operators


def test_init_shape_and_range():
    pop = init_population(make_rng(1), 3, 2)
    assert pop.shape == (2, 3)
    assert ((pop >= 0) & (pop <= 1)).all()


def test_init_deterministic():
    assert np.array_equal(init_population(make_rng(5), 7, 4), init_population(make_rng(5), 7, 4))


def test_init_uniform_mean():
    genes = init_population(make_rng(2), 100, 100).ravel()
    assert genes.size == 10_000
    assert abs(genes.mean() - 0.5) < 0.02


def test_init_rejects_empty_vocab():
    with pytest.raises(ValueError):
        init_population(make_rng(0), 0, 3)


def test_crossover_fixed_cuts():
    a = np.array([0.0, 0.1, 0.2, 0.3])
    b = np.array([1.0, 1.1, 1.2, 1.3])
    c1, c2 = two_point_crossover(None, a, b, cut_points=(1, 3))
    assert c1.tolist() == [0.0, 1.1, 1.2, 0.3]
    assert c2.tolist() == [1.0, 0.1, 0.2, 1.3]
    assert a.tolist() == [0.0, 0.1, 0.2, 0.3]


def test_crossover_identical_parents():
    a = np.linspace(0, 1, 9)
    c1, c2 = two_point_crossover(make_rng(0), a, a.copy())
    assert np.array_equal(c1, a) and np.array_equal(c2, a)


def test_crossover_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        two_point_crossover(make_rng(0), np.zeros(3), np.zeros(4))


def test_crossover_cut_points_in_range():
    rng = make_rng(3)
    a, b = np.zeros(6), np.ones(6)
    seen = set()
    for _ in range(2000):
        c1, _ = two_point_crossover(rng, a, b)
        swapped = np.flatnonzero(c1 == 1)
        assert swapped.size >= 1
        assert np.array_equal(swapped, np.arange(swapped[0], swapped[-1] + 1))
        seen.add((swapped[0], swapped[-1] + 1))
    # every (i, j) with 0 <= i < j <= 6 is reachable
    assert len(seen) == 21


@given(st.integers(2, 40), st.integers(0, 2**32))
def test_crossover_preserves_positionwise_pairs(n, seed):
    rng = make_rng(seed)
    a, b = rng.random(n), rng.random(n)
    c1, c2 = two_point_crossover(rng, a, b)
    assert np.array_equal(np.minimum(c1, c2), np.minimum(a, b))
    assert np.array_equal(np.maximum(c1, c2), np.maximum(a, b))


def test_mutation_extremes():
    c = np.linspace(0.1, 1, 10)
    assert np.array_equal(deletion_mutation(make_rng(0), c, 0.0), c)
    assert not deletion_mutation(make_rng(0), c, 1.0).any()


def test_mutation_rate_binomial_band():
    n, p, seeds = 10_000, 0.01, 20
    sigma = np.sqrt(n * p * (1 - p))
    counts = []
    for seed in range(seeds):
        out = deletion_mutation(make_rng(seed), np.ones(n), p)
        counts.append(int((out == 0).sum()))
        assert set(np.unique(out)) <= {0.0, 1.0}
    counts = np.array(counts)
    # pooled count over all seeds is Binomial(seeds * n, p)
    assert abs(counts.sum() - seeds * n * p) <= 3 * sigma * np.sqrt(seeds)
    assert (np.abs(counts - n * p) <= 3 * sigma).mean() >= 0.9


def test_tournament_single():
    pop = [np.array([0.3, 0.4])]
    out = tournament_select(make_rng(0), pop, [0.2], 5)
    assert np.array_equal(out, pop[0]) and out is not pop[0]


def test_tournament_drawing_everyone_returns_global_best():
    pop = [np.full(2, i / 10) for i in range(4)]
    fit = [0.3, 0.9, 0.1, 0.5]
    for seed in range(200):
        rng = make_rng(seed)
        drawn = copy.deepcopy(rng).integers(0, 4, size=4)
        if set(drawn.tolist()) == {0, 1, 2, 3}:
            break
    else:
        pytest.fail("no seed drew every contestant")
    assert np.array_equal(tournament_select(rng, pop, fit, 4), pop[1])


def test_tournament_ties_go_to_lowest_index():
    pop = [np.full(1, float(i)) for i in range(3)]
    rng = make_rng(0)
    for _ in range(200):
        drawn = copy.deepcopy(rng).integers(0, 3, size=3)
        out = tournament_select(rng, pop, [0.5, 0.5, 0.5], 3)
        assert out[0] == drawn.min()


def test_tournament_selection_pressure():
    fit = [round(0.1 * (i + 1), 1) for i in range(10)]
    pop = [np.array([float(i)]) for i in range(10)]
    rng = make_rng(9)
    counts = np.bincount(
        [int(tournament_select(rng, pop, fit, 5)[0]) for _ in range(10_000)], minlength=10
    )
    assert counts.argmax() == 9
    assert (counts[9] > counts[:9]).all()


# ------------------------------------------------------------- fitness


def test_fitness_perfect():
    doc = make_doc([["a", "b"], ["c"]], ["a", "b"])
    vocab = Vocabulary(("a", "b", "c"))
    assert evaluate_fitness(np.array([1.0, 1.0, 0.0]), [doc], vocab, 0.6) == 1.0


def test_fitness_all_zero():
    doc = make_doc([["a", "b"], ["c"]], ["a", "b"])
    assert evaluate_fitness(np.zeros(3), [doc], Vocabulary(("a", "b", "c")), 0.6) == 0.0


def test_fitness_two_docs_average():
    vocab = Vocabulary(("the", "cat", "sat", "dog"))
    d1 = make_doc([["the", "cat", "sat"], ["dog"]], ["the", "cat"])
    d2 = make_doc([["dog"], ["the"]], ["dog"])
    chrom = np.array([1.0, 1.0, 1.0, 0.0])
    s1 = rouge_mean(rouge1(["the", "cat", "sat"], ["the", "cat"]))
    s2 = rouge_mean(rouge1(["the"], ["dog"]))  # 0
    assert evaluate_fitness(chrom, [d1, d2], vocab, 0.6) == pytest.approx((s1 + s2) / 2, abs=1e-12)
    assert (s1 + s2) / 2 == pytest.approx(0.8222222 / 2, abs=1e-6)


def test_fitness_errors():
    vocab = Vocabulary(("a",))
    with pytest.raises(EmptyCorpusError):
        evaluate_fitness(np.ones(1), [], vocab, 0.6)
    with pytest.raises(DimensionMismatchError):
        evaluate_fitness(np.ones(2), [make_doc([["a"]], ["a"])], vocab, 0.6)


def test_fitness_matches_oracle_on_planted(planted):
    docs, vocab = planted
    rng = make_rng(4)
    ev = FitnessEvaluator(docs, vocab, 0.6)
    for _ in range(30):
        chrom = rng.random(len(vocab)) ** rng.uniform(0.2, 3)
        assert ev(chrom) == pytest.approx(brute_fitness(chrom, docs, vocab.entries, 0.6), abs=1e-12)


random_docs = st.lists(
    st.builds(
        make_doc,
        st.lists(st.lists(st.sampled_from("abcdefxy"), min_size=1, max_size=7), min_size=1, max_size=5),
        st.lists(st.sampled_from("abcdefz"), min_size=1, max_size=8),
    ),
    min_size=1,
    max_size=4,
)


@given(random_docs, st.integers(0, 2**32), st.sampled_from([0.0, 0.3, 0.6, 0.9]))
def test_fitness_matches_oracle_random(docs, seed, thr):
    vocab = Vocabulary(tuple("abcdef"))
    chrom = make_rng(seed).random(6)
    got = evaluate_fitness(chrom, docs, vocab, thr)
    assert got == pytest.approx(brute_fitness(chrom, docs, vocab.entries, thr), abs=1e-12)
    assert 0.0 <= got <= 1.0
    assert got == evaluate_fitness(chrom, docs, vocab, thr)


def test_population_threads_do_not_change_results(planted):
    docs, vocab = planted
    pop = init_population(make_rng(0), len(vocab), 16)
    ev = FitnessEvaluator(docs, vocab, 0.6)
    assert np.array_equal(ev.evaluate_population(pop, 1), ev.evaluate_population(pop, 4))


# -------------------------------------------------------------- evolve


def test_zero_generations(planted):
    docs, vocab = planted
    cfg = GaConfig(population_size=10, generations=0, seed=1)
    model = evolve(cfg, docs, vocab)
    assert len(model.stats) == 1 and model.stats[0].generation == 0
    init = init_population(make_rng(1), len(vocab), 10)
    fits = FitnessEvaluator(docs, vocab, 0.6).evaluate_population(init, 1)
    assert model.best_fitness == fits.max()
    assert np.array_equal(model.best, init[fits.argmax()])


def test_evolve_deterministic_across_threads(planted):
    docs, vocab = planted
    cfg = GaConfig(population_size=20, generations=4, seed=123)
    a = evolve(cfg, docs, vocab, threads=1)
    b = evolve(cfg, docs, vocab, threads=3)
    assert a.stats == b.stats
    assert np.array_equal(a.best, b.best)


def test_evolve_invariants(planted):
    docs, vocab = planted
    seen = []

    def sink(gen, pop, fits):
        assert ((pop >= 0) & (pop <= 1)).all()
        assert ((fits >= 0) & (fits <= 1)).all()
        seen.append(gen)

    stats_seen = []
    model = evolve(
        GaConfig(population_size=12, generations=6, seed=8), docs, vocab,
        progress_sink=stats_seen.append, population_sink=sink,
    )
    assert seen == list(range(7))
    assert stats_seen == model.stats
    best = [s.best_so_far for s in model.stats]
    assert best == sorted(best)
    for s in model.stats:
        assert s.min_fitness <= s.mean_fitness <= s.max_fitness <= s.best_so_far
    assert model.best_fitness == best[-1]
    assert FitnessEvaluator(docs, vocab, 0.6)(model.best) == model.best_fitness


def test_selection_only_copies(planted):
    docs, vocab = planted
    history = []
    evolve(
        GaConfig(population_size=10, generations=5, crossover_rate=0, mutation_gene_rate=0, seed=2),
        docs, vocab, population_sink=lambda g, pop, f: history.append(pop.copy()),
    )
    for prev, cur in zip(history, history[1:]):
        prev_rows = {row.tobytes() for row in prev}
        assert all(row.tobytes() in prev_rows for row in cur)


def test_odd_population(planted):
    docs, vocab = planted
    model = evolve(GaConfig(population_size=7, generations=3, tournament_size=3), docs, vocab)
    assert len(model.stats) == 4


def test_evolve_improves_on_planted_corpus(planted):
    docs, vocab = planted
    model = evolve(GaConfig(population_size=30, generations=8, seed=0), docs, vocab)
    assert model.stats[-1].best_so_far > model.stats[0].best_so_far
