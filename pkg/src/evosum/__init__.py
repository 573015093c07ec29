"""Extractive summarization with GA-evolved per-token weights."""

from .corpus import Document, Sentence, load_corpus, parse_story, tokenize
from .errors import (
    CorpusIOError,
    DimensionMismatchError,
    EmptyArticleError,
    EmptyCorpusError,
    EmptyReferenceError,
    EmptySentenceError,
    EvosumError,
    WeightsFormatError,
)
from .ga import (
    FitnessEvaluator,
    GaConfig,
    GenerationStats,
    TrainedModel,
    deletion_mutation,
    evaluate_fitness,
    evolve,
    init_population,
    make_rng,
    tournament_select,
    two_point_crossover,
)
from .model_io import load_stats, load_weights, save_stats, save_weights
from .rouge import RougeScore, rouge1, rouge_mean, unigram_counts
from .summarizer import Summary, sentence_weight, summarize
from .vocab import Vocabulary, build_vocabulary, lookup

__version__ = "0.1.0"
