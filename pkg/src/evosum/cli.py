"""Command-line interface: ``evosum train | eval | summarize | grid``.

Flag values can also come from environment variables named ``EVOSUM_`` plus
the upper-cased flag name (``--train-limit`` -> ``EVOSUM_TRAIN_LIMIT``).
Flags win over the environment, which wins over built-in defaults.

Examples:
    evosum train --train-dir data/train --train-limit 50 --vocab-limit 50 \\
        --weights-out m.weights --stats-out m.csv --seed 1
    evosum eval --weights m.weights --test-dir data/test --test-limit 50
    evosum summarize --weights m.weights story.txt
    evosum grid --train-dir data/train --test-dir data/test --test-limit 50 \\
        --cells 100xall,100x1000,100x50,50xall,50x1000,50x50 --out-dir runs/
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .corpus import load_corpus, parse_story
from .errors import EmptyArticleError, EmptyCorpusError, EvosumError
from .ga import FitnessEvaluator, GaConfig, TrainedModel, evolve
from .model_io import load_weights, save_stats, save_weights
from .summarizer import summarize
from .vocab import build_vocabulary

log = logging.getLogger("evosum")

ENV_PREFIX = "EVOSUM_"
GRID_HEADER = ("train_size", "vocab_size", "train_score", "test_score")


def as_percent(score: float) -> str:
    return f"{score * 100:.2f}"


@dataclass(frozen=True)
class RunManifest:
    config: GaConfig
    train_dir: Path
    weights_out: Path
    stats_out: Path | None = None
    vocab_dir: Path | None = None
    train_limit: int | None = None
    vocab_limit: int | None = None
    include_references: bool = True
    threads: int | None = None

    def __post_init__(self):
        for name in ("train_limit", "vocab_limit"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be at least 1")


@dataclass(frozen=True)
class EvalResult:
    score: float
    precision: float
    recall: float
    f1: float
    n_documents: int


def _require_dir(path: Path, what: str) -> None:
    if not path.is_dir():
        raise EvosumError(f"{what} {path} is not a directory")


def train(manifest: RunManifest) -> TrainedModel:
    vocab_dir = manifest.vocab_dir or manifest.train_dir
    _require_dir(manifest.train_dir, "training directory")
    _require_dir(vocab_dir, "vocabulary directory")

    train_docs = load_corpus(manifest.train_dir, manifest.train_limit)
    if not train_docs:
        raise EmptyCorpusError(f"no usable stories in {manifest.train_dir}")
    vocab_docs = load_corpus(vocab_dir, manifest.vocab_limit)
    vocab = build_vocabulary(vocab_docs, include_references=manifest.include_references)
    if len(vocab) == 0:
        raise EmptyCorpusError(f"no vocabulary could be built from {vocab_dir}")
    log.info(
        "training on %d documents, vocabulary of %d tokens from %d documents",
        len(train_docs), len(vocab), len(vocab_docs),
    )
    model = evolve(manifest.config, train_docs, vocab, threads=manifest.threads)

    save_weights(manifest.weights_out, model)
    if manifest.stats_out is not None:
        save_stats(manifest.stats_out, model.stats)
    return model


def evaluate(model: TrainedModel, test_dir: Path, test_limit: int | None = None) -> EvalResult:
    _require_dir(Path(test_dir), "test directory")
    docs = load_corpus(test_dir, test_limit)
    if not docs:
        raise EmptyCorpusError(f"EmptyCorpus: no usable stories in {test_dir}")
    evaluator = FitnessEvaluator(docs, model.vocabulary, model.config.threshold)
    p, r, f = evaluator.scores(model.best)
    return EvalResult(
        score=float(np.mean((p + r + f) / 3)),
        precision=float(p.mean()),
        recall=float(r.mean()),
        f1=float(f.mean()),
        n_documents=len(docs),
    )


def derive_seed(base_seed: int, cell_index: int) -> int:
    """Per-cell seed for the experiment grid."""
    state = np.random.SeedSequence([base_seed, cell_index]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def parse_cells(text: str) -> list[tuple[int, int | None]]:
    """Parse ``"100x1000,50xall"`` into ``[(100, 1000), (50, None)]``."""
    cells = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        train_s, sep, vocab_s = item.lower().partition("x")
        if not sep:
            raise ValueError(f"bad grid cell {item!r}; expected TRAINxVOCAB")
        train_n = int(train_s)
        vocab_n = None if vocab_s == "all" else int(vocab_s)
        if train_n < 1 or (vocab_n is not None and vocab_n < 1):
            raise ValueError(f"bad grid cell {item!r}; limits must be positive")
        cells.append((train_n, vocab_n))
    if not cells:
        raise ValueError("empty grid")
    return cells


# ---------------------------------------------------------------- commands


def _config_from_args(args) -> GaConfig:
    return GaConfig(
        population_size=args.population,
        generations=args.generations,
        crossover_rate=args.crossover_rate,
        mutation_gene_rate=args.mutation_rate,
        tournament_size=args.tournament,
        threshold=args.threshold,
        seed=args.seed,
    )


def _opt_path(value) -> Path | None:
    return Path(value) if value else None


def cmd_train(args) -> int:
    manifest = RunManifest(
        config=_config_from_args(args),
        train_dir=Path(args.train_dir),
        vocab_dir=_opt_path(args.vocab_dir),
        train_limit=args.train_limit,
        vocab_limit=args.vocab_limit,
        weights_out=Path(args.weights_out),
        stats_out=_opt_path(args.stats_out),
        include_references=not args.no_reference_vocab,
        threads=args.threads,
    )
    model = train(manifest)
    print(f"vocab_size {len(model.vocabulary)}")
    print(f"train_score {as_percent(model.best_fitness)}")
    return 0


def cmd_eval(args) -> int:
    model = load_weights(args.weights)
    result = evaluate(model, Path(args.test_dir), args.test_limit)
    print(f"documents {result.n_documents}")
    print(f"test_score {as_percent(result.score)}")
    print(f"precision {as_percent(result.precision)}")
    print(f"recall {as_percent(result.recall)}")
    print(f"f1 {as_percent(result.f1)}")
    return 0


def cmd_summarize(args) -> int:
    model = load_weights(args.weights)
    path = Path(args.input_file)
    raw = path.read_bytes().decode("utf-8")
    try:
        doc = parse_story(raw, path.stem, require_reference=False)
    except EmptyArticleError:
        return 0
    summary = summarize(doc, model.best, model.vocabulary, model.config.threshold)
    for i in summary.selected:
        print(doc.sentences[i].text)
    return 0


def cmd_grid(args) -> int:
    cells = parse_cells(args.cells)
    base = _config_from_args(args)
    out_dir = Path(args.out_dir)
    _require_dir(Path(args.train_dir), "training directory")
    _require_dir(Path(args.test_dir), "test directory")
    if args.vocab_dir:
        _require_dir(Path(args.vocab_dir), "vocabulary directory")
    out_dir.mkdir(parents=True, exist_ok=True)

    rows = []
    for index, (train_n, vocab_n) in enumerate(cells):
        tag = f"cell{index}_{train_n}x{vocab_n or 'all'}"
        manifest = RunManifest(
            config=replace(base, seed=derive_seed(base.seed, index)),
            train_dir=Path(args.train_dir),
            vocab_dir=_opt_path(args.vocab_dir),
            train_limit=train_n,
            vocab_limit=vocab_n,
            weights_out=out_dir / f"{tag}.weights",
            stats_out=out_dir / f"{tag}.stats.csv",
            include_references=not args.no_reference_vocab,
            threads=args.threads,
        )
        model = train(manifest)
        # score the saved file, exactly as a separate eval run would
        result = evaluate(load_weights(manifest.weights_out), Path(args.test_dir), args.test_limit)
        row = (train_n, vocab_n or "all", as_percent(model.best_fitness), as_percent(result.score))
        print(",".join(map(str, row)), flush=True)
        rows.append(row)

    with open(out_dir / "summary.csv", "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(GRID_HEADER)
        writer.writerows(rows)
    return 0


# ------------------------------------------------------------------ parser


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _env_default(parser: argparse.ArgumentParser, environ) -> None:
    """Replace defaults with ``EVOSUM_*`` environment values where set."""
    for action in parser._actions:
        if not action.option_strings or action.dest == "help":
            continue
        key = ENV_PREFIX + action.dest.upper()
        if key not in environ:
            continue
        raw = environ[key]
        if isinstance(action, argparse._StoreTrueAction):
            action.default = raw.strip().lower() in ("1", "true", "yes", "on")
        else:
            action.default = action.type(raw) if action.type else raw
        action.required = False


def _add_ga_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--train-dir", required=True)
    p.add_argument("--vocab-dir", help="defaults to --train-dir")
    p.add_argument("--train-limit", type=_positive_int)
    p.add_argument("--vocab-limit", type=_positive_int)
    p.add_argument("--no-reference-vocab", action="store_true",
                   help="build the vocabulary from article sentences only")
    p.add_argument("--population", type=_positive_int, default=100)
    p.add_argument("--generations", type=int, default=15)
    p.add_argument("--crossover-rate", type=float, default=0.8)
    p.add_argument("--mutation-rate", type=float, default=0.01,
                   help="per-gene deletion probability")
    p.add_argument("--tournament", type=_positive_int, default=5)
    p.add_argument("--threshold", type=float, default=0.6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=_positive_int, default=None,
                   help="fitness evaluation threads (default: all cores)")


def build_parser(environ=None) -> argparse.ArgumentParser:
    environ = os.environ if environ is None else environ
    parser = argparse.ArgumentParser(prog="evosum", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="evolve token weights on a training corpus")
    _add_ga_flags(p)
    p.add_argument("--weights-out", required=True)
    p.add_argument("--stats-out")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="score a weights file on a test corpus")
    p.add_argument("--weights", required=True)
    p.add_argument("--test-dir", required=True)
    p.add_argument("--test-limit", type=_positive_int)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("summarize", help="print the sentences a model selects")
    p.add_argument("--weights", required=True)
    p.add_argument("input_file")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("grid", help="train and evaluate over (train size, vocab size) cells")
    _add_ga_flags(p)
    p.add_argument("--test-dir", required=True)
    p.add_argument("--test-limit", type=_positive_int)
    p.add_argument("--cells", required=True, help='e.g. "100xall,100x1000,50x50"')
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_grid)

    for p in [parser, *sub.choices.values()]:
        _env_default(p, environ)
    return parser


def main(argv=None, environ=None) -> int:
    args = build_parser(environ).parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (EvosumError, OSError, ValueError, UnicodeDecodeError) as exc:
        print(f"evosum {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
