"""Write a planted-signal corpus, train on it, and summarize one story.

    python scripts/planted_demo.py runs/demo
"""

import sys
from pathlib import Path

from evosum.cli import main as evosum_main
from evosum.synthetic import planted_stories, write_stories

out = Path(sys.argv[1] if len(sys.argv) > 1 else "runs/demo")
train = write_stories(out / "train", planted_stories(n_docs=20, seed=0))
test = write_stories(out / "test", planted_stories(n_docs=10, seed=1))

evosum_main(["train", "--train-dir", str(train), "--weights-out", str(out / "model.weights"),
             "--stats-out", str(out / "stats.csv"), "--seed", "0"])
evosum_main(["eval", "--weights", str(out / "model.weights"), "--test-dir", str(test)])
first = sorted(train.iterdir())[0]
print("--- sentences kept from", first.name)
evosum_main(["summarize", "--weights", str(out / "model.weights"), str(first)])
