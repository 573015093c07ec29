"""Train/test grid over training-set and vocabulary-set sizes on CNN stories.

    python scripts/run_cnn_grid.py --stories cnn/stories --out runs/grid

The first ``--test-limit`` files (in filename order) after ``--test-offset``
are copied aside as the test set; training and vocabulary files are taken
from the front of the directory.
"""

import argparse
import shutil
import sys
from pathlib import Path

from evosum.cli import main as evosum_main
from evosum.corpus import list_story_files

CELLS = "100xall,100x1000,100x50,50xall,50x1000,50x50"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--stories", required=True, help="directory of *.story files")
    ap.add_argument("--out", default="runs/grid")
    ap.add_argument("--test-offset", type=int, default=90_000,
                    help="index of the first test file; must lie past every training file")
    ap.add_argument("--test-limit", type=int, default=50)
    ap.add_argument("--cells", default=CELLS)
    ap.add_argument("--seed", default="0")
    args, extra = ap.parse_known_args()

    out = Path(args.out)
    files = list_story_files(args.stories)
    test_files = files[args.test_offset : args.test_offset + args.test_limit]
    if not test_files:
        sys.exit(f"no test files at offset {args.test_offset} ({len(files)} stories found)")
    test_dir = out / "test"
    test_dir.mkdir(parents=True, exist_ok=True)
    for f in test_files:
        shutil.copy(f, test_dir / f.name)

    return evosum_main([
        "grid", "--train-dir", args.stories, "--test-dir", str(test_dir),
        "--cells", args.cells, "--out-dir", str(out), "--seed", args.seed, *extra,
    ])


if __name__ == "__main__":
    sys.exit(main())
