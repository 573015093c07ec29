"""Plot per-generation population fitness from one or more stats CSVs.

    python scripts/plot_convergence.py runs/grid/cell0_100xall.stats.csv -o fig.png
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from evosum.model_io import load_stats  # noqa: E402


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("stats", nargs="+")
    ap.add_argument("-o", "--output", default="convergence.png")
    args = ap.parse_args()

    fig, ax = plt.subplots(figsize=(6, 4))
    for path in args.stats:
        stats = load_stats(path)
        gens = [s.generation for s in stats]
        mean = [100 * s.mean_fitness for s in stats]
        line, = ax.plot(gens, mean, marker="o", label=Path(path).stem)
        ax.fill_between(
            gens, [100 * s.min_fitness for s in stats], [100 * s.max_fitness for s in stats],
            alpha=0.15, color=line.get_color(),
        )
        # late-gain check: gain over the last 5 generations vs total
        if len(mean) > 5 and mean[-1] != mean[0]:
            late = (mean[-1] - mean[-6]) / (mean[-1] - mean[0])
            print(f"{path}: late gain fraction {late:.3f}")
    ax.set_xlabel("generation")
    ax.set_ylabel("fitness (x100)")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
