#!/usr/bin/env python3
"""Bar chart of per-variant rank shares from an evaluation run's
rank_shares.csv (the offline four-way comparison figure).

Usage: python scripts/plot_rank_shares.py report/rank_shares.csv [out.png]
"""

import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def main() -> int:
    if len(sys.argv) < 2:
        print(__doc__, file=sys.stderr)
        return 2
    path = sys.argv[1]
    out = sys.argv[2] if len(sys.argv) > 2 else "rank_shares.png"

    variants, rows = [], []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        next(reader)
        for row in reader:
            variants.append(row[0])
            rows.append([float(v) for v in row[1:5]])
    shares = np.array(rows)

    x = np.arange(4)
    width = 0.8 / max(1, len(variants))
    fig, ax = plt.subplots(figsize=(7, 4))
    for i, name in enumerate(variants):
        ax.bar(x + i * width, shares[i] * 100, width, label=name)
    ax.set_xticks(x + width * (len(variants) - 1) / 2)
    ax.set_xticklabels([f"rank {r}" for r in range(1, 5)])
    ax.set_ylabel("share of ads (%)")
    ax.set_title("Predicted rank distribution per baseline")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
