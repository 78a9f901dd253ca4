#!/usr/bin/env python3
"""End-to-end desk experiment: synthesize a corpus, train both domain
translators and the generator, then run the offline evaluation.

Usage: python scripts/run_desk_eval.py [workdir] [--queries N] [--seed S]
"""

import argparse
import sys
from pathlib import Path

from adforge import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("workdir", nargs="?", default="desk_eval")
    parser.add_argument("--queries", type=int, default=20)
    parser.add_argument("--ads-per-query", type=int, default=6)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--epochs", type=int, default=8)
    args = parser.parse_args()

    work = Path(args.workdir)
    data = work / "data"
    models = work / "models"
    report = work / "report"
    corpus = data / "corpus.jsonl"

    steps = [
        ["synth", "--out", str(data), "--queries", str(args.queries),
         "--ads-per-query", str(args.ads_per_query), "--seed", str(args.seed)],
    ]
    for domain in ("MS", "PH"):
        steps.append(
            ["--seed", str(args.seed), "--models-dir", str(models),
             "train-translator", "--corpus", str(corpus), "--domain", domain,
             "--epochs", str(args.epochs), "--d-emb", "32", "--d-hid", "48",
             "--lr", "0.003", "--min-freq", "1"]
        )
    steps.append(
        ["--seed", str(args.seed), "--models-dir", str(models), "train-generator",
         "--corpus", str(corpus), "--epochs", str(args.epochs), "--d-emb", "32",
         "--d-hid", "48", "--lr", "0.003", "--min-freq", "1"]
    )
    steps.append(
        ["--seed", str(args.seed), "--models-dir", str(models), "eval",
         "--corpus", str(corpus), "--out", str(report)]
    )

    for step in steps:
        print("adforge " + " ".join(step), file=sys.stderr)
        code = cli.main(step)
        if code != 0:
            return code
    print(f"\nreport written under {report}/", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
