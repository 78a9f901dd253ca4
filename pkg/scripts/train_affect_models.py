#!/usr/bin/env python3
"""Train the arousal (boosted trees) and valence (random forest) models
from a labeled-ads JSONL file and save them into a models directory.

Usage: python scripts/train_affect_models.py models/ [--labeled file.jsonl]
"""

import argparse
import sys
from pathlib import Path

from adforge import psych


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("models_dir")
    parser.add_argument("--labeled", default=None, help="LabeledAd JSONL; defaults to the shipped sample")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    labeled = psych.load_labeled(args.labeled) if args.labeled else psych.sample_labeled()
    models_dir = Path(args.models_dir)
    models_dir.mkdir(parents=True, exist_ok=True)

    arousal = psych.train_arousal(labeled)
    arousal.save(models_dir / "arousal.json")
    valence = psych.train_valence(labeled, seed=args.seed)
    valence.save(models_dir / "valence.json")

    print(f"trained on {len(labeled)} labeled ads -> {models_dir}/arousal.json, valence.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
