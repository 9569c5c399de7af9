#!/usr/bin/env python3
"""Two-column population CSV -> causal report after dropping 9 transients.

    python scripts/predator_prey_analysis.py data/predator_prey.csv

Column 1 is the predator count, column 2 the prey count.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dpe.bench import run_predator_prey
from dpe.core import report_text
from dpe.seqcore import load_pair_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv_path")
    parser.add_argument("--drop", type=int, default=9)
    args = parser.parse_args()

    pred, prey = load_pair_csv(args.csv_path)
    result = run_predator_prey(pred, prey, drop=args.drop)
    print(f"points used after dropping {args.drop} transients: {result.n_used}")
    if result.degenerate_x or result.degenerate_y:
        print("warning: constant series encountered; verdict is degenerate")
    print()
    print(report_text(result.report), end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
