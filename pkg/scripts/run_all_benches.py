#!/usr/bin/env python3
"""Run every synthetic sweep battery and drop one CSV per family.

Desk-scale trial counts by default; pass --full for the large batteries.

    python scripts/run_all_benches.py --out-dir results [--full] [--seed 42]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dpe.bench import emit_results, run_sweep
from dpe.cli import FAMILY_DEFAULTS
from dpe.synth import TrialSpec


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--full", action="store_true")
    parser.add_argument("--methods", default="dpe,lzp,etcp,etce")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    methods = tuple(m.strip() for m in args.methods.split(","))

    for family, (values, desk, full, param, length, drop) in FAMILY_DEFAULTS.items():
        spec = TrialSpec(
            family=family,
            param_name=param,
            values=values,
            length=length,
            drop=drop,
            trials=full if args.full else desk,
            seed=args.seed,
        )
        t0 = time.perf_counter()
        results = run_sweep(spec, methods=methods, workers=args.workers)
        out = out_dir / f"{family}.csv"
        emit_results(results, out)
        print(f"{family}: {len(results)} rows -> {out} ({time.perf_counter() - t0:.0f} s)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
