"""Monte-Carlo check of the closed-form SNRs over several seeds.

    python3 scripts/run_oracle.py --seeds 1 2 3 --trials 1000 --csv-dir results
"""

import argparse
import sys
from pathlib import Path

from relayirs.oracle import monte_carlo_records, summarize, write_trial_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--seeds", type=int, nargs="+", default=[1])
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--m-max", type=int, default=64)
    parser.add_argument("--l-max", type=int, default=4)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--csv-dir", help="write per-trial records here")
    args = parser.parse_args()

    failed = 0
    for seed in args.seeds:
        records = monte_carlo_records(seed, args.trials, args.m_max, args.l_max, args.workers)
        run = summarize(seed, records)
        print(run.summary())
        failed += not run.passed
        if args.csv_dir:
            Path(args.csv_dir).mkdir(parents=True, exist_ok=True)
            write_trial_csv(records, Path(args.csv_dir) / f"oracle_seed{seed}.csv")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
