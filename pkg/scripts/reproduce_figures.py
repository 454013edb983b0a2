"""Write the figure 4, 5 and 6 sweeps as CSV files.

    python3 scripts/reproduce_figures.py --out results --workers 4
"""

import argparse
import logging
import time
from pathlib import Path

from relayirs.sweep import emit_csv, run_preset

log = logging.getLogger("reproduce_figures")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--out", default="results", help="output directory")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--figures", type=int, nargs="+", default=[4, 5, 6], choices=(4, 5, 6))
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for fig in args.figures:
        start = time.perf_counter()
        rows = run_preset(fig, args.workers)
        path = out / f"figure{fig}.csv"
        emit_csv(rows, path)
        log.info("figure %d: %d rows -> %s (%.2fs)", fig, len(rows), path, time.perf_counter() - start)


if __name__ == "__main__":
    main()
