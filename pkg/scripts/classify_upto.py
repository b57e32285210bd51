"""Classify self-dual codes for every even length up to --max-length and print the table.

    python3 scripts/classify_upto.py --max-length 16
    python3 scripts/classify_upto.py --max-length 18 --jobs 4 --data-dir qhsd-data
"""

import argparse
import logging
import time
from pathlib import Path

from qhsd import classify as cl


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-length", type=int, default=16)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--data-dir", type=Path, help="write length-n.db files and checkpoints here")
    p.add_argument("-v", "--verbose", action="store_true")
    args = p.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    if args.data_dir:
        args.data_dir.mkdir(parents=True, exist_ok=True)
    prev = None
    print(f"{'n':>3} {'total':>6} {'mass':>5} {'secs':>8}  split (indecomposable, d): count")
    for n in range(2, args.max_length + 1, 2):
        t = time.perf_counter()
        prev = cl.classify_length(n, prev, jobs=args.jobs, checkpoint_dir=args.data_dir)
        secs = time.perf_counter() - t
        split = ", ".join(f"{'I' if i else 'D'}{d}:{c}" for (i, d), c in prev.summary().items())
        print(f"{n:>3} {len(prev.classes):>6} {'ok' if prev.certified else 'FAIL':>5} {secs:>8.1f}  {split}",
              flush=True)
        if args.data_dir:
            (args.data_dir / f"length-{n}.db").write_text(cl.format_database(prev))


if __name__ == "__main__":
    main()
