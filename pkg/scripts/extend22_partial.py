"""Partial search for extremal [22,11,8] codes from one [20,10,6] seed.

The default seed is the length-20 code obtained by deleting two coordinates
of the built-in length-22 code; --max-reps bounds the number of column orbit
representatives tried, so the output is a sample, not a classification.
"""

import argparse
import time

from qhsd import classify as cl
from qhsd import gf4
from qhsd.code import coset_weight_distribution, restrict


def shortened_seed(code):
    """Self-dual length n-2 code: the words agreeing on the last two coordinates, cut there."""
    n = code.n
    vals = [gf4.vec_entry(r, n - 2) ^ gf4.vec_entry(r, n - 1) for r in code.rows]
    return restrict(cl.hyperplane(code, vals), list(range(n - 2)))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", choices=["c20", "fig1"], default="fig1")
    p.add_argument("--max-reps", type=int, default=100)
    args = p.parse_args()

    if args.seed == "c20":
        seed = cl.known_code("c20")
    else:
        seed = shortened_seed(cl.known_code("fig1_22"))
    t = time.perf_counter()
    total = len(cl.admissible_columns(seed).columns)
    print(f"{total} admissible column classes, trying {min(total, args.max_reps)}")
    found = cl.extend_extremal_22([seed], max_reps=args.max_reps)
    print(f"{len(found)} extremal classes in {time.perf_counter() - t:.1f}s")
    for c in found:
        print(f"  aut={c.aut_order} B={coset_weight_distribution(c.code)}")


if __name__ == "__main__":
    main()
