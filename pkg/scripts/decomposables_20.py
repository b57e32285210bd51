"""Decomposable self-dual codes of length 20 with minimum weight at least 4,
assembled from the indecomposable classes of lengths up to 14."""

from collections import Counter

from qhsd import classify as cl
from qhsd.code import format_rows


def main():
    tables, prev = {}, None
    for n in range(2, 15, 2):
        prev = cl.classify_length(n, prev)
        tables[n] = [c for c in prev.classes if c.indecomposable]
    dec = cl.enumerate_decomposables(20, 4, tables)
    for shape, c in dec:
        print(f"{'+'.join(map(str, shape)):>8}  d={c.min_weight} aut={c.aut_order}")
    print(f"total {len(dec)}")
    for shape, cnt in sorted(Counter(s for s, _ in dec).items()):
        print(f"  shape {shape}: {cnt}")
    if dec:
        print("first code:")
        print(format_rows(dec[0][1].code))


if __name__ == "__main__":
    main()
