"""Linear codes over GF(4).

A :class:`Code` stores its generator matrix in RREF, so two codes are equal
as sets exactly when their ``rows`` agree.  Codeword enumeration is done with
numpy on the two bit-planes; every code in this project has k <= 11.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import gf4
from .gf4 import Vec

ENUM_BUDGET = 12     # max dimension for codeword enumeration (4^12 words)
SYNDROME_BUDGET = 11  # max redundancy n - k for the coset sweep


@dataclass(frozen=True, eq=False)
class Code:
    n: int
    rows: tuple[Vec, ...]
    pivots: tuple[int, ...] = field(repr=False)

    @property
    def k(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Code):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Code(n={self.n}, k={self.k}, rows={format_rows(self)})"

    @cached_property
    def words(self) -> tuple[np.ndarray, np.ndarray]:
        """All 4^k codewords as (lo, hi) uint64 arrays."""
        return span_planes(self.rows)

    @cached_property
    def weights(self) -> np.ndarray:
        lo, hi = self.words
        return np.bitwise_count(lo | hi)

    @cached_property
    def memo(self) -> dict:
        """Scratch cache for data derived from the codewords."""
        return {}

    def release(self):
        """Drop the cached codeword arrays; long-lived codes should not hold 4^k words."""
        for name in ("words", "weights", "memo"):
            self.__dict__.pop(name, None)


def make_code(rows: Iterable[Sequence[int]], n: int | None = None) -> Code:
    """Build a code from generator rows given as entry lists (ints 0..3)."""
    vecs = []
    for r in rows:
        r = list(r)
        if n is None:
            n = len(r)
        elif len(r) != n:
            raise ValueError(f"ragged rows: expected length {n}, got {len(r)}")
        vecs.append(gf4.vec_from_list(r))
    if n is None:
        raise ValueError("length required for an empty generator list")
    return from_vecs(vecs, n)


def from_vecs(vecs: Iterable[Vec], n: int) -> Code:
    basis, _, pivots = gf4.rref(vecs, n)
    return Code(n, tuple(basis), tuple(pivots))


def zero_code(n: int) -> Code:
    return Code(n, (), ())


def full_space(n: int) -> Code:
    return from_vecs([(1 << j, 0) for j in range(n)], n)


def span_planes(rows: Sequence[Vec]) -> tuple[np.ndarray, np.ndarray]:
    if len(rows) > ENUM_BUDGET:
        raise ValueError(f"dimension {len(rows)} exceeds enumeration budget {ENUM_BUDGET}")
    lo = np.zeros(4 ** len(rows), dtype=np.uint64)
    hi = np.zeros(4 ** len(rows), dtype=np.uint64)
    size = 1
    for r in rows:
        # block a holds the words so far plus a * r
        for a in range(1, 4):
            s_lo, s_hi = gf4.vec_scale(a, r)
            np.bitwise_xor(lo[:size], np.uint64(s_lo), out=lo[a * size:(a + 1) * size])
            np.bitwise_xor(hi[:size], np.uint64(s_hi), out=hi[a * size:(a + 1) * size])
        size *= 4
    return lo, hi


def codewords(c: Code) -> list[Vec]:
    lo, hi = c.words
    return list(zip(lo.tolist(), hi.tolist()))


def contains(c: Code, v: Vec) -> bool:
    return gf4.in_span(v, c.rows, c.pivots)


def dual(c: Code) -> Code:
    return from_vecs(gf4.hermitian_kernel(c.rows, c.n), c.n)


def conjugate(c: Code) -> Code:
    """Image of the code under the Frobenius map applied entrywise."""
    return from_vecs([gf4.vec_conj(r) for r in c.rows], c.n)


def is_self_orthogonal(c: Code) -> bool:
    rows = c.rows
    return all(gf4.hermitian_inner(rows[i], rows[j]) == 0
               for i in range(len(rows)) for j in range(i, len(rows)))


def is_self_dual(c: Code) -> bool:
    return 2 * c.k == c.n and is_self_orthogonal(c)


def weight_enumerator(c: Code) -> tuple[int, ...]:
    """Coefficients A_0..A_n as exact ints."""
    counts = np.bincount(c.weights, minlength=c.n + 1)
    return tuple(int(x) for x in counts)


def min_weight(c: Code) -> int:
    if c.k == 0:
        raise ValueError("minimum weight of the zero code is undefined")
    w = c.weights
    return int(w[1:].min()) if len(w) > 1 else 0


def word_arrays(c: Code, w: int) -> tuple[np.ndarray, np.ndarray]:
    """Weight-w codewords as (lo, hi) arrays, cached until release()."""
    key = ("weight", w)
    if key not in c.memo:
        lo, hi = c.words
        mask = c.weights == w
        c.memo[key] = (lo[mask], hi[mask])
    return c.memo[key]


def words_of_weight(c: Code, w: int) -> list[Vec]:
    lo, hi = word_arrays(c, w)
    return list(zip(lo.tolist(), hi.tolist()))


def projective_words(c: Code, w: int) -> list[Vec]:
    """Weight-w codewords whose first nonzero entry is 1 (one per scalar class)."""
    lo, hi = word_arrays(c, w)
    s = lo | hi
    low = s & (~s + np.uint64(1))
    keep = ((lo & low) != 0) & ((hi & low) == 0)
    return list(zip(lo[keep].tolist(), hi[keep].tolist()))


def direct_sum(a: Code, b: Code) -> Code:
    shift = a.n
    rows = list(a.rows) + [(lo << shift, hi << shift) for lo, hi in b.rows]
    return from_vecs(rows, a.n + b.n)


def components(c: Code) -> list[list[int]]:
    """Coordinate blocks of the finest direct-sum decomposition.

    Connected components of the RREF support pattern: a pivot column is tied
    to every column where its row is nonzero.  Zero columns are singletons.
    """
    parent = list(range(c.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row, p in zip(c.rows, c.pivots):
        supp = row[0] | row[1]
        rp = find(p)
        while supp:
            low = supp & -supp
            j = low.bit_length() - 1
            rj = find(j)
            if rj != rp:
                parent[rj] = rp
            supp ^= low
    blocks: dict[int, list[int]] = {}
    for j in range(c.n):
        blocks.setdefault(find(j), []).append(j)
    return sorted(blocks.values())


def is_indecomposable(c: Code) -> bool:
    return len(components(c)) == 1


def restrict(c: Code, coords: Sequence[int]) -> Code:
    """The code punctured to ``coords`` (in that order)."""
    return from_vecs([gf4.vec_permute(r, coords) for r in c.rows], len(coords))


def coset_weight_distribution(c: Code) -> tuple[int, ...]:
    """B_0..B_n: number of cosets of c whose minimum weight is j.

    Breadth-first sweep over syndromes: a coset of minimum weight w + 1 is a
    weight-w coset plus one scaled unit vector.  Syndromes are taken against
    a basis of the Hermitian dual.
    """
    r = c.n - c.k
    if r > SYNDROME_BUDGET:
        raise ValueError(f"redundancy {r} exceeds syndrome budget {SYNDROME_BUDGET}")
    h = gf4.hermitian_kernel(c.rows, c.n)
    # syndrome of unit vector a*e_j packed as 2 bits per check
    gens = []
    for j in range(c.n):
        for a in gf4.NONZERO:
            u = gf4.vec_scale(a, (1 << j, 0))
            s = 0
            for i, hv in enumerate(h):
                s |= gf4.hermitian_inner(u, hv) << (2 * i)
            gens.append(s)
    gens = np.unique(np.array(gens, dtype=np.int64))
    gens = gens[gens != 0]
    dist = np.full(4 ** r, -1, dtype=np.int16)
    dist[0] = 0
    frontier = np.zeros(1, dtype=np.int64)
    B = [1] + [0] * c.n
    w = 0
    chunk = max(1, 2_000_000 // max(1, len(gens)))
    while len(frontier):
        w += 1
        found = []
        for start in range(0, len(frontier), chunk):
            cand = (frontier[start:start + chunk, None] ^ gens[None, :]).ravel()
            cand = cand[dist[cand] < 0]
            if len(cand):
                cand = np.unique(cand)
                dist[cand] = w
                found.append(cand)
        frontier = np.concatenate(found) if found else np.zeros(0, dtype=np.int64)
        if len(frontier):
            B[w] = len(frontier)
    return tuple(B)


# ---------------------------------------------------------------------------
# text format: one row per line over {0,1,w,W}; '#' comments; blank line
# separates codes


def format_rows(c: Code) -> str:
    return ";".join(gf4.format_vec(r, c.n) for r in c.rows)


def format_code(c: Code) -> str:
    return "\n".join(gf4.format_vec(r, c.n) for r in c.rows) + "\n"


def format_codes(codes: Iterable[Code]) -> str:
    return "\n".join(format_code(c) for c in codes)


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_codes(text: str) -> list[Code]:
    codes: list[Code] = []
    block: list[str] = []
    start = None

    def flush():
        if block:
            n = len(block[0])
            vecs = []
            for off, row in enumerate(block):
                if len(row) != n:
                    raise ParseError(f"ragged rows: expected length {n}, got {len(row)}", start + off)
                try:
                    vecs.append(gf4.parse_vec(row))
                except ValueError as exc:
                    raise ParseError(str(exc), start + off) from None
            codes.append(from_vecs(vecs, n))
            block.clear()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            flush()
            continue
        if not block:
            start = lineno
        block.append(line)
    flush()
    return codes


def parse_code(text: str) -> Code:
    codes = parse_codes(text)
    if len(codes) != 1:
        raise ParseError(f"expected exactly one code, found {len(codes)}")
    return codes[0]
