"""Arithmetic and linear algebra over GF(4) = {0, 1, w, W}, with W = w^2 = w + 1.

Elements are ints 0..3 whose two bits are the coefficients of 1 and w:
0 -> 0, 1 -> 1, 2 -> w, 3 -> W.  Vectors are bit-sliced as a pair of ints
``(lo, hi)``; bit ``j`` of ``lo``/``hi`` holds coordinate ``j``.  Addition is
XOR on both planes and the weight is ``popcount(lo | hi)``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

ZERO, ONE, W, WBAR = 0, 1, 2, 3
NONZERO = (ONE, W, WBAR)
SYMBOLS = "01wW"

Vec = tuple[int, int]

_MUL = [
    [0, 0, 0, 0],
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
]
_INV = [None, 1, 3, 2]
_CONJ = [0, 1, 3, 2]


def field_add(a: int, b: int) -> int:
    return a ^ b


def field_mul(a: int, b: int) -> int:
    return _MUL[a][b]


def field_inv(a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(4)")
    return _INV[a]


def field_conj(a: int) -> int:
    """Frobenius map a -> a^2 (swaps w and W)."""
    return _CONJ[a]


# ---------------------------------------------------------------------------
# bit-sliced vectors


def vec_from_list(entries: Sequence[int]) -> Vec:
    lo = hi = 0
    for j, a in enumerate(entries):
        if a & 1:
            lo |= 1 << j
        if a & 2:
            hi |= 1 << j
    return lo, hi


def vec_to_list(v: Vec, n: int) -> list[int]:
    lo, hi = v
    return [((lo >> j) & 1) | (((hi >> j) & 1) << 1) for j in range(n)]


def vec_entry(v: Vec, j: int) -> int:
    return ((v[0] >> j) & 1) | (((v[1] >> j) & 1) << 1)


def vec_add(x: Vec, y: Vec) -> Vec:
    return x[0] ^ y[0], x[1] ^ y[1]


def vec_scale(a: int, v: Vec) -> Vec:
    lo, hi = v
    if a == 0:
        return 0, 0
    if a == 1:
        return lo, hi
    if a == 2:
        # (l + h w) w = h + (l + h) w
        return hi, lo ^ hi
    return lo ^ hi, lo


def vec_conj(v: Vec) -> Vec:
    # (l + h w)^2 = l + h W = (l + h) + h w
    return v[0] ^ v[1], v[1]


def vec_weight(v: Vec) -> int:
    return (v[0] | v[1]).bit_count()


def vec_support(v: Vec) -> int:
    return v[0] | v[1]


def vec_mul(x: Vec, y: Vec) -> Vec:
    """Coordinatewise product."""
    a1, b1 = x
    a2, b2 = y
    bb = b1 & b2
    return (a1 & a2) ^ bb, (a1 & b2) ^ (a2 & b1) ^ bb


def hermitian_inner(x: Vec, y: Vec) -> int:
    """sum_i x_i * y_i^2."""
    lo, hi = vec_mul(x, vec_conj(y))
    return (lo.bit_count() & 1) | ((hi.bit_count() & 1) << 1)


def hermitian_inner_lists(x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    return hermitian_inner(vec_from_list(x), vec_from_list(y))


def vec_permute(v: Vec, src: Sequence[int]) -> Vec:
    """Return u with u[t] = v[src[t]]."""
    lo, hi = v
    nlo = nhi = 0
    for t, j in enumerate(src):
        if (lo >> j) & 1:
            nlo |= 1 << t
        if (hi >> j) & 1:
            nhi |= 1 << t
    return nlo, nhi


def vec_scale_coords(v: Vec, scalars: Sequence[int]) -> Vec:
    """Multiply coordinate j by scalars[j]."""
    lo, hi = v
    m_w = m_wb = 0
    for j, s in enumerate(scalars):
        if s == 2:
            m_w |= 1 << j
        elif s == 3:
            m_wb |= 1 << j
        elif s == 0:
            raise ValueError("scalars must be nonzero")
    keep = ~(m_w | m_wb)
    lo_w, hi_w = hi, lo ^ hi
    lo_b, hi_b = lo ^ hi, lo
    return ((lo & keep) | (lo_w & m_w) | (lo_b & m_wb),
            (hi & keep) | (hi_w & m_w) | (hi_b & m_wb))


# ---------------------------------------------------------------------------
# matrices: lists of Vec rows with an explicit column count


def rref(rows: Iterable[Vec], n: int) -> tuple[list[Vec], int, list[int]]:
    """Reduced row echelon form.

    Pivots are chosen in the leftmost column (lowest bit) first, taking the
    first remaining row with a nonzero entry there.  Returns
    ``(rows, rank, pivots)``; zero rows are dropped.
    """
    work = [r for r in rows if r[0] | r[1]]
    pivots: list[int] = []
    r = 0
    for j in range(n):
        if r == len(work):
            break
        bit = 1 << j
        p = next((i for i in range(r, len(work)) if (work[i][0] | work[i][1]) & bit), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        piv = work[r]
        a = ((piv[0] >> j) & 1) | (((piv[1] >> j) & 1) << 1)
        if a != 1:
            piv = vec_scale(_INV[a], piv)
            work[r] = piv
        for i in range(len(work)):
            if i == r:
                continue
            lo, hi = work[i]
            if (lo | hi) & bit:
                b = ((lo >> j) & 1) | (((hi >> j) & 1) << 1)
                s = vec_scale(b, piv)
                work[i] = (lo ^ s[0], hi ^ s[1])
        pivots.append(j)
        r += 1
    return work[:r], r, pivots


def reduce_against(v: Vec, basis: Sequence[Vec], pivots: Sequence[int]) -> Vec:
    """Reduce v modulo the row space of an RREF basis."""
    lo, hi = v
    for row, j in zip(basis, pivots):
        b = ((lo >> j) & 1) | (((hi >> j) & 1) << 1)
        if b:
            s = vec_scale(b, row)
            lo ^= s[0]
            hi ^= s[1]
    return lo, hi


def in_span(v: Vec, basis: Sequence[Vec], pivots: Sequence[int]) -> bool:
    lo, hi = reduce_against(v, basis, pivots)
    return not (lo | hi)


def kernel(rows: Sequence[Vec], n: int) -> list[Vec]:
    """Basis of {x : sum_j x_j r_j = 0 for every row r} (bilinear kernel)."""
    basis, rank, pivots = rref(rows, n)
    free = [j for j in range(n) if j not in set(pivots)]
    out = []
    for f in free:
        # x_f = 1; x_{p_i} = -R[i][f] = R[i][f] in characteristic 2
        lo, hi = 1 << f, 0
        for row, p in zip(basis, pivots):
            b = ((row[0] >> f) & 1) | (((row[1] >> f) & 1) << 1)
            if b & 1:
                lo |= 1 << p
            if b & 2:
                hi |= 1 << p
        out.append((lo, hi))
    return out


def hermitian_kernel(rows: Sequence[Vec], n: int) -> list[Vec]:
    """Basis of {x : hermitian_inner(x, r) = 0 for every row r}.

    x . r = sum x_j r_j^2, i.e. the ordinary kernel of the conjugated rows.
    """
    return kernel([vec_conj(r) for r in rows], n)


def format_vec(v: Vec, n: int) -> str:
    return "".join(SYMBOLS[a] for a in vec_to_list(v, n))


def parse_vec(text: str) -> Vec:
    try:
        return vec_from_list([SYMBOLS.index(ch) for ch in text])
    except ValueError:
        bad = next(ch for ch in text if ch not in SYMBOLS)
        raise ValueError(f"bad character {bad!r} in row {text!r}") from None
