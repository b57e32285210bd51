"""Monomial equivalence, canonical forms and automorphism group orders.

The canonical form is found by an individualization-refinement search in the
style of nauty, run on the 3n positions (coordinate i, scalar w^e):

* the root partition comes from a colour matrix over low-weight codewords
  (pair counts plus the rotation class of the coordinate ratio distribution,
  both invariant under monomial maps);
* refinement is colour refinement on the incidence between positions and
  the low-weight words having value 1 there, with the three positions of a
  coordinate tied together by the scalar shift;
* a discrete partition fixes an order and a scale for every coordinate, and
  the leaf certificate is the RREF of the transformed code;
* the canonical leaf minimises (refinement traces, certificate); equal
  certificates at two leaves yield automorphisms, which prune the search and
  give the group order as the product of first-path orbit sizes.

Decomposable codes are handled one component at a time: the canonical form
is the concatenation of the component forms in sorted order, and identical
components contribute a factorial to the group order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import groupby
from math import factorial, prod
from typing import Sequence

import numpy as np

from . import gf4
from .code import (Code, components, conjugate, from_vecs, projective_words, restrict, weight_enumerator,
                   word_arrays)

_LOG = np.array([-1, 0, 1, 2], dtype=np.int64)  # 1 -> 0, w -> 1, W -> 2


@dataclass(frozen=True)
class MonomialMap:
    """x -> y with y[perm[i]] = scalars[i] * x_i (after conjugating x if asked)."""

    perm: tuple[int, ...]
    scalars: tuple[int, ...]
    conjugate: bool = False

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"not a permutation: {self.perm}")
        if len(self.scalars) != len(self.perm) or 0 in self.scalars:
            raise ValueError("need one nonzero scalar per coordinate")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "MonomialMap":
        return cls(tuple(range(n)), (1,) * n)

    def then(self, other: "MonomialMap") -> "MonomialMap":
        """Apply self first, then other."""
        if other.n != self.n:
            raise ValueError("length mismatch")
        scal = []
        for i in range(self.n):
            s = self.scalars[i]
            if other.conjugate:
                s = gf4.field_conj(s)
            scal.append(gf4.field_mul(other.scalars[self.perm[i]], s))
        return MonomialMap(tuple(other.perm[p] for p in self.perm), tuple(scal),
                           self.conjugate != other.conjugate)

    def inverse(self) -> "MonomialMap":
        n = self.n
        perm = [0] * n
        scal = [0] * n
        for i, p in enumerate(self.perm):
            perm[p] = i
            s = gf4.field_inv(self.scalars[i])
            scal[p] = gf4.field_conj(s) if self.conjugate else s
        return MonomialMap(tuple(perm), tuple(scal), self.conjugate)

    def apply_vec(self, v: gf4.Vec) -> gf4.Vec:
        if self.conjugate:
            v = gf4.vec_conj(v)
        v = gf4.vec_scale_coords(v, self.scalars)
        src = [0] * self.n
        for i, p in enumerate(self.perm):
            src[p] = i
        return gf4.vec_permute(v, src)

    def describe(self) -> str:
        pairs = " ".join(f"{i}->{p}*{gf4.SYMBOLS[s]}"
                         for i, (p, s) in enumerate(zip(self.perm, self.scalars)))
        return ("conj; " if self.conjugate else "") + pairs


def apply_map(c: Code, m: MonomialMap) -> Code:
    if m.n != c.n:
        raise ValueError(f"map of length {m.n} applied to code of length {c.n}")
    return from_vecs([m.apply_vec(r) for r in c.rows], c.n)


def monomial_group_order(n: int) -> int:
    return 3 ** n * factorial(n)


# ---------------------------------------------------------------------------
# invariant colour matrix


def layer_weights(c: Code, layers: int = 2) -> list[int]:
    """The ``layers`` smallest nonzero weights, extended until their words span c.

    Words spanning the code pin it down completely, so the refinement never
    works from a sparse fragment of it.  Depends only on the code up to
    equivalence.
    """
    key = ("layers", layers)
    if key in c.memo:
        return c.memo[key]
    wts = [int(w) for w in np.flatnonzero(np.bincount(c.weights))[1:]]
    basis: list = []

    def absorb(w):
        nonlocal basis
        words = projective_words(c, w)
        for i in range(0, len(words), 64):
            if len(basis) == c.k:
                return
            basis = gf4.rref(basis + words[i:i + 64], c.n)[0]

    out = []
    for w in wts:
        if len(out) >= layers and len(basis) == c.k:
            break
        out.append(w)
        absorb(w)
    c.memo[key] = out
    return out


def _layer_stats(c: Code, w: int):
    words = projective_words(c, w)
    n = c.n
    if not words:
        return None
    lo = np.array([x for x, _ in words], dtype=np.uint64)
    hi = np.array([y for _, y in words], dtype=np.uint64)
    shifts = np.arange(n, dtype=np.uint64)
    ent = (((lo[:, None] >> shifts) & np.uint64(1))
           | (((hi[:, None] >> shifts) & np.uint64(1)) << np.uint64(1))).astype(np.int64)
    logs = _LOG[ent]
    nz = ent > 0
    diag = nz.sum(axis=0)
    # ratio counts r[i, j, t]: words with c_i / c_j = w^t
    r = np.zeros((n, n, 3), dtype=np.int64)
    for i in range(n):
        rows = nz[:, i]
        if not rows.any():
            continue
        sub_nz = nz[rows]
        d = (logs[rows, i][:, None] - logs[rows]) % 3
        jj = np.broadcast_to(np.arange(n), d.shape)
        idx = (jj * 3 + d)[sub_nz]
        r[i] = np.bincount(idx, minlength=3 * n).reshape(n, 3)
    return diag, r


def _rotation_class(t) -> tuple[int, int, int]:
    a, b, c = int(t[0]), int(t[1]), int(t[2])
    return min((a, b, c), (b, c, a), (c, a, b))


def invariant_matrix(c: Code, layers: int = 2) -> list[list[int]]:
    """Colour matrix M[i][j], invariant under monomial maps.

    Uses projective codewords of the weights chosen by layer_weights.  The
    diagonal holds per-coordinate counts; off-diagonal entries hold the pair
    count and the rotation class of the ratio histogram (a coordinate scaling
    rotates the histogram cyclically).
    """
    n = c.n
    raw = [[() for _ in range(n)] for _ in range(n)]
    if c.k:
        for w in layer_weights(c, layers):
            stats = _layer_stats(c, w)
            diag, r = stats
            for i in range(n):
                ri = raw[i]
                for j in range(n):
                    if i == j:
                        ri[j] += (w, int(diag[i]))
                    else:
                        ri[j] += (w,) + _rotation_class(r[i, j])
    palette = {t: idx for idx, t in enumerate(sorted({t for row in raw for t in row}))}
    return [[palette[t] for t in row] for row in raw]


# ---------------------------------------------------------------------------
# search


@dataclass
class CanonicalCertificate:
    canonical: Code
    aut_order: int
    witness: MonomialMap
    generators: list[MonomialMap] = field(default_factory=list, repr=False)
    nodes: int = 0

    @property
    def key(self):
        return self.canonical.rows


_K1 = np.uint64(0x9E3779B97F4A7C15)
_K2 = np.uint64(0xD1B54A32D192ED03)
_EXP = (1, 2, 3)  # log -> element


def _mix(x):
    """splitmix64 finalizer on uint64 arrays."""
    with np.errstate(over="ignore"):
        x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return x ^ (x >> np.uint64(31))


def _incidence(c: Code, layers: int) -> list[np.ndarray]:
    """Per weight layer, the positions 3i + e holding the value 1 in each codeword.

    Position 3i + e stands for coordinate i scaled by w^e, so a word x has
    value 1 at (i, e) exactly when w^e x_i = 1.  All scalar multiples of each
    word are kept, which makes the word set closed under every monomial map.
    """
    if not c.k:
        return []
    shifts = np.arange(c.n, dtype=np.uint64)
    out = []
    for w in layer_weights(c, layers):
        lo, hi = word_arrays(c, w)
        ent = (((lo[:, None] >> shifts) & np.uint64(1))
               | (((hi[:, None] >> shifts) & np.uint64(1)) << np.uint64(1))).astype(np.int64)
        rows, cols = np.nonzero(ent)
        e = (-_LOG[ent[rows, cols]]) % 3
        out.append((3 * cols + e).reshape(-1, w))
    return out


class _Search:
    """Individualization-refinement over the 3n (coordinate, scalar) positions.

    Fixing a position fixes both the coordinate and its scale, so colour
    statistics after individualization see exact entry ratios.  Refinement is
    colour refinement on the incidence between positions and low-weight words,
    with the three positions of a coordinate linked by the scalar shift.
    """

    def __init__(self, c: Code, layers: int = 2):
        self.c = c
        self.n = n = c.n
        self.N = N = 3 * n
        self.inc = _incidence(c, layers)
        p = np.arange(N)
        self.shift1 = 3 * (p // 3) + (p % 3 + 1) % 3
        self.shift2 = 3 * (p // 3) + (p % 3 + 2) % 3
        self.first = None      # (traces, cert, order, map)
        self.best = None
        self.first_prefix: list[int] = []
        self.best_prefix: list[int] = []
        # multiplying the code by w is always an automorphism
        self.perm_gens: list[list[int]] = [self.shift2.tolist()] if n else []
        self.mono_gens: list[MonomialMap] = [MonomialMap(tuple(range(n)), (2,) * n)] if n else []
        self.nodes = 0
        self.orbit_sizes: list[int] = []
        self.root = self._root_cells(layers)

    def _root_cells(self, layers):
        """Coordinate cells from the pair colour matrix, expanded to positions."""
        n = self.n
        M = invariant_matrix(self.c, layers)
        cells = [list(range(n))]
        while True:
            cell_of = [0] * n
            for ci, cell in enumerate(cells):
                for v in cell:
                    cell_of[v] = ci
            new, split = [], False
            for cell in cells:
                groups: dict[tuple, list[int]] = {}
                for v in cell:
                    sig = (M[v][v],) + tuple(sorted((cell_of[u], M[v][u]) for u in range(n) if u != v))
                    groups.setdefault(sig, []).append(v)
                split |= len(groups) > 1
                new += [groups[s] for s in sorted(groups)]
            cells = new
            if not split:
                break
        return [[3 * i + e for i in cell for e in range(3)] for cell in cells]

    def refine(self, cells: list[list[int]]):
        """Equitable refinement; returns the new cells and an invariant trace."""
        N = self.N
        trace = []
        while True:
            col = np.empty(N, dtype=np.int64)
            for ci, cell in enumerate(cells):
                col[cell] = ci
            h = _mix(col.astype(np.uint64) * _K1 + _K2)
            acc = np.zeros(N, dtype=np.uint64)
            with np.errstate(over="ignore"):
                for layer, P in enumerate(self.inc):
                    wh = _mix(h[P].sum(axis=1, dtype=np.uint64) + np.uint64(layer + 1) * _K2)
                    np.add.at(acc, P.ravel(), np.repeat(wh, P.shape[1]))
            acc = acc.tolist()
            c1 = col[self.shift1].tolist()
            c2 = col[self.shift2].tolist()
            new_cells = []
            split = False
            for ci, cell in enumerate(cells):
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                groups: dict[tuple, list[int]] = {}
                for v in cell:
                    groups.setdefault((c1[v], c2[v], acc[v]), []).append(v)
                keys = sorted(groups)
                if len(groups) > 1:
                    split = True
                trace.append(hash((ci, tuple((len(groups[s]), s) for s in keys))))
                new_cells += [groups[s] for s in keys]
            cells = new_cells
            if not split:
                break
        return cells, (len(cells), hash(tuple(trace)))

    def _leaf(self, order):
        perm, scal = [0] * self.n, [1] * self.n
        seen = set()
        for p in order:
            i, e = divmod(p, 3)
            if i not in seen:
                seen.add(i)
                perm[i] = len(seen) - 1
                scal[i] = _EXP[e]
        m = MonomialMap(tuple(perm), tuple(scal))
        return apply_map(self.c, m).rows, m

    # automorphisms ----------------------------------------------------
    def _orbits(self, fixed: Sequence[int]) -> list[int]:
        N = self.N
        parent = list(range(N))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.perm_gens:
            if any(g[v] != v for v in fixed):
                continue
            for x in range(N):
                a, b = find(x), find(g[x])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return [find(x) for x in range(N)]

    def _record(self, src_order, src_map, order, m):
        g = [0] * self.N
        for t in range(self.N):
            g[order[t]] = src_order[t]
        if g == list(range(self.N)):
            return
        self.perm_gens.append(g)
        self.mono_gens.append(m.then(src_map.inverse()))

    # main recursion ---------------------------------------------------
    def run(self):
        self._visit(self.root, [], [])
        return self

    def _visit(self, cells, prefix, traces) -> int:
        """Explore a node; returns the level to resume at (len(prefix) = continue)."""
        self.nodes += 1
        N = self.N
        level = len(prefix)
        cells, tr = self.refine(cells)
        traces = traces + [tr]
        if self.first is not None:
            ft = self.first[0]
            bt = self.best[0]
            eq_first = traces == ft[:len(traces)]
            btp = bt[:len(traces)]
            cmp_best = (traces > btp) - (traces < btp)
            if not eq_first and cmp_best > 0:
                return level
        else:
            eq_first, cmp_best = True, 0
        if len(cells) == N:
            order = [cell[0] for cell in cells]
            cert, m = self._leaf(order)
            if self.first is None:
                self.first = self.best = (traces, cert, order, m)
                self.first_prefix = self.best_prefix = list(prefix)
                return level
            if cert == self.first[1]:
                self._record(self.first[2], self.first[3], order, m)
                return _diverge(prefix, self.first_prefix)
            if cert == self.best[1]:
                self._record(self.best[2], self.best[3], order, m)
                return _diverge(prefix, self.best_prefix)
            if cmp_best < 0 or (cmp_best == 0 and cert < self.best[1]):
                self.best = (traces, cert, order, m)
                self.best_prefix = list(prefix)
            return level
        on_first = self.first is None
        ti = next(i for i, cell in enumerate(cells) if len(cell) > 1)
        target = sorted(cells[ti])
        explored: list[int] = []
        for w in target:
            if explored:
                orb = self._orbits(prefix)
                if any(orb[w] == orb[e] for e in explored):
                    continue
            explored.append(w)
            child = cells[:ti] + [[w], [x for x in cells[ti] if x != w]] + cells[ti + 1:]
            res = self._visit(child, prefix + [w], traces)
            if res < level:
                return res
        if on_first:
            orb = self._orbits(prefix)
            v = target[0]
            self.orbit_sizes.append(sum(1 for x in range(N) if orb[x] == orb[v]))
        return level


def _diverge(a: Sequence[int], b: Sequence[int]) -> int:
    """Level of the deepest common ancestor of two search paths."""
    j = 0
    while j < len(a) and j < len(b) and a[j] == b[j]:
        j += 1
    return j


def canonical_form(c: Code, layers: int = 2) -> CanonicalCertificate:
    blocks = components(c)
    if len(blocks) > 1:
        return _canonical_direct_sum(c, blocks, layers)
    s = _Search(c, layers).run()
    _, cert, _, witness = s.best
    _, _, pivots = gf4.rref(cert, c.n)
    return CanonicalCertificate(Code(c.n, cert, tuple(pivots)), prod(s.orbit_sizes),
                                witness, s.mono_gens, s.nodes)


def _lift(m: MonomialMap, block: Sequence[int], n: int) -> MonomialMap:
    """A map on the block's local coordinates, identity elsewhere."""
    perm, scal = list(range(n)), [1] * n
    for p, x in enumerate(block):
        perm[x] = block[m.perm[p]]
        scal[x] = m.scalars[p]
    return MonomialMap(tuple(perm), tuple(scal))


def _canonical_direct_sum(c: Code, blocks, layers) -> CanonicalCertificate:
    """Components are canonized separately and concatenated in sorted order.

    The finest decomposition is unique, so equivalent codes have the same
    multiset of component classes.
    """
    n = c.n
    certs = [canonical_form(restrict(c, b), layers) for b in blocks]
    order = sorted(range(len(blocks)), key=lambda i: (len(blocks[i]), certs[i].key))
    perm, scal = [0] * n, [1] * n
    rows, offsets = [], {}
    off = 0
    for i in order:
        offsets[i] = off
        w = certs[i].witness
        for p, x in enumerate(blocks[i]):
            perm[x] = off + w.perm[p]
            scal[x] = w.scalars[p]
        rows += [(lo << off, hi << off) for lo, hi in certs[i].canonical.rows]
        off += len(blocks[i])
    witness = MonomialMap(tuple(perm), tuple(scal))
    gens = [_lift(g, blocks[i], n) for i in order for g in certs[i].generators]
    aut = prod(cf.aut_order for cf in certs)
    back = witness.inverse()
    for a, b in zip(order, order[1:]):
        if (len(blocks[a]), certs[a].key) != (len(blocks[b]), certs[b].key):
            continue
        swap = list(range(n))
        for t in range(len(blocks[a])):
            swap[offsets[a] + t], swap[offsets[b] + t] = offsets[b] + t, offsets[a] + t
        gens.append(witness.then(MonomialMap(tuple(swap), (1,) * n)).then(back))
    for _, grp in groupby(order, key=lambda i: (len(blocks[i]), certs[i].key)):
        aut *= factorial(len(list(grp)))
    canon = from_vecs(rows, n)
    return CanonicalCertificate(canon, aut, witness, gens, sum(cf.nodes for cf in certs))


def aut_order(c: Code) -> int:
    return canonical_form(c).aut_order


def automorphism_generators(c: Code) -> list[MonomialMap]:
    """Monomial maps generating Aut(c): lifted permutation parts plus diagonal part."""
    return canonical_form(c).generators


def cheap_invariant(c: Code) -> tuple:
    return (c.n, c.k, weight_enumerator(c) if c.k else ())


def are_equivalent(a: Code, b: Code) -> bool:
    if a.n != b.n or a.k != b.k:
        return False
    if a == b:
        return True
    if cheap_invariant(a) != cheap_invariant(b):
        return False
    return canonical_form(a).key == canonical_form(b).key


def equivalence_witness(a: Code, b: Code) -> MonomialMap | None:
    """A map m with apply_map(a, m) == b, or None."""
    if a.n != b.n or a.k != b.k:
        return None
    ca, cb = canonical_form(a), canonical_form(b)
    if ca.key != cb.key:
        return None
    return ca.witness.then(cb.witness.inverse())


def weak_canonical_key(c: Code):
    return min(canonical_form(c).key, canonical_form(conjugate(c)).key)


def are_weakly_equivalent(a: Code, b: Code) -> bool:
    if a.n != b.n or a.k != b.k:
        return False
    return are_equivalent(a, b) or are_equivalent(a, conjugate(b))


def weak_equivalence_witness(a: Code, b: Code) -> MonomialMap | None:
    m = equivalence_witness(a, b)
    if m is not None:
        return m
    m = equivalence_witness(a, conjugate(b))
    if m is None:
        return None
    gamma = MonomialMap(tuple(range(a.n)), (1,) * a.n, True)
    # a -> conj(b) -> b
    return m.then(gamma)
