"""Classification of Hermitian self-dual codes by the build-up method.

Every self-dual [n, n/2, d] code with d >= 4 is equivalent to one whose
subcode ``C0`` (codewords with equal last two entries) has a generator matrix
``(G1 | a | a)``, where ``G1`` generates a self-dual [n-2, n/2-1, d-2] code.
We therefore run over classified seeds ``G1``, over representatives of the
Aut(G1)-orbits of the column ``a``, and over the three self-dual codes
containing each ``C0``.  Completeness is certified by the mass formulas, with
exact integers throughout.
"""

from __future__ import annotations

import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb, factorial, prod
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import gf4
from .code import (Code, components, direct_sum, format_rows, from_vecs, is_self_dual,
                   is_self_orthogonal, make_code, min_weight, projective_words, span_planes,
                   weight_enumerator, words_of_weight)
from .equiv import MonomialMap, canonical_form, monomial_group_order

log = logging.getLogger(__name__)

_CHUNK = 1 << 16
_MUL = np.array([[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]], dtype=np.int64)


class MassError(ArithmeticError):
    """A mass term 3^n n!/#Aut was not an integer: some automorphism order is wrong."""


# ---------------------------------------------------------------------------
# counting


def count_all_selfdual(n: int) -> int:
    """Number of distinct Hermitian self-dual codes of length n."""
    _check_even(n)
    return prod(2 ** (2 * i + 1) + 1 for i in range(n // 2))


def count_containing_vector(n: int) -> int:
    """Number of self-dual codes of length n through a fixed nonzero even-weight vector."""
    _check_even(n)
    return prod(2 ** (2 * i + 1) + 1 for i in range(n // 2 - 1))


def weight_mass_target(n: int, d: int) -> int:
    """Right-hand side of the weight-d mass identity: C(n, d) 3^d N'(n)."""
    return comb(n, d) * 3 ** d * count_containing_vector(n)


def orbit_size(n: int, aut: int) -> int:
    q, r = divmod(monomial_group_order(n), aut)
    if r:
        raise MassError(f"3^{n}*{n}! is not divisible by automorphism order {aut}")
    return q


def lower_bound_classes_22() -> int:
    """Least number of classes at length 22: ceil(N(22) / (22! 3^21)).

    Each class contributes at most 22! 3^21 codes (automorphism group of
    order 3), and the class count is an integer.
    """
    return -(-count_all_selfdual(22) // (factorial(22) * 3 ** 21))


def extremal_bound(n: int) -> int:
    return 2 * (n // 6) + 2


def _check_even(n: int):
    if n < 2 or n % 2:
        raise ValueError(f"length must be even and >= 2, got {n}")


# ---------------------------------------------------------------------------
# classes and ledgers


@dataclass
class CodeClass:
    code: Code                 # canonical representative
    aut_order: int
    min_weight: int
    indecomposable: bool
    weights: tuple[int, ...] = field(repr=False, default=())

    @classmethod
    def from_code(cls, c: Code, aut: int | None = None) -> "CodeClass":
        cf = canonical_form(c)
        if aut is not None and aut != cf.aut_order:
            raise MassError(f"automorphism order mismatch: {aut} != {cf.aut_order}")
        return cls._from_canonical(cf.canonical, cf.aut_order)

    @classmethod
    def _from_canonical(cls, canon: Code, aut: int) -> "CodeClass":
        we = weight_enumerator(canon)
        canon.release()
        d = next(j for j in range(1, canon.n + 1) if we[j])
        return cls(canon, aut, d, len(components(canon)) == 1, we)

    @property
    def key(self):
        return self.code.rows


@dataclass
class MassLedger:
    n: int
    total: int = 0
    per_weight: Counter = field(default_factory=Counter)

    def add(self, cls: CodeClass):
        m = orbit_size(self.n, cls.aut_order)
        self.total += m
        for j, a in enumerate(cls.weights):
            if j and a:
                self.per_weight[j] += m * a


@dataclass
class ClassificationResult:
    n: int
    classes: list[CodeClass]
    certified: bool = False

    def ledger(self) -> MassLedger:
        led = MassLedger(self.n)
        for c in self.classes:
            led.add(c)
        return led

    def summary(self) -> dict[tuple[bool, int], int]:
        """Counts keyed by (indecomposable, min weight)."""
        return dict(sorted(Counter((c.indecomposable, c.min_weight) for c in self.classes).items()))


def mass_check(result: ClassificationResult) -> bool:
    """Sum of orbit sizes equals the number of self-dual codes of length n."""
    return result.ledger().total == count_all_selfdual(result.n)


def weight_mass_check(classes: Iterable[CodeClass], n: int, d: int) -> bool:
    """Weight-d identity over classes of min weight <= d; true iff the family is complete."""
    total = 0
    for c in classes:
        if c.min_weight <= d:
            total += orbit_size(n, c.aut_order) * c.weights[d]
    return total == weight_mass_target(n, d)


# ---------------------------------------------------------------------------
# build-up pieces


@dataclass(frozen=True)
class ExtensionSpec:
    seed: Code
    a: tuple[int, ...]


def build_c0(spec: ExtensionSpec) -> Code:
    """Generator (G1 | a | a): seed rows with two equal appended columns."""
    seed = spec.seed
    if not is_self_dual(seed):
        raise ValueError("seed must be Hermitian self-dual")
    if len(spec.a) != seed.k:
        raise ValueError(f"need {seed.k} column entries, got {len(spec.a)}")
    n = seed.n
    rows = []
    for (lo, hi), a in zip(seed.rows, spec.a):
        rows.append((lo | ((a & 1) * (3 << n)), hi | ((a >> 1) * (3 << n))))
    return from_vecs(rows, n + 2)


def _action_matrices(c: Code, gens: Sequence[MonomialMap]) -> list[np.ndarray]:
    """T with g(row_i) = sum_j T[i, j] row_j, for each code automorphism g."""
    mats = []
    for g in gens:
        T = np.zeros((c.k, c.k), dtype=np.int64)
        for i, r in enumerate(c.rows):
            img = g.apply_vec(r)
            for j, p in enumerate(c.pivots):
                T[i, j] = gf4.vec_entry(img, p)
        mats.append(T)
    return mats


def _digits(k: int) -> np.ndarray:
    """All vectors of F4^k, row index = sum a_i 4^(k-1-i)."""
    idx = np.arange(4 ** k, dtype=np.int64)
    return np.stack([(idx >> (2 * (k - 1 - i))) & 3 for i in range(k)], axis=1)


def _encode(D: np.ndarray) -> np.ndarray:
    k = D.shape[1]
    out = np.zeros(D.shape[0], dtype=np.int64)
    for i in range(k):
        out = (out << 2) | D[:, i]
    return out


def _apply_linear(T: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Images of all vectors under a -> T a over F4."""
    k = T.shape[0]
    out = np.zeros_like(D)
    for i in range(k):
        acc = np.zeros(D.shape[0], dtype=np.int64)
        for j in range(k):
            if T[i, j]:
                acc ^= _MUL[T[i, j]][D[:, j]]
        out[:, i] = acc
    return out


def a_vector_orbits(c: Code, gens: Sequence[MonomialMap] | None = None):
    """Orbits of Aut(c) on column vectors a in F4^k.

    Returns (labels, reps, sizes): labels[x] is the orbit id of the vector with
    index x, and reps are the smallest indices, so their leading entry is 0 or
    1 (the scalar maps lie in Aut(c)).
    """
    if gens is None:
        gens = canonical_form(c).generators
    k = c.k
    N = 4 ** k
    D = _digits(k)
    src, dst = [], []
    for T in _action_matrices(c, gens):
        src.append(np.arange(N, dtype=np.int64))
        dst.append(_encode(_apply_linear(T, D)))
    if src:
        src_a, dst_a = np.concatenate(src), np.concatenate(dst)
    else:
        src_a = dst_a = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(src_a), dtype=np.int8), (src_a, dst_a)), shape=(N, N))
    n_orb, labels = connected_components(graph, directed=True, connection="weak")
    reps = np.full(n_orb, N, dtype=np.int64)
    np.minimum.at(reps, labels, np.arange(N, dtype=np.int64))
    order = np.argsort(reps)
    reps = reps[order]
    sizes = np.bincount(labels, minlength=n_orb)[order]
    return labels, reps, sizes


def index_to_vector(x: int, k: int) -> tuple[int, ...]:
    return tuple((x >> (2 * (k - 1 - i))) & 3 for i in range(k))


def a_vector_reps(seed: Code, gens: Sequence[MonomialMap] | None = None) -> list[tuple[int, ...]]:
    """One column vector a per Aut(seed)-orbit, leading entry in {0, 1}."""
    _, reps, _ = a_vector_orbits(seed, gens)
    return [index_to_vector(int(x), seed.k) for x in reps]


def _hermitian_form_complement(c0: Code) -> list[gf4.Vec]:
    """Two vectors spanning C0-perp modulo C0."""
    perp = gf4.hermitian_kernel(c0.rows, c0.n)
    basis, pivots = list(c0.rows), list(c0.pivots)
    extra = []
    for v in perp:
        r = gf4.reduce_against(v, basis, pivots)
        if r[0] | r[1]:
            extra.append(r)
            basis, _, pivots = gf4.rref(basis + [r], c0.n)
    return extra


def complete_to_self_dual(c0: Code) -> list[Code]:
    """All self-dual codes containing the self-orthogonal code c0 of dimension n/2 - 1."""
    if not is_self_orthogonal(c0):
        raise ValueError("c0 is not Hermitian self-orthogonal")
    if 2 * (c0.k + 1) != c0.n:
        raise ValueError(f"c0 must have dimension n/2 - 1, got [{c0.n}, {c0.k}]")
    u, v = _hermitian_form_complement(c0)
    out = []
    # projective points of the 2-dim quotient: (1, b) and (0, 1)
    for x in [u if b == 0 else gf4.vec_add(u, gf4.vec_scale(b, v)) for b in range(4)] + [v]:
        if gf4.hermitian_inner(x, x) == 0:
            out.append(from_vecs(list(c0.rows) + [x], c0.n))
    return out


# ---------------------------------------------------------------------------
# build-up classification


class _ClassTable:
    """Canonical-key table with an exact-code prefilter."""

    def __init__(self, n: int):
        self.n = n
        self.by_key: dict[tuple, CodeClass] = {}
        self.seen: set[tuple] = set()
        self.canon_calls = 0
        self.mass_by_weight: Counter = Counter()

    def add(self, c: Code) -> CodeClass | None:
        """Insert; returns the class if it is new."""
        if c.rows in self.seen:
            return None
        self.seen.add(c.rows)
        cf = canonical_form(c)
        self.canon_calls += 1
        key = cf.canonical.rows
        if key in self.by_key:
            return None
        cls = CodeClass._from_canonical(cf.canonical, cf.aut_order)
        self.insert(cls)
        return cls

    def insert(self, cls: CodeClass):
        self.by_key[cls.key] = cls
        m = orbit_size(self.n, cls.aut_order)
        for j, a in enumerate(cls.weights):
            if a:
                self.mass_by_weight[j] += m * a

    def complete(self, d: int, target: int | None) -> bool:
        return target is not None and self.mass_by_weight[d] >= target

    def sorted_classes(self) -> list[CodeClass]:
        return [self.by_key[k] for k in sorted(self.by_key)]


def extensions(seed: Code, reps: Iterable[tuple[int, ...]], d: int) -> Iterable[Code]:
    """Self-dual codes of min weight exactly d built on ``seed`` from the given columns.

    Weights come from one enumeration of the seed: C0 is the seed with f(c)
    appended twice, and each completion adds three cosets of equal weights.
    """
    space = _SeedSpace(seed)
    for a in reps:
        if not any(a):
            continue
        f = space.functional(a)
        w0 = int((space.weights + 2 * (f != 0))[1:].min())
        if w0 < d:
            continue
        c0 = build_c0(ExtensionSpec(seed, a))
        for c in complete_to_self_dual(c0):
            x = next(r for r in c.rows if not gf4.in_span(r, c0.rows, c0.pivots))
            if min(w0, space.coset_min_weight(f, x, d)) == d:
                yield c


def _seed_worker(job) -> list[tuple[tuple, int]]:
    """Classes from one seed, as (canonical rows, aut order); runs in a worker process."""
    n, d, rows = job
    seed = from_vecs(rows, n - 2)
    table = _ClassTable(n)
    for c in extensions(seed, a_vector_reps(seed), d):
        table.add(c)
    return [(k, table.by_key[k].aut_order) for k in sorted(table.by_key)]


class Checkpoint:
    """Classes found so far plus the number of finished seeds, rewritten atomically."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)

    def load(self, n: int) -> tuple[int, list[CodeClass]]:
        if not self.path.exists():
            return 0, []
        text = self.path.read_text()
        done = 0
        for line in text.splitlines():
            if line.startswith("# seeds done:"):
                done = int(line.split(":")[1])
        body = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
        classes = parse_database(text).classes if body else []
        if any(c.code.n != n for c in classes):
            raise ValueError(f"checkpoint {self.path} is for another length")
        return done, classes

    def save(self, n: int, done: int, classes: Iterable[CodeClass]):
        lines = [f"# checkpoint length {n}", f"# seeds done: {done}"]
        lines += [_record(c) for c in classes]
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text("\n".join(lines) + "\n")
        os.replace(tmp, self.path)

    def clear(self):
        self.path.unlink(missing_ok=True)


def classify_min_weight(n: int, d: int, seeds: Sequence[Code], mass_target: int | None = None,
                        jobs: int = 1, checkpoint: Checkpoint | None = None,
                        progress: Callable[[int, int], None] | None = None) -> list[CodeClass]:
    """Inequivalent self-dual [n, n/2, d] codes from seeds of length n - 2.

    ``mass_target``, when given, is the weight-d mass still missing after the
    classes of smaller minimum weight; the run stops once the new classes
    supply it (the family is then complete) and raises if it is overshot.
    Seeds are processed in batches of ``jobs`` worker processes; the result
    is sorted by canonical key, so it does not depend on ``jobs``.
    """
    _check_even(n)
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    for si, seed in enumerate(seeds):
        if seed.n != n - 2 or not is_self_dual(seed):
            raise ValueError(f"seed {si} is not a self-dual code of length {n - 2}")
    if mass_target == 0:
        return []
    table = _ClassTable(n)
    start = 0
    if checkpoint is not None:
        start, old = checkpoint.load(n)
        for cls in old:
            table.insert(cls)
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        si = start
        while si < len(seeds) and not table.complete(d, mass_target):
            batch = seeds[si:si + jobs]
            work = [(n, d, s.rows) for s in batch]
            results = pool.map(_seed_worker, work) if pool else map(_seed_worker, work)
            for found in results:
                for key, aut in found:
                    if key not in table.by_key:
                        table.insert(CodeClass._from_canonical(Code(n, key, _pivots(key)), aut))
            si += len(batch)
            if checkpoint is not None:
                checkpoint.save(n, si, table.sorted_classes())
            if progress:
                progress(si, len(table.by_key))
    finally:
        if pool:
            pool.shutdown()
    if mass_target is not None:
        got = table.mass_by_weight[d]
        if got > mass_target:
            raise MassError(f"weight-{d} mass {got} exceeds target {mass_target}")
        log.info("n=%d d=%d: %d classes after %d/%d seeds", n, d, len(table.by_key), si, len(seeds))
    return table.sorted_classes()


def _pivots(rows) -> tuple[int, ...]:
    return tuple(((r[0] | r[1]) & -(r[0] | r[1])).bit_length() - 1 for r in rows)


def enumerate_decomposables(n: int, min_d: int,
                            indecomposables: dict[int, Sequence[CodeClass]]) -> list[tuple[tuple[int, ...], CodeClass]]:
    """Direct sums of at least two indecomposable classes with total length n.

    Returns (shape, class) pairs; shape is the sorted tuple of summand lengths.
    Lengths absent from ``indecomposables`` count as having no classes.
    Automorphism orders follow from the summands: prod aut_i^m_i * m_i! for a
    class repeated m_i times.
    """
    pool = []
    for length in sorted(indecomposables):
        if length >= n:
            continue
        for cls in indecomposables[length]:
            if not cls.indecomposable:
                raise ValueError("table entries must be indecomposable")
            if cls.min_weight >= min_d:
                pool.append(cls)
    out = []

    def rec(start: int, remaining: int, chosen: list[int]):
        if remaining == 0:
            if len(chosen) >= 2:
                out.append(list(chosen))
            return
        for i in range(start, len(pool)):
            if pool[i].code.n <= remaining:
                chosen.append(i)
                rec(i, remaining - pool[i].code.n, chosen)
                chosen.pop()

    rec(0, n, [])
    result = []
    for combo in out:
        parts = [pool[i] for i in combo]
        code = parts[0].code
        for p in parts[1:]:
            code = direct_sum(code, p.code)
        aut = 1
        for i, m in Counter(combo).items():
            aut *= pool[i].aut_order ** m * factorial(m)
        we = weight_enumerator(code)
        d = next(j for j in range(1, n + 1) if we[j])
        shape = tuple(sorted(p.code.n for p in parts))
        result.append((shape, CodeClass(code, aut, d, False, we)))
    return result


C2 = make_code([[1, 1]])


def classify_length(n: int, previous: ClassificationResult | None,
                    progress: Callable[[str], None] | None = None, jobs: int = 1,
                    checkpoint_dir: str | os.PathLike | None = None) -> ClassificationResult:
    """All classes of length n from the complete classification at n - 2.

    Minimum weight 2 classes are C2 + (every class of length n - 2); each
    larger d is built up from the length n - 2 classes of minimum weight
    d - 2 and stopped by the weight-d mass identity.
    """
    _check_even(n)
    if n == 2:
        res = ClassificationResult(2, [CodeClass.from_code(C2)])
        res.certified = mass_check(res) and weight_mass_check(res.classes, 2, 2)
        return res
    if previous is None or previous.n != n - 2 or not previous.certified:
        raise ValueError(f"need a certified classification of length {n - 2}")
    classes = [CodeClass.from_code(direct_sum(C2, p.code)) for p in previous.classes]
    ok = weight_mass_check(classes, n, 2)
    stages = []
    for d in range(4, extremal_bound(n) + 1, 2):
        have = sum(orbit_size(n, c.aut_order) * c.weights[d] for c in classes)
        target = weight_mass_target(n, d) - have
        if target < 0:
            raise MassError(f"weight-{d} mass already exceeded at n={n}")
        seeds = [p.code for p in previous.classes if p.min_weight == d - 2]
        if progress:
            progress(f"n={n} d={d}: {len(seeds)} seeds, missing weight-{d} mass {target}")
        ck = None
        if checkpoint_dir is not None:
            # kept until the whole length is done, so a resumed run skips finished stages
            ck = Checkpoint(Path(checkpoint_dir) / f"length-{n}.d{d}.ckpt")
            stages.append(ck)
        found = classify_min_weight(n, d, seeds, mass_target=target, jobs=jobs, checkpoint=ck)
        classes.extend(found)
        ok = ok and weight_mass_check(classes, n, d)
    for ck in stages:
        ck.clear()
    classes.sort(key=lambda c: (c.min_weight, c.code.rows))
    res = ClassificationResult(n, classes)
    res.certified = ok and mass_check(res)
    return res


# ---------------------------------------------------------------------------
# neighbors and the length-22 extension


def hyperplane(c: Code, a: Sequence[int]) -> Code:
    """Kernel of the functional sum_i x_i a_i on coefficient vectors of c's rows."""
    rows = list(c.rows)
    piv = next(i for i, x in enumerate(a) if x)
    inv = gf4.field_inv(a[piv])
    out = []
    for i, r in enumerate(rows):
        if i == piv:
            continue
        if a[i]:
            coef = gf4.field_mul(a[i], inv)
            r = gf4.vec_add(r, gf4.vec_scale(coef, rows[piv]))
        out.append(r)
    return from_vecs(out, c.n)


def neighbors(c: Code, min_d: int, gens: Sequence[MonomialMap] | None = None) -> list[Code]:
    """Inequivalent self-dual neighbours D of c (dim(C n D) = n/2 - 1) with min weight >= min_d.

    Each neighbour is <H, x> for a hyperplane H of c; hyperplanes are taken
    up to Aut(c).  The codes returned are actual neighbours of c, one per
    class, ordered by canonical key.
    """
    if not is_self_dual(c):
        raise ValueError("code must be self-dual")
    found: dict[tuple, Code] = {}
    for a in a_vector_reps(c, gens):
        if not any(a):
            continue
        h = hyperplane(c, a)
        for d in complete_to_self_dual(h):
            if d != c and min_weight(d) >= min_d:
                found.setdefault(canonical_form(d).key, d)
    return [found[k] for k in sorted(found)]


def weight6_rebased(seed: Code) -> Code:
    """Same code with a basis whose first four rows have weight 6 (kept un-reduced)."""
    basis: list[gf4.Vec] = []
    red, piv = [], []
    for w in words_of_weight(seed, 6):
        r = gf4.reduce_against(w, red, piv)
        if r[0] | r[1]:
            basis.append(w)
            red, _, piv = gf4.rref(red + [r], seed.n)
            if len(basis) == 4:
                break
    if len(basis) < 4:
        raise ValueError(f"weight-6 subcode has dimension {len(basis)} < 4")
    for r in seed.rows:
        if len(basis) == seed.k:
            break
        x = gf4.reduce_against(r, red, piv)
        if x[0] | x[1]:
            basis.append(r)
            red, _, piv = gf4.rref(red + [x], seed.n)
    return Code(seed.n, tuple(basis), ())


@dataclass
class SeedColumns:
    """Admissible appended columns for one [20,10,6] seed.

    ``columns`` are given on the rows of ``based`` (first four rows of weight
    6), one per Aut(seed)-orbit of functionals that vanish on no weight-6
    codeword.
    """

    seed: Code
    based: Code
    columns: list[tuple[int, ...]]
    labels: np.ndarray = field(repr=False)
    change: np.ndarray = field(repr=False)

    def orbit_label(self, a: Sequence[int]) -> int:
        x = _encode(_apply_linear(self.change, np.array([list(a)], dtype=np.int64)))[0]
        return int(self.labels[x])


def admissible_columns(seed: Code, gens: Sequence[MonomialMap] | None = None) -> SeedColumns:
    if seed.n != 20 or not is_self_dual(seed) or min_weight(seed) != 6:
        raise ValueError("seed is not a self-dual [20,10,6] code")
    based = weight6_rebased(seed)
    if gens is None:
        gens = canonical_form(seed).generators
    labels, _, _ = a_vector_orbits(seed, gens)
    D = _digits(seed.k)
    ok = np.ones(len(D), dtype=bool)
    # f(word) = sum_i coords[i] a_i on the rebased basis; one word per scalar class
    for wc in _coefficients(based, projective_words(seed, 6)):
        acc = np.zeros(len(D), dtype=np.int64)
        for i, x in enumerate(wc):
            if x:
                acc ^= _MUL[x][D[:, i]]
        ok &= acc != 0
    # orbit labels live on the RREF basis
    change = _basis_change(based, seed)
    cand = np.nonzero(ok)[0]
    cand_labels = labels[_encode(_apply_linear(change, D[cand]))]
    _, first = np.unique(cand_labels, return_index=True)
    cols = [index_to_vector(int(x), seed.k) for x in np.sort(cand[first])]
    return SeedColumns(seed, based, cols, labels, change)


class _SeedSpace:
    """Codewords of a seed on a fixed basis, for fast weight checks of extensions."""

    def __init__(self, based: Code):
        self.n = based.n
        self.lo, self.hi = span_planes(based.rows)
        self.weights = np.bitwise_count(self.lo | self.hi).astype(np.int64)

    def functional(self, a: Sequence[int]) -> np.ndarray:
        """f(c) = sum of a_i c_i, in the word order of span_planes."""
        f = np.zeros(len(self.lo), dtype=np.uint8)
        size = 1
        for x in a:
            for b in range(1, 4):
                np.bitwise_xor(f[:size], np.uint8(_MUL[b][x]), out=f[b * size:(b + 1) * size])
            size *= 4
        return f

    def coset_min_weight(self, f: np.ndarray, x: gf4.Vec, floor: int = 0) -> int:
        """Minimum weight of x + C0, C0 = {(c, f(c), f(c))}.

        Stops at the first chunk holding a word of weight below ``floor`` and
        returns that chunk's minimum instead.
        """
        n = self.n
        mask = (1 << n) - 1
        y_lo, y_hi = np.uint64(x[0] & mask), np.uint64(x[1] & mask)
        s, t = gf4.vec_entry(x, n), gf4.vec_entry(x, n + 1)
        best = n + 2
        for i in range(0, len(self.lo), _CHUNK):
            part = slice(i, i + _CHUNK)
            w = np.bitwise_count((self.lo[part] ^ y_lo) | (self.hi[part] ^ y_hi))
            fp = f[part]
            best = min(best, int((w + (fp != s) + (fp != t)).min()))
            if best < floor:
                break
        return best


def extend_seed(sc: SeedColumns, columns: Iterable[Sequence[int]] | None = None,
                d: int = 8) -> Iterable[Code]:
    """Self-dual [22,11,d] codes from the given columns (default: all admissible ones).

    The three cosets lambda*x + C0 have equal weight distributions, so a
    completion <C0, x> has minimum weight min(wt C0, wt(x + C0)).
    """
    space = _SeedSpace(sc.based)
    for a in sc.columns if columns is None else columns:
        f = space.functional(a)
        w0 = space.weights + 2 * (f != 0)
        if int(w0[1:].min()) < d:
            continue
        c0 = build_c0(ExtensionSpec(sc.based, tuple(a)))
        for c in complete_to_self_dual(c0):
            x = next(r for r in c.rows if not gf4.in_span(r, c0.rows, c0.pivots))
            if space.coset_min_weight(f, x, d) >= d:
                yield c


def _columns_worker(job) -> list[tuple[tuple, int]]:
    rows, cols = job
    based = Code(20, rows, ())
    sc = SeedColumns(based, based, list(cols), np.zeros(0, dtype=np.int64), np.zeros((0, 0)))
    table = _ClassTable(22)
    for c in extend_seed(sc):
        table.add(c)
    return [(k, table.by_key[k].aut_order) for k in sorted(table.by_key)]


def extend_columns(based: Code, columns: Sequence[Sequence[int]], jobs: int = 1) -> list[tuple[tuple, int]]:
    """(canonical rows, aut order) of the [22,11,8] classes from the given columns.

    With ``jobs`` > 1 the columns are split into contiguous chunks handled by
    worker processes; the merged list is sorted, so it does not depend on ``jobs``.
    """
    cols = [tuple(a) for a in columns]
    if jobs <= 1 or len(cols) < 2:
        parts = [_columns_worker((based.rows, cols))]
    else:
        size = -(-len(cols) // jobs)
        work = [(based.rows, cols[i:i + size]) for i in range(0, len(cols), size)]
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_columns_worker, work))
    merged = {}
    for part in parts:
        for key, aut in part:
            merged.setdefault(key, aut)
    return sorted(merged.items())


def extend_extremal_22(seeds: Sequence[Code], max_reps: int | None = None,
                       progress: Callable[[str], None] | None = None) -> list[CodeClass]:
    """Extremal self-dual [22, 11, 8] codes built on self-dual [20, 10, 6] seeds.

    Columns are restricted to those nonzero on every weight-6 codeword (else
    C0 has a word of weight 6); in the weight-6 rebased basis this forces
    a_1..a_4 nonzero.  ``max_reps`` truncates each seed's representative list
    for partial runs.
    """
    table = _ClassTable(22)
    for si, seed in enumerate(seeds):
        try:
            sc = admissible_columns(seed)
        except ValueError as exc:
            raise ValueError(f"seed {si}: {exc}") from None
        cols = sc.columns if max_reps is None else sc.columns[:max_reps]
        if progress:
            progress(f"seed {si}: {len(sc.columns)} admissible columns, using {len(cols)}")
        for c in extend_seed(sc, cols):
            table.add(c)
    return table.sorted_classes()


def _coefficients(basis_code: Code, words: Sequence[gf4.Vec]) -> list[list[int]]:
    """Coordinates of codewords in a (not necessarily reduced) basis."""
    k, n = basis_code.k, basis_code.n
    # augment each basis row with a unit tag beyond column n, then reduce
    tagged = [(lo | (1 << (n + i)), hi) for i, (lo, hi) in enumerate(basis_code.rows)]
    red, _, piv = gf4.rref(tagged, n + k)
    out = []
    for w in words:
        r = gf4.reduce_against(w, red, piv)
        # w - sum c_i b_i = 0 on the first n columns; the tag part holds -c = c
        out.append([gf4.vec_entry(r, n + i) for i in range(k)])
    return out


def _basis_change(based: Code, seed: Code) -> np.ndarray:
    """Matrix P with a_rref = P a_based for the functional values on the two bases.

    A functional with values a on the rebased rows b_i takes value
    sum_i c_ji a_i on the RREF row g_j = sum_i c_ji b_i.
    """
    coeffs = _coefficients(based, list(seed.rows))
    return np.array(coeffs, dtype=np.int64)


# ---------------------------------------------------------------------------
# explicit codes


def _circulant(first: Sequence[int]) -> list[list[int]]:
    m = len(first)
    return [[first[(j - i) % m] for j in range(m)] for i in range(m)]


def _identity_concat(R: Sequence[Sequence[int]]) -> list[list[int]]:
    k = len(R)
    return [[1 if i == j else 0 for j in range(k)] + list(R[i]) for i in range(k)]


def _sym(text: str) -> list[int]:
    return [gf4.SYMBOLS.index(ch) for ch in text.split()]


_B20_ROW = "W 0 w 0 w 0 W 1 w 1"
_C20_V = "w 1 1 1 1 1 1 1 1 1 0 W 0 0 1 0 w W 1 W"
_FIG1_M = """\
1 0 1 0 1 0 w W w W 0
w w 0 w 1 0 w w W w 1
W w W 0 0 W w W W 1 w
W 0 1 1 0 w W 1 w w w
w w 0 w W 1 W W W 0 W
1 W 1 0 0 w 0 W 0 W 1
0 1 W 0 0 w 1 0 1 w W
w 0 W W W 1 W 0 w W W
1 w w w 1 1 0 W 1 0 w
1 w W w W 1 1 W 0 w 0
0 0 w W W w 1 1 1 w w"""

KNOWN_CODES = ("b20", "c20", "fig1_22")


def known_code(name: str) -> Code:
    if name == "b20":
        return make_code(_identity_concat(_circulant(_sym(_B20_ROW))))
    if name == "c20":
        b20 = known_code("b20")
        v = gf4.vec_from_list(_sym(_C20_V))
        vals = [gf4.hermitian_inner(r, v) for r in b20.rows]
        # B20 n <v>-perp is the kernel of x -> x.v, a hyperplane of B20
        inter = hyperplane(b20, vals) if any(vals) else b20
        return from_vecs(list(inter.rows) + [v], 20)
    if name == "fig1_22":
        return make_code(_identity_concat([_sym(line) for line in _FIG1_M.splitlines()]))
    raise KeyError(f"unknown code {name!r}; choose from {', '.join(KNOWN_CODES)}")


# ---------------------------------------------------------------------------
# database format: '#' header lines, then one class per line
#   n k d aut_order row;row;...


def format_database(result: ClassificationResult, extra: dict[str, str] | None = None) -> str:
    s = result.summary()
    lines = [f"# length {result.n}: {len(result.classes)} classes",
             f"# mass check: {'PASS' if result.certified else 'FAIL'}"]
    for (indec, d), cnt in s.items():
        lines.append(f"# {'indecomposable' if indec else 'decomposable'} d={d}: {cnt}")
    for k, v in (extra or {}).items():
        lines.append(f"# {k}: {v}")
    lines += [_record(c) for c in result.classes]
    return "\n".join(lines) + "\n"


def _record(c: CodeClass) -> str:
    return f"{c.code.n} {c.code.k} {c.min_weight} {c.aut_order} {format_rows(c.code)}"


def parse_database(text: str) -> ClassificationResult:
    classes = []
    certified = False
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# mass check:"):
                certified = line.split(":", 1)[1].strip() == "PASS"
            continue
        parts = line.split()
        if len(parts) != 5:
            raise ValueError(f"line {lineno}: expected 'n k d aut rows', got {line!r}")
        n_, k_, d_, aut = (int(x) for x in parts[:4])
        rows = parts[4].split(";")
        code = from_vecs([gf4.parse_vec(r) for r in rows], n_)
        if code.k != k_ or len(rows) != k_:
            raise ValueError(f"line {lineno}: rows do not have rank {k_}")
        we = weight_enumerator(code)
        code.release()
        cls = CodeClass(code, aut, d_, len(components(code)) == 1, we)
        if min(j for j in range(1, n_ + 1) if we[j]) != d_:
            raise ValueError(f"line {lineno}: stated minimum weight {d_} is wrong")
        classes.append(cls)
        n = n_
    if n is None:
        raise ValueError("empty database")
    return ClassificationResult(n, classes, certified)
