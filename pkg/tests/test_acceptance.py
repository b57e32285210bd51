"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed
in the terminal summary."""

import os
import random
import time
from collections import Counter
from itertools import product

import pytest

from qhsd import classify as cl
from qhsd import gf4
from qhsd.code import (direct_sum, dual, is_self_dual, min_weight, weight_enumerator)
from qhsd.equiv import (apply_map, aut_order, canonical_form, monomial_group_order,
                         weak_canonical_key)

from conftest import ACCEPTANCE, random_code, random_map

CLASS_COUNTS = {
    2: {(True, 2): 1},
    4: {(False, 2): 1},
    6: {(True, 4): 1, (False, 2): 1},
    8: {(True, 4): 1, (False, 2): 2},
    10: {(True, 4): 2, (False, 2): 3},
    12: {(True, 4): 4, (False, 2): 5, (False, 4): 1},
    14: {(True, 4): 9, (True, 6): 1, (False, 2): 10, (False, 4): 1},
    16: {(True, 4): 27, (True, 6): 4, (False, 2): 21, (False, 4): 3},
}


def record(num, ok, detail):
    ACCEPTANCE.append(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_1_table_small_lengths(classification):
    got = {n: dict(classification[n].summary()) for n in range(2, 15, 2)}
    totals = [len(classification[n].classes) for n in range(2, 15, 2)]
    secs = sum(classification["seconds"][n] for n in range(2, 15, 2))
    ok = all(got[n] == CLASS_COUNTS[n] for n in got) and totals == [1, 1, 2, 3, 5, 10, 21] and secs < 600
    record(1, ok, f"n=2..14 totals {totals} in {secs:.1f}s")


def test_criterion_2_length_16(classification):
    res = classification[16]
    s = dict(res.summary())
    ok = len(res.classes) == 55 and s == CLASS_COUNTS[16]
    record(2, ok, f"n=16 total {len(res.classes)} split {sorted(s.items())} "
                  f"({classification['seconds'][16]:.1f}s)")


WEIGHT_CHECKS = [(4, 2), (6, 4), (8, 4), (12, 4), (14, 6)]


def test_criterion_3_mass_formulas(classification):
    mass = {n: cl.mass_check(classification[n]) for n in range(2, 17, 2)}
    weight = {(n, d): cl.weight_mass_check(classification[n].classes, n, d) for n, d in WEIGHT_CHECKS}
    ok = all(mass.values()) and all(weight.values())
    bad = [n for n, v in mass.items() if not v] + [nd for nd, v in weight.items() if not v]
    record(3, ok, f"total mass n<=16 and weight identities at {WEIGHT_CHECKS}"
                  + (f"; failing {bad}" if bad else ""))


def test_criterion_4_known_codes():
    c20 = cl.known_code("c20")
    fig = cl.known_code("fig1_22")
    a20, a22 = aut_order(c20), aut_order(fig)
    ok = (c20.n == 20 and is_self_dual(c20) and a20 == 3
          and is_self_dual(fig) and (fig.n, fig.k, min_weight(fig)) == (22, 11, 8) and a22 == 3)
    record(4, ok, f"c20 [20,{c20.k},{min_weight(c20)}] aut {a20}; "
                  f"fig1_22 [22,{fig.k},{min_weight(fig)}] aut {a22}")


def test_criterion_5_decomposables_20(classification):
    tables = {n: [c for c in classification[n].classes if c.indecomposable] for n in range(2, 17, 2)}
    dec = cl.enumerate_decomposables(20, 4, tables)
    shapes = Counter(shape for shape, _ in dec)
    want = {(6, 6, 8): 1, (6, 14): 10, (8, 12): 4, (10, 10): 3}
    distinct = len({c.key for _, c in dec}) == len(dec)
    ok = len(dec) == 18 and shapes == want and distinct and all(c.min_weight >= 4 for _, c in dec)
    record(5, ok, f"{len(dec)} decomposable d>=4 classes, shapes {dict(sorted(shapes.items()))}")


def test_criterion_6_build_up_vs_brute_force(classification, brute_force):
    parts = []
    ok = True
    for n in (4, 6):
        ours = classification[n].classes
        bf = brute_force[n]
        same = (len(ours) == len(bf["classes"])
                and sorted(c.aut_order for c in ours) == bf["aut"]
                and len(bf["codes"]) == cl.count_all_selfdual(n))
        ok &= same
        parts.append(f"n={n}: {len(bf['codes'])} codes, {len(ours)} classes, aut {bf['aut']}")
    record(6, ok, "; ".join(parts))


def _dual_involution(rng):
    for _ in range(200):
        n = rng.randrange(1, 11)
        c = random_code(n, rng.randrange(n + 1), rng)
        if dual(dual(c)) != c or dual(c).k != n - c.k:
            return False
    return True


def _parity_law():
    for n in range(1, 7):
        for x in product(range(4), repeat=n):
            w = sum(1 for a in x if a)
            if (gf4.hermitian_inner_lists(x, x) == 0) != (w % 2 == 0):
                return False
    return True


def _canonical_invariance(rng):
    for n in range(1, 11):
        c = random_code(n, rng.randrange(1, n + 1), rng)
        key = canonical_form(c).key
        for _ in range(100):
            if canonical_form(apply_map(c, random_map(n, rng))).key != key:
                return False
    return True


def _aut_and_orbits(brute_force):
    import oracles
    for n in (4, 6):
        for orb in brute_force[n]["classes"]:
            a = oracles.aut_order(min(orb, key=lambda c: c.rows))
            if a % 3 or a * len(orb) != monomial_group_order(n):
                return False
    c2 = cl.C2
    return aut_order(c2) == 6 and len(oracles.orbit(c2)) * 6 == monomial_group_order(2)


def _convolution(rng):
    for _ in range(50):
        na, nb = rng.randrange(1, 6), rng.randrange(1, 6)
        a = random_code(na, rng.randrange(na + 1), rng)
        b = random_code(nb, rng.randrange(nb + 1), rng)
        wa, wb = weight_enumerator(a), weight_enumerator(b)
        conv = [sum(wa[i] * wb[j - i] for i in range(len(wa)) if 0 <= j - i < len(wb))
                for j in range(a.n + b.n + 1)]
        if list(weight_enumerator(direct_sum(a, b))) != conv:
            return False
    return True


@pytest.mark.parametrize("suite", ["dual", "parity", "canonical", "aut", "convolution"])
def test_criterion_7_properties(suite, brute_force):
    rng = random.Random(7)
    check = {
        "dual": lambda: _dual_involution(rng),
        "parity": _parity_law,
        "canonical": lambda: _canonical_invariance(rng),
        "aut": lambda: _aut_and_orbits(brute_force),
        "convolution": lambda: _convolution(rng),
    }[suite]
    detail = {
        "dual": "dual involution on 200 random codes",
        "parity": "self-inner product parity law, length <= 6 exhaustive",
        "canonical": "canonical form invariant under 100 maps per length <= 10",
        "aut": "aut divisible by 3 and orbit-stabilizer, n <= 6",
        "convolution": "direct-sum weight enumerator convolution, 50 pairs",
    }[suite]
    record(7, check(), detail)


def _length_20_checks(res):
    """Class count, certification, the two d=8 groups, the mass total and weak classes."""
    weak = Counter()
    for c in res.classes:
        weak[weak_canonical_key(c.code)] += 1
        c.code.release()
    d8 = sorted(c.aut_order for c in res.classes if c.min_weight == 8)
    total = sum(cl.orbit_size(20, c.aut_order) for c in res.classes)
    ok = (len(res.classes) == 3427 and res.certified and d8 == [4320, 5760]
          and total == 2229034892015508532492061011707 and len(weak) == 2453)
    return ok, f"n=20 total {len(res.classes)} d=8 aut {d8} mass {total} weak classes {len(weak)}"


def test_criterion_8_stretch(classification):
    level = os.environ.get("QHSD_STRETCH")
    if not level:
        ACCEPTANCE.append("criterion 8: SKIP  stretch goal; set QHSD_STRETCH=1 (length 18) or 20")
        pytest.skip("stretch goal, set QHSD_STRETCH=1")
    t = time.perf_counter()
    res = cl.classify_length(18, classification[16])
    ok = len(res.classes) == 245 and res.certified
    parts = [f"n=18 total {len(res.classes)} mass {'PASS' if res.certified else 'FAIL'} "
             f"({time.perf_counter() - t:.0f}s)"]
    if level == "20":
        t = time.perf_counter()
        ok20, detail = _length_20_checks(cl.classify_length(20, res))
        ok &= ok20
        parts.append(f"{detail} ({time.perf_counter() - t:.0f}s)")
    parts.append("length 22 not run" if level == "20" else "lengths 20 and 22 not run")
    record(8, ok, "; ".join(parts))
