import random

import hypothesis
import hypothesis.strategies as st
import pytest

from qhsd import gf4
from qhsd.code import from_vecs, make_code
from qhsd.equiv import MonomialMap

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

elements = st.integers(0, 3)
nonzero = st.sampled_from(gf4.NONZERO)


def entries(n):
    return st.lists(elements, min_size=n, max_size=n)


@st.composite
def codes(draw, min_n=1, max_n=8, max_k=None):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(0, max_k if max_k is not None else n))
    rows = draw(st.lists(entries(n), min_size=k, max_size=k))
    return make_code(rows, n)


@st.composite
def maps(draw, n):
    perm = draw(st.permutations(range(n)))
    scal = draw(st.lists(nonzero, min_size=n, max_size=n))
    return MonomialMap(tuple(perm), tuple(scal))


def random_self_dual(n, rng):
    """Self-dual code grown by random isotropic vectors of the current dual."""
    rows = []
    while len(rows) < n // 2:
        basis = gf4.hermitian_kernel(rows, n)
        c = [rng.randrange(4) for _ in basis]
        v = (0, 0)
        for a, b in zip(c, basis):
            v = gf4.vec_add(v, gf4.vec_scale(a, b))
        if (v[0] | v[1]) and gf4.hermitian_inner(v, v) == 0 and not gf4.in_span(v, *_rp(rows, n)):
            rows.append(v)
    return from_vecs(rows, n)


def _rp(rows, n):
    r, _, p = gf4.rref(rows, n)
    return r, p


def random_map(n, rng, conjugate=False):
    perm = list(range(n))
    rng.shuffle(perm)
    return MonomialMap(tuple(perm), tuple(rng.choice(gf4.NONZERO) for _ in range(n)), conjugate)


def random_code(n, k, rng):
    return from_vecs([(rng.getrandbits(n), rng.getrandbits(n)) for _ in range(k)], n)


@pytest.fixture
def rng():
    return random.Random(20240611)


HEXACODE = make_code([[1, 0, 0, 1, 2, 2], [0, 1, 0, 2, 1, 2], [0, 0, 1, 2, 2, 1]])
C2 = make_code([[1, 1]])


# ---------------------------------------------------------------------------
# shared, expensive results


@pytest.fixture(scope="session")
def classification():
    """Build-up classification for n = 2..16, with the seconds spent on each length."""
    import time
    from qhsd.classify import classify_length

    out, times = {}, {}
    prev = None
    for n in range(2, 17, 2):
        t = time.perf_counter()
        prev = classify_length(n, prev)
        times[n] = time.perf_counter() - t
        out[n] = prev
    out["seconds"] = times
    return out


@pytest.fixture(scope="session")
def brute_force():
    """All self-dual codes for n = 4, 6 with their classes and stabilizer orders."""
    import oracles

    res = {}
    for n in (4, 6):
        codes_n = oracles.all_self_dual_codes(n)
        classes_n = oracles.classes(codes_n)
        reps = [min(orb, key=lambda c: c.rows) for orb in classes_n]
        res[n] = {"codes": codes_n, "classes": classes_n,
                  "aut": sorted(oracles.aut_order(r) for r in reps)}
    return res


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
