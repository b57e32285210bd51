import random
from itertools import product

import pytest
from hypothesis import given

from qhsd import gf4
from qhsd.code import (ParseError, codewords, components, coset_weight_distribution, direct_sum,
                       dual, format_code, format_codes, full_space, is_self_dual,
                       is_self_orthogonal, make_code, min_weight, parse_code, parse_codes,
                       projective_words, weight_enumerator, zero_code)
from qhsd.equiv import apply_map

from conftest import C2, HEXACODE, codes, random_code, random_map, random_self_dual


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def test_make_code_examples():
    assert C2.n == 2 and C2.k == 1
    assert make_code([[1, 1], [2, 2]]) == C2
    assert HEXACODE.k == 3 and is_self_dual(HEXACODE) and min_weight(HEXACODE) == 4
    assert make_code([], 4).k == 0
    with pytest.raises(ValueError, match="ragged"):
        make_code([[1, 1], [1]])


def test_hexacode_from_enumeration():
    words = codewords(HEXACODE)
    assert len(set(words)) == 64
    assert min(gf4.vec_weight(w) for w in words if w != (0, 0)) == 4
    assert weight_enumerator(HEXACODE) == (1, 0, 0, 0, 45, 0, 18)


def test_small_enumerators():
    assert weight_enumerator(C2) == (1, 0, 3)
    assert weight_enumerator(direct_sum(C2, C2)) == (1, 0, 6, 0, 9)


def test_dual_examples():
    assert dual(C2) == C2
    assert dual(HEXACODE) == HEXACODE
    assert dual(zero_code(5)) == full_space(5)
    # brute force: the Hermitian dual of <11> among all 16 pairs
    sols = {gf4.vec_from_list(x) for x in product(range(4), repeat=2)
            if gf4.hermitian_inner_lists(x, [1, 1]) == 0}
    assert sols == set(codewords(dual(C2)))


def test_dual_involution_random_codes():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 12)
        c = random_code(n, rng.randint(0, n), rng)
        d = dual(c)
        assert c.k + d.k == n
        assert dual(d) == c


def test_self_duality_predicates():
    assert is_self_dual(C2)
    assert not is_self_orthogonal(make_code([[1, 0]]))
    assert is_self_dual(direct_sum(C2, HEXACODE))
    assert not is_self_dual(make_code([[1, 1, 0, 0]]))
    assert is_self_orthogonal(make_code([[1, 1, 0, 0]]))


@given(codes(max_n=8, max_k=5))
def test_self_orthogonal_iff_even_weights(c):
    """Over GF(4) a code is Hermitian self-orthogonal exactly when all weights are even."""
    assert is_self_orthogonal(c) == all(w % 2 == 0 for w in c.weights.tolist())


def test_self_dual_codes_have_only_even_weights():
    rng = random.Random(3)
    for n in range(2, 21, 2):
        c = random_self_dual(n, rng)
        assert is_self_dual(c)
        we = weight_enumerator(c)
        assert sum(we) == 4 ** c.k and we[0] == 1
        assert all(a == 0 for a in we[1::2])


def test_min_weight():
    assert min_weight(C2) == 2
    assert min_weight(HEXACODE) == 4
    with pytest.raises(ValueError):
        min_weight(zero_code(3))


@given(codes(max_n=9, max_k=5).filter(lambda c: c.k > 0))
def test_min_weight_is_first_nonzero_coefficient(c):
    we = weight_enumerator(c)
    assert min_weight(c) == next(j for j in range(1, c.n + 1) if we[j])


def test_direct_sum_enumerator_convolution_random_pairs():
    rng = random.Random(11)
    for _ in range(50):
        a = random_code(rng.randint(1, 7), rng.randint(0, 4), rng)
        b = random_code(rng.randint(1, 7), rng.randint(0, 4), rng)
        s = direct_sum(a, b)
        assert (s.n, s.k) == (a.n + b.n, a.k + b.k)
        assert weight_enumerator(s) == poly_mul(weight_enumerator(a), weight_enumerator(b))


def test_direct_sum_with_zero_code():
    s = direct_sum(zero_code(3), HEXACODE)
    assert s.k == 3 and s.n == 9
    assert weight_enumerator(s) == weight_enumerator(HEXACODE) + (0, 0, 0)


def test_components():
    assert components(HEXACODE) == [list(range(6))]
    assert components(direct_sum(C2, HEXACODE)) == [[0, 1], list(range(2, 8))]
    assert len(components(direct_sum(C2, C2))) == 2


def brute_cosets(c):
    """Minimum weight per coset by exhaustive enumeration of F4^n."""
    words = codewords(c)
    best = {}
    for x in product(range(4), repeat=c.n):
        v = gf4.vec_from_list(x)
        key = min(gf4.vec_add(v, w) for w in words)
        best[key] = min(best.get(key, c.n + 1), gf4.vec_weight(v))
    B = [0] * (c.n + 1)
    for w in best.values():
        B[w] += 1
    return tuple(B)


def test_coset_examples():
    assert coset_weight_distribution(C2) == (1, 3, 0)
    assert coset_weight_distribution(full_space(4)) == (1, 0, 0, 0, 0)
    assert coset_weight_distribution(HEXACODE) == brute_cosets(HEXACODE)


@given(codes(max_n=5))
def test_cosets_match_brute_force(c):
    B = coset_weight_distribution(c)
    assert sum(B) == 4 ** (c.n - c.k)
    assert B == brute_cosets(c)


def test_coset_profile_invariant_under_maps():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.choice([6, 8, 10])
        c = random_self_dual(n, rng)
        m = random_map(n, rng, conjugate=rng.random() < 0.5)
        assert coset_weight_distribution(apply_map(c, m)) == coset_weight_distribution(c)


def test_coset_budget_redundancy_11():
    c = random_self_dual(22, random.Random(1))
    B = coset_weight_distribution(c)
    assert sum(B) == 4 ** 11 and B[0] == 1
    with pytest.raises(ValueError, match="budget"):
        coset_weight_distribution(zero_code(12))


def test_parse_examples():
    assert parse_code("11") == C2
    assert parse_code("1001ww\n010w1w\n001ww1") == HEXACODE
    text = "# two codes\n11\n\n# hexacode\n1001ww\n010w1w\n001ww1\n"
    assert parse_codes(text) == [C2, HEXACODE]


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_code("# c\n1001ww\n010x1w\n")
    assert exc.value.line == 3 and "bad character" in str(exc.value)
    with pytest.raises(ParseError, match="ragged") as exc:
        parse_codes("11\n\n110\n11\n")
    assert exc.value.line == 4


def test_format_round_trip_random_self_dual():
    rng = random.Random(9)
    cs = [random_self_dual(n, rng) for n in (2, 6, 10, 14)]
    for c in cs:
        assert parse_code(format_code(c)) == c
    assert parse_codes(format_codes(cs)) == cs


@given(codes(max_n=10).filter(lambda c: c.k > 0))
def test_format_round_trip(c):
    assert parse_code(format_code(c)) == c


def test_release_drops_cached_words():
    c = make_code([[1, 1, 0, 0], [0, 0, 1, 1]])
    assert c.weights.tolist().count(2) == 6
    assert len(projective_words(c, 2)) == 2
    c.release()
    assert not {"words", "weights", "memo"} & set(c.__dict__)
    assert weight_enumerator(c) == (1, 0, 6, 0, 9)
