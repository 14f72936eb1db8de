from itertools import product

import pytest
from hypothesis import given

from conftest import AT, words
from nilquot.errors import CapExceededError
from nilquot.magnus import (TruncatedSeries, embed, is_lyndon, labute_hypothesis, leading_lie,
                            lie_coordinates, lyndon_bracket, lyndon_words, standard_factorization,
                            weight_of)
from nilquot.words import Alphabet, commutator, left_normed_commutator, parse_word

XY = Alphabet(("x", "y"))
x, y = XY.gens()
Z4 = Alphabet(("x1", "x2", "y1", "y2"))


def test_embed_generators():
    assert embed(x, 2).terms == {(): 1, (0,): 1}
    assert embed(x.inverse(), 2).terms == {(): 1, (0,): -1, (0, 0): 1}


def test_embed_commutator_degree_two():
    assert embed(commutator(x, y), 2).terms == {(): 1, (0, 1): 1, (1, 0): -1}


def test_weight_examples():
    assert weight_of(commutator(x, y), 5) == 2
    assert weight_of(x * x, 5) == 1
    assert weight_of(XY.identity(), 5) == "identity"
    assert weight_of(left_normed_commutator([x, y, y, y]), 3) == "exceeds cap"
    x1, x2, y1, _ = Z4.gens()
    u, v = commutator(x1, x2), y1
    assert weight_of(left_normed_commutator([u, v, v]), 6) == 4


def brute_lyndon(q, n):
    return [w for w in product(range(q), repeat=n)
            if all(w < w[i:] + w[:i] for i in range(1, n))]


def test_lyndon_words_small():
    assert lyndon_words(2, 1) == [(0,), (1,)]
    assert lyndon_words(2, 2) == [(0, 1)]
    assert lyndon_words(2, 3) == [(0, 0, 1), (0, 1, 1)]
    for q in (2, 3):
        for n in range(1, 7):
            assert lyndon_words(q, n) == brute_lyndon(q, n)


def test_standard_factorization():
    assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert standard_factorization((0, 1, 1)) == ((0, 1), (1,))
    assert standard_factorization((0, 0, 1, 0, 1)) == ((0, 0, 1), (0, 1))


@pytest.mark.parametrize("q,n", [(2, 5), (2, 6), (3, 4)])
def test_lyndon_brackets_triangular(q, n):
    for w in lyndon_words(q, n):
        exp = lyndon_bracket(w)
        assert min(m for m, _ in exp) == w
        assert dict(exp)[w] == 1


def test_leading_lie_examples():
    assert leading_lie(commutator(x, y), 4).coords == {(0, 1): 1}
    lie = leading_lie(x * x, 4)
    assert (lie.weight, lie.coords) == (1, {(0,): 2})
    assert leading_lie(left_normed_commutator([x, y, y]), 4).coords == {(0, 1, 1): 1}
    with pytest.raises(CapExceededError):
        leading_lie(left_normed_commutator([x, y, y, y]), 3)


def test_labute_examples():
    r = labute_hypothesis(commutator(x, y), 4)
    assert (r.weight, r.primitive, r.gcd) == (2, True, 1)
    r = labute_hypothesis(x * x, 4)
    assert (r.weight, r.primitive, r.gcd) == (1, False, 2)
    x1, x2, y1, y2 = Z4.gens()
    r = labute_hypothesis(commutator(x1, x2) * left_normed_commutator([y1, y2, y2]).inverse(), 4)
    assert (r.weight, r.primitive, r.gcd) == (2, True, 1)


def expand_coords(coords):
    out = {}
    for w, c in coords.items():
        for m, e in lyndon_bracket(w):
            out[m] = out.get(m, 0) + c * e
    return {m: c for m, c in out.items() if c}


@given(words(max_len=8, min_len=1))
def test_leading_lie_reexpands_exactly(w):
    n = weight_of(w, 6)
    if not isinstance(n, int):
        return
    series = embed(w, 6)
    lie = leading_lie(w, 6)
    assert lie.weight == n
    assert expand_coords(lie.coords) == series.homogeneous(n)
    assert all(is_lyndon(m) and len(m) == n for m in lie.coords)


@given(words(max_len=7), words(max_len=7))
def test_embed_homomorphism(u, v):
    for cap in (1, 3, 6):
        assert embed(u * v, cap) == embed(u, cap) * embed(v, cap)


@given(words(max_len=8))
def test_embed_inverse(u):
    assert (embed(u, 6) * embed(u.inverse(), 6)).is_one()
    assert embed(u, 6).terms[()] == 1


@given(words(max_len=6, min_len=1), words(max_len=6, min_len=1))
def test_commutator_weight_superadditive(u, v):
    c = commutator(u, v)
    wu, wv, wc = weight_of(u, 6), weight_of(v, 6), weight_of(c, 6)
    if isinstance(wu, int) and isinstance(wv, int) and isinstance(wc, int):
        assert wc >= wu + wv


def test_truncated_series_validation():
    with pytest.raises(ValueError):
        TruncatedSeries(0)
    with pytest.raises(ValueError):
        TruncatedSeries(2, {(0, 0, 0): 1})
    with pytest.raises(ValueError):
        TruncatedSeries(2, {(0,): 0})


def test_lie_coordinates_of_non_lie_polynomial_fails():
    from nilquot.errors import NotLieElementError
    with pytest.raises(NotLieElementError):
        lie_coordinates({(1, 0): 1})


def test_power_of_commutator_not_primitive():
    c = parse_word("[a,t]^3", AT)
    r = labute_hypothesis(c, 4)
    assert (r.weight, r.gcd, r.primitive) == (2, 3, False)
