from itertools import product

import pytest

from nilquot.basic import basic_sequence, expand, witt_number
from nilquot.errors import BudgetExceededError
from nilquot.magnus import labute_hypothesis, lyndon_words, weight_of
from nilquot.words import Alphabet, parse_word

X = Alphabet(("x1", "x2"))


def necklace_count(q, n):
    # aperiodic necklaces of length n by brute force over all words
    seen = set()
    count = 0
    for w in product(range(q), repeat=n):
        rots = [w[i:] + w[:i] for i in range(n)]
        canon = min(rots)
        if canon in seen:
            continue
        seen.add(canon)
        if len(set(rots)) == n:
            count += 1
    return count


def counts_by_weight(seq):
    out = {}
    for b in seq:
        out[b.weight] = out.get(b.weight, 0) + 1
    return out


def test_weight_one_is_the_alphabet():
    seq = basic_sequence(X, 1)
    assert [b.label(X) for b in seq] == ["x1", "x2"]


def test_weight_two_single_node():
    seq = basic_sequence(X, 2)
    (b,) = [b for b in seq if b.weight == 2]
    assert (b.left.gen, b.right.gen) == (1, 0)
    assert expand(b, X) == parse_word("x2^-1 x1^-1 x2 x1", X)


def test_weight_three_expansion_literal():
    seq = basic_sequence(X, 3)
    b = next(b for b in seq if b.weight == 3)
    assert b.label(X) == "[[x2, x1], x1]"
    assert expand(b, X) == parse_word("[[x2,x1],x1]", X)


def test_counts_rank_two_up_to_seven():
    assert [counts_by_weight(basic_sequence(X, 7))[n] for n in range(1, 8)] == [2, 1, 2, 3, 6, 9, 18]


@pytest.mark.parametrize("q", [1, 2, 3])
def test_three_way_count_agreement(q):
    top = 7 if q < 3 else 6
    counts = counts_by_weight(basic_sequence(q, top))
    for n in range(1, top + 1):
        w = witt_number(q, n)
        assert counts.get(n, 0) == w == len(lyndon_words(q, n)) == necklace_count(q, n)


def test_witt_examples():
    assert witt_number(2, 1) == 2
    assert witt_number(2, 6) == 9
    assert witt_number(3, 2) == 3
    with pytest.raises(ValueError):
        witt_number(0, 3)


@pytest.mark.parametrize("q,top", [(2, 8), (3, 5)])
def test_sequence_conditions(q, top):
    seq = basic_sequence(q, top)
    assert [b.index for b in seq] == list(range(1, len(seq) + 1))
    weights = [b.weight for b in seq]
    assert weights == sorted(weights)
    for b in seq:
        if b.is_leaf:
            assert b.weight == 1
            continue
        assert b.weight == b.left.weight + b.right.weight
        assert b.right.index < b.left.index
        if not b.left.is_leaf:
            assert b.left.right.index <= b.right.index


def test_no_duplicates_and_canonical_order():
    seq = basic_sequence(2, 6)
    trees = [b.tree() for b in seq]
    assert len(set(trees)) == len(trees)
    for n in range(2, 7):
        layer = [b for b in seq if b.weight == n]
        keys = [(b.left.index, b.right.index) for b in layer]
        assert keys == sorted(keys)


def test_budget_cap():
    with pytest.raises(BudgetExceededError):
        basic_sequence(2, 12, max_count=100)


def test_basic_commutators_have_exact_weight_and_are_primitive():
    for b in basic_sequence(X, 5):
        w = expand(b, X)
        assert weight_of(w, 6) == b.weight
        assert labute_hypothesis(w, 6).primitive
