import math
import random

import pytest
from hypothesis import given, settings
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from conftest import AT, random_word, words
from nilquot.basic import witt_number
from nilquot.errors import AlphabetMismatchError, BudgetExceededError
from nilquot.fixtures import load_fixture
from nilquot.nq import Budget, collect, image, nilpotent_quotient
from nilquot.presentation import Presentation
from nilquot.words import Alphabet, commutator, parse_word

AB = Alphabet(("a", "b"))


def factors(np):
    return [np.layer_invariants(k) for k in range(1, np.nilpotency_class + 1)]


def quotient_order(np):
    return math.prod(np.orders) if all(np.orders) else math.inf


def sympy_order(pres):
    F, *gens = free_group(",".join(pres.alphabet.names))
    rels = []
    for r in pres.relators:
        w = F.identity
        for g, s in r.letters:
            w = w * gens[g] ** s
        rels.append(w)
    return FpGroup(F, rels).order()


@pytest.mark.parametrize("q,top", [(1, 4), (2, 6), (3, 4)])
def test_free_groups_witt_ranks(q, top):
    alph = Alphabet([f"x{i}" for i in range(q)])
    np = nilpotent_quotient(Presentation(alph), top)
    assert factors(np) == [(witt_number(q, n), []) for n in range(1, top + 1)]


# relators, order of the largest nilpotent quotient, nilpotency class of that quotient
FINITE = {
    "quaternion": (["a^4", "a^2 b^-2", "b^-1 a b a"], 8, 2),
    "dihedral16": (["a^8", "b^2", "(a b)^2"], 16, 3),
    "z2xz4": (["a^2", "b^4", "[a,b]"], 8, 1),
    "heisenberg-mod3": (["a^3", "b^3", "[a,b,a]", "[a,b,b]"], 27, 2),
    "dihedral24": (["a^12", "b^2", "(a b)^2"], 8, 2),   # not nilpotent; the 3-part dies
    "s3": (["a^2", "b^3", "(a b)^2"], 2, 1),
}
NILPOTENT = {"quaternion", "dihedral16", "z2xz4", "heisenberg-mod3"}


@pytest.mark.parametrize("name", sorted(FINITE))
def test_finite_groups(name):
    rels, expected_top, nil_class = FINITE[name]
    pres = Presentation(AB, rels)
    for c in range(1, nil_class + 3):
        np = nilpotent_quotient(pres, c)
        np.check_consistency(full=True)
        if c >= nil_class:
            assert quotient_order(np) == expected_top
        else:
            assert quotient_order(np) < expected_top
    if name in NILPOTENT:
        # a finite nilpotent group is its own stable nilpotent quotient
        assert expected_top == sympy_order(pres)


def test_reference_infinite_groups():
    assert factors(nilpotent_quotient(Presentation(AT, ["[a,t]"]), 3)) == [(2, []), (0, []), (0, [])]
    heis = nilpotent_quotient(Presentation(AT, ["[a,t,a]", "[a,t,t]"]), 4)
    assert factors(heis) == [(2, []), (1, []), (0, []), (0, [])]
    bs = nilpotent_quotient(Presentation(AT, ["a^t a^-2"]), 4)
    assert factors(bs) == [(1, []), (0, []), (0, []), (0, [])]
    dinf = nilpotent_quotient(Presentation(AB, ["a^2", "b^2"]), 4)
    assert factors(dinf) == [(0, [2, 2]), (0, [2]), (0, [2]), (0, [2])]


def test_hydra_two_weight_three():
    np = nilpotent_quotient(load_fixture("hydra-k2"), 3)
    assert np.layer_invariants(3) == (1, [])
    # the surviving weight-3 class is [[a,t],a]; [[a,t],t] is killed
    assert any(np.image(parse_word("[a,t,a]", AT)))
    assert not any(np.image(parse_word("[a,t,t]", AT)))


def test_theorem7_class_six(theorem7):
    np = nilpotent_quotient(theorem7, 6)
    assert factors(np) == [(2, []), (1, []), (1, []), (1, []), (1, []), (0, [2])]
    v = np.image(parse_word("[a,t,a,a,t,a]", AT))
    assert any(v) and not any(np.power(v, 2))
    letters = [(g, x) for g, x in enumerate(v) if x]
    assert np.collect(letters * 2) == tuple([0] * np.ngens)


def test_image_basic_examples(free2):
    np = nilpotent_quotient(free2, 2)
    assert np.image(parse_word("[a,t]", AT)) == (0, 0, 1)
    assert image(np, AT.identity()) == (0, 0, 0)
    assert collect(np, [(1, 1)]) == (0, 1, 0)
    assert collect(np, [(2, 1), (2, -1)]) == (0, 0, 0)
    with pytest.raises(AlphabetMismatchError):
        np.image(AB.gen("a"))


def test_structure_invariants():
    for name in ("theorem7", "hydra-k3", "example1-simplest", "free2"):
        np = nilpotent_quotient(load_fixture(name), 5)
        assert np.weights == sorted(np.weights)
        for i, table in enumerate(np.conj):
            for j, word in table.items():
                assert j > i
                assert word[0] == (j, 1)
                for g, _ in word[1:]:
                    assert g > j and np.weights[g] >= np.weights[i] + np.weights[j]
        for g, m in enumerate(np.orders):
            if m:
                assert m >= 2
                assert all(h > g for h, _ in np.powers[g])
        np.check_relators()
        np.check_consistency(full=True)


@pytest.mark.parametrize("name", ["theorem7", "hydra-k2", "example2-simple", "central-k3"])
def test_functoriality_of_class(name):
    pres = load_fixture(name)
    rng = random.Random(7)
    samples = [random_word(rng, max_len=10) for _ in range(30)]
    for c in range(1, 5):
        small = nilpotent_quotient(pres, c)
        big = nilpotent_quotient(pres, c + 1)
        assert factors(big)[:c] == factors(small)
        n = small.ngens
        for w in samples:
            assert big.image(w)[:n] == small.image(w)


def test_pruned_and_full_consistency_agree():
    for pres in (load_fixture("theorem7"), Presentation(AB, ["a^4", "b^4", "[a,b]^2"])):
        for c in range(1, 6):
            np = nilpotent_quotient(pres, c)
            full = list(np.consistency_pairs())
            assert all(l == r for _, l, r in full)
            assert len(list(np.consistency_pairs(c))) <= len(full)


def test_exponent_ranges():
    np = nilpotent_quotient(Presentation(AB, ["a^4", "b^6", "[a,b]^2"]), 4)
    rng = random.Random(3)
    for _ in range(50):
        v = np.image(random_word(rng, AB, 12))
        for x, m in zip(v, np.orders):
            assert 0 <= x < m if m else True


_D6 = {}


def _d6():
    if not _D6:
        _D6["np"] = nilpotent_quotient(load_fixture("theorem7"), 6)
    return _D6["np"]


@settings(max_examples=40)
@given(words(max_len=8), words(max_len=8))
def test_homomorphism_law(u, v):
    np = _d6()
    assert np.image(u * v) == np.multiply(np.image(u), np.image(v))
    assert np.image(u.inverse()) == np.inverse(np.image(u))


@settings(max_examples=40)
@given(words(max_len=8), words(max_len=6))
def test_conjugation_covariance(w, g):
    np = _d6()
    assert np.image(w ^ g) == np.conjugate(np.image(w), np.image(g))
    assert np.image(commutator(w, g)) == np.commutator(np.image(w), np.image(g))


def test_generator_words_map_to_generators():
    np = _d6()
    for g in range(np.ngens):
        unit = tuple(int(i == g) for i in range(np.ngens))
        assert np.image(np.generator_word(g)) == unit


def test_budgets():
    with pytest.raises(BudgetExceededError):
        nilpotent_quotient(Presentation(AT), 5, Budget(max_class=4))
    with pytest.raises(BudgetExceededError):
        nilpotent_quotient(Presentation(AT), 6, Budget(max_gens=10))
    with pytest.raises(ValueError):
        nilpotent_quotient(Presentation(AT), 0)


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("NILQUOT_MAX_CLASS", "3")
    with pytest.raises(BudgetExceededError):
        nilpotent_quotient(Presentation(AT), 4)
