import os
import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from nilquot.fixtures import load_fixture
from nilquot.presentation import Presentation
from nilquot.words import Alphabet, Word

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

AT = Alphabet(("a", "t"))


def words(alphabet=AT, max_len=8, min_len=0):
    letters = st.tuples(st.integers(0, len(alphabet) - 1), st.sampled_from((1, -1)))
    return st.lists(letters, min_size=min_len, max_size=max_len).map(lambda ls: Word(alphabet, ls))


def random_word(rng: random.Random, alphabet=AT, max_len=8, min_len=0) -> Word:
    n = rng.randint(min_len, max_len)
    return Word(alphabet, [(rng.randrange(len(alphabet)), rng.choice((1, -1))) for _ in range(n)])


# Sanov: a -> [[1,2],[0,1]], b -> [[1,0],[2,1]] is a faithful representation
# of the free group of rank 2; x_i -> b^-i a b^i extends it to any rank.

def _mat_mul(x, y):
    return ((x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
            (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]))


_A, _AI = ((1, 2), (0, 1)), ((1, -2), (0, 1))
_B, _BI = ((1, 0), (2, 1)), ((1, 0), (-2, 1))
_I = ((1, 0), (0, 1))


def _sanov_gen(i: int, q: int):
    if q == 2:
        return (_A, _AI) if i == 0 else (_B, _BI)
    m, mi = _A, _AI
    for _ in range(i):
        m = _mat_mul(_mat_mul(_BI, m), _B)
        mi = _mat_mul(_mat_mul(_BI, mi), _B)
    return m, mi


def sanov(w: Word):
    q = len(w.alphabet)
    gens = [_sanov_gen(i, q) for i in range(q)]
    m = _I
    for g, s in w.letters:
        m = _mat_mul(m, gens[g][0] if s > 0 else gens[g][1])
    return m


def is_free_identity(w: Word) -> bool:
    return sanov(w) == _I


@pytest.fixture(scope="session")
def theorem7():
    return load_fixture("theorem7")


@pytest.fixture(scope="session")
def free2():
    return Presentation(AT)


# one summary line per acceptance criterion, shown at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
