"""Magnus embedding into truncated noncommutative integer power series.

A generator ``x`` maps to ``1 + X``; a word lies in the n-th term of the
lower central series of the free group iff ``embed(w) - 1`` has no terms of
degree below n.  The leading homogeneous part is a Lie polynomial, which
is rewritten in the Lyndon basis by triangular elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Literal

from .errors import CapExceededError, NotLieElementError
from .words import Alphabet, Word

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class TruncatedSeries:
    degree_cap: int
    terms: dict[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree_cap < 1:
            raise ValueError("degree_cap must be >= 1")
        for mono, c in self.terms.items():
            if c == 0 or len(mono) > self.degree_cap:
                raise ValueError(f"invalid term {mono!r}: {c}")

    @classmethod
    def one(cls, degree_cap: int) -> TruncatedSeries:
        return cls(degree_cap, {(): 1})

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        cap = min(self.degree_cap, other.degree_cap)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            room = cap - len(m1)
            if room < 0:
                continue
            for m2, c2 in other.terms.items():
                if len(m2) <= room:
                    m = m1 + m2
                    out[m] = out.get(m, 0) + c1 * c2
        return TruncatedSeries(cap, {m: c for m, c in out.items() if c})

    def homogeneous(self, degree: int) -> dict[Monomial, int]:
        return {m: c for m, c in self.terms.items() if len(m) == degree}

    def lowest_nonconstant_degree(self) -> int | None:
        degrees = [len(m) for m in self.terms if m]
        return min(degrees) if degrees else None

    def is_one(self) -> bool:
        return self.terms == {(): 1}


def _letter_series(gen: int, sign: int, cap: int) -> dict[Monomial, int]:
    if sign > 0:
        return {(): 1, (gen,): 1}
    return {(gen,) * d: (-1) ** d for d in range(cap + 1)}


def embed(w: Word, degree_cap: int) -> TruncatedSeries:
    """Image of ``w`` under ``x -> 1 + X``, truncated above ``degree_cap``."""
    if degree_cap < 1:
        raise ValueError("degree_cap must be >= 1")
    terms: dict[Monomial, int] = {(): 1}
    for g, s in w.letters:
        factor = _letter_series(g, s, degree_cap)
        out: dict[Monomial, int] = {}
        for m1, c1 in terms.items():
            room = degree_cap - len(m1)
            for m2, c2 in factor.items():
                if len(m2) > room:
                    continue
                m = m1 + m2
                out[m] = out.get(m, 0) + c1 * c2
        terms = {m: c for m, c in out.items() if c}
    return TruncatedSeries(degree_cap, terms)


WeightResult = int | Literal["exceeds cap", "identity"]


def weight_of(w: Word, cap: int) -> WeightResult:
    """Largest n with ``w`` in the n-th lower central term, as seen below ``cap``."""
    if w.is_identity():
        return "identity"
    d = embed(w, cap).lowest_nonconstant_degree()
    return "exceeds cap" if d is None else d


# --- Lyndon basis -------------------------------------------------------------

def is_lyndon(word: Monomial) -> bool:
    n = len(word)
    return n > 0 and all(word < word[i:] + word[:i] for i in range(1, n))


@lru_cache(maxsize=None)
def _lyndon_upto(q: int, n: int) -> tuple[Monomial, ...]:
    # Duval's generation algorithm; yields words in lexicographic order.
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == q - 1:
            w.pop()
    return tuple(out)


def lyndon_words(q: int, n: int) -> list[Monomial]:
    """Length-``n`` Lyndon words over ``0..q-1`` in lexicographic order."""
    if q < 1 or n < 1:
        raise ValueError("q and n must be positive")
    return [w for w in _lyndon_upto(q, n) if len(w) == n]


@lru_cache(maxsize=None)
def standard_factorization(word: Monomial) -> tuple[Monomial, Monomial]:
    """``word = u v`` with ``v`` the longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError(f"{word!r} has no proper Lyndon suffix")


@lru_cache(maxsize=None)
def lyndon_bracket(word: Monomial) -> tuple[tuple[Monomial, int], ...]:
    """Expansion of the standard bracketing of a Lyndon word into monomials."""
    if len(word) == 1:
        return ((word, 1),)
    u, v = standard_factorization(word)
    pu, pv = dict(lyndon_bracket(u)), dict(lyndon_bracket(v))
    out: dict[Monomial, int] = {}
    for m1, c1 in pu.items():
        for m2, c2 in pv.items():
            out[m1 + m2] = out.get(m1 + m2, 0) + c1 * c2
            out[m2 + m1] = out.get(m2 + m1, 0) - c1 * c2
    return tuple(sorted((m, c) for m, c in out.items() if c))


def bracket_label(word: Monomial, alphabet: Alphabet | None = None) -> str:
    name = (lambda i: alphabet.names[i]) if alphabet else str
    if len(word) == 1:
        return name(word[0])
    u, v = standard_factorization(word)
    return f"[{bracket_label(u, alphabet)}, {bracket_label(v, alphabet)}]"


@dataclass(frozen=True)
class LieElement:
    weight: int
    coords: dict[Monomial, int]

    def __post_init__(self):
        for word, c in self.coords.items():
            if len(word) != self.weight or c == 0:
                raise ValueError(f"invalid coordinate {word!r}: {c}")


def lie_coordinates(poly: dict[Monomial, int]) -> dict[Monomial, int]:
    """Coordinates of a homogeneous Lie polynomial in the Lyndon bracket basis."""
    rest = {m: c for m, c in poly.items() if c}
    coords: dict[Monomial, int] = {}
    while rest:
        lead = min(rest)
        if not is_lyndon(lead):
            raise NotLieElementError(f"leading monomial {lead!r} is not a Lyndon word")
        c = rest[lead]
        expansion = lyndon_bracket(lead)
        if expansion[0] != (lead, 1):
            raise NotLieElementError(f"bracket of {lead!r} is not triangular")
        coords[lead] = c
        for m, e in expansion:
            v = rest.get(m, 0) - c * e
            if v:
                rest[m] = v
            else:
                rest.pop(m, None)
    return coords


def leading_lie(w: Word, cap: int) -> LieElement:
    """Image of ``w`` in the layer of the lower central series it first lies in."""
    if w.is_identity():
        raise ValueError("the identity has no leading Lie element")
    series = embed(w, cap)
    n = series.lowest_nonconstant_degree()
    if n is None:
        raise CapExceededError(f"word lies beyond degree cap {cap}; raise the cap")
    return LieElement(n, lie_coordinates(series.homogeneous(n)))


@dataclass(frozen=True)
class LabuteReport:
    weight: int
    primitive: bool
    gcd: int


def labute_hypothesis(w: Word, cap: int) -> LabuteReport:
    """Whether the leading Lie element of ``w`` is a non-multiple (gcd 1)."""
    lie = leading_lie(w, cap)
    g = 0
    for c in lie.coords.values():
        g = gcd(g, c)
    return LabuteReport(weight=lie.weight, primitive=g == 1, gcd=g)
