"""Hydra groups ``G(k) = <a, t | [a, t, ..., t] = 1>`` (k copies of t).

The normal closure of ``a`` is free on ``a_0 = a`` and
``a_i = [a_{i-1}, t]`` (``i < k``), and conjugation by ``t`` acts by
``a_i -> a_i a_{i+1}`` with ``a_{k-1}`` fixed.  Every element is then
uniquely ``h t^n`` with ``h`` a reduced word in the ``a_i``, which solves
the word problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import AlphabetMismatchError
from .words import Alphabet, Word, left_normed_commutator

AT = Alphabet(("a", "t"))


@lru_cache(maxsize=None)
def h_alphabet(k: int) -> Alphabet:
    """The free basis ``a_0, ..., a_{k-1}`` of the normal closure of ``a``."""
    _check_k(k)
    return Alphabet(tuple(f"a_{i}" for i in range(k)))


@lru_cache(maxsize=None)
def c_alphabet(k: int) -> Alphabet:
    _check_k(k)
    return Alphabet(tuple(f"c_{j}" for j in range(1, k + 1)))


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


def apply_automorphism(table: dict[int, Word], w: Word) -> Word:
    out = w.alphabet.identity()
    for g, s in w.letters:
        out = out * (table[g] if s > 0 else table[g].inverse())
    return out


@lru_cache(maxsize=None)
def _action(k: int, direction: int) -> tuple[Word, ...]:
    alph = h_alphabet(k)
    gens = alph.gens()
    if direction == -1:
        return tuple(gens[i] * gens[i + 1] if i + 1 < k else gens[i] for i in range(k))
    # inverse: psi(a_i) = a_i psi(a_{i+1})^-1, filled in from the top
    images: list[Word] = [alph.identity()] * k
    for i in reversed(range(k)):
        images[i] = gens[i] * images[i + 1].inverse() if i + 1 < k else gens[i]
    return tuple(images)


def t_action(k: int, direction: int) -> dict[int, Word]:
    """Automorphism of ``F(a_0..a_{k-1})`` induced by the t-action.

    ``direction == -1`` is ``x -> t^-1 x t``; ``+1`` is ``x -> t x t^-1``.
    """
    _check_k(k)
    if direction not in (-1, 1):
        raise ValueError("direction must be -1 or +1")
    table = dict(enumerate(_action(k, direction)))
    if direction == 1:
        forward = dict(enumerate(_action(k, -1)))
        for i in range(k):
            if apply_automorphism(forward, table[i]) != h_alphabet(k).gen(i):
                from .errors import InternalInconsistencyError
                raise InternalInconsistencyError(f"inverse t-action fails on a_{i}")
    return table


class _ConjugateCache:
    """``t^n a_0 t^-n`` for each integer ``n``, built incrementally."""

    def __init__(self, k: int):
        self.k = k
        a0 = h_alphabet(k).gen(0)
        self.pos = [a0]  # pos[m] = t^m a_0 t^-m
        self.neg = [a0]  # neg[m] = t^-m a_0 t^m

    def get(self, n: int) -> Word:
        seq, direction = (self.pos, 1) if n >= 0 else (self.neg, -1)
        table = t_action(self.k, direction)
        while len(seq) <= abs(n):
            seq.append(apply_automorphism(table, seq[-1]))
        return seq[abs(n)]


@lru_cache(maxsize=None)
def _conjugates(k: int) -> _ConjugateCache:
    return _ConjugateCache(k)


@dataclass(frozen=True)
class HydraNormalForm:
    """``h * t^t_exp`` with ``h`` reduced over ``a_0 .. a_{k-1}``."""

    k: int
    h: Word
    t_exp: int

    def is_identity(self) -> bool:
        return self.h.is_identity() and self.t_exp == 0

    def __str__(self) -> str:
        parts = [] if self.h.is_identity() else [str(self.h)]
        if self.t_exp:
            parts.append("t" if self.t_exp == 1 else f"t^{self.t_exp}")
        return " ".join(parts) or "1"

    def to_dict(self) -> dict:
        return {"k": self.k, "h": str(self.h), "h_letters": [[g, s] for g, s in self.h.letters],
                "t_exp": self.t_exp}


def hydra_normal_form(k: int, w: Word) -> HydraNormalForm:
    """The unique ``(h, n)`` with ``w = h t^n`` in ``G(k)``."""
    _check_k(k)
    if w.alphabet != AT:
        raise AlphabetMismatchError(w.alphabet, AT)
    conj = _conjugates(k)
    h = h_alphabet(k).identity()
    n = 0
    for g, s in w.letters:
        if g == 1:
            n += s
        else:
            # h t^n a^s = h (t^n a t^-n)^s t^n
            x = conj.get(n)
            h = h * (x if s > 0 else x.inverse())
    return HydraNormalForm(k, h, n)


def hydra_is_trivial(k: int, w: Word) -> bool:
    return hydra_normal_form(k, w).is_identity()


def compose(u: HydraNormalForm, v: HydraNormalForm) -> HydraNormalForm:
    """Normal form of the product ``u v``: ``h t^n h' t^m = h (t^n h' t^-n) t^(n+m)``."""
    if u.k != v.k:
        raise ValueError("normal forms for different k")
    table = t_action(u.k, 1 if u.t_exp > 0 else -1)
    moved = v.h
    for _ in range(abs(u.t_exp)):
        moved = apply_automorphism(table, moved)
    return HydraNormalForm(u.k, u.h * moved, u.t_exp + v.t_exp)


def a_word(i: int) -> Word:
    """``[a, t, ..., t]`` with ``i`` copies of ``t``: the element ``a_i``."""
    a, t = AT.gens()
    return left_normed_commutator([a] + [t] * i)


def hydra_relator(k: int) -> Word:
    _check_k(k)
    return a_word(k)


def reconstruct(nf: HydraNormalForm) -> Word:
    """A word over ``{a, t}`` representing ``h t^n``."""
    out = AT.identity()
    for g, s in nf.h.letters:
        x = a_word(g)
        out = out * (x if s > 0 else x.inverse())
    return out * AT.gen("t") ** nf.t_exp


def example1_relator(k: int, l: int) -> Word:
    """``[a, t^(k-2), e^(l)]`` with ``e = [a, t^(k-1)]`` (left-normed)."""
    if k < 2 or l < 1:
        raise ValueError("need k >= 2 and l >= 1")
    a, t = AT.gens()
    e = a_word(k - 1)
    return left_normed_commutator([a] + [t] * (k - 2) + [e] * l)


def rewrite_in_c(k: int, l: int) -> Word:
    """The Example-1 relator written in ``c_j = [a, t^(j-1)]``, ``j = 1..k``."""
    nf = hydra_normal_form(k, example1_relator(k, l))
    if nf.t_exp:
        from .errors import InternalInconsistencyError
        raise InternalInconsistencyError("relator has nonzero t-exponent")
    # a_{j-1} and c_j are the same element, so only the alphabet changes
    return Word(c_alphabet(k), nf.h.letters)
