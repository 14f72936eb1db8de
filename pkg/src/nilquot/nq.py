"""Nilpotent quotients of finitely presented groups.

``nilpotent_quotient(pres, c)`` returns a consistent weighted polycyclic
presentation of ``G / gamma_{c+1}(G)``.  Generators are ordered by weight;
a generator of weight 1 is the image of a source generator, and a generator
``a_k`` of weight ``w > 1`` is defined as ``[a_i, a_j]`` with ``w(a_i) = 1``,
``w(a_j) = w - 1``, i.e. by the relation ``a_j^(a_i) = a_j a_k^-1``.

Each class step adds one central variable ("tail") to every relation that
is not a definition, collects all consistency test words and every relator,
and takes the Hermite form of the resulting integer relations among the
tails.  Tails not eliminated become the generators of the new layer.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BudgetExceededError, InternalInconsistencyError
from .intmat import EchelonLattice, abelian_invariants
from .presentation import Presentation
from .words import Word

Syllables = tuple[tuple[int, int], ...]
_SMALL_POWER = 8
ExponentVector = tuple[int, ...]


@dataclass(frozen=True)
class Budget:
    max_class: int = 40
    max_gens: int = 2000
    max_bits: int = 4096

    @classmethod
    def from_env(cls) -> Budget:
        env = os.environ
        return cls(
            max_class=int(env.get("NILQUOT_MAX_CLASS", cls.max_class)),
            max_gens=int(env.get("NILQUOT_MAX_GENS", cls.max_gens)),
            max_bits=int(env.get("NILQUOT_MAX_BITS", cls.max_bits)),
        )


def _inverse_word(w: Syllables) -> Syllables:
    return tuple((g, -e) for g, e in reversed(w))


def _vector_word(v: Sequence[int]) -> Syllables:
    return tuple((g, e) for g, e in enumerate(v) if e)


class Collector:
    """Collection from the left in a polycyclic presentation.

    ``orders[g] == 0`` marks infinite relative order; ``powers[g]`` is the
    word for ``a_g^orders[g]``; ``conj[i][j]`` / ``conj_inv[i][j]`` are the
    words for ``a_j^(a_i)`` / ``a_j^(a_i^-1)`` (``j > i``), stored only when
    different from ``a_j``.  All words are syllable tuples ``(gen, exp)``.
    """

    def __init__(self, weights, orders, powers, conj, conj_inv):
        self.n = len(weights)
        self.weights = list(weights)
        self.orders = list(orders)
        self.powers = list(powers)
        self.conj = [dict(d) for d in conj]
        self.conj_inv = [dict(d) for d in conj_inv]
        self._nc_pos: list[list[int]] = [[] for _ in range(self.n)]
        self._nc_neg: list[list[int]] = [[] for _ in range(self.n)]
        for g in range(self.n):
            self._refresh(g)

    def _refresh(self, g: int) -> None:
        self._nc_pos[g] = sorted(self.conj[g])
        self._nc_neg[g] = sorted(self.conj_inv[g])
        # cached images depend on the relations of every later generator
        self._images: dict[tuple[int, int, int], dict[int, ExponentVector]] = {}
        self._power_vecs: dict[int, ExponentVector] = {}

    def zero(self) -> list[int]:
        return [0] * self.n

    # -- core --------------------------------------------------------------

    def mul_syllable(self, e: list[int], g: int, n: int) -> None:
        """In place: ``e <- e * a_g^n``.

        With ``T`` the part of ``e`` above ``g``:
        ``a_g^x T a_g^n = a_g^(x+n) T^(a_g^n)``, and an exponent outside
        ``[0, m)`` is folded with the power relation of ``a_g``.
        """
        if not n:
            return
        m = self.orders[g]
        x = e[g] + n
        q = 0
        if m and not 0 <= x < m:
            q, x = divmod(x, m)
        nc = self._nc_pos[g] if n > 0 else self._nc_neg[g]
        interacting = False
        for j in nc:
            if e[j]:
                interacting = True
                break
        if not interacting and not q:
            e[g] = x
            return
        tail = [0] * (g + 1) + e[g + 1:]
        if interacting:
            tail = self._conjugate_tail(tail, g, n)
        if q:
            r = self.zero()
            self._mul_sparse_power(r, self._power_entry(g), q)
            self._mul_tail(r, tail)
            tail = r
        e[g] = x
        e[g + 1:] = tail[g + 1:]

    def _power_entry(self, g: int):
        entry = self._power_vecs.get(g)
        if entry is None:
            entry = self._power_vecs[g] = self._sparse(self.collect(self.powers[g]))
        return entry

    @staticmethod
    def _sparse(v: ExponentVector):
        # (vector, word, inverse word) for fast repeated multiplication
        w = _vector_word(v)
        return v, w, _inverse_word(w)

    def _mul_sparse_power(self, e: list[int], entry, x: int) -> None:
        v, w, wi = entry
        if abs(x) <= _SMALL_POWER:
            for _ in range(abs(x)):
                self.mul_word(e, w if x > 0 else wi)
        else:
            self.mul_word(e, _vector_word(self.power(v, x)))

    def _mul_tail(self, e: list[int], tail: Sequence[int]) -> None:
        for k, x in enumerate(tail):
            if x:
                self.mul_syllable(e, k, x)

    def _image_table(self, g: int, sign: int, level: int) -> dict:
        """Images of ``a_j`` under conjugation by ``a_g^(sign * 2^level)``,
        for the ``j`` not commuting with ``a_g``."""
        key = (g, sign, level)
        table = self._images.get(key)
        if table is None:
            if level == 0:
                words = self.conj[g] if sign > 0 else self.conj_inv[g]
                table = {j: self._sparse(self.collect(w)) for j, w in words.items()}
            else:
                prev = self._image_table(g, sign, level - 1)
                table = {j: self._sparse(tuple(self._apply_images(prev, entry[0], g)))
                         for j, entry in prev.items()}
            self._images[key] = table
        return table

    def _apply_images(self, table: dict, tail: Sequence[int], g: int) -> list[int]:
        r = self.zero()
        for j in range(g + 1, self.n):
            x = tail[j]
            if not x:
                continue
            entry = table.get(j)
            if entry is None:
                self.mul_syllable(r, j, x)
            else:
                self._mul_sparse_power(r, entry, x)
        return r

    def _conjugate_tail(self, tail: list[int], g: int, n: int) -> list[int]:
        """``tail^(a_g^n)`` for a normal form supported above ``g``."""
        sign = 1 if n > 0 else -1
        n = abs(n)
        level = 0
        while n:
            if n & 1:
                tail = self._apply_images(self._image_table(g, sign, level), tail, g)
            n >>= 1
            level += 1
        return tail

    def mul_word(self, e: list[int], word: Iterable[tuple[int, int]]) -> None:
        for g, x in word:
            self.mul_syllable(e, g, x)

    # -- group operations on exponent vectors -----------------------------

    def collect(self, letters: Iterable[tuple[int, int]]) -> ExponentVector:
        """Normal form of a product of generator powers ``(gen, exponent)``."""
        e = self.zero()
        self.mul_word(e, letters)
        return tuple(e)

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> ExponentVector:
        e = list(u)
        self.mul_word(e, _vector_word(v))
        return tuple(e)

    def inverse(self, v: Sequence[int]) -> ExponentVector:
        return self.collect(_inverse_word(_vector_word(v)))

    def power(self, v: Sequence[int], n: int) -> ExponentVector:
        if n < 0:
            return self.power(self.inverse(v), -n)
        result = tuple(self.zero())
        base = tuple(v)
        while n:
            if n & 1:
                result = self.multiply(result, base)
            n >>= 1
            if n:
                base = self.multiply(base, base)
        return result

    def conjugate(self, v: Sequence[int], by: Sequence[int]) -> ExponentVector:
        return self.multiply(self.multiply(self.inverse(by), v), by)

    def commutator(self, u: Sequence[int], v: Sequence[int]) -> ExponentVector:
        return self.multiply(self.multiply(self.inverse(u), self.inverse(v)),
                             self.multiply(u, v))

    # -- consistency -------------------------------------------------------

    def consistency_pairs(self, max_weight: int | None = None):
        """Yield ``(label, lhs, rhs)`` for the standard consistency test words.

        With ``max_weight`` set, tests whose generator weights sum beyond it
        are skipped (their two sides differ only in commutators of higher
        weight).
        """
        n, w, m = self.n, self.weights, self.orders

        def ok(*gs):
            return max_weight is None or sum(w[g] for g in gs) <= max_weight

        for k in range(n):
            for j in range(k):
                for i in range(j):
                    if not ok(i, j, k):
                        continue
                    lhs = self.collect(((k, 1), (j, 1), (i, 1)))
                    r = list(self.collect(((k, 1),)))
                    self.mul_word(r, _vector_word(self.collect(((j, 1), (i, 1)))))
                    yield ("kji", k, j, i), lhs, tuple(r)
        for j in range(n):
            for i in range(j):
                if m[j] and ok(i, j):
                    lhs = list(self.collect(self.powers[j]))
                    self.mul_syllable(lhs, i, 1)
                    r = list(self.collect(((j, m[j] - 1),)))
                    self.mul_word(r, _vector_word(self.collect(((j, 1), (i, 1)))))
                    yield ("jji", j, i), tuple(lhs), tuple(r)
                if m[i] and ok(i, j):
                    lhs = list(self.collect(((j, 1), (i, m[i] - 1))))
                    self.mul_syllable(lhs, i, 1)
                    r = list(self.collect(((j, 1),)))
                    self.mul_word(r, self.powers[i])
                    yield ("jii", j, i), tuple(lhs), tuple(r)
                if not m[i] and ok(i, j):
                    lhs = list(self.collect(((j, 1), (i, -1))))
                    self.mul_syllable(lhs, i, 1)
                    yield ("j-ii", j, i), tuple(lhs), self.collect(((j, 1),))
        for i in range(n):
            if m[i]:
                lhs = list(self.collect(self.powers[i]))
                self.mul_syllable(lhs, i, 1)
                r = list(self.collect(((i, 1),)))
                self.mul_word(r, self.powers[i])
                yield ("iii", i), tuple(lhs), tuple(r)


@dataclass(frozen=True)
class Definition:
    """``kind == "gen"``: image of source generator ``source``;
    ``kind == "comm"``: ``[a_left, a_right]`` with ``left < right``."""

    kind: str
    source: int | None = None
    left: int | None = None
    right: int | None = None


class NilpotentPresentation(Collector):
    """Consistent weighted pc presentation of ``G / gamma_{c+1}(G)``."""

    def __init__(self, presentation: Presentation, nilpotency_class: int, weights, orders,
                 powers, conj, conj_inv, definitions, epimorphism):
        super().__init__(weights, orders, powers, conj, conj_inv)
        self.presentation = presentation
        self.nilpotency_class = nilpotency_class
        self.definitions = tuple(definitions)
        self.epimorphism = tuple(tuple(v) for v in epimorphism)
        self._epi_words = [_vector_word(v) for v in self.epimorphism]
        self._epi_inv_words = [_vector_word(self.inverse(v)) for v in self.epimorphism]

    @property
    def ngens(self) -> int:
        return self.n

    @property
    def alphabet(self):
        return self.presentation.alphabet

    def gens_of_weight(self, k: int) -> list[int]:
        return [g for g in range(self.n) if self.weights[g] == k]

    def image(self, w: Word) -> ExponentVector:
        """Normal form of the image of a source word."""
        if w.alphabet != self.alphabet:
            from .errors import AlphabetMismatchError
            raise AlphabetMismatchError(w.alphabet, self.alphabet)
        e = self.zero()
        for x, s in w.syllables():
            if s == 1:
                self.mul_word(e, self._epi_words[x])
            elif s == -1:
                self.mul_word(e, self._epi_inv_words[x])
            else:
                self.mul_word(e, _vector_word(self.power(self.epimorphism[x], s)))
        return tuple(e)

    def is_identity(self, v: Sequence[int]) -> bool:
        return not any(v)

    def generator_label(self, g: int) -> str:
        d = self.definitions[g]
        if d.kind == "gen":
            return self.alphabet.names[d.source]
        return f"[{self.generator_label(d.left)}, {self.generator_label(d.right)}]"

    def generator_word(self, g: int) -> Word:
        """A source word whose image is ``a_g``."""
        d = self.definitions[g]
        if d.kind == "gen":
            return self.alphabet.gen(d.source)
        from .words import commutator
        return commutator(self.generator_word(d.left), self.generator_word(d.right))

    def check_consistency(self, full: bool = False) -> None:
        """Run the consistency tests; by default only those of weight <= class."""
        limit = None if full else self.nilpotency_class
        for label, lhs, rhs in self.consistency_pairs(limit):
            if lhs != rhs:
                raise InternalInconsistencyError(f"consistency test {label} fails: {lhs} != {rhs}")

    def check_relators(self) -> None:
        for r in self.presentation.relators:
            if any(self.image(r)):
                raise InternalInconsistencyError(f"relator {r} does not map to the identity")

    def layer_invariants(self, k: int) -> tuple[int, list[int]]:
        """``(free_rank, torsion)`` of the weight-``k`` section."""
        gens = self.gens_of_weight(k)
        pos = {g: i for i, g in enumerate(gens)}
        rows = []
        for g in gens:
            if self.orders[g]:
                row = [0] * len(gens)
                row[pos[g]] = self.orders[g]
                for h, x in self.powers[g]:
                    if h in pos:
                        row[pos[h]] -= x
                rows.append(row)
        return abelian_invariants(rows, len(gens))

    def __repr__(self) -> str:
        return (f"<NilpotentPresentation class {self.nilpotency_class} of {self.presentation!r}: "
                f"{self.n} generators>")


# -- construction ------------------------------------------------------------

def _reduce_layer(vec: list[int], orders: Sequence[int], powers: Sequence[list[int]]) -> list[int]:
    # normal form in a central abelian layer: carry power relations upward
    vec = list(vec)
    for i, d in enumerate(orders):
        if d and not 0 <= vec[i] < d:
            q, vec[i] = divmod(vec[i], d)
            for k, x in enumerate(powers[i]):
                if x:
                    vec[k] += q * x
    return vec


def _abelianization(pres: Presentation, budget: Budget) -> NilpotentPresentation:
    q = len(pres.alphabet)
    lat = EchelonLattice(q, budget.max_bits)
    for r in pres.relators:
        lat.add(r.exponent_sums())
    lat.normalize()
    survivors = [c for c in range(q) if c not in lat.rows or lat.rows[c][c] != 1]
    if len(survivors) > budget.max_gens:
        raise BudgetExceededError(f"more than {budget.max_gens} pc generators")
    pos = {c: i for i, c in enumerate(survivors)}
    s = len(survivors)
    orders = [lat.rows[c][c] if c in lat.rows else 0 for c in survivors]
    layer_powers = []
    for c in survivors:
        vec = [0] * s
        if c in lat.rows:
            for k in range(c + 1, q):
                if lat.rows[c][k]:
                    vec[pos[k]] -= lat.rows[c][k]
        layer_powers.append(vec)
    powers = [_vector_word(_reduce_layer(v, orders, layer_powers)) if orders[i] else ()
              for i, v in enumerate(layer_powers)]
    epi = []
    for x in range(q):
        vec = [0] * s
        if x in pos:
            vec[pos[x]] = 1
        else:
            for k in range(x + 1, q):
                if lat.rows[x][k]:
                    vec[pos[k]] -= lat.rows[x][k]
        epi.append(_reduce_layer(vec, orders, layer_powers))
    defs = [Definition("gen", source=c) for c in survivors]
    return NilpotentPresentation(pres, 1, [1] * s, orders, powers,
                                 [{} for _ in range(s)], [{} for _ in range(s)], defs, epi)


def _split(word: Syllables, n: int) -> tuple[Syllables, dict[int, int]]:
    head = tuple((g, x) for g, x in word if g < n)
    tail: dict[int, int] = {}
    for g, x in word:
        if g >= n:
            tail[g - n] = tail.get(g - n, 0) + x
    return head, tail


def _extend(prev: NilpotentPresentation, c: int, budget: Budget,
            prune: bool = True) -> NilpotentPresentation:
    pres = prev.presentation
    n = prev.n
    w = prev.weights
    def_pairs = {}
    for k, d in enumerate(prev.definitions):
        if d.kind == "comm":
            def_pairs[(d.right, d.left)] = k
    epi_def = {d.source for d in prev.definitions if d.kind == "gen"}

    non_cand: list[tuple] = []
    cand: list[tuple] = []
    for x in range(len(pres.alphabet)):
        if x not in epi_def:
            non_cand.append(("epi", x))
    for g in range(n):
        if prev.orders[g]:
            non_cand.append(("pow", g))
    for i in range(n):
        for j in range(i + 1, n):
            if w[i] + w[j] > c or (j, i) in def_pairs:
                continue
            if w[i] == 1 and w[j] == c - 1:
                cand.append(("conj", j, i))
            else:
                non_cand.append(("conj", j, i))
    tails = non_cand + cand
    m = len(tails)
    col = {t: n + idx for idx, t in enumerate(tails)}
    N = n + m

    # extended presentation with free central tails
    powers = [tuple(prev.powers[g]) + ((col[("pow", g)], 1),) if prev.orders[g] else ()
              for g in range(n)] + [()] * m
    conj: list[dict] = [dict(prev.conj[i]) for i in range(n)] + [{} for _ in range(m)]
    conj_inv: list[dict] = [{} for _ in range(N)]
    for t in tails:
        if t[0] == "conj":
            _, j, i = t
            base = prev.conj[i].get(j, ((j, 1),))
            conj[i][j] = tuple(base) + ((col[t], -1),)
    ext = Collector(w + [c] * m, list(prev.orders) + [0] * m, powers, conj, conj_inv)

    # definitions are exact; their right sides and all inverse conjugates are
    # recomputed in the extension, from the last generator down
    for i in range(n - 1, -1, -1):
        for (j, ii), k in def_pairs.items():
            if ii == i:
                ext.conj[i][j] = _vector_word(ext.collect(((j, 1), (k, -1))))
        ext._refresh(i)
        for j in sorted(ext.conj[i]):
            base = prev.conj_inv[i].get(j, ((j, 1),))
            v = list(ext.collect(tuple(base) + ((i, 1),)))
            expect = [0] * n
            expect[i] = 1
            expect[j] = 1
            if v[:n] != expect:
                raise InternalInconsistencyError(
                    f"inverse conjugate of a_{j} by a_{i} inconsistent below the new layer")
            ext.conj_inv[i][j] = tuple(base) + tuple((t, -v[t]) for t in range(n, N) if v[t])
        ext._refresh(i)

    lattice = EchelonLattice(m, budget.max_bits)

    def add_relation(lhs, rhs, what):
        if lhs[:n] != rhs[:n]:
            raise InternalInconsistencyError(f"{what}: sides differ below the new layer")
        row = [a - b for a, b in zip(lhs[n:], rhs[n:])]
        if any(row):
            lattice.add(row)

    for label, lhs, rhs in ext.consistency_pairs(c if prune else None):
        add_relation(lhs, rhs, f"consistency test {label}")

    epi_ext = []
    for x in range(len(pres.alphabet)):
        v = list(prev.epimorphism[x]) + [0] * m
        if ("epi", x) in col:
            v[col[("epi", x)]] = 1
        epi_ext.append(v)
    epi_words = [_vector_word(v) for v in epi_ext]
    epi_inv_words = [_vector_word(ext.inverse(v)) for v in epi_ext]
    zero = (0,) * N
    for r in pres.relators:
        e = ext.zero()
        for x, s in r.syllables():
            word = epi_words[x] if s > 0 else epi_inv_words[x]
            for _ in range(abs(s)):
                ext.mul_word(e, word)
        add_relation(tuple(e), zero, f"relator {r}")

    lattice.normalize()
    rows = lattice.rows
    survivors = [p for p in range(m) if p not in rows or rows[p][p] != 1]
    for p in survivors:
        if tails[p][0] != "conj" or tails[p] not in cand:
            raise InternalInconsistencyError(f"non-defining tail {tails[p]} survived reduction")
    if n + len(survivors) > budget.max_gens:
        raise BudgetExceededError(f"more than {budget.max_gens} pc generators at class {c}")
    s = len(survivors)
    pos = {p: i for i, p in enumerate(survivors)}
    layer_orders = [rows[p][p] if p in rows else 0 for p in survivors]
    layer_powers = []
    for p in survivors:
        vec = [0] * s
        if p in rows:
            for k in range(p + 1, m):
                if rows[p][k]:
                    vec[pos[k]] -= rows[p][k]
        layer_powers.append(vec)

    def express(tail: dict[int, int]) -> list[int]:
        vec = [0] * s
        for p, x in tail.items():
            if p in pos:
                vec[pos[p]] += x
            else:
                for k in range(p + 1, m):
                    if rows[p][k]:
                        vec[pos[k]] -= x * rows[p][k]
        return _reduce_layer(vec, layer_orders, layer_powers)

    def substitute(word: Syllables) -> Syllables:
        head, tail = _split(word, n)
        vec = express(tail)
        return head + tuple((n + i, x) for i, x in enumerate(vec) if x)

    new_powers = [substitute(ext.powers[g]) if prev.orders[g] else () for g in range(n)]
    for i, p in enumerate(survivors):
        new_powers.append(_vector_word([0] * n + _reduce_layer(layer_powers[i], layer_orders, layer_powers))
                          if layer_orders[i] else ())
    new_conj: list[dict] = [{} for _ in range(n + s)]
    new_conj_inv: list[dict] = [{} for _ in range(n + s)]
    for i in range(n):
        for j, word in ext.conj[i].items():
            nw = substitute(word)
            if nw != ((j, 1),):
                new_conj[i][j] = nw
        for j, word in ext.conj_inv[i].items():
            nw = substitute(word)
            if nw != ((j, 1),):
                new_conj_inv[i][j] = nw
    new_epi = []
    for x in range(len(pres.alphabet)):
        v = epi_ext[x]
        new_epi.append(list(v[:n]) + express({p - n: v[p] for p in range(n, N) if v[p]}))
    defs = list(prev.definitions)
    for p in survivors:
        _, j, i = tails[p]
        defs.append(Definition("comm", left=i, right=j))
    return NilpotentPresentation(pres, c, w + [c] * s, list(prev.orders) + layer_orders,
                                 new_powers, new_conj, new_conj_inv, defs, new_epi)


def nilpotent_quotient(pres: Presentation, c: int, budget: Budget | None = None,
                       verify: bool = True) -> NilpotentPresentation:
    """Consistent weighted pc presentation of ``G / gamma_{c+1}(G)``.

    With ``verify`` set, every inductive step is checked against the
    consistency tests of weight at most its class and against every relator.
    """
    if c < 1:
        raise ValueError("class must be >= 1")
    budget = budget or Budget.from_env()
    if c > budget.max_class:
        raise BudgetExceededError(f"class {c} exceeds the budget of {budget.max_class}")
    return _nq_cached(pres, c, budget, verify)


@lru_cache(maxsize=64)
def _nq_cached(pres: Presentation, c: int, budget: Budget, verify: bool) -> NilpotentPresentation:
    if c == 1:
        result = _abelianization(pres, budget)
    else:
        result = _extend(_nq_cached(pres, c - 1, budget, verify), c, budget)
    if verify:
        result.check_consistency()
        result.check_relators()
    return result


def image(np: NilpotentPresentation, w: Word) -> ExponentVector:
    return np.image(w)


def collect(np: NilpotentPresentation, letters: Iterable[tuple[int, int]]) -> ExponentVector:
    return np.collect(letters)
