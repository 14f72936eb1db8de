"""Hall basic sequences and basic commutators.

The canonical sequence: leaves in alphabet order, then weight by weight;
within a weight, nodes sorted by (index of left, index of right).  A node
``(b_i, b_j)`` is basic iff ``j < i`` and, when ``b_i = (b_k, b_l)``,
``l <= j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExceededError
from .words import Alphabet, Word, commutator

DEFAULT_MAX_COUNT = 200_000


@dataclass(frozen=True)
class BasicCommutator:
    """Leaf (``gen`` set) or node (``left``/``right`` set); ``index`` is 1-based."""

    index: int
    weight: int
    gen: int | None = None
    left: "BasicCommutator | None" = None
    right: "BasicCommutator | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.gen is not None

    def label(self, alphabet: Alphabet) -> str:
        if self.is_leaf:
            return alphabet.names[self.gen]
        return f"[{self.left.label(alphabet)}, {self.right.label(alphabet)}]"

    def tree(self):
        """Nested tuples of generator indices, e.g. ``((1, 0), 0)``."""
        if self.is_leaf:
            return self.gen
        return (self.left.tree(), self.right.tree())


def basic_sequence(alphabet: Alphabet | int, max_weight: int,
                   max_count: int = DEFAULT_MAX_COUNT) -> list[BasicCommutator]:
    """All basic commutators of weight <= ``max_weight``, in sequence order."""
    if isinstance(alphabet, int):
        q = alphabet
    else:
        q = len(alphabet)
    if max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    seq = [BasicCommutator(index=i + 1, weight=1, gen=i) for i in range(q)]
    by_weight = {1: list(seq)}
    for n in range(2, max_weight + 1):
        expected = witt_number(q, n)
        if len(seq) + expected > max_count:
            raise BudgetExceededError(
                f"basic sequence up to weight {n} has more than {max_count} terms")
        pairs = []
        for wl in range(1, n):
            for left in by_weight[wl]:
                for right in by_weight[n - wl]:
                    if right.index >= left.index:
                        continue
                    if not left.is_leaf and left.right.index > right.index:
                        continue
                    pairs.append((left.index, right.index, left, right))
        pairs.sort(key=lambda p: (p[0], p[1]))
        layer = []
        for _, _, left, right in pairs:
            b = BasicCommutator(index=len(seq) + 1, weight=n, left=left, right=right)
            seq.append(b)
            layer.append(b)
        by_weight[n] = layer
    return seq


def expand(bc: BasicCommutator, alphabet: Alphabet) -> Word:
    """The group word of ``bc`` with ``(u, v)`` read as ``[u, v]``."""
    return _expand(bc, alphabet)


@lru_cache(maxsize=65536)
def _expand(bc: BasicCommutator, alphabet: Alphabet) -> Word:
    if bc.is_leaf:
        return alphabet.gen(bc.gen)
    return commutator(_expand(bc.left, alphabet), _expand(bc.right, alphabet))


def _mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def witt_number(q: int, n: int) -> int:
    """Rank of the weight-``n`` layer of the free Lie ring on ``q`` generators."""
    if q < 1 or n < 1:
        raise ValueError("q and n must be positive")
    total = sum(_mobius(d) * q ** (n // d) for d in range(1, n + 1) if n % d == 0)
    assert total % n == 0
    return total // n
