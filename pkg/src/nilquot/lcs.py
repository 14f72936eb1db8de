"""Lower central factors, element orders and identity checks in nilpotent quotients."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BudgetExceededError, NilquotError
from .nq import Budget, NilpotentPresentation, nilpotent_quotient
from .presentation import Presentation
from .words import Word

INFINITE = math.inf


@dataclass(frozen=True)
class AbelianFactorStructure:
    weight: int
    free_rank: int
    torsion: tuple[int, ...]
    pc_gens: int  # weight-k pc generators; can exceed free_rank + len(torsion)

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "0"


def factor_structure(np: NilpotentPresentation, k: int) -> AbelianFactorStructure:
    """Invariants of ``gamma_k / gamma_{k+1}`` in the quotient ``np``."""
    if not 1 <= k <= np.nilpotency_class:
        raise ValueError(f"weight {k} outside 1..{np.nilpotency_class}")
    free, torsion = np.layer_invariants(k)
    return AbelianFactorStructure(k, free, tuple(torsion), len(np.gens_of_weight(k)))


def factor_table(np: NilpotentPresentation) -> list[AbelianFactorStructure]:
    return [factor_structure(np, k) for k in range(1, np.nilpotency_class + 1)]


def vector_order(np: NilpotentPresentation, v: Sequence[int], max_order: int | None = None):
    """Order of a normal-form element; ``INFINITE`` if it has infinite order.

    Walks down the polycyclic series: if the leading generator has infinite
    relative order the element has infinite order, otherwise raising to the
    order of its leading coordinate pushes it strictly deeper.
    """
    order = 1
    v = tuple(v)
    while any(v):
        lead = next(i for i, x in enumerate(v) if x)
        m = np.orders[lead]
        if not m:
            return INFINITE
        d = m // math.gcd(v[lead], m)
        order *= d
        if max_order is not None and order > max_order:
            raise BudgetExceededError(f"element order exceeds {max_order}")
        v = np.power(v, d)
    return order


def element_order(np: NilpotentPresentation, w: Word, max_order: int | None = None):
    return vector_order(np, np.image(w), max_order)


def verify_identity(pres: Presentation, c: int, lhs: Word, rhs: Word,
                    budget: Budget | None = None) -> bool:
    """Whether ``lhs`` and ``rhs`` have equal images in ``G / gamma_{c+1}(G)``."""
    np = nilpotent_quotient(pres, c, budget)
    return np.image(lhs) == np.image(rhs)


def is_power_of_two(n) -> bool:
    return isinstance(n, int) and n >= 1 and n & (n - 1) == 0


@dataclass
class TorsionProbeReport:
    word: str
    orders: list[tuple[int, object]] = field(default_factory=list)
    errors: list[tuple[int, str]] = field(default_factory=list)

    @property
    def all_finite(self) -> bool:
        return bool(self.orders) and all(o is not INFINITE for _, o in self.orders)

    @property
    def power_of_two(self) -> bool:
        """Every sampled order is finite and a power of 2 (and nothing failed)."""
        return self.all_finite and not self.errors and all(is_power_of_two(o) for _, o in self.orders)

    def to_dict(self) -> dict:
        return {
            "word": self.word,
            "orders": [{"class": c, "order": _order_json(o)} for c, o in self.orders],
            "errors": [{"class": c, "error": e} for c, e in self.errors],
            "power_of_two": self.power_of_two,
        }


def _order_json(o):
    return "infinite" if o is INFINITE else o


def torsion_probe(pres: Presentation, w: Word, classes: Iterable[int],
                  budget: Budget | None = None) -> TorsionProbeReport:
    classes = list(classes)
    if not classes:
        raise ValueError("need at least one class")
    report = TorsionProbeReport(str(w))
    for c in classes:
        try:
            np = nilpotent_quotient(pres, c, budget)
            report.orders.append((c, element_order(np, w)))
        except NilquotError as exc:
            report.errors.append((c, str(exc)))
    return report
