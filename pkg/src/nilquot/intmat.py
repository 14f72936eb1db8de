"""Exact integer Hermite and Smith normal forms on lists of Python ints."""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class EchelonLattice:
    """Row lattice in Z^ncols kept in reduced row echelon (Hermite) form.

    Rows are added one at a time; ``rows`` maps pivot column to its row.
    Pivots are positive and entries above a pivot lie in ``[0, pivot)``.
    """

    def __init__(self, ncols: int, max_bits: int | None = None):
        self.ncols = ncols
        self.rows: dict[int, list[int]] = {}
        self.max_bits = max_bits

    def add(self, row: Sequence[int]) -> None:
        v = list(row)
        if len(v) != self.ncols:
            raise ValueError("row length mismatch")
        col = _lead(v, 0)
        while col is not None:
            piv = self.rows.get(col)
            if piv is None:
                if v[col] < 0:
                    v = [-x for x in v]
                self.rows[col] = v
                self._reduce_above(col)
                return
            a, b = piv[col], v[col]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, piv)]
            else:
                g, s, t = xgcd(a, b)
                new_piv = [s * y + t * x for x, y in zip(v, piv)]
                v = [(a // g) * x - (b // g) * y for x, y in zip(v, piv)]
                self.rows[col] = new_piv
                self._check_bits(new_piv)
                self._reduce_above(col)
            col = _lead(v, col)

    def _check_bits(self, row: list[int]) -> None:
        if self.max_bits is None:
            return
        for x in row:
            if x.bit_length() > self.max_bits:
                from .errors import BudgetExceededError
                raise BudgetExceededError(
                    f"matrix entry exceeds {self.max_bits} bits during Hermite reduction")

    def _reduce_above(self, col: int) -> None:
        # reduce the new pivot row by later pivots, then earlier rows by it
        row = self.rows[col]
        for c in sorted(self.rows):
            if c <= col:
                continue
            p = self.rows[c]
            q = row[c] // p[c]
            if q:
                for k in range(c, self.ncols):
                    row[k] -= q * p[k]
        for c, r in self.rows.items():
            if c >= col:
                continue
            q = r[col] // row[col]
            if q:
                for k in range(col, self.ncols):
                    r[k] -= q * row[k]
        self._check_bits(row)

    def normalize(self) -> None:
        """Full reduction of every row against every later pivot."""
        for col in sorted(self.rows, reverse=True):
            self._reduce_above(col)

    def matrix(self) -> Matrix:
        return [list(self.rows[c]) for c in sorted(self.rows)]


def _lead(v: list[int], start: int) -> int | None:
    for i in range(start, len(v)):
        if v[i]:
            return i
    return None


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Row-style reduced Hermite normal form (zero rows dropped)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    lat = EchelonLattice(ncols)
    for r in rows:
        lat.add(r)
    lat.normalize()
    return lat.matrix()


def _elimination(a: int, b: int) -> tuple[int, int, int, int]:
    # unimodular [[s, x], [p, q]] sending (a, b) to (g, 0)
    if b % a == 0:
        return 1, 0, -(b // a), 1
    g, s, x = xgcd(a, b)
    return s, x, -b // g, a // g


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` diagonal, d1 | d2 | ...

    ``U`` and ``V`` are unimodular.  Works for any shape, including empty.
    """
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = _identity(rows)
    v = _identity(cols)

    def row_combine(i, j, s, t, p, q):
        # row_i, row_j <- s*row_i + t*row_j, p*row_i + q*row_j
        for mat in (a, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [s * x + t * y for x, y in zip(ri, rj)]
            mat[j] = [p * x + q * y for x, y in zip(ri, rj)]

    def col_combine(i, j, s, t, p, q):
        for mat in (a, v):
            for r in mat:
                x, y = r[i], r[j]
                r[i], r[j] = s * x + t * y, p * x + q * y

    def swap_rows(i, j):
        for mat in (a, u):
            mat[i], mat[j] = mat[j], mat[i]

    def swap_cols(i, j):
        for mat in (a, v):
            for r in mat:
                r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(rows, cols):
        # choose the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    row_combine(t, i, *_elimination(a[t][t], a[i][t]))
            for j in range(t + 1, cols):
                if a[t][j]:
                    col_combine(t, j, *_elimination(a[t][t], a[t][j]))
                    done = False
            if done and all(a[i][t] == 0 for i in range(t + 1, rows)):
                # enforce divisibility of the remaining block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if a[i][j] % a[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                # add the offending row to row t and repeat
                u[t] = [x + y for x, y in zip(u[t], u[bad])]
                a[t] = [x + y for x, y in zip(a[t], a[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form."""
    d, _, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def abelian_invariants(relations: Sequence[Sequence[int]], ngens: int) -> tuple[int, list[int]]:
    """``(free_rank, torsion)`` of ``Z^ngens / rowspan(relations)``."""
    rel = [list(r) for r in relations if any(r)]
    if not rel or ngens == 0:
        return ngens, []
    inv = invariant_factors(rel)
    return ngens - len(inv), [d for d in inv if d > 1]
