"""Exact rational arithmetic: linear algebra and linear programming.

The linear-algebra half works on small dense matrices. Inputs are sequences of
ints or :class:`fractions.Fraction`; every routine is exact. Vectors handed
back to callers are primitive integer tuples: denominators cleared, entries
coprime. Rationals are represented by ``Fraction`` throughout (lowest terms,
positive denominator are its own invariants).

The LP half is a two-phase primal simplex with Bland's rule. Problems have the
shape: optimize ``objective . x`` over ``{x : A x >= rhs}`` with x free. Free
variables are split x = x+ - x-, each row gets a surplus variable, and rows
that still need one get an artificial for phase 1. The tableau stays integral
throughout (integer Gauss-Jordan pivoting: after a pivot on entry p, every
entry is divided exactly by the previous pivot), with one shared positive
denominator. Arithmetic runs on int64 numpy arrays while a per-pivot bound
rules out overflow, and silently switches to Python big ints otherwise, so
results are exact in all cases. Bland's rule (lowest eligible index enters,
ties in the ratio test broken by lowest basic index) makes every run terminate
and makes the pivot sequence deterministic for a fixed input.
"""

from __future__ import annotations

from dataclasses import dataclass

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

IntVec = tuple[int, ...]


def normalize_ray(v: Sequence) -> IntVec:
    """Scale ``v`` by a positive rational so entries are coprime integers.

    Only positive scaling is applied, so the direction (and the sign of the
    first nonzero entry) is preserved: (2/3, 4/3) -> (1, 2) and
    (0, -5, 10) -> (0, -1, 2). The zero vector has no primitive form.
    """
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("cannot normalize the zero vector")
    return tuple(x // g for x in ints)


def int_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    """Clear denominators row by row (positive scaling; kernel and rank kept)."""
    out = []
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def rank(rows: Iterable[Sequence]) -> int:
    """Rank over the rationals, by fraction-free elimination with gcd trimming."""
    m = int_rows(rows)
    if not m:
        return 0
    nc = len(m[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        a = pr[c]
        for i in range(r + 1, len(m)):
            b = m[i][c]
            if b:
                row = [a * x - b * y for x, y in zip(m[i], pr)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                m[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(m):
            break
    return r


def rref(rows: Iterable[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Fraction: (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    if not m:
        return [], pivots
    nc = len(m[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel_basis(rows: Iterable[Sequence], ncols: int | None = None) -> list[IntVec]:
    """Primitive integer basis of the right null space.

    One vector per free column of the RREF, in column order; each is scaled
    primitive with its first nonzero entry positive, so the result is
    deterministic for a fixed input.
    """
    mat = list(rows)
    if ncols is None:
        if not mat:
            raise ValueError("kernel_basis needs ncols when rows is empty")
        ncols = len(mat[0])
    red, pivots = rref(mat)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        w = normalize_ray(v)
        first = next(x for x in w if x)
        if first < 0:
            w = tuple(-x for x in w)
        basis.append(w)
    return basis


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse of a square nonsingular matrix, as Fraction rows."""
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


_GUARD = 2**62


@dataclass
class LpOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None
    pivots: int = 0


class _Tableau:
    """Integer tableau T with denominator q > 0; the rational tableau is T/q."""

    def __init__(self, rows: list[list[int]]):
        self.q = 1
        arr = np.array(rows, dtype=object)
        biggest = max((abs(int(x)) for x in arr.flat), default=0)
        self.T = arr.astype(np.int64) if biggest < _GUARD else arr

    def pivot(self, r: int, c: int) -> None:
        T = self.T
        piv = int(T[r, c])
        if piv == 0:
            raise RuntimeError("zero pivot")
        if T.dtype == np.int64:
            biggest = int(np.abs(T).max())
            if 2 * biggest * biggest >= 2**63:
                self.T = T = T.astype(object)
        row_r = T[r].copy()
        col_c = T[:, c].copy()
        new = piv * T - np.outer(col_c, row_r)
        new //= self.q
        new[r] = row_r
        if piv < 0:
            # only reachable when driving a zero-valued basic out; keep q > 0
            new = -new
            piv = -piv
        self.T = new
        self.q = piv


def _entering(tab: _Tableau, obj_row: int, allowed: np.ndarray) -> int:
    vals = tab.T[obj_row, :-1]
    pos = np.asarray(vals > 0, dtype=bool) & allowed
    hits = np.flatnonzero(pos)
    return int(hits[0]) if hits.size else -1


def _leaving(tab: _Tableau, col: int, nrows: int, basis: list[int]) -> int:
    # min b_i / a_i over a_i > 0, ties broken by smallest basic index (Bland)
    T = tab.T
    best = -1
    best_b = best_a = 0
    for i in range(nrows):
        a = int(T[i, col])
        if a <= 0:
            continue
        b = int(T[i, -1])
        if best == -1:
            best, best_b, best_a = i, b, a
            continue
        diff = b * best_a - best_b * a
        if diff < 0 or (diff == 0 and basis[i] < basis[best]):
            best, best_b, best_a = i, b, a
    return best


def _run(tab: _Tableau, obj_row: int, allowed: np.ndarray, nrows: int,
         basis: list[int]) -> tuple[str, int]:
    steps = 0
    while True:
        col = _entering(tab, obj_row, allowed)
        if col < 0:
            return "optimal", steps
        row = _leaving(tab, col, nrows, basis)
        if row < 0:
            return "unbounded", steps
        tab.pivot(row, col)
        basis[row] = col
        steps += 1
        if steps > 2_000_000:
            raise RuntimeError("simplex exceeded pivot cap (cycling guard)")


def solve_lp(constraints: Sequence[Sequence], rhs: Sequence,
             objective: Sequence, sense: str = "max") -> LpOutcome:
    """Exact optimum of objective . x subject to A x >= rhs, x free."""
    if sense not in ("max", "min"):
        raise ValueError(f"sense must be 'max' or 'min', got {sense!r}")
    m = len(constraints)
    d = len(objective)
    if len(rhs) != m:
        raise ValueError("rhs length does not match constraint count")
    for row in constraints:
        if len(row) != d:
            raise ValueError("constraint row length does not match objective")

    scaled = int_rows([list(row) + [b] for row, b in zip(constraints, rhs)])
    obj = int_rows([list(objective)])[0] if d else []
    if sense == "min":
        obj = [-x for x in obj]

    base = 2 * d + m  # x+ columns, x- columns, surplus columns
    art_col: dict[int, int] = {}
    for i, srow in enumerate(scaled):
        if srow[-1] > 0:
            art_col[i] = base + len(art_col)
    ncols = base + len(art_col) + 1

    rows: list[list[int]] = []
    for i, srow in enumerate(scaled):
        a, b = srow[:-1], srow[-1]
        sgn = 1 if b > 0 else -1  # negated rows get a +1 surplus, usable as basis
        row = [sgn * x for x in a] + [-sgn * x for x in a] + [0] * (ncols - 2 * d - 1) + [sgn * b]
        row[2 * d + i] = -sgn
        if i in art_col:
            row[art_col[i]] = 1
        rows.append(row)
    rows.append(obj + [-x for x in obj] + [0] * (ncols - 2 * d - 1) + [0])
    basis = [art_col.get(i, 2 * d + i) for i in range(m)]

    total_steps = 0
    if art_col:
        # phase-1 objective row: sum of the artificial rows tracks the
        # total artificial value; feasible exactly when it reaches zero
        rows.append([sum(rows[i][j] for i in art_col) for j in range(ncols)])
    tab = _Tableau(rows)
    allowed = np.zeros(ncols - 1, dtype=bool)
    allowed[:base] = True

    if art_col:
        status, steps = _run(tab, m + 1, allowed, m, basis)
        total_steps += steps
        if status != "optimal":
            raise RuntimeError("phase 1 cannot be unbounded")
        if int(tab.T[m + 1, -1]) != 0:
            return LpOutcome("infeasible", pivots=total_steps)
        for i in range(m):
            if basis[i] >= base:  # artificial stuck at level zero
                assert int(tab.T[i, -1]) == 0
                j = next((j for j in range(base) if tab.T[i, j] != 0), None)
                if j is not None:
                    tab.pivot(i, j)
                    basis[i] = j
                    total_steps += 1
                # else: the row reduced to 0 = 0 and never pivots again
        tab.T = tab.T[: m + 1]

    status, steps = _run(tab, m, allowed, m, basis)
    total_steps += steps
    if status == "unbounded":
        return LpOutcome("unbounded", pivots=total_steps)

    x = [Fraction(0)] * d
    q = tab.q
    for i in range(m):
        v = basis[i]
        if v < d:
            x[v] += Fraction(int(tab.T[i, -1]), q)
        elif v < 2 * d:
            x[v - d] -= Fraction(int(tab.T[i, -1]), q)
    value = sum((Fraction(c) * xi for c, xi in zip(objective, x)), Fraction(0))
    return LpOutcome("optimal", value=value, point=tuple(x), pivots=total_steps)


def conic_combination_exists(gens: Sequence[Sequence], target: Sequence) -> bool:
    """Whether target is a nonnegative rational combination of gens (exact).

    Pure phase-1 feasibility on ``sum_g lam_g g = target, lam >= 0``.
    """
    d = len(target)
    if not gens:
        return all(x == 0 for x in target)
    scaled = int_rows([[g[k] for g in gens] + [target[k]] for k in range(d)])
    scaled = [row for row in scaled if any(row)]
    for row in scaled:
        if not any(row[:-1]) and row[-1]:
            return False
    if not scaled:
        return True
    n = len(gens)
    m = len(scaled)
    ncols = n + m + 1
    rows = []
    for i, srow in enumerate(scaled):
        sgn = -1 if srow[-1] < 0 else 1
        row = [sgn * x for x in srow[:-1]] + [0] * m + [sgn * srow[-1]]
        row[n + i] = 1
        rows.append(row)
    rows.append([sum(r[j] for r in rows) for j in range(ncols)])
    tab = _Tableau(rows)
    allowed = np.zeros(ncols - 1, dtype=bool)
    allowed[:n] = True
    basis = [n + i for i in range(m)]
    status, _ = _run(tab, m, allowed, m, basis)
    if status != "optimal":
        raise RuntimeError("phase 1 cannot be unbounded")
    return int(tab.T[m, -1]) == 0
