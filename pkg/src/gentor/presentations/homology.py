"""Smith normal form over Z and first homology of presentations."""
from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import sympy

from .core import Presentation, exponent_sums


class SmithForm(NamedTuple):
    diagonal: tuple   # nonzero invariant factors d1 | d2 | ...
    free_rank: int    # columns minus rank


class H1(NamedTuple):
    torsion: tuple    # invariant factors > 1
    free_rank: int

    @property
    def order(self):
        """Group order, ``math.inf`` when there is a free part."""
        return math.inf if self.free_rank else math.prod(self.torsion)

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def _smith(M):
    """Diagonalize an integer matrix; returns (diagonal, V) with U M V = D.

    Only the column transform V is tracked. Rows of M span the relation
    lattice, so x -> x V maps it onto the lattice spanned by D's rows.
    """
    A = [list(map(int, row)) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_col(src, dst, q):  # col dst += q * col src
        if q:
            for r in A:
                r[dst] += q * r[src]
            for r in V:
                r[dst] += q * r[src]

    def add_row(src, dst, q):
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]

    diag = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero |entry| in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = A[i][t] // p
                add_row(t, i, -q)
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = A[t][j] // p
                add_col(t, j, -q)
                if A[t][j]:
                    dirty = True
            if not dirty:
                # enforce divisibility against the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest remainder into the pivot position
            best = None
            for i in range(t, rows):
                if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                    best = (abs(A[i][t]), i, t)
            for j in range(t, cols):
                if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
        diag.append(A[t][t])
        t += 1
    return diag, V, cols


def smith_normal_form(M: Sequence[Sequence[int]], cols: int = None) -> SmithForm:
    """Invariant factors of an integer matrix (exact, arbitrary precision).

    ``cols`` is needed only for a matrix with no rows.
    """
    if not M:
        return SmithForm((), cols or 0)
    diag, _, ncols = _smith(M)
    return SmithForm(tuple(diag), ncols - len(diag))


def relation_matrix(P: Presentation) -> list:
    return [exponent_sums(r, len(P.gens)) for r in P.relators]


def homology_h1(P: Presentation) -> H1:
    snf = smith_normal_form(relation_matrix(P), len(P.gens))
    return H1(tuple(d for d in snf.diagonal if d > 1), snf.free_rank)


def h1_order(P: Presentation, w) -> object:
    """Order of the class of the word w in H_1 (``math.inf`` if infinite)."""
    n = len(P.gens)
    v = exponent_sums(w, n)
    M = relation_matrix(P)
    if not M:
        return math.inf if any(v) else 1
    diag, V, _ = _smith(M)
    y = [sum(v[i] * V[i][j] for i in range(n)) for j in range(n)]
    order = 1
    for j, yj in enumerate(y):
        if j < len(diag):
            d = diag[j]
            order = math.lcm(order, d // math.gcd(d, yj))
        elif yj:
            return math.inf
    return order


def abelianization_map(P: Presentation) -> tuple:
    """Images of the generators under H_1 -> Z when H_1 has free rank 1.

    The primitive integer kernel vector of the relation matrix; the sign
    makes the meridian (or else the first nonzero entry) positive.
    """
    n = len(P.gens)
    M = relation_matrix(P)
    if not M:
        if n != 1:
            raise ValueError("free rank is not 1")
        return (1,)
    basis = sympy.Matrix(M).nullspace()
    if len(basis) != 1:
        raise ValueError("free rank is not 1")
    vec = basis[0]
    den = math.lcm(*[sympy.fraction(sympy.nsimplify(x))[1] for x in vec])
    ints = [int(x * den) for x in vec]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    if P.peripheral is not None:
        ref = sum(ints[abs(x) - 1] * (1 if x > 0 else -1) for x in P.mu)
    else:
        ref = next(x for x in ints if x)
    if ref < 0:
        ints = [-x for x in ints]
    return tuple(ints)
