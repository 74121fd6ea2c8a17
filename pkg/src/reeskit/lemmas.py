"""Combinatorial determinant facts used to certify heights in the staircase family.

A staircase pattern is an r x s integer array P with entries in 0..t: 0 is a
zero entry and q stands for the symbol g_q.  It is valid when

  (1) every entry lies in 0..t,
  (2) the i-th nonzero entry of each column is i,
  (3) the last nonzero entry of each column is t,
  (4) if P[i][j] = q then P[k][j+1] = q for some k > i,

and r >= s.  For such a pattern I_s(M) = (g_1, ..., g_t)^s.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .complexes import det_poly
from .ideal import Ideal
from .poly import QQ, PolyRing, Polynomial


class PatternError(ValueError):
    """A staircase pattern violates one of the clauses (1)-(4)."""

    def __init__(self, clause: int, message: str):
        self.clause = clause  # 0 for the shape requirement r >= s
        super().__init__(f"clause ({clause}): {message}" if clause else message)


def validate_pattern(P, t: int) -> None:
    P = [list(map(int, row)) for row in P]
    r = len(P)
    s = len(P[0]) if r else 0
    if r < s:
        raise PatternError(0, f"need at least as many rows as columns, got {r} x {s}")
    for i, row in enumerate(P):
        if len(row) != s:
            raise PatternError(1, f"row {i + 1} has length {len(row)}")
        for j, v in enumerate(row):
            if not 0 <= v <= t:
                raise PatternError(1, f"entry ({i + 1},{j + 1}) = {v} is not 0 or a symbol 1..{t}")
    for j in range(s):
        nz = [P[i][j] for i in range(r) if P[i][j]]
        if not nz:
            raise PatternError(3, f"column {j + 1} has no nonzero entry")
        for k, v in enumerate(nz, start=1):
            if v != k:
                raise PatternError(2, f"nonzero entry {k} of column {j + 1} is g_{v}, expected g_{k}")
        if nz[-1] != t:
            raise PatternError(3, f"last nonzero entry of column {j + 1} is g_{nz[-1]}, expected g_{t}")
    for j in range(s - 1):
        for i in range(r):
            q = P[i][j]
            if q and not any(P[k][j + 1] == q for k in range(i + 1, r)):
                raise PatternError(4, f"g_{q} at ({i + 1},{j + 1}) has no g_{q} below it in column {j + 2}")


def pattern_matrix(P, g: list) -> list:
    ring = g[0].ring
    return [[g[v - 1] if v else ring.zero() for v in row] for row in P]


def banded_pattern(t: int, cols: int) -> list:
    """Column j carries g_1..g_t in rows j..j+t-1; the N matrix of the middle strands."""
    rows = t + cols - 1
    P = [[0] * cols for _ in range(rows)]
    for j in range(cols):
        for q in range(t):
            P[j + q][j] = q + 1
    return P


def random_staircase_pattern(rng: np.random.Generator, max_rows: int = 7, max_cols: int = 5,
                             max_symbols: int = 3) -> tuple[list, int]:
    """A random valid pattern drawn from rng; returns (P, t)."""
    while True:
        t = int(rng.integers(1, max_symbols + 1))
        s = int(rng.integers(1, max_cols + 1))
        if t + s - 1 > max_rows:
            continue
        pos = [sorted(rng.choice(max_rows, size=t, replace=False).tolist())]
        for _ in range(1, s):
            prev = pos[-1]
            col = []
            for q in range(t):
                lo = prev[q] + 1
                if col:
                    lo = max(lo, col[-1] + 1)
                col.append(lo + int(rng.integers(0, 2)))
            pos.append(col)
        last = max(c[-1] for c in pos)
        if last >= max_rows:
            continue
        r = max(s, last + 1 + int(rng.integers(0, max_rows - last)))
        P = [[0] * s for _ in range(r)]
        for j, col in enumerate(pos):
            for q, i in enumerate(col):
                P[i][j] = q + 1
        return P, t


def maximal_minors(M: list, ring: PolyRing) -> list:
    r, s = len(M), len(M[0])
    out = []
    for rows in combinations(range(r), s):
        m = det_poly([M[i] for i in rows], ring)
        if m.terms:
            out.append(m)
    return out


def staircase_minors_check(P, g: list, budget: dict | None = None) -> bool:
    """I_s(M) == (g_1..g_t)^s for the matrix M obtained by substituting g into P."""
    t = len(g)
    validate_pattern(P, t)
    ring = g[0].ring
    M = pattern_matrix(P, g)
    s = len(P[0])
    lhs = Ideal(maximal_minors(M, ring), ring, budget)
    rhs = Ideal(g, ring, budget).power(s)
    return lhs.equals(rhs)


def symbol_ring(t: int, field=QQ) -> tuple[PolyRing, list]:
    ring = PolyRing([f"g{i + 1}" for i in range(t)], field)
    return ring, [ring.gen(i) for i in range(t)]


# ---------------------------------------------------------------- tridiagonal determinants


@dataclass
class OffDiagCheck:
    size: int
    variant: str  # "PlainCorner" or "ZCorner"
    closed_form: Polynomial
    determinant: Polynomial | None
    matches: bool | None

    def to_dict(self) -> dict:
        return {"size": self.size, "variant": self.variant, "closed_form": self.closed_form.to_str(),
                "determinant": None if self.determinant is None else self.determinant.to_str(),
                "matches": self.matches}


VARIANTS = ("PlainCorner", "ZCorner")


def offdiag_matrix(size: int, variant: str, ring: PolyRing) -> list:
    x, y, z = ring.gen(0), ring.gen(1), ring.gen(2)
    M = [[ring.zero() for _ in range(size)] for _ in range(size)]
    for i in range(size - 1):
        M[i][i + 1] = x
        M[i + 1][i] = y
    if variant == "ZCorner":
        M[size - 1][size - 1] = z
    return M


def offdiag_closed_form(size: int, variant: str, ring: PolyRing) -> Polynomial:
    h = size // 2
    if size % 2 == 0:
        return ring.monomial((h, h, 0), (-1) ** h)
    if variant == "PlainCorner":
        return ring.zero()
    return ring.monomial((h, h, 1), (-1) ** h)


def offdiag_det(size: int, variant: str = "PlainCorner", *, check_limit: int = 8) -> OffDiagCheck:
    """Closed form of the zero-diagonal tridiagonal determinant, checked by expansion when small."""
    if size < 1:
        raise ValueError("size must be at least 1")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    ring = PolyRing(["x", "y", "z"], QQ)
    closed = offdiag_closed_form(size, variant, ring)
    if size > check_limit:
        return OffDiagCheck(size, variant, closed, None, None)
    det = det_poly(offdiag_matrix(size, variant, ring), ring)
    return OffDiagCheck(size, variant, closed, det, det == closed)
