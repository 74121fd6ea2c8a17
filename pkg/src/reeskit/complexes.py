"""Graded free modules, degree-checked maps, multiplication blocks and Koszul strands.

A strand of x-degree k of the Koszul complex on l_1..l_n is a complex of free
modules over S = k[T_0..T_n].  Its t-th module has one block per t-subset J of
the columns, of size the number of x-monomials of degree k - sum(d_J), and
the basis is ordered by J (lexicographically) and then by x-monomial (Lex).
The differential sends e_J * m to sum_s (-1)^s l_{j_s} m e_{J - j_s}
(s counted from 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import flint
import numpy as np

from .interp import eval_poly_batch, grid_points, interpolate_values
from .modlinalg import batch_det, from_nmod_mat, to_nmod_mat
from .poly import PolyRing, Polynomial, PrimeField, monomials_of_degree


class DegreeError(ValueError):
    """A matrix entry has the wrong degree for its position."""


@dataclass(frozen=True)
class GradedFreeModule:
    """The module sum_i S(-degrees[i]); basis element i has degree degrees[i]."""

    degrees: tuple
    labels: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def dual(self) -> "GradedFreeModule":
        return GradedFreeModule(tuple(-d for d in self.degrees), self.labels)


class GradedMap:
    """A degree-zero map domain -> codomain, stored as a codomain x domain matrix."""

    def __init__(self, domain: GradedFreeModule, codomain: GradedFreeModule, entries, ring: PolyRing,
                 check: bool = True):
        self.domain = domain
        self.codomain = codomain
        self.ring = ring
        self.entries = [list(r) for r in entries]
        if len(self.entries) != codomain.rank or any(len(r) != domain.rank for r in self.entries):
            raise ValueError("entry matrix does not match the module ranks")
        self._tensor = None
        if check:
            self.check_degrees()

    @property
    def nrows(self) -> int:
        return self.codomain.rank

    @property
    def ncols(self) -> int:
        return self.domain.rank

    def check_degrees(self) -> None:
        for r, row in enumerate(self.entries):
            for c, e in enumerate(row):
                if e.terms:
                    want = self.domain.degrees[c] - self.codomain.degrees[r]
                    if e.homogeneous_degree() != want:
                        raise DegreeError(f"entry ({r},{c}) should be homogeneous of degree {want}")

    def transpose(self) -> "GradedMap":
        """The dual map Hom(codomain, S) -> Hom(domain, S)."""
        ent = [[self.entries[r][c] for r in range(self.nrows)] for c in range(self.ncols)]
        return GradedMap(self.codomain.dual(), self.domain.dual(), ent, self.ring, check=False)

    def is_zero(self) -> bool:
        return all(not e.terms for row in self.entries for e in row)

    def is_linear(self) -> bool:
        return all(not e.terms or e.homogeneous_degree() == 1 for row in self.entries for e in row)

    def submatrix(self, rows, cols) -> list[list[Polynomial]]:
        return [[self.entries[r][c] for c in cols] for r in rows]

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self o other."""
        if other.nrows != self.ncols:
            raise ValueError("incompatible maps")
        zero = self.ring.zero()
        ent = []
        for r in range(self.nrows):
            row = []
            for c in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a, b = self.entries[r][k], other.entries[k][c]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            ent.append(row)
        return GradedMap(other.domain, self.codomain, ent, self.ring, check=False)

    def tensor(self, p: int) -> np.ndarray:
        """Coefficients (nvars, rows, cols) of a matrix of linear forms mod p."""
        if self._tensor is None or self._tensor[0] != p:
            n = self.ring.nvars
            t = np.zeros((n, self.nrows, self.ncols), dtype=np.int64)
            for r, row in enumerate(self.entries):
                for c, e in enumerate(row):
                    for exps, coef in e.terms.items():
                        if sum(exps) != 1:
                            raise ValueError("tensor() needs linear entries")
                        i = exps.index(1)
                        t[i, r, c] = _residue(coef, p)
            self._tensor = (p, t)
        return self._tensor[1]

    def evaluate(self, points: np.ndarray, p: int, rows=None, cols=None) -> np.ndarray:
        """Values at each point, shape (N, len(rows), len(cols)), mod p."""
        points = np.asarray(points, dtype=np.int64) % p
        rows = list(range(self.nrows)) if rows is None else list(rows)
        cols = list(range(self.ncols)) if cols is None else list(cols)
        if self.is_linear():
            t = self.tensor(p)[:, rows][:, :, cols]
            n, r, c = t.shape
            flat = t.reshape(n, r * c)
            vals = (points @ flat) % p if n else np.zeros((points.shape[0], r * c), dtype=np.int64)
            return vals.reshape(points.shape[0], r, c)
        out = np.zeros((points.shape[0], len(rows), len(cols)), dtype=np.int64)
        for i, r in enumerate(rows):
            for j, c in enumerate(cols):
                e = self.entries[r][c]
                if e.terms:
                    out[:, i, j] = eval_poly_batch(e, points, p)
        return out

    def evaluate_exact(self, point) -> list[list]:
        """Exact values at a rational point."""
        return [[e.evaluate(point) if e.terms else 0 for e in row] for row in self.entries]

    def minor_degree(self, rows, cols) -> int:
        return sum(self.domain.degrees[c] for c in cols) - sum(self.codomain.degrees[r] for r in rows)


def _residue(c, p):
    if isinstance(c, int):
        return c % p
    return Fraction(c).numerator * pow(Fraction(c).denominator, -1, p) % p


# ---------------------------------------------------------------- determinants


def det_poly(rows, ring: PolyRing) -> Polynomial:
    """Fraction-free (Bareiss) determinant of a square polynomial matrix."""
    n = len(rows)
    if n == 0:
        return ring.one()
    a = [list(r) for r in rows]
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not a[k][k].terms:
            swap = next((i for i in range(k + 1, n) if a[i][k].terms), None)
            if swap is None:
                return ring.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pkk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = pkk * a[i][j]
                if aik.terms and a[k][j].terms:
                    num = num - aik * a[k][j]
                a[i][j] = num.exact_div(prev) if k else num
            a[i][k] = ring.zero()
        prev = pkk
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def minor(M: GradedMap, rows, cols, strategy: str = "FractionFree") -> Polynomial:
    """Determinant of the submatrix on ``rows`` x ``cols``."""
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise ValueError("minor needs as many rows as columns")
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ValueError("repeated row or column index")
    if strategy == "FractionFree":
        return det_poly(M.submatrix(rows, cols), M.ring)
    if strategy != "EvalInterpolate":
        raise ValueError(f"unknown strategy {strategy!r}")
    field_ = M.ring.field
    if not isinstance(field_, PrimeField):
        raise ValueError("EvalInterpolate needs a prime field")
    return minors_by_interpolation(M, [rows], cols)[0]


def minors_by_interpolation(M: GradedMap, row_sets, cols) -> list[Polynomial]:
    """Several minors sharing a column set, each homogeneous of known degree."""
    p = M.ring.field.p
    n = M.ring.nvars
    out = []
    cache = {}
    for rows in row_sets:
        deg = M.minor_degree(rows, cols)
        if deg < 0:
            out.append(M.ring.zero())
            continue
        if deg not in cache:
            cache[deg] = grid_points(n, deg, homogeneous=True)[1]
        pts = cache[deg]
        vals = batch_det(M.evaluate(pts, p, rows, cols), p)
        out.append(interpolate_values(vals, M.ring, deg, homogeneous=True))
    return out


# ---------------------------------------------------------------- rank


@dataclass
class RankCertificate:
    """Rank with evidence.

    The lower bound is exact: the minor on ``rows`` x ``cols`` takes the
    nonzero value ``minor_value`` at ``point`` and so is a nonzero
    polynomial.  The upper bound is ``upper_method``: "exhaustive" when every
    (rank+1)-minor was shown to vanish identically, otherwise "monte-carlo"
    with the number of random points tried.
    """

    rank: int
    rows: tuple
    cols: tuple
    point: tuple
    minor_value: object
    upper_method: str
    points_checked: int

    def to_dict(self) -> dict:
        return {"rank": self.rank, "rows": list(self.rows), "cols": list(self.cols),
                "upper_method": self.upper_method, "points_checked": self.points_checked}


def _rank_and_pivots_modp(A: np.ndarray, p: int):
    if A.size == 0:
        return 0, [], []
    R, rank = to_nmod_mat(A, p).rref()
    R = from_nmod_mat(R)
    cols = [int(np.nonzero(R[i])[0][0]) for i in range(rank)]
    Rt, _ = to_nmod_mat(A[:, cols].T, p).rref()
    Rt = from_nmod_mat(Rt)
    rows = [int(np.nonzero(Rt[i])[0][0]) for i in range(rank)]
    return rank, rows, cols


def _rank_and_pivots_qq(A: list[list]):
    r = len(A)
    c = len(A[0]) if r else 0
    if r == 0 or c == 0:
        return 0, [], []

    def q(v):
        v = Fraction(v)
        return flint.fmpq(v.numerator, v.denominator)

    M = flint.fmpq_mat(r, c, [q(v) for row in A for v in row])
    R, rank = M.rref()
    cols = []
    for i in range(rank):
        cols.append(next(j for j in range(c) if R[i, j] != 0))
    Mt = flint.fmpq_mat(len(cols), r, [q(A[i][j]) for j in cols for i in range(r)])
    Rt, _ = Mt.rref()
    rows = [next(j for j in range(r) if Rt[i, j] != 0) for i in range(rank)]
    return rank, rows, cols


def matrix_rank(M: GradedMap, *, rng: np.random.Generator | None = None, points: int = 20,
                paranoid: bool = False, exhaustive_limit: int = 6, minor_budget: int = 20000) -> RankCertificate:
    """Generic rank of a polynomial matrix with a certificate."""
    rng = rng or np.random.default_rng(0)
    field_ = M.ring.field
    n = M.ring.nvars
    if M.nrows == 0 or M.ncols == 0 or M.is_zero():
        return RankCertificate(0, (), (), (), 1, "exhaustive", 0)
    best = None
    if field_.p:
        p = field_.p
        pts = rng.integers(1, p, size=(points, n), dtype=np.int64)
        vals = M.evaluate(pts, p)
        for k in range(points):
            rk, rows, cols = _rank_and_pivots_modp(vals[k], p)
            if best is None or rk > best[0]:
                best = (rk, rows, cols, tuple(int(v) for v in pts[k]))
        rank, rows, cols, pt = best
        sub = vals[[i for i in range(points) if tuple(int(v) for v in pts[i]) == pt][0]][np.ix_(rows, cols)]
        mval = int(batch_det(sub[None], p)[0]) if rank else 1
    else:
        for _ in range(points):
            pt = tuple(int(v) for v in rng.integers(-100, 101, size=n))
            A = M.evaluate_exact(pt)
            rk, rows, cols = _rank_and_pivots_qq(A)
            if best is None or rk > best[0]:
                best = (rk, rows, cols, pt, A)
        rank, rows, cols, pt, A = best
        mval = flint.fmpq_mat(rank, rank, [flint.fmpq(Fraction(A[i][j]).numerator, Fraction(A[i][j]).denominator)
                                           for i in rows for j in cols]).det() if rank else 1
    if rank and mval == 0:
        raise ArithmeticError("rank certificate minor vanished")
    upper = "monte-carlo"
    small = min(M.nrows, M.ncols) <= exhaustive_limit
    if rank == min(M.nrows, M.ncols):
        upper = "exhaustive"
    elif (small or paranoid) and comb(M.nrows, rank + 1) * comb(M.ncols, rank + 1) <= minor_budget:
        if _all_minors_vanish(M, rank + 1, rng):
            upper = "exhaustive"
        else:
            raise ArithmeticError("a (rank+1)-minor is nonzero; Monte Carlo rank was too small")
    return RankCertificate(rank, tuple(rows), tuple(cols), pt, mval, upper, points)


def _all_minors_vanish(M: GradedMap, size: int, rng) -> bool:
    field_ = M.ring.field
    n = M.ring.nvars
    if not field_.p:
        for rows in combinations(range(M.nrows), size):
            for cols in combinations(range(M.ncols), size):
                if det_poly(M.submatrix(rows, cols), M.ring).terms:
                    return False
        return True
    p = field_.p
    for cols in combinations(range(M.ncols), size):
        for rows in combinations(range(M.nrows), size):
            deg = M.minor_degree(rows, cols)
            if deg < 0:
                continue
            pts = grid_points(n, deg, homogeneous=True)[1]
            if np.any(batch_det(M.evaluate(pts, p, rows, cols), p)):
                return False
    return True


# ---------------------------------------------------------------- multiplication blocks


def split_bigraded(f: Polynomial, xcount: int) -> dict:
    """Map x-exponent tuples to their coefficient polynomials in the T-variables."""
    out: dict = {}
    for e, c in f.terms.items():
        xe, te = e[:xcount], e[xcount:]
        out.setdefault(xe, {})[te] = c
    return out


def mult_block(f: Polynomial, target_degree: int, xcount: int, S: PolyRing) -> GradedMap:
    """Matrix of multiplication by f from x-degree (i - q) to x-degree i.

    Rows are the x-monomials of degree i, columns those of degree i - q, both
    in Lex order; entries lie in S.
    """
    if not f.terms:
        raise ValueError("mult_block needs a nonzero polynomial")
    parts = split_bigraded(f, xcount)
    qs = {sum(xe) for xe in parts}
    if len(qs) != 1:
        raise ValueError("f is not homogeneous in the x-variables")
    q = qs.pop()
    if q > target_degree:
        raise ValueError("x-degree of f exceeds the target degree")
    coeffs = {xe: Polynomial(S, dict(te)) for xe, te in parts.items()}
    tdeg = {c.homogeneous_degree() for c in coeffs.values()}
    if len(tdeg) != 1 or None in tdeg:
        raise ValueError("coefficients of f are not homogeneous of a common degree")
    tdeg = tdeg.pop()
    rows = monomials_of_degree(xcount, target_degree)
    cols = monomials_of_degree(xcount, target_degree - q)
    rindex = {m: i for i, m in enumerate(rows)}
    ent = [[S.zero() for _ in cols] for _ in rows]
    for j, m in enumerate(cols):
        for xe, c in coeffs.items():
            mono = tuple(a + b for a, b in zip(m, xe))
            ent[rindex[mono]][j] = c
    dom = GradedFreeModule((tdeg,) * len(cols), tuple(cols))
    cod = GradedFreeModule((0,) * len(rows), tuple(rows))
    return GradedMap(dom, cod, ent, S)


# ---------------------------------------------------------------- Koszul strands


@dataclass
class ComplexStrand:
    """0 -> F_m -> ... -> F_0 with maps[t-1] = alpha_t : F_t -> F_{t-1}."""

    k: int
    column_degrees: tuple
    modules: list
    maps: list
    ring: PolyRing
    _ranks: dict = field(default_factory=dict, repr=False)

    @property
    def m(self) -> int:
        return len(self.maps)

    @property
    def f(self) -> list[int]:
        return [M.rank for M in self.modules]

    def alpha(self, t: int) -> GradedMap:
        return self.maps[t - 1]

    def euler_characteristic(self) -> int:
        return sum((-1) ** t * ft for t, ft in enumerate(self.f))

    def composition_is_zero(self) -> bool:
        for t in range(1, self.m):
            comp = self.maps[t - 1].compose(self.maps[t])
            if not comp.is_zero():
                return False
        return True


def strand_module_ranks(column_degrees, k: int) -> list[int]:
    """Closed-form ranks f_t = sum over t-subsets J of C(k - d_J + n - 1, n - 1)."""
    n = len(column_degrees)
    out = []
    for t in range(n + 1):
        tot = 0
        for J in combinations(range(n), t):
            e = k - sum(column_degrees[j] for j in J)
            if e >= 0:
                tot += comb(e + n - 1, n - 1)
        out.append(tot)
    while out and out[-1] == 0:
        out.pop()
    return out


def koszul_strand(l_forms, column_degrees, k: int, xcount: int, S: PolyRing) -> ComplexStrand:
    """The x-degree k strand of the Koszul complex on l_1..l_n.

    ``l_forms`` live in a ring whose first ``xcount`` variables are the
    x-variables and whose remaining variables are those of S.
    """
    if k < 0:
        raise ValueError("strand degree must be non-negative")
    n = len(l_forms)
    if len(column_degrees) != n:
        raise ValueError("one degree per form")
    parts = []
    for j, l in enumerate(l_forms):
        sp = split_bigraded(l, xcount)
        if any(sum(xe) != column_degrees[j] for xe in sp):
            raise ValueError(f"l_{j + 1} is not of x-degree {column_degrees[j]}")
        parts.append({xe: Polynomial(S, dict(te)) for xe, te in sp.items()})
    bases = []
    for t in range(n + 1):
        basis = []
        for J in combinations(range(n), t):
            e = k - sum(column_degrees[j] for j in J)
            for mono in monomials_of_degree(xcount, e):
                basis.append((J, mono))
        if not basis:
            break
        bases.append(basis)
    modules = [GradedFreeModule((t,) * len(b), tuple(b)) for t, b in enumerate(bases)]
    maps = []
    for t in range(1, len(bases)):
        index = {lab: i for i, lab in enumerate(bases[t - 1])}
        ent = [[S.zero() for _ in bases[t]] for _ in bases[t - 1]]
        for c, (J, mono) in enumerate(bases[t]):
            for s, j in enumerate(J):
                rest = J[:s] + J[s + 1:]
                for xe, coef in parts[j].items():
                    r = index[(rest, tuple(a + b for a, b in zip(mono, xe)))]
                    ent[r][c] = coef if s % 2 == 0 else -coef
        maps.append(GradedMap(modules[t], modules[t - 1], ent, S))
    return ComplexStrand(k, tuple(column_degrees), modules, maps, S)
