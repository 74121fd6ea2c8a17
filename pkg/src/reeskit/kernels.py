"""Degree-by-degree linear algebra for graded maps over S = k[T_0..T_n].

A graded map is cut into its degree-j pieces, which are finite matrices over
the coefficient field; kernels, images and minimal generator counts are then
read off by exact linear algebra (mod p through flint, or over Q through
flint's rational matrices).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import flint
import numpy as np

from .complexes import GradedMap
from .modlinalg import nullspace_mod, rank_mod
from .poly import monomials_of_degree


@dataclass
class DegreeSpace:
    """Basis of sum_c S_{j - e_c} for a graded free module in degree j."""

    degree: int
    labels: list  # (basis index, monomial)
    index: dict

    @property
    def dim(self) -> int:
        return len(self.labels)


def degree_space(module_degrees, j: int, nvars: int) -> DegreeSpace:
    labels = []
    for c, e in enumerate(module_degrees):
        if j - e >= 0:
            for m in monomials_of_degree(nvars, j - e):
                labels.append((c, m))
    return DegreeSpace(j, labels, {lab: i for i, lab in enumerate(labels)})


def _zeros(shape, p):
    return np.zeros(shape, dtype=np.int64) if p else np.full(shape, Fraction(0), dtype=object)


def degree_matrix(M: GradedMap, j: int):
    """Matrix of M from the degree-j part of its domain to the codomain.

    Returns (matrix, domain space, codomain space).  Entries are residues
    (prime field) or Fractions (rationals).
    """
    n = M.ring.nvars
    p = M.ring.field.p
    dom = degree_space(M.domain.degrees, j, n)
    cod = degree_space(M.codomain.degrees, j, n)
    A = _zeros((cod.dim, dom.dim), p)
    cols_by_basis: dict = {}
    for k, (c, m) in enumerate(dom.labels):
        cols_by_basis.setdefault(c, []).append((k, m))
    for r, row in enumerate(M.entries):
        for c, e in enumerate(row):
            if not e.terms or c not in cols_by_basis:
                continue
            for k, m in cols_by_basis[c]:
                for mu, coef in e.terms.items():
                    target = (r, tuple(a + b for a, b in zip(m, mu)))
                    A[cod.index[target], k] += coef
    if p:
        A %= p
    return A, dom, cod


def _as_fmpq(A) -> flint.fmpq_mat:
    r, c = A.shape
    return flint.fmpq_mat(r, c, [flint.fmpq(Fraction(v).numerator, Fraction(v).denominator) for v in A.ravel()])


def matrix_rank_exact(A, p: int) -> int:
    if A.size == 0:
        return 0
    if p:
        return rank_mod(A, p)
    return _as_fmpq(A).rank()


def nullspace_rows(A, p: int):
    """Kernel basis of A (vectors as rows)."""
    r, c = A.shape
    if c == 0:
        return _zeros((0, 0), p)
    if p:
        if r == 0:
            return np.eye(c, dtype=np.int64)
        return nullspace_mod(A, p).T.copy()
    if r == 0:
        out = _zeros((c, c), p)
        for i in range(c):
            out[i, i] = Fraction(1)
        return out
    R, rank = _as_fmpq(A).rref()
    pivots = []
    for i in range(rank):
        pivots.append(next(k for k in range(c) if R[i, k] != 0))
    free = [k for k in range(c) if k not in set(pivots)]
    out = _zeros((len(free), c), p)
    for a, fcol in enumerate(free):
        out[a, fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v = R[i, fcol]
            out[a, pc] = -Fraction(int(v.p), int(v.q))
    return out


def kernel_in_degree(M: GradedMap, j: int):
    """(kernel basis as rows, domain space) of M in degree j."""
    A, dom, _ = degree_matrix(M, j)
    return nullspace_rows(A, M.ring.field.p), dom


def kernel_dimension(M: GradedMap, j: int) -> int:
    A, dom, _ = degree_matrix(M, j)
    return dom.dim - matrix_rank_exact(A, M.ring.field.p)


def image_dimension(M: GradedMap, j: int) -> int:
    A, _, _ = degree_matrix(M, j)
    return matrix_rank_exact(A, M.ring.field.p)


def _shift_up(K, dom_lo: DegreeSpace, dom_hi: DegreeSpace, nvars: int, p: int):
    """Rows T_i * v for each row v of K (degree j-1) inside degree j."""
    out = _zeros((K.shape[0] * nvars, dom_hi.dim), p)
    for i in range(nvars):
        unit = tuple(1 if k == i else 0 for k in range(nvars))
        target = [dom_hi.index[(c, tuple(a + b for a, b in zip(m, unit)))] for c, m in dom_lo.labels]
        out[i * K.shape[0]:(i + 1) * K.shape[0], target] = K
    return out


@dataclass
class KernelGenerators:
    """Minimal generator counts of a kernel, degree by degree up to ``cap``."""

    counts: list  # (degree, count) with count > 0
    dims: dict = field(default_factory=dict)
    cap: int = 0
    stopped_early: bool = False

    def degrees(self) -> list[int]:
        return [d for d, c in self.counts]

    def total(self) -> int:
        return sum(c for _, c in self.counts)


def degreewise_kernel_mingens(M: GradedMap, degree_cap: int, start: int | None = None,
                              stop_after_first: bool = False) -> KernelGenerators:
    """Minimal generators of ker M in degrees <= degree_cap.

    In degree j the count is dim K_j - dim (S_1 K_{j-1}).
    """
    n = M.ring.nvars
    p = M.ring.field.p
    lo = min(M.domain.degrees) if start is None else start
    counts = []
    dims = {}
    prev = None
    prev_space = None
    for j in range(lo, degree_cap + 1):
        K, dom = kernel_in_degree(M, j)
        dims[j] = K.shape[0]
        if prev is not None and prev.shape[0]:
            span = matrix_rank_exact(_shift_up(prev, prev_space, dom, n, p), p)
        else:
            span = 0
        new = K.shape[0] - span
        if new:
            counts.append((j, new))
            if stop_after_first:
                return KernelGenerators(counts, dims, degree_cap, True)
        prev, prev_space = K, dom
    return KernelGenerators(counts, dims, degree_cap, False)
