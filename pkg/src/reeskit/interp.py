"""Batch evaluation and dense interpolation over a prime field.

Interpolation uses the simplex grid {(x_i1, ..., x_iv) : i1 + ... + iv <= D}
with distinct nodes per axis.  This lower set is unisolvent for polynomials of
total degree at most D, and the Newton coefficients are tensor divided
differences, so no linear system is solved.  A corollary used throughout the
package: a polynomial of degree at most D vanishing on the grid is zero.
"""

from __future__ import annotations

from math import comb
from typing import Callable

import numpy as np

from .modlinalg import check_prime_size, inv_mod
from .poly import DimensionError, PolyRing, Polynomial, PrimeField


class InconsistentEvaluatorError(ArithmeticError):
    """The black box is not a polynomial within the stated degree bound."""


def _residue(c, p: int) -> int:
    if isinstance(c, int):
        return c % p
    return c.numerator * pow(c.denominator, -1, p) % p


def eval_poly_batch(f: Polynomial, points: np.ndarray, p: int) -> np.ndarray:
    """Values of f at each row of ``points`` modulo p."""
    points = np.asarray(points, dtype=np.int64) % p
    npts = points.shape[0]
    if not f.terms:
        return np.zeros(npts, dtype=np.int64)
    exps = np.array(list(f.terms.keys()), dtype=np.int64)
    coeffs = np.array([_residue(c, p) for c in f.terms.values()], dtype=np.int64)
    nv = exps.shape[1]
    out = np.zeros(npts, dtype=np.int64)
    chunk = max(1, 4_000_000 // max(1, npts))
    for s in range(0, len(coeffs), chunk):
        E = exps[s:s + chunk]
        vals = np.ones((npts, E.shape[0]), dtype=np.int64)
        for v in range(nv):
            col = E[:, v]
            top = int(col.max()) if col.size else 0
            if top == 0:
                continue
            table = np.ones((top + 1, npts), dtype=np.int64)
            for k in range(1, top + 1):
                table[k] = table[k - 1] * points[:, v] % p
            vals = vals * table[col].T % p
        out = (out + (vals * coeffs[s:s + chunk]) % p @ np.ones(E.shape[0], dtype=np.int64)) % p
    return out


def simplex_indices(nvars: int, degree: int) -> np.ndarray:
    """All index vectors with entries summing to at most ``degree``."""
    if nvars == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((degree + 1,) * nvars).reshape(nvars, -1).T
    return grids[grids.sum(axis=1) <= degree]


def grid_nodes(degree: int) -> np.ndarray:
    return np.arange(1, degree + 2, dtype=np.int64)


def random_nodes(degree: int, p: int, rng: np.random.Generator) -> np.ndarray:
    """degree + 1 distinct random residues."""
    return rng.choice(p - 1, size=degree + 1, replace=False).astype(np.int64) + 1


def grid_points(nvars: int, degree: int, homogeneous: bool = False,
                nodes: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(index vectors, sample points) of the interpolation grid.

    For homogeneous interpolation the first coordinate of every point is 1
    and the grid lives in the remaining coordinates.
    """
    v = nvars - 1 if homogeneous else nvars
    idx = simplex_indices(v, degree)
    nodes = grid_nodes(degree) if nodes is None else nodes
    pts = nodes[idx] if v else np.zeros((1, 0), dtype=np.int64)
    if homogeneous:
        pts = np.hstack([np.ones((pts.shape[0], 1), dtype=np.int64), pts])
    return idx, pts


def _divided_differences(arr: np.ndarray, nodes: np.ndarray, axis: int, p: int) -> np.ndarray:
    a = np.moveaxis(arr, axis, 0).copy()
    D = a.shape[0] - 1
    for r in range(1, D + 1):
        inv = inv_mod((nodes[r:] - nodes[:-r]) % p, p)
        shape = (D + 1 - r,) + (1,) * (a.ndim - 1)
        a[r:] = (a[r:] - a[r - 1:-1]) % p * inv.reshape(shape) % p
    return np.moveaxis(a, 0, axis)


def _newton_to_monomial(arr: np.ndarray, nodes: np.ndarray, axis: int, p: int) -> np.ndarray:
    a = np.moveaxis(arr, axis, 0)
    D = a.shape[0] - 1
    res = np.zeros_like(a)
    res[0] = a[D]
    for i in range(D - 1, -1, -1):
        shifted = np.zeros_like(res)
        shifted[1:] = res[:-1]
        res = (shifted - nodes[i] * res) % p
        res[0] = (res[0] + a[i]) % p
    return np.moveaxis(res, 0, axis)


def coefficients_from_grid_values(values: np.ndarray, idx: np.ndarray, nvars: int, degree: int, p: int,
                                  nodes: np.ndarray | None = None) -> np.ndarray:
    """Monomial coefficients (indexed like ``idx``) from values on the grid."""
    if nvars == 0:
        return np.asarray(values, dtype=np.int64) % p
    nodes = grid_nodes(degree) if nodes is None else nodes
    dense = np.zeros((degree + 1,) * nvars, dtype=np.int64)
    dense[tuple(idx.T)] = np.asarray(values, dtype=np.int64) % p
    for ax in range(nvars):
        dense = _divided_differences(dense, nodes, ax, p)
    mask = np.zeros_like(dense, dtype=bool)
    mask[tuple(idx.T)] = True
    dense = np.where(mask, dense, 0)
    for ax in range(nvars):
        dense = _newton_to_monomial(dense, nodes, ax, p)
    return dense[tuple(idx.T)]


def _as_batch(evaluator: Callable, batch: bool):
    if batch:
        return evaluator

    def run(points):
        return np.array([int(evaluator(tuple(int(v) for v in pt))) for pt in points], dtype=np.int64)

    return run


def interpolate_values(values: np.ndarray, ring: PolyRing, degree: int, homogeneous: bool = False,
                       nodes: np.ndarray | None = None) -> Polynomial:
    """Polynomial from its values on ``grid_points(ring.nvars, degree, homogeneous, nodes)``."""
    p = ring.field.p
    n = ring.nvars
    v = n - 1 if homogeneous else n
    idx = simplex_indices(v, degree)
    coeffs = coefficients_from_grid_values(values, idx, v, degree, p, nodes)
    terms = {}
    for row, c in zip(idx.tolist(), coeffs.tolist()):
        if c:
            e = (degree - sum(row),) + tuple(row) if homogeneous else tuple(row)
            terms[e] = int(c)
    return Polynomial(ring, terms)


def interpolate_dense(degree_bound: int, variable_count: int, evaluator: Callable, field: PrimeField,
                      *, ring: PolyRing | None = None, homogeneous: bool = False, batch: bool = False,
                      verify_points: int = 5, rng: np.random.Generator | None = None) -> Polynomial:
    """Reconstruct a polynomial of degree <= degree_bound from a black box.

    ``evaluator`` maps a point (tuple of residues) to a residue, or with
    ``batch=True`` an (N, variable_count) array to N residues.  With
    ``homogeneous=True`` the result is homogeneous of degree ``degree_bound``.
    The result is re-checked at ``verify_points`` random points.
    """
    if not isinstance(field, PrimeField):
        raise TypeError("dense interpolation needs a prime field")
    p = field.p
    check_prime_size(p)
    if degree_bound < 0:
        raise ValueError("negative degree bound")
    if degree_bound + 1 >= p:
        raise ValueError("field too small for the requested degree")
    if ring is None:
        ring = PolyRing([f"x{i + 1}" for i in range(variable_count)], field)
    if ring.nvars != variable_count:
        raise DimensionError("ring does not match variable count")
    if homogeneous and variable_count == 0:
        raise ValueError("homogeneous interpolation needs a variable")
    run = _as_batch(evaluator, batch)
    _, pts = grid_points(variable_count, degree_bound, homogeneous)
    values = np.asarray(run(pts), dtype=np.int64) % p
    f = interpolate_values(values, ring, degree_bound, homogeneous)
    if verify_points:
        rng = rng or np.random.default_rng(0x5EED)
        test = rng.integers(0, p, size=(verify_points, variable_count), dtype=np.int64)
        expect = np.asarray(run(test), dtype=np.int64) % p
        got = eval_poly_batch(f, test, p)
        if not np.array_equal(expect, got):
            raise InconsistentEvaluatorError(
                f"evaluator disagrees with its degree-{degree_bound} interpolant at a fresh point")
    return f


def grid_size(variable_count: int, degree: int, homogeneous: bool = False) -> int:
    v = variable_count - 1 if homogeneous else variable_count
    return comb(degree + v, v)


def vanishes_identically(evaluator: Callable, degree_bound: int, variable_count: int, p: int,
                         homogeneous: bool = False, nodes: np.ndarray | None = None) -> bool:
    """Exact test that a polynomial black box of degree <= bound is zero."""
    _, pts = grid_points(variable_count, degree_bound, homogeneous, nodes)
    return not np.any(np.asarray(evaluator(pts), dtype=np.int64) % p)
